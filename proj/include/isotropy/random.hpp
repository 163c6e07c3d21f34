#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"

namespace isotropy {

/// Seeded stream over std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Ranges are reduced by modulo (lo + x % width), never through
/// std::uniform_int_distribution, so draws agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % width);
  }
  bool chance(unsigned percent) { return next() % 100 < percent; }

  /// Small Gaussian rational, now and then with a sqrt(2) part.
  ExactScalar scalar() {
    const long den = uniform(1, 3);
    ExactScalar x(make_rational(uniform(-3, 3), den), chance(40) ? make_rational(uniform(-2, 2), den) : Rational(0));
    if (chance(10)) x += ExactScalar(make_rational(uniform(-1, 1), 2)) * ExactScalar::sqrt2();
    return x;
  }

  ExactMatrix matrix(std::size_t rows, std::size_t cols) {
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!chance(25)) m(i, j) = scalar();
    return m;
  }

  ExactMatrix skew(std::size_t n) {
    ExactMatrix m = matrix(n, n);
    return m - m.transpose();
  }

  ExactMatrix symmetric_nonsingular(std::size_t n) {
    for (;;) {
      ExactMatrix m = matrix(n, n);
      m = m + m.transpose();
      if (is_nonsingular(m)) return m;
    }
  }

  /// Cayley transform of a random skew matrix with random row signs;
  /// singular I + Z is re-sampled.
  ExactMatrix orthogonal(std::size_t n) {
    for (;;) {
      std::vector<int> signs(n);
      for (auto& s : signs) s = chance(50) ? 1 : -1;
      try {
        return cayley_orthogonal(skew(n), signs);
      } catch (const SingularMatrix&) {
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Complete free data for B = C = I.
inline FreeParams random_free_params(const SegreStructure& s, Rng& rng) {
  FreeParams fp;
  for (std::size_t r = 0; r < s.parts(); ++r) {
    fp.seeds[r] = rng.orthogonal(s.m(r));
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t j = 0; j < s.coeff_count(r, c); ++j) fp.sub[{r, c, j}] = rng.matrix(s.m(r), s.m(c));
    for (std::size_t j = 1; j < s.alpha(r); ++j)
      if (s.m(r) > 1) fp.skews[{r, j}] = rng.skew(s.m(r));
  }
  return fp;
}

/// Random structure of size at most max_n with at most max_parts distinct sizes.
inline SegreStructure random_structure(Rng& rng, std::size_t max_n, std::size_t max_parts, const ExactScalar& lambda) {
  if (max_n == 0 || max_parts == 0) throw InputError("random_structure needs positive bounds");
  for (;;) {
    const std::size_t parts = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_parts)));
    std::vector<SegreBlock> blocks;
    std::size_t used = 0;
    for (std::size_t i = 0; i < parts && used < max_n; ++i) {
      const std::size_t alpha = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(max_n - used, 6))));
      const std::size_t room = (max_n - used) / alpha;
      const std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(room, 3))));
      blocks.push_back({alpha, m});
      used += alpha * m;
    }
    SegreStructure s(lambda, blocks);
    if (s.size() <= max_n) return s;
  }
}

/// Every Segre structure (every partition of every n in 1..max_n).
inline std::vector<SegreStructure> all_structures(std::size_t max_n, const ExactScalar& lambda) {
  std::vector<SegreStructure> out;
  std::vector<SegreBlock> current;
  // Blocks are chosen with strictly decreasing alpha.
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t max_alpha) -> void {
    if (!current.empty()) out.emplace_back(lambda, current);
    for (std::size_t alpha = std::min(max_alpha, remaining); alpha >= 1; --alpha)
      for (std::size_t m = 1; alpha * m <= remaining; ++m) {
        current.push_back({alpha, m});
        self(self, remaining - alpha * m, alpha - 1);
        current.pop_back();
      }
  };
  rec(rec, max_n, max_n);
  return out;
}

}  // namespace isotropy
