#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/generators.hpp"
#include "isotropy/isotropy.hpp"
#include "isotropy/orbit.hpp"
#include "isotropy/random.hpp"
#include "isotropy/toeplitz_form.hpp"

namespace isotropy::acceptance {

// Every comparison below is exact equality: the tolerance is zero.
inline constexpr int kTolerance = 0;

struct Config {
  std::uint64_t seed = 20240611;
  std::size_t max_n = 8;            ///< enumeration bound for criteria 2, 3, 7
  std::size_t membership_cases = 200;
  std::size_t membership_max_n = 12;
  std::size_t generator_cases = 100;
  std::size_t generator_max_alpha = 6;
  std::size_t group_structures = 10;
  std::size_t group_triples = 50;
  std::size_t factor_cases = 50;
  std::size_t multi_cases = 20;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::vector<ExactScalar> enumeration_lambdas() { return {ExactScalar(0), ExactScalar(1), ExactScalar::i()}; }

inline ExactScalar random_lambda(Rng& rng) {
  return ExactScalar(make_rational(rng.uniform(-2, 2), 1), make_rational(rng.uniform(-1, 1), 1));
}

/// (G - I)^power == 0 on the dense Toeplitz assembly.
inline bool nilpotent_power_vanishes(const ToeplitzForm& g, std::size_t power) {
  const ExactMatrix n = assemble(g) - ExactMatrix::identity(g.structure().size());
  return ::isotropy::power(n, power).is_zero();
}

/// Structure with at least two parts and alpha_1 <= max_alpha.
inline SegreStructure random_multi_part(Rng& rng, std::size_t max_alpha, std::size_t max_m) {
  for (;;) {
    std::vector<SegreBlock> blocks;
    const long parts = rng.uniform(2, 3);
    for (long i = 0; i < parts; ++i)
      blocks.push_back({static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_alpha))),
                        static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_m)))});
    SegreStructure s(random_lambda(rng), blocks);
    if (s.parts() >= 2) return s;
  }
}

inline GeneratorSpec random_generator(const SegreStructure& s, Rng& rng) {
  if (s.parts() >= 2 && rng.chance(75)) {
    const std::size_t p = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(s.parts()) - 2));
    const std::size_t t = static_cast<std::size_t>(rng.uniform(static_cast<long>(p) + 1, static_cast<long>(s.parts()) - 1));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(s.alpha(t)) - 1));
    return GeneratorSpec::two_block(p, t, k, rng.matrix(s.m(t), s.m(p)));
  }
  SkewMap z;
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t j = 1; j < s.alpha(r); ++j)
      if (s.m(r) > 1) z[{r, j}] = rng.skew(s.m(r));
  return GeneratorSpec::diagonal(z);
}

inline std::vector<ExactMatrix> random_b_diag(const SegreStructure& s, Rng& rng) {
  std::vector<ExactMatrix> b;
  const bool identity = rng.chance(30);
  for (std::size_t r = 0; r < s.parts(); ++r)
    b.push_back(identity ? ExactMatrix::identity(s.m(r)) : rng.symmetric_nonsingular(s.m(r)));
  return b;
}

}  // namespace detail

// 1 -------------------------------------------------------------------------
inline Result exact_membership(const Config& cfg) {
  Result res{1, "exact membership of sampled elements", false, ""};
  Rng rng(cfg.seed + 1);
  std::size_t ok = 0;
  for (std::size_t c = 0; c < cfg.membership_cases; ++c) {
    const SegreStructure s = random_structure(rng, cfg.membership_max_n, 3, detail::random_lambda(rng));
    const ExactMatrix q = sample_isotropy_element(s, random_free_params(s, rng));
    const MembershipReport rep = verify_isotropy(s, q);
    if (rep.member)
      ++ok;
    else if (res.detail.empty())
      res.detail = s.to_string() + ": " + rep.detail;
  }
  res.passed = ok == cfg.membership_cases;
  res.detail = std::to_string(ok) + "/" + std::to_string(cfg.membership_cases) + " cases with Q^T Q = I and Q^T S Q = S" +
               (res.detail.empty() ? "" : "; first failure " + res.detail);
  return res;
}

// 2 and 3 -------------------------------------------------------------------
inline Result dimension_agreement(const Config& cfg) {
  Result res{2, "solution dimension equals tangent-map kernel dimension", false, ""};
  std::size_t total = 0, ok = 0;
  for (const auto& lambda : detail::enumeration_lambdas())
    for (const auto& s : all_structures(cfg.max_n, lambda)) {
      ++total;
      if (tangent_oracle(build_S(s)).kernel_dim == solution_dimension(s))
        ++ok;
      else if (res.detail.empty())
        res.detail = "; first mismatch " + s.to_string() + " at " + format_scalar(lambda);
    }
  res.passed = ok == total;
  res.detail = std::to_string(ok) + "/" + std::to_string(total) + " structures with n <= " + std::to_string(cfg.max_n) + res.detail;
  return res;
}

inline Result codimension_agreement(const Config& cfg) {
  Result res{3, "codimension formula equals tangent codimension and n + dim", false, ""};
  std::size_t total = 0, ok = 0;
  for (const auto& lambda : detail::enumeration_lambdas())
    for (const auto& s : all_structures(cfg.max_n, lambda)) {
      ++total;
      const OrbitReport rep = consistency_check(s);
      const bool good = rep.codim_formula == rep.oracle_codim && rep.codim_formula == s.size() + solution_dimension(s);
      if (good)
        ++ok;
      else if (res.detail.empty())
        res.detail = "; first mismatch " + rep.structure;
    }
  res.passed = ok == total;
  res.detail = std::to_string(ok) + "/" + std::to_string(total) + " structures with n <= " + std::to_string(cfg.max_n) + res.detail;
  return res;
}

// 4 -------------------------------------------------------------------------

/// Fixed F (3 x 2) used for the worked two-block example.
inline ExactMatrix example_f() {
  return ExactMatrix{{ExactScalar(1), ExactScalar(make_rational(-1, 2))},
                     {ExactScalar(2), ExactScalar(3)},
                     {ExactScalar(make_rational(1, 3)), ExactScalar(-1)}};
}

/// The 10 x 10 layout written out block by block on the 7 x 7 block grid
/// with block sizes 2,2,2,2 | 3,3 | 1.
inline ExactMatrix example_expected(const ExactMatrix& f) {
  const std::vector<std::size_t> sizes{2, 2, 2, 2, 3, 3, 1};
  std::vector<std::vector<ExactMatrix>> grid(7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) grid[i].push_back(i == j ? ExactMatrix::identity(sizes[i]) : ExactMatrix(sizes[i], sizes[j]));
  const ExactMatrix corner = ExactScalar(make_rational(-1, 2)) * (f.transpose() * f);
  grid[0][2] = corner;
  grid[1][3] = corner;
  grid[0][4] = -f.transpose();
  grid[1][5] = -f.transpose();
  grid[4][2] = f;
  grid[5][3] = f;
  return block_assemble(grid);
}

inline Result worked_example(const Config&) {
  Result res{4, "worked two-block generator example", false, ""};
  const SegreStructure s(ExactScalar(0), {{4, 2}, {2, 3}, {1, 1}});
  const ExactMatrix f = example_f();
  const ExactMatrix got = assemble(gen_G(s, 0, 1, 0, f, identity_blocks(s)));
  const ExactMatrix want = example_expected(f);
  std::size_t diffs = 0;
  for (std::size_t i = 0; i < want.rows(); ++i)
    for (std::size_t j = 0; j < want.cols(); ++j)
      if (format_scalar(got(i, j)) != format_scalar(want(i, j))) ++diffs;
  res.passed = got == want && diffs == 0;
  res.detail = std::to_string(diffs) + " of " + std::to_string(want.rows() * want.cols()) + " entries differ from the displayed layout";
  return res;
}

// 5 -------------------------------------------------------------------------
inline Result generator_congruence(const Config& cfg) {
  Result res{5, "generator congruence and (G - I)^alpha_1 = 0", false, ""};
  Rng rng(cfg.seed + 5);
  std::size_t cong_ok = 0, nil_ok = 0, total = 0;
  std::string first_nil;
  auto record = [&](const std::string& what, const ToeplitzForm& g, const std::vector<ExactMatrix>& b) {
    ++total;
    if (satisfies_congruence(g, b)) ++cong_ok;
    if (detail::nilpotent_power_vanishes(g, g.structure().max_alpha()))
      ++nil_ok;
    else if (first_nil.empty())
      first_nil = what + " on " + g.structure().to_string();
  };
  for (std::size_t c = 0; c < cfg.generator_cases; ++c) {
    const SegreStructure s = detail::random_multi_part(rng, cfg.generator_max_alpha, 2);
    const std::vector<ExactMatrix> b = detail::random_b_diag(s, rng);
    SkewMap z;
    for (std::size_t r = 0; r < s.parts(); ++r)
      for (std::size_t j = 1; j < s.alpha(r); ++j) z[{r, j}] = rng.skew(s.m(r));
    record("gen_W", gen_W(s, z), identity_blocks(s));
    record("gen_V", gen_V(s, b, z), b);
    const GeneratorSpec spec = detail::random_generator(s, rng);
    if (spec.kind == GeneratorSpec::Kind::two_block_G) record("gen_G", build_generator(s, spec, b), b);
    // Standalone two-block matrix on its own two-part structure.
    const std::size_t alpha = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(cfg.generator_max_alpha)));
    const std::size_t beta = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(alpha) - 1));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(beta) - 1));
    const std::size_t m1 = static_cast<std::size_t>(rng.uniform(1, 2)), m2 = static_cast<std::size_t>(rng.uniform(1, 2));
    const ExactMatrix bb = rng.symmetric_nonsingular(m1), cc = rng.symmetric_nonsingular(m2);
    const ExactMatrix f = rng.matrix(m2, m1);
    const TwoBlockPair pair = gen_two_block(alpha, beta, k, f, bb, cc);
    const SegreStructure two(ExactScalar(0), {{alpha, m1}, {beta, m2}});
    record("gen_two_block", toeplitz_extract(pair.d, two), {bb, cc});
  }
  res.passed = cong_ok == total && nil_ok == total;
  res.detail = "congruence " + std::to_string(cong_ok) + "/" + std::to_string(total) + ", (G - I)^alpha_1 = 0 " +
               std::to_string(nil_ok) + "/" + std::to_string(total) +
               (first_nil.empty() ? "" : "; first nonzero power: " + first_nil);
  return res;
}

// 6 -------------------------------------------------------------------------
inline Result catalan(const Config&) {
  Result res{6, "Catalan coefficients", false, ""};
  constexpr std::size_t order = 20;
  const std::vector<Rational> rec = catalan_recursive(order);
  std::size_t closed_ok = 0;
  for (std::size_t n = 0; n <= order; ++n)
    if (catalan_coeff(n) == rec[n]) ++closed_ok;
  // f = -t f^2 / 2 - 1/2, coefficientwise through t^20.
  std::size_t series_ok = 0;
  for (std::size_t n = 0; n <= order; ++n) {
    Rational rhs = n == 0 ? Rational(make_rational(-1, 2)) : Rational(0);
    if (n >= 1) {
      Rational sq = 0;
      for (std::size_t j = 0; j <= n - 1; ++j) sq += rec[j] * rec[n - 1 - j];
      rhs -= sq / 2;
    }
    if (rhs == rec[n]) ++series_ok;
  }
  res.passed = closed_ok == order + 1 && series_ok == order + 1;
  res.detail = "closed form " + std::to_string(closed_ok) + "/21, functional equation " + std::to_string(series_ok) + "/21";
  return res;
}

// 7 -------------------------------------------------------------------------
inline Result commutant_count(const Config& cfg) {
  Result res{7, "commutant dimension equals Sylvester nullity", false, ""};
  Rng rng(cfg.seed + 7);
  std::size_t total = 0, ok = 0;
  for (const auto& s : all_structures(cfg.max_n, ExactScalar(1))) {
    ++total;
    const std::size_t nullity = nullspace(commutator_operator(build_S(s))).nullity;
    ToeplitzForm assignment(s);
    for (std::size_t r = 0; r < s.parts(); ++r)
      for (std::size_t c = 0; c < s.parts(); ++c)
        for (std::size_t j = 0; j < s.coeff_count(r, c); ++j) assignment.set(r, c, j, rng.matrix(s.m(r), s.m(c)));
    const ExactMatrix x = commutant_basis(s).build(assignment);
    const ExactMatrix j = build_J(s);
    if (commutant_dimension(s) == nullity && j * x == x * j)
      ++ok;
    else if (res.detail.empty())
      res.detail = "; first mismatch " + s.to_string();
  }
  res.passed = ok == total;
  res.detail = std::to_string(ok) + "/" + std::to_string(total) + " structures with n <= " + std::to_string(cfg.max_n) + res.detail;
  return res;
}

// 8 -------------------------------------------------------------------------
inline Result group_axioms(const Config& cfg) {
  Result res{8, "group closure, inverses and conjugation", false, ""};
  Rng rng(cfg.seed + 8);
  std::size_t ok = 0, total = 0;
  for (std::size_t st = 0; st < cfg.group_structures; ++st) {
    const SegreStructure s = random_structure(rng, 8, 3, detail::random_lambda(rng));
    for (std::size_t c = 0; c < cfg.group_triples; ++c) {
      ++total;
      const ExactMatrix q1 = sample_isotropy_element(s, random_free_params(s, rng));
      const ExactMatrix q2 = sample_isotropy_element(s, random_free_params(s, rng));
      const ExactMatrix q3 = sample_isotropy_element(s, random_free_params(s, rng));
      const ExactMatrix prod = group_mul(s, {q1, q2, group_inverse(s, q3)});
      std::vector<ExactMatrix> seeds;
      for (std::size_t r = 0; r < s.parts(); ++r) seeds.push_back(rng.orthogonal(s.m(r)));
      const ExactMatrix o = q_from_form(orthogonal_form(s, seeds));
      const ExactMatrix conj = o * q1 * o.transpose();
      const ToeplitzForm x1 = form_from_q(s, q1), x2 = form_from_q(s, q2);
      const ToeplitzForm x12 = form_from_q(s, q1 * q2);
      bool hom = true;
      for (std::size_t r = 0; r < s.parts(); ++r)
        hom = hom && x12.coeff(r, r, 0) == x1.coeff(r, r, 0) * x2.coeff(r, r, 0);
      const ToeplitzForm v = unipotent_part(x1);
      const ToeplitzForm v_conj = conjugate_unipotent(v, seeds);
      const bool good = verify_isotropy(s, prod).member && verify_isotropy(s, conj).member && (q1 * group_inverse(s, q1)).is_identity() &&
                        hom && v_conj.is_unipotent() && verify_isotropy(s, q_from_form(v_conj)).member;
      if (good)
        ++ok;
      else if (res.detail.empty())
        res.detail = "; first failure on " + s.to_string();
    }
  }
  res.passed = ok == total;
  res.detail = std::to_string(ok) + "/" + std::to_string(total) + " triples over " + std::to_string(cfg.group_structures) +
               " structures" + res.detail;
  return res;
}

// 9 -------------------------------------------------------------------------
inline Result factorization_round_trip(const Config& cfg) {
  Result res{9, "unipotent factorisation round trip", false, ""};
  Rng rng(cfg.seed + 9);
  std::size_t ok = 0;
  for (std::size_t c = 0; c < cfg.factor_cases; ++c) {
    const SegreStructure s = detail::random_multi_part(rng, 5, 2);
    const std::vector<ExactMatrix> b = detail::random_b_diag(s, rng);
    ToeplitzForm y = ToeplitzForm::identity(s);
    const long count = rng.uniform(1, 4);
    for (long g = 0; g < count; ++g) y = y * build_generator(s, detail::random_generator(s, rng), b);
    const Factorization fz = factor_unipotent(y, b);
    if (multiply_out(fz, b) == y && fz.v.is_block_diagonal())
      ++ok;
    else if (res.detail.empty())
      res.detail = "; first failure on " + s.to_string();
  }
  res.passed = ok == cfg.factor_cases;
  res.detail = std::to_string(ok) + "/" + std::to_string(cfg.factor_cases) + " products re-multiply exactly" + res.detail;
  return res;
}

// 10 ------------------------------------------------------------------------
inline Result multi_eigenvalue(const Config& cfg) {
  Result res{10, "multi-eigenvalue composition", false, ""};
  Rng rng(cfg.seed + 10);
  std::size_t ok = 0;
  for (std::size_t c = 0; c < cfg.multi_cases; ++c) {
    const std::size_t count = static_cast<std::size_t>(rng.uniform(2, 3));
    std::vector<SegreStructure> parts;
    std::size_t used = 0;
    for (std::size_t i = 0; i < count && used < 10; ++i) {
      const std::size_t room = std::min<std::size_t>(10 - used, 5);
      // Distinct eigenvalues 0, 1 + i, 2 + 2i, ...
      parts.push_back(random_structure(rng, room, 2, ExactScalar(Rational(static_cast<long>(i)), Rational(static_cast<long>(i)))));
      used += parts.back().size();
    }
    const MultiSegreStructure ms(parts);
    std::vector<FreeParams> params;
    for (const auto& p : parts) params.push_back(random_free_params(p, rng));
    const ExactMatrix q = sample_isotropy_element(ms, params);
    bool block_diag = true;
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t i = off; i < off + p.size(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
          if ((j < off || j >= off + p.size()) && !q(i, j).is_zero()) block_diag = false;
      off += p.size();
    }
    const MultiIsotropyDescription d = describe_isotropy(ms);
    std::size_t sum = 0;
    for (const auto& p : parts) sum += solution_dimension(p);
    const bool good = block_diag && d.total_dimension == sum && verify_isotropy(ms, q).member &&
                      tangent_oracle(build_S(ms)).kernel_dim == sum;
    if (good)
      ++ok;
    else if (res.detail.empty())
      res.detail = "; first failure on case " + std::to_string(c);
  }
  res.passed = ok == cfg.multi_cases;
  res.detail = std::to_string(ok) + "/" + std::to_string(cfg.multi_cases) + " multi-structures" + res.detail;
  return res;
}

using Criterion = std::function<Result(const Config&)>;

inline std::vector<Criterion> all_criteria() {
  return {exact_membership, dimension_agreement, codimension_agreement, worked_example, generator_congruence,
          catalan,          commutant_count,     group_axioms,          factorization_round_trip, multi_eigenvalue};
}

/// Runs one criterion, turning an escaped exception into a failed result.
inline Result run(std::size_t id, const Config& cfg) {
  const auto criteria = all_criteria();
  if (id < 1 || id > criteria.size()) throw InputError("criterion must be between 1 and " + std::to_string(criteria.size()));
  try {
    return criteria[id - 1](cfg);
  } catch (const std::exception& e) {
    return {static_cast<int>(id), "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
}

inline std::string format_line(const Result& r) {
  return "criterion " + std::to_string(r.id) + " " + (r.passed ? "PASS" : "FAIL") + " | " + r.name + " | " + r.detail;
}

}  // namespace isotropy::acceptance
