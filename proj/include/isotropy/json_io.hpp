#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/generators.hpp"
#include "isotropy/isotropy.hpp"
#include "isotropy/orbit.hpp"
#include "isotropy/toeplitz_form.hpp"

// JSON forms. Part and block indices are 1-based in JSON and 0-based in
// memory; coefficient indices j are the mathematical ones in both.

namespace isotropy::json_io {

using nlohmann::json;

namespace detail {

inline std::size_t to_index(long v, const std::string& what) {
  if (v < 1) throw InputError(what + " must be a positive (1-based) index");
  return static_cast<std::size_t>(v - 1);
}

inline std::vector<long> split_key(const std::string& key, std::size_t expected) {
  std::vector<long> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = key.find(',', start);
    const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("malformed key \"" + key + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) throw InputError("key \"" + key + "\" needs " + std::to_string(expected) + " components");
  return out;
}

template <class... T>
std::string join_key(T... parts) {
  std::string out;
  ((out += (out.empty() ? "" : ",") + std::to_string(parts)), ...);
  return out;
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline long integer(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" must be an integer");
  return v.get<long>();
}

}  // namespace detail

// Scalars and matrices ------------------------------------------------------

inline json to_json(const ExactScalar& x) { return format_scalar(x); }

inline ExactScalar scalar_from_json(const json& j) {
  if (!j.is_string()) throw InputError("scalar must be a string");
  return parse_scalar(j.get<std::string>());
}

inline json to_json(const ExactMatrix& m) {
  json entries = json::array();
  for (const auto& x : m.entries()) entries.push_back(format_scalar(x));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline ExactMatrix matrix_from_json(const json& j) {
  const long rows = detail::integer(j, "rows"), cols = detail::integer(j, "cols");
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be non-negative");
  const json& e = detail::field(j, "entries");
  if (!e.is_array()) throw InputError("\"entries\" must be an array");
  std::vector<ExactScalar> entries;
  for (const auto& x : e) entries.push_back(scalar_from_json(x));
  return ExactMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(entries));
}

// Structures ----------------------------------------------------------------

inline json to_json(const SegreStructure& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks()) blocks.push_back({{"alpha", b.alpha}, {"m", b.m}});
  return {{"lambda", format_scalar(s.lambda())}, {"blocks", blocks}};
}

inline SegreStructure structure_from_json(const json& j) {
  const ExactScalar lambda = j.contains("lambda") ? scalar_from_json(j.at("lambda")) : ExactScalar(0);
  const json& b = detail::field(j, "blocks");
  if (!b.is_array()) throw InputError("\"blocks\" must be an array");
  std::vector<SegreBlock> blocks;
  for (const auto& x : b) {
    const long alpha = detail::integer(x, "alpha"), m = detail::integer(x, "m");
    if (alpha < 1 || m < 1) throw InputError("alpha and m must be positive");
    blocks.push_back({static_cast<std::size_t>(alpha), static_cast<std::size_t>(m)});
  }
  return SegreStructure(lambda, blocks);
}

inline json to_json(const MultiSegreStructure& ms) {
  json parts = json::array();
  for (const auto& p : ms.parts()) parts.push_back(to_json(p));
  return {{"parts", parts}};
}

inline bool is_multi(const json& j) { return j.is_object() && j.contains("parts"); }

/// Accepts a single structure too, as a one-part multi-structure.
inline MultiSegreStructure multi_structure_from_json(const json& j) {
  if (!is_multi(j)) return MultiSegreStructure({structure_from_json(j)});
  const json& p = j.at("parts");
  if (!p.is_array()) throw InputError("\"parts\" must be an array");
  std::vector<SegreStructure> parts;
  for (const auto& x : p) parts.push_back(structure_from_json(x));
  return MultiSegreStructure(parts);
}

// Toeplitz forms ------------------------------------------------------------

inline json to_json(const ToeplitzForm& tf) {
  json coeffs = json::object();
  for (std::size_t r = 0; r < tf.parts(); ++r)
    for (std::size_t s = 0; s < tf.parts(); ++s) {
      json list = json::array();
      for (const auto& a : tf.coeffs(r, s)) list.push_back(to_json(a));
      coeffs[detail::join_key(r + 1, s + 1)] = list;
    }
  return {{"structure", to_json(tf.structure())}, {"coeffs", coeffs}};
}

/// Missing blocks read as zero.
inline ToeplitzForm toeplitz_from_json(const json& j) {
  ToeplitzForm tf(structure_from_json(detail::field(j, "structure")));
  if (!j.contains("coeffs")) return tf;
  for (const auto& [key, list] : j.at("coeffs").items()) {
    const auto rs = detail::split_key(key, 2);
    const std::size_t r = detail::to_index(rs[0], "r"), s = detail::to_index(rs[1], "s");
    if (r >= tf.parts() || s >= tf.parts()) throw InputError("block \"" + key + "\" is out of range");
    if (!list.is_array() || list.size() != tf.coeffs(r, s).size())
      throw InputError("block \"" + key + "\" needs " + std::to_string(tf.coeffs(r, s).size()) + " coefficients");
    for (std::size_t i = 0; i < list.size(); ++i) tf.set(r, s, i, matrix_from_json(list[i]));
  }
  return tf;
}

// Free parameters -----------------------------------------------------------

inline json to_json(const FreeParams& fp) {
  json sub = json::object(), seeds = json::object(), skews = json::object();
  for (const auto& [key, m] : fp.sub) {
    const auto [r, s, j] = key;
    sub[detail::join_key(r + 1, s + 1, j)] = to_json(m);
  }
  for (const auto& [r, m] : fp.seeds) seeds[std::to_string(r + 1)] = to_json(m);
  for (const auto& [key, m] : fp.skews) skews[detail::join_key(key.first + 1, key.second)] = to_json(m);
  return {{"sub", sub}, {"seeds", seeds}, {"skews", skews}};
}

inline FreeParams params_from_json(const json& j) {
  FreeParams fp;
  if (!j.is_object()) throw InputError("parameters must be a JSON object");
  if (j.contains("sub"))
    for (const auto& [key, m] : j.at("sub").items()) {
      const auto v = detail::split_key(key, 3);
      if (v[2] < 0) throw InputError("coefficient index in \"" + key + "\" must be non-negative");
      fp.sub[{detail::to_index(v[0], "r"), detail::to_index(v[1], "s"), static_cast<std::size_t>(v[2])}] = matrix_from_json(m);
    }
  if (j.contains("seeds"))
    for (const auto& [key, m] : j.at("seeds").items())
      fp.seeds[detail::to_index(detail::split_key(key, 1)[0], "r")] = matrix_from_json(m);
  if (j.contains("skews"))
    for (const auto& [key, m] : j.at("skews").items()) {
      const auto v = detail::split_key(key, 2);
      if (v[1] < 1) throw InputError("skew index in \"" + key + "\" must be at least 1");
      fp.skews[{detail::to_index(v[0], "r"), static_cast<std::size_t>(v[1])}] = matrix_from_json(m);
    }
  return fp;
}

// Congruence data -----------------------------------------------------------

inline json to_json(const CongruenceData& d) {
  auto side = [](const std::vector<std::vector<ExactMatrix>>& coeffs) {
    json out = json::object();
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      json list = json::array();
      for (const auto& m : coeffs[r]) list.push_back(to_json(m));
      out[std::to_string(r + 1)] = list;
    }
    return out;
  };
  return {{"structure", to_json(d.structure())}, {"B", side(d.b_coeffs())}, {"C", side(d.c_coeffs())}};
}

inline CongruenceData congruence_from_json(const json& j) {
  const SegreStructure s = structure_from_json(detail::field(j, "structure"));
  auto side = [&](const char* name) {
    std::vector<std::vector<ExactMatrix>> coeffs(s.parts());
    const json& obj = detail::field(j, name);
    for (const auto& [key, list] : obj.items()) {
      const std::size_t r = detail::to_index(detail::split_key(key, 1)[0], "r");
      if (r >= s.parts()) throw InputError(std::string(name) + " block \"" + key + "\" is out of range");
      for (const auto& m : list) coeffs[r].push_back(matrix_from_json(m));
    }
    return coeffs;
  };
  return CongruenceData(s, side("B"), side("C"));
}

// Generators ----------------------------------------------------------------

inline json to_json(const SkewMap& skews) {
  json out = json::object();
  for (const auto& [key, m] : skews) out[detail::join_key(key.first + 1, key.second)] = to_json(m);
  return out;
}

inline SkewMap skews_from_json(const json& j) {
  SkewMap out;
  for (const auto& [key, m] : j.items()) {
    const auto v = detail::split_key(key, 2);
    if (v[1] < 1) throw InputError("skew index in \"" + key + "\" must be at least 1");
    out[{detail::to_index(v[0], "r"), static_cast<std::size_t>(v[1])}] = matrix_from_json(m);
  }
  return out;
}

inline json to_json(const GeneratorSpec& g) {
  if (g.kind == GeneratorSpec::Kind::diagonal_W) return {{"kind", "W"}, {"skews", to_json(g.skews)}};
  return {{"kind", "G"}, {"p", g.p + 1}, {"t", g.t + 1}, {"k", g.k}, {"F", to_json(g.f)}};
}

inline GeneratorSpec generator_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (kind == "W") return GeneratorSpec::diagonal(j.contains("skews") ? skews_from_json(j.at("skews")) : SkewMap{});
  if (kind == "G") {
    const long k = detail::integer(j, "k");
    if (k < 0) throw InputError("k must be non-negative");
    return GeneratorSpec::two_block(detail::to_index(detail::integer(j, "p"), "p"), detail::to_index(detail::integer(j, "t"), "t"),
                                    static_cast<std::size_t>(k), matrix_from_json(detail::field(j, "F")));
  }
  throw InputError("generator kind must be \"W\" or \"G\"");
}

// Reports -------------------------------------------------------------------

inline json to_json(const IsotropyDescription& d) {
  json recipes = json::array();
  for (const auto& g : d.generator_recipes) {
    if (g.kind == GeneratorRecipe::Kind::diagonal_W)
      recipes.push_back({{"kind", "W"}, {"r", g.r + 1}, {"j", g.j}, {"Z_shape", {g.rows, g.cols}}});
    else
      recipes.push_back({{"kind", "G"}, {"p", g.p + 1}, {"t", g.t + 1}, {"k_range", {0, g.k_max}}, {"F_shape", {g.rows, g.cols}}});
  }
  return {{"structure", to_json(d.structure)},
          {"dimension", d.dimension},
          {"reductive_part", d.reductive_part},
          {"unipotent_order_bound", d.unipotent_order_bound},
          {"nilpotency_class_bound", d.nilpotency_class_bound},
          {"nilpotency_index_bound", d.nilpotency_index_bound},
          {"full_orthogonal", d.full_orthogonal},
          {"generator_recipes", recipes}};
}

inline json to_json(const MultiIsotropyDescription& d) {
  json parts = json::array();
  for (const auto& p : d.parts) parts.push_back(to_json(p));
  return {{"parts", parts}, {"total_dimension", d.total_dimension}};
}

inline json to_json(const OrbitReport& r) {
  return {{"structure", r.structure},   {"n", r.n},
          {"codim_formula", r.codim_formula}, {"isotropy_dim", r.isotropy_dim},
          {"tangent_dim", r.tangent_dim}, {"oracle_codim", r.oracle_codim},
          {"kernel_dim", r.kernel_dim},   {"consistent", r.consistent},
          {"failures", r.failures}};
}

inline json to_json(const MembershipReport& r) {
  return {{"member", r.member}, {"orthogonal", r.orthogonal}, {"preserves_S", r.preserves_s}, {"detail", r.detail}};
}

/// Parse text, mapping JSON syntax errors onto ParseError.
inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

}  // namespace isotropy::json_io
