// isotropy: batch front end. Every command prints one JSON document.
// Exit status: 0 ok, 1 verification false, 2 input error, 3 integrity failure.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isotropy/all.hpp"

using namespace isotropy;
namespace io = isotropy::json_io;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFalse = 1, kInput = 2, kIntegrity = 3;

struct Options {
  std::string command;
  std::string structure, params, matrix, out;
  std::optional<std::uint64_t> seed;
  std::size_t max_n = 8;
};

/// Inline JSON when the text starts like a document, otherwise a file path.
json load(const std::string& arg, const char* what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::parse(arg);
  std::ifstream in(arg);
  if (!in) throw InputError(std::string("cannot read ") + what + " file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse(ss.str());
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("ISOTROPY_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("ISOTROPY_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

const json& need(const Options& o, const std::string& value, const char* flag, json& slot) {
  if (value.empty()) throw InputError("command '" + o.command + "' needs " + flag);
  slot = load(value, flag);
  return slot;
}

MultiSegreStructure need_structure(const Options& o) {
  json j;
  return io::multi_structure_from_json(need(o, o.structure, "--structure", j));
}

SegreStructure need_single(const Options& o) {
  const MultiSegreStructure ms = need_structure(o);
  if (ms.parts().size() != 1) throw InputError("command '" + o.command + "' takes a single-eigenvalue structure");
  return ms.parts().front();
}

ExactMatrix need_matrix(const Options& o) {
  json j;
  return io::matrix_from_json(need(o, o.matrix, "--matrix", j));
}

// ---------------------------------------------------------------------------

int cmd_canonical(const Options& o, json& out) {
  const MultiSegreStructure ms = need_structure(o);
  out["structure"] = io::to_json(ms);
  out["S"] = io::to_json(build_S(ms));
  json parts = json::array();
  for (const auto& s : ms.parts())
    parts.push_back({{"structure", io::to_json(s)},
                     {"S", io::to_json(build_S(s))},
                     {"P", io::to_json(build_P(s))},
                     {"Omega", io::to_json(build_Omega(s))},
                     {"F", io::to_json(build_F(s))}});
  out["parts"] = parts;
  return kOk;
}

int cmd_describe(const Options& o, json& out) {
  const MultiSegreStructure ms = need_structure(o);
  out = ms.parts().size() == 1 ? io::to_json(describe_isotropy(ms.parts().front())) : io::to_json(describe_isotropy(ms));
  return kOk;
}

int cmd_dim(const Options& o, json& out) {
  out["dimension"] = solution_dimension(need_structure(o));
  return kOk;
}

int cmd_codim(const Options& o, json& out) {
  const MultiSegreStructure ms = need_structure(o);
  const std::size_t n = ms.size(), codim = codim_formula(ms);
  out["n"] = n;
  out["codimension"] = codim;
  out["orbit_dimension"] = n * (n + 1) / 2 - codim;
  return kOk;
}

std::vector<FreeParams> params_for(const Options& o, const MultiSegreStructure& ms, json& provenance) {
  std::vector<FreeParams> fps;
  if (!o.params.empty()) {
    const json j = load(o.params, "--params");
    provenance["params_source"] = "file";
    if (j.is_array()) {
      for (const auto& x : j) fps.push_back(io::params_from_json(x));
    } else {
      fps.push_back(io::params_from_json(j));
    }
    if (fps.size() != ms.parts().size())
      throw InputError("--params needs one parameter set per eigenvalue, got " + std::to_string(fps.size()));
    return fps;
  }
  const std::uint64_t seed = resolve_seed(o);
  provenance["params_source"] = "seeded";
  provenance["seed"] = seed;
  provenance["generator"] = "mt19937_64";
  Rng rng(seed);
  for (const auto& s : ms.parts()) fps.push_back(random_free_params(s, rng));
  return fps;
}

int cmd_sample(const Options& o, json& out) {
  const MultiSegreStructure ms = need_structure(o);
  json provenance = json::object();
  const std::vector<FreeParams> fps = params_for(o, ms, provenance);
  const ExactMatrix q = sample_isotropy_element(ms, fps);
  json params = json::array();
  for (const auto& fp : fps) params.push_back(io::to_json(fp));
  provenance["params"] = params;
  out["structure"] = io::to_json(ms);
  out["Q"] = io::to_json(q);
  out["membership"] = io::to_json(verify_isotropy(ms, q));
  out["provenance"] = provenance;
  return kOk;
}

int cmd_generators(const Options& o, json& out) {
  const SegreStructure s = need_single(o);
  json spec_json;
  need(o, o.params, "--params (a generator spec or a list of them)", spec_json);
  if (!spec_json.is_array()) spec_json = json::array({spec_json});
  json list = json::array();
  bool all = true;
  for (const auto& j : spec_json) {
    const GeneratorSpec spec = io::generator_from_json(j);
    const ToeplitzForm g = build_generator(s, spec);
    const ExactMatrix q = q_from_form(g);
    const MembershipReport rep = verify_isotropy(s, q);
    all = all && rep.member;
    list.push_back({{"spec", io::to_json(spec)}, {"toeplitz", io::to_json(assemble(g))}, {"Q", io::to_json(q)}, {"member", rep.member}});
  }
  out["structure"] = io::to_json(s);
  out["generators"] = list;
  if (!all) throw IntegrityError("a generator left the isotropy group");
  return kOk;
}

int cmd_verify(const Options& o, json& out) {
  const MultiSegreStructure ms = need_structure(o);
  const MembershipReport rep = verify_isotropy(ms, need_matrix(o));
  out = io::to_json(rep);
  return rep.member ? kOk : kFalse;
}

int cmd_commutant(const Options& o, json& out) {
  const SegreStructure s = need_single(o);
  const CommutantBasis basis = commutant_basis(s);
  const ExactMatrix p = build_P(s), p_inv = build_P_inverse(s), sm = build_S(s);
  json elems = json::array();
  for (const auto& x : basis.elements()) {
    const ExactMatrix y = p * x * p_inv;
    if (sm * y != y * sm) throw IntegrityError("commutant basis element does not commute with S");
    elems.push_back(io::to_json(y));
  }
  out["structure"] = io::to_json(s);
  out["dimension"] = basis.dimension;
  out["basis"] = elems;
  return kOk;
}

// Factor the unipotent part of Q (from --matrix, or sampled from --params/seed).
int cmd_factor(const Options& o, json& out) {
  const SegreStructure s = need_single(o);
  ExactMatrix q;
  json provenance = json::object();
  if (!o.matrix.empty()) {
    q = need_matrix(o);
    provenance["source"] = "matrix";
  } else {
    q = sample_isotropy_element(s, params_for(o, MultiSegreStructure({s}), provenance).front());
  }
  const MembershipReport rep = verify_isotropy(s, q);
  if (!rep.member) {
    out = io::to_json(rep);
    return kFalse;
  }
  const ToeplitzForm x = form_from_q(s, q);
  const std::vector<ExactMatrix> o_blocks = orthogonal_part(x);
  const Factorization fz = factor_unipotent(unipotent_part(x), identity_blocks(s));
  json orth = json::array(), chain = json::array();
  for (const auto& b : o_blocks) orth.push_back(io::to_json(b));
  for (const auto& g : fz.chain) chain.push_back(io::to_json(g));
  out["structure"] = io::to_json(s);
  out["orthogonal_part"] = orth;
  out["diagonal_factor"] = io::to_json(GeneratorSpec::diagonal(fz.v_skews));
  out["chain"] = chain;
  out["provenance"] = provenance;
  return kOk;
}

int cmd_selftest(const Options& o, json& out) {
  namespace acc = isotropy::acceptance;
  acc::Config cfg;
  cfg.max_n = o.max_n;
  if (o.seed || std::getenv("ISOTROPY_SEED")) cfg.seed = resolve_seed(o);
  std::vector<std::future<acc::Result>> jobs;
  for (std::size_t id = 1; id <= acc::all_criteria().size(); ++id)
    jobs.push_back(std::async(std::launch::async, [id, cfg] { return acc::run(id, cfg); }));
  json list = json::array();
  bool all = true;
  for (auto& job : jobs) {
    const acc::Result r = job.get();
    std::cerr << acc::format_line(r) << '\n';
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  out["seed"] = cfg.seed;
  out["max_n"] = cfg.max_n;
  out["criteria"] = list;
  out["passed"] = all;
  return all ? kOk : kFalse;
}

int dispatch(const Options& o, json& out) {
  if (o.command == "canonical") return cmd_canonical(o, out);
  if (o.command == "describe") return cmd_describe(o, out);
  if (o.command == "dim") return cmd_dim(o, out);
  if (o.command == "codim") return cmd_codim(o, out);
  if (o.command == "sample") return cmd_sample(o, out);
  if (o.command == "generators") return cmd_generators(o, out);
  if (o.command == "verify") return cmd_verify(o, out);
  if (o.command == "commutant") return cmd_commutant(o, out);
  if (o.command == "factor") return cmd_factor(o, out);
  return cmd_selftest(o, out);
}

void emit(const Options& o, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotropy groups of complex symmetric matrices in canonical form"};
  Options o;
  app.add_option("command", o.command, "canonical | describe | dim | codim | sample | generators | verify | commutant | factor | selftest")
      ->required()
      ->check(CLI::IsMember({"canonical", "describe", "dim", "codim", "sample", "generators", "verify", "commutant", "factor",
                             "selftest"}));
  app.add_option("--structure", o.structure, "Segre structure as a JSON file or inline JSON");
  app.add_option("--seed", o.seed, "RNG seed (falls back to ISOTROPY_SEED, then 0)");
  app.add_option("--params", o.params, "free parameters, or generator specs for 'generators'");
  app.add_option("--matrix", o.matrix, "matrix Q for 'verify' and 'factor'");
  app.add_option("--out", o.out, "write JSON here instead of stdout");
  app.add_option("--max-n", o.max_n, "selftest enumeration bound")->check(CLI::Range(1, 12));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  json out = json::object();
  int status = kOk;
  try {
    status = dispatch(o, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const SingularMatrix& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const DivisionByZero& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "integrity failure: " << e.what() << '\n';
    return kIntegrity;
  }
  try {
    emit(o, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  }
  return status;
}
