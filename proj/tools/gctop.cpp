// gctop: command-line front end for graph enumeration, graph-complex Betti
// numbers, closed-form evaluators and tropicalization.
//
// Exit codes: 0 ok, 2 usage / invalid input, 3 resource cap, 4 integrity.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gctop/canonical.hpp"
#include "gctop/complex.hpp"
#include "gctop/digest.hpp"
#include "gctop/enumerate.hpp"
#include "gctop/errors.hpp"
#include "gctop/formulas.hpp"
#include "gctop/json_io.hpp"
#include "gctop/tropicalize.hpp"

namespace {

using gctop::Json;

constexpr const char* kToolVersion = "1.0.0";

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kResource = 3, kIntegrity = 4 };

struct Outcome {
  std::string command;
  std::string output;
  Json parameters = Json::object();
  std::vector<std::uint32_t> primes;
  std::vector<std::string> cache_digests;
  std::string out_path;
  std::string manifest_path;
  std::string verify_path;
  bool ran = false;
};

std::optional<std::filesystem::path> default_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("GCTOP_CACHE_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

void warn(const std::string& msg) { std::cerr << "gctop: warning: " << msg << '\n'; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Parses `args` (without the program name) and runs the selected command,
// leaving the output text in `outcome`. Throws CLI::ParseError or gctop::Error.
void dispatch(const std::vector<std::string>& args, Outcome& outcome) {
  CLI::App app{"gctop: stable graphs, graph complexes and tropical moduli"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(0, 1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = OpenMP default, 1 = serial)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--manifest", outcome.manifest_path, "Where to write the run manifest");
  app.add_option("--verify-manifest", outcome.verify_path,
                 "Replay a manifest and check its output digest");

  // enumerate
  int e_genus = 0, e_legs = 0, e_edges = 0;
  std::string e_mode = "full", e_cache;
  bool e_orient = false;
  std::size_t e_max = 2'000'000;
  auto* enumerate = app.add_subcommand("enumerate", "List stable graphs as Graph JSON");
  enumerate->add_option("--genus", e_genus)->required();
  enumerate->add_option("--legs", e_legs)->required();
  enumerate->add_option("--edges", e_edges)->required();
  enumerate->add_option("--mode", e_mode)->check(CLI::IsMember({"full", "cv"}));
  enumerate->add_flag("--require-orientable", e_orient);
  enumerate->add_option("--cache-dir", e_cache);
  enumerate->add_option("--max-classes", e_max);
  enumerate->add_option("--out", outcome.out_path);

  // betti
  int b_genus = 0, b_legs = 0;
  std::string b_mode = "full", b_cache;
  gctop::RankConfig rank_cfg;
  rank_cfg.exact_fallback = false;
  std::size_t b_max = 2'000'000;
  auto* betti = app.add_subcommand("betti", "Betti numbers of the graph complex");
  betti->add_option("--genus", b_genus)->required();
  betti->add_option("--legs", b_legs)->required();
  betti->add_option("--mode", b_mode)->check(CLI::IsMember({"full", "cv", "both"}));
  betti->add_option("--prime", rank_cfg.primary_prime);
  betti->add_option("--check-prime", rank_cfg.confirmation_prime);
  betti->add_flag("--exact", rank_cfg.exact_fallback,
                  "Fall back to exact rational rank when the primes disagree");
  betti->add_option("--dense-threshold", rank_cfg.dense_threshold);
  betti->add_option("--cache-dir", b_cache);
  betti->add_option("--max-classes", b_max);
  betti->add_option("--out", outcome.out_path);

  // formulas
  auto* formulas = app.add_subcommand("formulas", "Closed-form evaluators");
  formulas->require_subcommand(1);
  formulas->add_option("--out", outcome.out_path);
  int lie_max = 0, growth_max = 60, chi_genus = 0, cv_k = 3;
  long cv_a = 0, cv_b = 0;
  auto* lie = formulas->add_subcommand("lie-dims", "Graded dimensions of FreeLie(s3, s5, ...)");
  lie->add_option("--max-genus", lie_max)->required();
  auto* growth = formulas->add_subcommand("growth", "Growth estimate of the graded dimensions");
  growth->add_option("--max-genus", growth_max);
  auto* chi = formulas->add_subcommand("chi-orb", "Orbifold Euler characteristic of Mod_{g,1}");
  chi->add_option("--genus", chi_genus)->required();
  auto* cv2 = formulas->add_subcommand("cv2-dim", "dim H^k_c(CV_2, V_{a,b})");
  cv2->add_option("--a", cv_a)->required();
  cv2->add_option("--b", cv_b)->required();
  cv2->add_option("--k", cv_k)->required();

  // tropicalize
  std::string t_input;
  auto* trop = app.add_subcommand("tropicalize", "Tropicalize Fenchel-Nielsen pants data");
  trop->add_option("--input", t_input)->required();
  trop->add_option("--out", outcome.out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  if (!outcome.verify_path.empty()) return;
  if (app.get_subcommands().empty()) throw CLI::CallForHelp();

  gctop::Parallelism par{threads};
  Json& params = outcome.parameters;

  if (*enumerate) {
    outcome.command = "enumerate";
    gctop::EnumSpec spec{e_genus, e_legs, e_edges, gctop::parse_mode(e_mode), e_orient};
    params = {{"genus", e_genus}, {"legs", e_legs}, {"edges", e_edges},
              {"mode", e_mode}, {"require_orientable", e_orient}};
    gctop::EnumOptions opts{par, e_max};
    std::vector<gctop::StableGraph> graphs;
    if (auto dir = default_cache_dir(e_cache)) {
      auto r = gctop::cache_get_or_build(spec, *dir, opts, warn);
      graphs = std::move(r.graphs);
      outcome.cache_digests.push_back(r.digest);
    } else {
      graphs = gctop::enumerate_graphs(spec, opts);
      outcome.cache_digests.push_back(gctop::cache_digest(spec));
    }
    Json out = Json::array();
    for (const auto& g : graphs) out.push_back(gctop::graph_to_json(g));
    outcome.output = dump(out);
  } else if (*betti) {
    outcome.command = "betti";
    params = {{"genus", b_genus}, {"legs", b_legs}, {"mode", b_mode},
              {"prime", rank_cfg.primary_prime}, {"check_prime", rank_cfg.confirmation_prime},
              {"exact", rank_cfg.exact_fallback}};
    gctop::ComplexOptions opts;
    opts.parallel = par;
    opts.max_classes = b_max;
    opts.cache_dir = default_cache_dir(b_cache);
    opts.warn = warn;
    outcome.primes = {rank_cfg.primary_prime, rank_cfg.confirmation_prime};
    if (b_mode == "both") {
      auto cmp = gctop::compare_modes(b_genus, b_legs, opts, rank_cfg);
      outcome.cache_digests = cmp.full.cache_digests;
      outcome.cache_digests.insert(outcome.cache_digests.end(), cmp.cv.cache_digests.begin(),
                                   cmp.cv.cache_digests.end());
      outcome.output = dump(gctop::comparison_to_json(cmp));
    } else {
      auto rep = gctop::betti_numbers(b_genus, b_legs, gctop::parse_mode(b_mode), opts, rank_cfg);
      outcome.cache_digests = rep.cache_digests;
      outcome.output = dump(gctop::betti_report_to_json(rep));
    }
  } else if (*formulas) {
    if (*lie) {
      outcome.command = "formulas lie-dims";
      params = {{"max_genus", lie_max}};
      auto dims = gctop::witt_dims(lie_max);
      Json rows = Json::array();
      for (int g = 1; g <= dims.max_genus(); ++g) {
        rows.push_back({{"genus", g}, {"dim", gctop::bigint_to_json(dims.dims[g])}});
      }
      outcome.output = dump(rows);
    } else if (*growth) {
      outcome.command = "formulas growth";
      params = {{"max_genus", growth_max}};
      auto est = gctop::growth_ratio(gctop::witt_dims(growth_max));
      outcome.output = dump(Json{{"genus", est.genus},
                                 {"root_estimate", est.root},
                                 {"normalized_root_estimate", est.normalized_root},
                                 {"ratios", est.ratios},
                                 {"beta", gctop::plastic_number()}});
    } else if (*chi) {
      outcome.command = "formulas chi-orb";
      params = {{"genus", chi_genus}};
      outcome.output = dump(Json{
          {"genus", chi_genus},
          {"chi_orb", gctop::rational_to_string(gctop::chi_orb_mod_g1(chi_genus))}});
    } else if (*cv2) {
      outcome.command = "formulas cv2-dim";
      params = {{"a", cv_a}, {"b", cv_b}, {"k", cv_k}};
      outcome.output = dump(Json{{"a", cv_a}, {"b", cv_b}, {"k", cv_k},
                                 {"dim", gctop::cv2_local_system_dim(cv_a, cv_b, cv_k)}});
    }
  } else if (*trop) {
    outcome.command = "tropicalize";
    params = {{"input", t_input}};
    std::ifstream in(t_input);
    if (!in) throw gctop::InvalidArgument("cannot open " + t_input);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw gctop::ValidationError(std::string("pants JSON: ") + e.what());
    }
    auto data = gctop::pants_from_json(j);
    auto curve = gctop::tropicalize(data);
    Json out = gctop::tropical_curve_to_json(curve);
    out["in_cv"] = !curve.has_infinite_length() && gctop::is_in_cv(curve);
    out["in_hm"] = gctop::is_in_hm(data);
    outcome.output = dump(out);
  }
  outcome.ran = true;
}

Json make_manifest(const Outcome& o, const std::vector<std::string>& args, double seconds) {
  Json m;
  m["tool"] = "gctop";
  m["tool_version"] = kToolVersion;
  m["format_version"] = gctop::kGraphFormatVersion;
  m["command"] = o.command;
  m["argv"] = args;
  m["parameters"] = o.parameters;
  m["primes"] = o.primes;
  m["cache_digests"] = o.cache_digests;
  m["wall_seconds"] = seconds;
  m["output_digest"] = gctop::sha256_hex(o.output);
  return m;
}

int verify_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gctop::InvalidArgument("cannot open manifest " + path);
  Json m;
  try {
    m = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw gctop::ValidationError(std::string("manifest: ") + e.what());
  }
  const auto args = m.at("argv").get<std::vector<std::string>>();
  Outcome replay;
  dispatch(args, replay);
  if (!replay.ran) throw gctop::InvalidArgument("manifest argv does not name a command");
  const std::string digest = gctop::sha256_hex(replay.output);
  const std::string expected = m.at("output_digest").get<std::string>();
  Json verdict{{"manifest", path}, {"expected", expected}, {"actual", digest},
               {"match", digest == expected}};
  std::cout << verdict.dump(2) << '\n';
  return digest == expected ? kOk : kIntegrity;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    dispatch(args, outcome);
  } catch (const CLI::CallForHelp&) {
    std::cout << "usage: gctop [--threads N] <enumerate|betti|formulas|tropicalize> ... "
                 "(see --help on each)\n";
    return args.empty() ? kUsage : kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << e.what() << '\n';
      return kOk;
    }
    std::cerr << "gctop: " << e.what() << '\n';
    return kUsage;
  }
  if (!outcome.verify_path.empty()) return verify_manifest(outcome.verify_path);
  if (!outcome.ran) return kUsage;

  if (outcome.out_path.empty()) {
    std::cout << outcome.output;
  } else {
    std::ofstream out(outcome.out_path, std::ios::binary | std::ios::trunc);
    out << outcome.output;
    if (!out) throw gctop::Error("cannot write " + outcome.out_path);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json manifest = make_manifest(outcome, args, seconds);
  std::string manifest_path = outcome.manifest_path;
  if (manifest_path.empty() && !outcome.out_path.empty()) {
    manifest_path = outcome.out_path + ".manifest.json";
  }
  if (manifest_path.empty()) {
    std::cerr << manifest.dump() << '\n';
  } else {
    std::ofstream mf(manifest_path, std::ios::trunc);
    mf << manifest.dump(2) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gctop::ResourceError& e) {
    std::cerr << "gctop: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const gctop::IntegrityError& e) {
    std::cerr << "gctop: integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const gctop::ValidationError& e) {
    std::cerr << "gctop: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const gctop::InvalidArgument& e) {
    std::cerr << "gctop: invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const gctop::PreconditionError& e) {
    std::cerr << "gctop: " << e.what() << '\n';
    return kUsage;
  } catch (const gctop::ConfigError& e) {
    std::cerr << "gctop: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gctop: " << e.what() << '\n';
    return kFailure;
  }
}
