#include <CLI11.hpp>
#include <json.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "varlp/errors.hpp"
#include "varlp/json_io.hpp"
#include "varlp/modular.hpp"
#include "varlp/operators.hpp"
#include "varlp/suites.hpp"
#include "varlp/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace varlp;

struct Options {
  std::string input_path;
  std::string inline_json;
  std::string output_path;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::int64_t trials = 0;  // 0 = subcommand default
  std::uint64_t n = 0;      // 0 = subcommand default
  bool deterministic = false;
};

json load_input(const Options& opt) {
  std::string text;
  if (!opt.inline_json.empty()) {
    text = opt.inline_json;
  } else if (!opt.input_path.empty()) {
    if (opt.input_path == "-") {
      std::ostringstream buffer;
      buffer << std::cin.rdbuf();
      text = buffer.str();
    } else {
      std::ifstream in(opt.input_path);
      if (!in) fail(Errc::BadInput, "cannot open input file " + opt.input_path);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
    }
  } else {
    fail(Errc::BadInput, "this subcommand needs --input or --json");
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::BadInput, std::string("malformed JSON: ") + e.what());
  }
}

std::string timestamp_now() {
  std::time_t now = std::time(nullptr);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%FT%TZ", std::gmtime(&now));
  return buffer;
}

int emit(const Options& opt, const std::string& command, const json& inputs,
         json results, int exit_code) {
  json out;
  out["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  out["command"] = command;
  if (!opt.deterministic) out["timestamp"] = timestamp_now();
  out["inputs"] = inputs;
  out["params"] = {{"seed", opt.seed}, {"tol", opt.tol}};
  if (opt.trials != 0) out["params"]["trials"] = opt.trials;
  if (opt.n != 0) out["params"]["n"] = opt.n;
  out["results"] = std::move(results);

  std::string text = out.dump(2) + "\n";
  if (opt.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(opt.output_path);
    if (!file) fail(Errc::BadInput, "cannot open output file " + opt.output_path);
    file << text;
  }
  return exit_code;
}

int emit_error(const Options& opt, const std::string& command, const Error& e) {
  json out;
  out["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  out["command"] = command;
  out["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
  std::cout << out.dump(2) << "\n";
  std::cerr << command << ": " << e.what() << "\n";
  (void)opt;
  return 2;
}

// Shifts never fit a square window; everything else converts.
MatrixOperator to_matrix_window(const io::AnyOperator& op, std::uint64_t requested_n) {
  if (const auto* m = std::get_if<MatrixOperator>(&op)) return *m;
  if (const auto* lamperti = std::get_if<LampertiOperator>(&op)) {
    std::uint64_t n = lamperti->set_iso().domain_bound();
    std::vector<Index> range = lamperti->set_iso().range();
    if (!range.empty()) n = std::max<std::uint64_t>(n, range.back());
    return lamperti_to_matrix(*lamperti, std::max(requested_n, n));
  }
  const auto& theta = std::get<InjectionMap>(op);
  if (std::holds_alternative<InjectionMap::Shift>(theta.rule())) {
    fail(Errc::TruncationBreach,
         "a shift always escapes a square window; use theta-check instead");
  }
  std::uint64_t n = requested_n;
  if (const auto* perm = std::get_if<InjectionMap::Permutation>(&theta.rule())) {
    n = std::max<std::uint64_t>(std::max<std::uint64_t>(n, perm->images.size()), 1);
  } else {
    const auto& entries = std::get<InjectionMap::Table>(theta.rule()).entries;
    if (entries.empty()) fail(Errc::BadInput, "empty table");
    std::uint64_t max_needed = 0;
    for (const auto& [src, dst] : entries) {
      max_needed = std::max({max_needed, src, dst});
    }
    n = std::max(n, max_needed);
  }
  return injection_to_matrix(theta, n);
}

SparseSequence apply_any(const io::AnyOperator& op, const SparseSequence& x) {
  return std::visit([&x](const auto& inner) { return inner.apply(x); }, op);
}

int run_norm(const Options& opt) {
  json in = load_input(opt);
  SparseSequence a = io::sparse_from_json(in.at("a"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  NormResult result = luxemburg_norm(a, p, opt.tol);
  return emit(opt, "norm", in,
              {{"norm", result.value},
               {"residual", result.residual},
               {"iterations", result.iterations}},
              0);
}

int run_modular(const Options& opt) {
  json in = load_input(opt);
  SparseSequence a = io::sparse_from_json(in.at("a"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  return emit(opt, "modular", in, {{"modular", modular(a, p)}}, 0);
}

int run_clarkson(const Options& opt) {
  json in = load_input(opt);
  SparseSequence a = io::sparse_from_json(in.at("a"));
  SparseSequence b = io::sparse_from_json(in.at("b"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  ClarksonGapSample sample = clarkson_gap_sample(a, b, p);
  return emit(opt, "clarkson", in,
              {{"gap", sample.gap}, {"disjoint", sample.disjoint}}, 0);
}

int run_apply(const Options& opt) {
  json in = load_input(opt);
  io::AnyOperator op = io::operator_from_json(in.at("op"));
  SparseSequence x = io::sparse_from_json(in.at("x"));
  return emit(opt, "apply", in, {{"y", io::to_json(apply_any(op, x))}}, 0);
}

int run_check_op(const Options& opt) {
  json in = load_input(opt);
  io::AnyOperator op = io::operator_from_json(in.at("op"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  MatrixOperator m = to_matrix_window(op, opt.n);

  IsomodularCheckOptions cert_options;
  cert_options.seed = opt.seed;
  IsomodularCertificate cert = check_isomodular_structural(m, p, cert_options);
  int trials = opt.trials != 0 ? static_cast<int>(opt.trials) : 64;
  IsometryCheckResult isometry =
      check_isometry_randomized(m, p, trials, std::max(opt.tol, 1e-9), opt.seed);
  return emit(opt, "check-op", in,
              {{"isomodular", io::to_json(cert)}, {"isometry", io::to_json(isometry)}}, 0);
}

int run_recover(const Options& opt) {
  json in = load_input(opt);
  io::AnyOperator op = io::operator_from_json(in.at("op"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  MatrixOperator m = to_matrix_window(op, opt.n);
  try {
    RecoveredStructure structure = recover_structure(m, p);
    return emit(opt, "recover", in,
                {{"recovered", true}, {"structure", io::to_json(structure)}}, 0);
  } catch (const Error& e) {
    // A well-formed window that has no Lamperti form is an answer, not a
    // configuration error.
    if (e.code() == Errc::SupportOverlap || e.code() == Errc::EmptyColumn ||
        e.code() == Errc::RegimeViolation) {
      return emit(opt, "recover", in,
                  {{"recovered", false},
                   {"reason", {{"code", errc_name(e.code())}, {"message", e.what()}}}},
                  0);
    }
    throw;
  }
}

int run_theta_check(const Options& opt) {
  json in = load_input(opt);
  InjectionMap theta = io::injection_from_json(in.at("theta"));
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  std::uint64_t bound = opt.n != 0 ? opt.n : 64;
  ThetaDecision decision = theta_isometry_decision(theta, p, bound);

  json results = io::to_json(decision);
  if (!decision.isometric) {
    const SparseSequence& witness = *decision.witness;
    results["witness_norm"] = luxemburg_norm(witness, p, opt.tol).value;
    bool image_defined = true;
    for (const auto& [k, v] : witness.entries()) {
      if (!theta.image(k).has_value()) image_defined = false;
    }
    if (image_defined) {
      double image_norm = luxemburg_norm(theta.apply(witness), p, opt.tol).value;
      results["image_norm"] = image_norm;
      results["gap"] = std::abs(image_norm - 1.0);
    }
  }
  return emit(opt, "theta-check", in, std::move(results), 0);
}

int run_suite(const Options& opt, const std::string& name) {
  SuiteReport report;
  json inputs;
  if (name == "shift-dichotomy") {
    std::int64_t trials = opt.trials != 0 ? opt.trials : 2000;
    report = suite_shift_dichotomy(trials, opt.seed);
  } else {
    json in = load_input(opt);
    inputs = in;
    ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
    if (name == "clarkson") {
      report = suite_clarkson(p, opt.trials != 0 ? opt.trials : 10000, opt.seed);
    } else if (name == "orthogonality") {
      report = suite_orthogonality(p, opt.trials != 0 ? opt.trials : 200, opt.seed);
    } else if (name == "structure") {
      report = suite_structure_theorem(p, opt.trials != 0 ? opt.trials : 200, opt.seed);
    } else {
      fail(Errc::BadInput, "unknown suite " + name);
    }
  }
  return emit(opt, "suite", inputs, {{"report", report.to_json(!opt.deterministic)}},
              report.pass() ? 0 : 1);
}

int run_example(const Options& opt, const std::string& which) {
  std::uint64_t n = opt.n != 0 ? opt.n : 20;
  if (which == "41") {
    auto [modular_a, modular_sa] = reproduce_example_41(n);
    return emit(opt, "example", {{"example", which}},
                {{"modular_a", modular_a}, {"modular_Sa", modular_sa}}, 0);
  }
  if (which == "42") {
    SuiteReport report = reproduce_example_42(n);
    return emit(opt, "example", {{"example", which}},
                {{"report", report.to_json(!opt.deterministic)}},
                report.pass() ? 0 : 1);
  }
  fail(Errc::BadInput, "example must be 41 or 42");
}

int run_explore(const Options& opt) {
  json in = load_input(opt);
  ExponentSequence p = io::exponent_sequence_from_json(in.at("p"));
  std::int64_t budget = opt.trials != 0 ? opt.trials : 200;
  ExplorationReport report = explore_isometric_not_isomodular(p, budget, opt.seed);
  return emit(opt, "explore", in, {{"report", report.to_json()}}, 0);
}

void add_common(CLI::App* cmd, Options& opt, bool with_trials = true) {
  cmd->add_option("-i,--input", opt.input_path, "input JSON file, or - for stdin");
  cmd->add_option("--json", opt.inline_json, "inline input JSON");
  cmd->add_option("-o,--output", opt.output_path, "output file (default stdout)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--tol", opt.tol, "norm solver tolerance")->check(CLI::PositiveNumber);
  if (with_trials) cmd->add_option("--trials", opt.trials, "trial or budget count");
  cmd->add_option("--n", opt.n, "size parameter (window, bound or example length)");
  cmd->add_flag("--deterministic", opt.deterministic,
                "suppress timestamp and elapsed time for byte-stable output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent sequence space toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::string suite_name;
  std::string example_name;

  CLI::App* norm = app.add_subcommand("norm", "Luxemburg norm of a sequence");
  add_common(norm, opt, false);
  CLI::App* modular_cmd = app.add_subcommand("modular", "modular rho(a)");
  add_common(modular_cmd, opt, false);
  CLI::App* clarkson = app.add_subcommand("clarkson", "four-modular Clarkson gap");
  add_common(clarkson, opt, false);
  CLI::App* apply = app.add_subcommand("apply", "apply an operator to a sequence");
  add_common(apply, opt, false);
  CLI::App* check_op = app.add_subcommand("check-op", "isomodularity and isometry checks");
  add_common(check_op, opt);
  CLI::App* recover = app.add_subcommand("recover", "recover the (h, T) Lamperti form");
  add_common(recover, opt, false);
  CLI::App* theta = app.add_subcommand("theta-check", "exact S_theta isometry dichotomy");
  add_common(theta, opt, false);
  CLI::App* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("name", suite_name, "clarkson | orthogonality | structure | shift-dichotomy")
      ->required();
  add_common(suite, opt);
  CLI::App* example = app.add_subcommand("example", "reproduce a worked example");
  example->add_option("which", example_name, "41 | 42")->required();
  add_common(example, opt, false);
  CLI::App* explore = app.add_subcommand("explore",
                                         "search for isometric-but-not-isomodular operators");
  add_common(explore, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    nlohmann::ordered_json err;
    err["tool"] = {{"name", varlp::kToolName}, {"version", varlp::kToolVersion}};
    err["error"] = {{"code", "bad_flags"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }

  std::string command = "?";
  try {
    if (norm->parsed()) command = "norm";
    if (modular_cmd->parsed()) command = "modular";
    if (clarkson->parsed()) command = "clarkson";
    if (apply->parsed()) command = "apply";
    if (check_op->parsed()) command = "check-op";
    if (recover->parsed()) command = "recover";
    if (theta->parsed()) command = "theta-check";
    if (suite->parsed()) command = "suite";
    if (example->parsed()) command = "example";
    if (explore->parsed()) command = "explore";

    if (norm->parsed()) return run_norm(opt);
    if (modular_cmd->parsed()) return run_modular(opt);
    if (clarkson->parsed()) return run_clarkson(opt);
    if (apply->parsed()) return run_apply(opt);
    if (check_op->parsed()) return run_check_op(opt);
    if (recover->parsed()) return run_recover(opt);
    if (theta->parsed()) return run_theta_check(opt);
    if (suite->parsed()) return run_suite(opt, suite_name);
    if (example->parsed()) return run_example(opt, example_name);
    if (explore->parsed()) return run_explore(opt);
  } catch (const varlp::Error& e) {
    return emit_error(opt, command, e);
  } catch (const nlohmann::json::exception& e) {
    return emit_error(opt, command,
                      varlp::Error(varlp::Errc::BadInput,
                                   std::string("malformed input: ") + e.what()));
  }
  return 2;
}
