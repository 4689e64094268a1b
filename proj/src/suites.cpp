#include "varlp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "varlp/errors.hpp"
#include "varlp/json_io.hpp"
#include "varlp/kahan.hpp"
#include "varlp/modular.hpp"
#include "varlp/rng.hpp"
#include "varlp/sampling.hpp"

namespace varlp {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

ordered_json failure_json(std::int64_t trial, const std::string& check,
                          const std::string& expected, ordered_json observed) {
  ordered_json f;
  f["trial"] = trial;
  f["check"] = check;
  f["expected"] = expected;
  f["observed"] = std::move(observed);
  return f;
}

// Per-trial slot. Trials fill their own slot; aggregation walks the slots in
// index order afterwards, so parallel and serial runs produce identical
// reports no matter how the loop was scheduled.
struct TrialResult {
  std::vector<ordered_json> failures;
  std::vector<std::pair<std::string, double>> min_metrics;
  std::vector<std::pair<std::string, double>> max_metrics;
  std::vector<std::pair<std::string, double>> add_metrics;

  void fail_check(std::int64_t trial, const std::string& check,
                  const std::string& expected, ordered_json observed) {
    failures.push_back(failure_json(trial, check, expected, std::move(observed)));
  }
  void metric_min(std::string key, double v) { min_metrics.emplace_back(std::move(key), v); }
  void metric_max(std::string key, double v) { max_metrics.emplace_back(std::move(key), v); }
  void metric_add(std::string key, double v) { add_metrics.emplace_back(std::move(key), v); }
};

template <typename Body>
void run_trials(ExecMode mode, std::int64_t n, std::vector<TrialResult>& slots,
                const Body& body) {
  slots.assign(static_cast<std::size_t>(n), TrialResult{});
  auto guarded = [&](std::int64_t i) {
    try {
      body(i, slots[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      slots[static_cast<std::size_t>(i)].fail_check(i, "exception", "no exception",
                                                    ordered_json{{"what", e.what()}});
    }
  };
#ifdef _OPENMP
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) guarded(i);
    return;
  }
#else
  (void)mode;
#endif
  for (std::int64_t i = 0; i < n; ++i) guarded(i);
}

SuiteReport finalize(std::string suite, std::uint64_t seed, std::int64_t trials,
                     std::vector<TrialResult>&& slots, Clock::time_point started) {
  SuiteReport report;
  report.suite = std::move(suite);
  report.seed = seed;
  report.trials = trials;
  std::map<std::string, double> adds;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(slots.size()); ++i) {
    TrialResult& slot = slots[static_cast<std::size_t>(i)];
    for (auto& f : slot.failures) report.failures.push_back({i, std::move(f)});
    for (auto& [key, v] : slot.min_metrics) {
      auto it = report.metrics.find(key);
      if (it == report.metrics.end()) {
        report.metrics.emplace(key, v);
      } else {
        it->second = std::min(it->second, v);
      }
    }
    for (auto& [key, v] : slot.max_metrics) {
      auto it = report.metrics.find(key);
      if (it == report.metrics.end()) {
        report.metrics.emplace(key, v);
      } else {
        it->second = std::max(it->second, v);
      }
    }
    for (auto& [key, v] : slot.add_metrics) adds[key] += v;
  }
  for (auto& [key, v] : adds) report.metrics[key] = v;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - started).count();
  return report;
}

SparseSequence random_vector_on(const std::vector<Index>& keys, RandomSource& rs,
                                double radius, std::size_t max_support) {
  std::vector<SparseSequence::Entry> entries;
  std::size_t size = rs.index(1, std::min(max_support, keys.size()));
  for (std::size_t i = 0; i < size; ++i) {
    entries.emplace_back(keys[rs.index(0, keys.size() - 1)], rs.on_disk(radius));
  }
  return SparseSequence::from_entries(std::move(entries));
}

std::vector<Index> column_keys(const MatrixOperator& m) {
  std::vector<Index> keys;
  keys.reserve(m.columns().size());
  for (const auto& [k, col] : m.columns()) keys.push_back(k);
  return keys;
}

void require_restricted(const ExponentSequence& p, const char* where) {
  if (classify_regime(p) == Regime::Mixed) {
    fail(Errc::RegimeViolation, std::string(where) + " requires a non-mixed regime");
  }
}

}  // namespace

ordered_json SuiteReport::to_json(bool include_elapsed) const {
  ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["trials"] = trials;
  j["pass"] = pass();
  j["failures"] = ordered_json::array();
  for (const FailureRecord& f : failures) j["failures"].push_back(f.data);
  j["metrics"] = ordered_json::object();
  for (const auto& [key, v] : metrics) j["metrics"][key] = v;
  if (include_elapsed) j["elapsed_ms"] = elapsed_ms;
  return j;
}

SuiteReport suite_clarkson(const ExponentSequence& p, std::int64_t trials,
                           std::uint64_t seed, ExecMode mode) {
  require_restricted(p, "suite_clarkson");
  const bool above = classify_regime(p) == Regime::AllAboveTwo;
  auto started = Clock::now();

  std::vector<TrialResult> slots;
  run_trials(mode, trials, slots, [&](std::int64_t i, TrialResult& out) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    SparseSequence a, b;
    const int branch = static_cast<int>(i % 3);
    if (branch == 0) {
      std::tie(a, b) = sample_disjoint_pair(rs);
    } else if (branch == 1) {
      std::tie(a, b) = sample_overlapping_pair(rs);
    } else {
      std::tie(a, b) = sample_generic_pair(rs);
    }

    ClarksonGapSample sample = clarkson_gap_sample(a, b, p);
    auto observed = [&]() {
      return ordered_json{{"a", io::to_json(a)},
                          {"b", io::to_json(b)},
                          {"gap", sample.gap},
                          {"disjoint", sample.disjoint}};
    };

    double excess = above ? -sample.gap : sample.gap;
    out.metric_max("worst_sign_excess", excess);
    if (excess > 1e-9) {
      out.fail_check(i, "clarkson_sign",
                     above ? "gap >= -1e-9 in all-above-two regime"
                           : "gap <= 1e-9 in all-below-two regime",
                     observed());
    }
    if (sample.disjoint) {
      out.metric_max("max_abs_gap_disjoint", std::abs(sample.gap));
      out.metric_add("disjoint_trials", 1.0);
      if (std::abs(sample.gap) > 1e-9) {
        out.fail_check(i, "clarkson_equality_disjoint", "|gap| <= 1e-9 when ab = 0",
                       observed());
      }
    }
    if (branch == 1) {
      out.metric_min("min_abs_gap_overlap", std::abs(sample.gap));
      out.metric_add("overlap_trials", 1.0);
      if (!(std::abs(sample.gap) > 1e-6)) {
        out.fail_check(i, "clarkson_strictness",
                       "|gap| > 1e-6 with floored entries at a shared index",
                       observed());
      }
    }
  });
  return finalize("clarkson", seed, trials, std::move(slots), started);
}

ClarksonGapSample clarkson_gap_sample(const SparseSequence& a, const SparseSequence& b,
                                      const ExponentSequence& p) {
  ClarksonGapSample sample;
  sample.a = a;
  sample.b = b;
  sample.gap = clarkson_gap(a, b, p);
  sample.disjoint = supports_disjoint(a, b);
  return sample;
}

std::vector<std::string> orthogonality_violations(const MatrixOperator& m,
                                                  const ExponentSequence& p,
                                                  std::uint64_t seed) {
  std::vector<std::string> violations;

  // Basis pairs are exhaustive: images of e_j, e_k are the columns.
  std::unordered_map<Index, Index> owner;
  for (const auto& [k, col] : m.columns()) {
    for (Index n : col.support()) {
      auto [it, fresh] = owner.try_emplace(n, k);
      if (!fresh) {
        violations.push_back("columns " + std::to_string(it->second) + " and " +
                             std::to_string(k) + " share support index " +
                             std::to_string(n));
      }
    }
  }

  std::vector<Index> keys = column_keys(m);
  if (keys.size() >= 2) {
    RandomSource rs(seed);
    for (int round = 0; round < 8; ++round) {
      // Random disjoint-support pair split across the mapped columns.
      std::vector<Index> shuffled = keys;
      for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rs.index(0, i - 1)]);
      }
      std::size_t cut = rs.index(1, shuffled.size() - 1);
      std::vector<SparseSequence::Entry> ea, eb;
      for (std::size_t i = 0; i < shuffled.size(); ++i) {
        if (rs.coin(0.4)) continue;  // keep supports sparse
        (i < cut ? ea : eb).emplace_back(shuffled[i], rs.on_disk(5.0));
      }
      SparseSequence a = SparseSequence::from_entries(std::move(ea));
      SparseSequence b = SparseSequence::from_entries(std::move(eb));
      if (a.is_zero() || b.is_zero()) continue;
      if (!supports_disjoint(m.apply(a), m.apply(b))) {
        violations.push_back("images of a disjoint pair overlap (round " +
                             std::to_string(round) + ")");
      }
    }
  }
  (void)p;
  return violations;
}

std::vector<std::string> structure_violations(const MatrixOperator& m,
                                              const ExponentSequence& p,
                                              std::uint64_t seed) {
  std::vector<std::string> violations;

  IsomodularCheckOptions options;
  options.seed = seed;
  IsomodularCertificate cert = check_isomodular_structural(m, p, options);
  if (cert.verdict != IsomodularVerdict::Isomodular) {
    violations.push_back(std::string("certificate verdict is ") +
                         isomodular_verdict_name(cert.verdict));
  }

  std::optional<RecoveredStructure> recovered;
  try {
    recovered = recover_structure(m, p);
  } catch (const Error& e) {
    violations.push_back(std::string("recovery failed: ") + e.what());
  }
  if (!recovered) return violations;

  for (const auto& [n, h] : recovered->multiplier.entries()) {
    if (std::abs(h) > 1.0 + 1e-12) {
      violations.push_back("multiplier modulus " + std::to_string(std::abs(h)) +
                           " at index " + std::to_string(n) + " exceeds 1");
    }
  }

  // Entrywise reconstruction: column k must equal h restricted to T{k}.
  for (const auto& [k, col] : m.columns()) {
    std::vector<SparseSequence::Entry> rebuilt;
    for (Index n : recovered->iso.image_of(k)) {
      Complex h = recovered->multiplier.at(n);
      if (h != Complex(0.0, 0.0)) rebuilt.emplace_back(n, h);
    }
    if (SparseSequence::from_entries(std::move(rebuilt)) != col) {
      violations.push_back("reconstruction mismatch at column " + std::to_string(k));
    }
  }

  // Action identity (Mx)_n = h_n (Tx)_n and modular preservation on random x.
  RandomSource rs(seed ^ 0x5bf03635ULL);
  std::vector<Index> keys = column_keys(m);
  for (int round = 0; round < 8; ++round) {
    SparseSequence x = random_vector_on(keys, rs, 5.0, 8);
    SparseSequence moved = recovered->iso.extend_to_sequence(x);
    std::vector<SparseSequence::Entry> action;
    for (const auto& [n, v] : moved.entries()) {
      Complex h = recovered->multiplier.at(n);
      if (h != Complex(0.0, 0.0)) action.emplace_back(n, h * v);
    }
    SparseSequence lamperti_form = SparseSequence::from_entries(std::move(action));
    SparseSequence direct = m.apply(x);
    if ((direct - lamperti_form).sup_norm() > 1e-12 * std::max(1.0, x.sup_norm())) {
      violations.push_back("action identity violated (round " + std::to_string(round) +
                           ")");
    }
    double rho_x = modular(x, p);
    double rho_mx = modular(direct, p);
    if (std::abs(rho_mx - rho_x) > 1e-10 * std::max(1.0, rho_x)) {
      violations.push_back("modular probe mismatch (round " + std::to_string(round) +
                           "): " + std::to_string(rho_x) + " vs " +
                           std::to_string(rho_mx));
    }
  }
  return violations;
}

SuiteReport suite_orthogonality(const ExponentSequence& p, std::int64_t op_samples,
                                std::uint64_t seed, ExecMode mode) {
  require_restricted(p, "suite_orthogonality");
  auto started = Clock::now();

  std::vector<TrialResult> slots;
  run_trials(mode, op_samples, slots, [&](std::int64_t i, TrialResult& out) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    GeneratedIsomodular gen = sample_isomodular_operator(p, rs);

    IsomodularCheckOptions options;
    options.seed = rs.next_u64();
    IsomodularCertificate cert = check_isomodular_structural(gen.matrix, p, options);
    if (cert.verdict != IsomodularVerdict::Isomodular) {
      out.fail_check(i, "generator_certificate", "generated operator certifies isomodular",
                     ordered_json{{"verdict", isomodular_verdict_name(cert.verdict)}});
    }
    for (const std::string& v : orthogonality_violations(gen.matrix, p, rs.next_u64())) {
      out.fail_check(i, "orthogonality", "images of disjoint pairs stay disjoint",
                     ordered_json{{"violation", v}});
    }
  });
  return finalize("orthogonality", seed, op_samples, std::move(slots), started);
}

SuiteReport suite_structure_theorem(const ExponentSequence& p, std::int64_t op_samples,
                                    std::uint64_t seed, ExecMode mode) {
  require_restricted(p, "suite_structure_theorem");
  auto started = Clock::now();

  std::vector<TrialResult> slots;
  run_trials(mode, op_samples, slots, [&](std::int64_t i, TrialResult& out) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    GeneratedIsomodular gen = sample_isomodular_operator(p, rs);
    for (const std::string& v : structure_violations(gen.matrix, p, rs.next_u64())) {
      out.fail_check(i, "structure_roundtrip",
                     "recovery, reconstruction, |h|<=1, action identity, modular probes",
                     ordered_json{{"violation", v}});
    }
    out.metric_max("max_image_size",
                   static_cast<double>(gen.op.set_iso().image_bound().max_image_size));
  });
  return finalize("structure_theorem", seed, op_samples, std::move(slots), started);
}

namespace {

// Ground truth for the dichotomy, written against the sequence description
// rather than through theta_isometry_decision.
bool exact_exponent_match(const InjectionMap& theta, const ExponentSequence& p,
                          Index window) {
  for (Index n = 1; n <= window; ++n) {
    if (p.at(n) != p.at(theta.image_or_throw(n))) return false;
  }
  return true;
}

std::uint64_t pattern_length(const ExponentSequence& p) {
  if (const auto* tail = std::get_if<ExponentSequence::PeriodicTail>(&p.tail())) {
    return tail->pattern.size();
  }
  return 1;
}

}  // namespace

SuiteReport suite_shift_dichotomy(std::int64_t trials, std::uint64_t seed, ExecMode mode) {
  auto started = Clock::now();

  std::vector<TrialResult> slots;
  run_trials(mode, trials, slots, [&](std::int64_t i, TrialResult& out) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    ExponentSequence p = sample_palette_exponent_sequence(rs);

    InjectionMap theta = InjectionMap::shift(1);
    Index window = 1;
    Index probe_bound = 1;
    bool is_shift = false;
    std::uint64_t offset = 0;

    switch (rs.index(0, 2)) {
      case 0: {
        is_shift = true;
        offset = rs.index(1, 4);
        theta = InjectionMap::shift(offset);
        // One full tail period past the prefix fixes every larger index.
        window = p.prefix().size() + pattern_length(p) + 2;
        probe_bound = window;
        break;
      }
      case 1: {
        std::size_t size = rs.index(2, 6);
        theta = sample_permutation(rs, size);
        window = size;
        probe_bound = size;
        break;
      }
      default: {
        std::size_t size = rs.index(2, 6);
        std::vector<std::pair<Index, Index>> entries;
        std::vector<Index> targets;
        for (Index n = 1; n <= size; ++n) {
          Index t;
          do {
            t = rs.index(1, 24);
          } while (std::find(targets.begin(), targets.end(), t) != targets.end());
          targets.push_back(t);
          entries.emplace_back(n, t);
        }
        theta = InjectionMap::table(std::move(entries));
        window = size;
        probe_bound = size;
        break;
      }
    }

    ThetaDecision decision = theta_isometry_decision(theta, p, window);

    bool truth = exact_exponent_match(theta, p, window);
    if (decision.isometric != truth) {
      out.fail_check(i, "dichotomy_decision", "decision matches p_n == p_theta(n)",
                     ordered_json{{"decision", decision.isometric}, {"truth", truth}});
    }

    if (is_shift) {
      if (auto period = p.pure_period()) {
        bool divides = offset % *period == 0;
        if (decision.isometric != divides) {
          out.fail_check(i, "shift_period_rule",
                         "Shift(k) isometric exactly when the period divides k",
                         ordered_json{{"offset", offset},
                                      {"period", *period},
                                      {"decision", decision.isometric}});
        }
      }
    }

    IsometryCheckResult check =
        check_injection_isometry(theta, p, probe_bound, 8, 1e-9, rs.next_u64());
    if (check.pass != decision.isometric) {
      out.fail_check(i, "randomized_agreement",
                     "randomized norm check agrees with the exact decision",
                     ordered_json{{"decision", decision.isometric},
                                  {"check_pass", check.pass},
                                  {"samples", check.samples}});
    }

    if (!decision.isometric) {
      out.metric_add("not_isometric_trials", 1.0);
      const SparseSequence& witness = *decision.witness;
      double norm_b = luxemburg_norm(witness, p).value;
      if (std::abs(norm_b - 1.0) > 1e-9) {
        out.fail_check(i, "witness_unit_norm", "||b|| = 1 +- 1e-9",
                       ordered_json{{"norm", norm_b}});
      }
      // The image norm needs theta at both witness indices; a truncated
      // table may not reach that far, in which case the contract is not
      // evaluable at this window.
      bool image_defined = true;
      for (const auto& [n, v] : witness.entries()) {
        if (!theta.image(n).has_value()) image_defined = false;
      }
      if (image_defined) {
        double norm_sb = luxemburg_norm(theta.apply(witness), p).value;
        double gap = std::abs(norm_sb - 1.0);
        out.metric_min("min_witness_gap", gap);
        out.metric_add("witness_gap_checked", 1.0);
        if (!(gap > 1e-6)) {
          out.fail_check(i, "witness_gap", "| ||S_theta b|| - 1 | > 1e-6",
                         ordered_json{{"image_norm", norm_sb}, {"gap", gap}});
        }
      }
    } else {
      out.metric_add("isometric_trials", 1.0);
    }
  });
  return finalize("shift_dichotomy", seed, trials, std::move(slots), started);
}

namespace {

SparseSequence example_41_sequence(std::uint64_t n_terms) {
  std::vector<SparseSequence::Entry> entries;
  entries.reserve(n_terms);
  for (std::uint64_t k = 1; k <= n_terms; ++k) {
    entries.emplace_back(2 * k, Complex(1.0 / static_cast<double>(k), 0.0));
  }
  return SparseSequence::from_entries(std::move(entries));
}

double harmonic_partial(std::uint64_t n) {
  KahanSum sum;
  for (std::uint64_t k = 1; k <= n; ++k) sum.add(1.0 / static_cast<double>(k));
  return sum.value();
}

}  // namespace

std::pair<double, double> reproduce_example_41(std::uint64_t n_terms) {
  if (n_terms == 0) fail(Errc::BadInput, "need at least one term");
  ExponentSequence p = ExponentSequence::periodic({1.0, 2.0});
  SparseSequence a = example_41_sequence(n_terms);
  double modular_a = modular(a, p);
  double modular_sa = modular(apply_injection(InjectionMap::shift(1), a), p);
  return {modular_a, modular_sa};
}

SuiteReport reproduce_example_42(std::uint64_t n_terms) {
  if (n_terms == 0) fail(Errc::BadInput, "need at least one term");
  auto started = Clock::now();
  ExponentSequence p = ExponentSequence::periodic({1.0, 2.0});
  SparseSequence a = example_41_sequence(n_terms);

  // Gamma(n) = n - (-1)^n swaps each odd/even pair; a permutation of 1..2N.
  std::vector<Index> images(2 * n_terms);
  for (Index n = 1; n <= 2 * n_terms; ++n) {
    images[n - 1] = (n % 2 == 1) ? n + 1 : n - 1;
  }
  InjectionMap gamma = InjectionMap::permutation(std::move(images));

  double modular_image = modular(apply_injection(gamma, a), p);
  double harmonic = harmonic_partial(n_terms);

  std::vector<TrialResult> slots(1);
  TrialResult& out = slots[0];
  if (std::abs(modular_image - harmonic) > 1e-12 * std::max(1.0, harmonic)) {
    out.fail_check(0, "harmonic_match", "modular(S_Gamma a) equals the harmonic partial",
                   ordered_json{{"modular", modular_image}, {"harmonic", harmonic}});
  }
  if (n_terms >= 2) {
    SparseSequence shorter = example_41_sequence(n_terms - 1);
    double previous = modular(apply_injection(gamma, shorter), p);
    if (!(modular_image > previous)) {
      out.fail_check(0, "monotone_growth", "partial modulars strictly increase",
                     ordered_json{{"previous", previous}, {"current", modular_image}});
    }
  }
  out.metric_max("modular_sga", modular_image);
  out.metric_max("harmonic_partial", harmonic);
  out.metric_max("modular_a", modular(a, p));

  return finalize("example_42", 0, static_cast<std::int64_t>(n_terms), std::move(slots),
                  started);
}

ordered_json ExplorationReport::to_json() const {
  ordered_json j;
  j["suite"] = "explore_isometric_not_isomodular";
  j["seed"] = seed;
  j["budget"] = budget;
  j["candidates"] = ordered_json::array();
  for (const auto& c : candidates) j["candidates"].push_back(c);
  j["note"] = note;
  return j;
}

ExplorationReport explore_isometric_not_isomodular(const ExponentSequence& p,
                                                   std::int64_t budget, std::uint64_t seed,
                                                   ExecMode mode) {
  if (budget < 1) fail(Errc::BadInput, "budget must be >= 1");

  std::vector<TrialResult> slots;
  run_trials(mode, budget, slots, [&](std::int64_t i, TrialResult& out) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    std::optional<MatrixOperator> candidate;
    std::string strategy;

    switch (i % 3) {
      case 0: {
        // Isomodular operator with one multiplier entry inflated: breaks the
        // modular, and (by the structure theorem) should break the norm too.
        GeneratedIsomodular gen =
            sample_isomodular_operator(p, rs, {.dimension = 24, .column_count = 6});
        std::vector<MatrixOperator::Column> columns = gen.matrix.columns();
        SparseSequence& col = columns[rs.index(0, columns.size() - 1)].second;
        std::vector<SparseSequence::Entry> entries = col.entries();
        entries[rs.index(0, entries.size() - 1)].second *= rs.uniform(1.05, 1.3);
        col = SparseSequence::from_entries(std::move(entries));
        candidate.emplace(gen.matrix.dimension(), std::move(columns));
        strategy = "perturbed_isomodular";
        break;
      }
      case 1: {
        // Random columns scaled to unit norm: basis probes pass, cross terms
        // usually do not.
        std::vector<MatrixOperator::Column> columns;
        for (Index k = 1; k <= 6; ++k) {
          SparseSequence col = sample_sparse(rs, {.max_index = 16, .max_support = 3});
          double norm = luxemburg_norm(col, p).value;
          columns.emplace_back(k, Complex(1.0 / norm, 0.0) * col);
        }
        candidate.emplace(16, std::move(columns));
        strategy = "unit_columns";
        break;
      }
      default: {
        // Plane rotation on two equal-exponent coordinates; isometric only
        // where the exponent is 2, and there it preserves the modular too.
        Index j = rs.index(1, 8);
        Index k = rs.index(1, 8);
        if (j == k) k = (k % 8) + 1;
        if (p.at(j) != p.at(k)) {
          out.metric_add("skipped_rotations", 1.0);
          return;
        }
        double phi = rs.uniform(0.2, 1.3);
        double c = std::cos(phi), s = std::sin(phi);
        std::vector<MatrixOperator::Column> columns;
        columns.emplace_back(j, Complex(c, 0.0) * SparseSequence::basis(j) +
                                    Complex(s, 0.0) * SparseSequence::basis(k));
        columns.emplace_back(k, Complex(-s, 0.0) * SparseSequence::basis(j) +
                                    Complex(c, 0.0) * SparseSequence::basis(k));
        candidate.emplace(8, std::move(columns));
        strategy = "rotation";
        break;
      }
    }
    if (!candidate) return;

    IsometryCheckResult isometry =
        check_isometry_randomized(*candidate, p, 48, 1e-10, rs.next_u64());
    out.metric_add("isometry_passes", isometry.pass ? 1.0 : 0.0);
    if (!isometry.pass) return;

    // Modular-equality probe over the mapped columns.
    std::vector<Index> keys = column_keys(*candidate);
    RandomSource probe_rs(rs.next_u64());
    std::optional<SparseSequence> modular_witness;
    double witness_gap = 0.0;
    for (int round = 0; round < 64 && !modular_witness; ++round) {
      SparseSequence x = random_vector_on(keys, probe_rs, 3.0, 6);
      double rho_x = modular(x, p);
      double rho_mx = modular(candidate->apply(x), p);
      double gap = std::abs(rho_mx - rho_x);
      if (gap > 1e-8 + 1e-10 * std::max(rho_x, rho_mx)) {
        modular_witness = x;
        witness_gap = gap;
      }
    }
    if (!modular_witness) return;

    // Confirmation pass at 10x tighter tolerance before reporting.
    IsometryCheckResult confirm =
        check_isometry_randomized(*candidate, p, 96, 1e-11, rs.next_u64());
    if (!confirm.pass) return;
    double rho_x = modular(*modular_witness, p);
    double rho_mx = modular(candidate->apply(*modular_witness), p);
    if (std::abs(rho_mx - rho_x) <= 10.0 * (1e-9 + 1e-11 * std::max(rho_x, rho_mx))) {
      return;
    }

    ordered_json c;
    c["trial"] = i;
    c["strategy"] = strategy;
    c["operator"] = io::to_json(*candidate);
    c["modular_witness"] = io::to_json(*modular_witness);
    c["modular_gap"] = witness_gap;
    out.failures.push_back(std::move(c));  // slot reuse; relabeled below
  });

  ExplorationReport report;
  report.seed = seed;
  report.budget = budget;
  for (auto& slot : slots) {
    for (auto& c : slot.failures) {
      if (c.contains("strategy")) report.candidates.push_back(std::move(c));
    }
  }
  report.note =
      "an empty candidate list is NOT evidence that isometric implies isomodular; "
      "this is a finite randomized search, and every candidate above survived a "
      "second confirmation pass at 10x tighter tolerance";
  return report;
}

FaultInjectionSummary inject_multiplier_faults(const ExponentSequence& p,
                                               std::int64_t count, std::uint64_t seed) {
  FaultInjectionSummary summary;
  for (std::int64_t i = 0; i < count; ++i) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    GeneratedIsomodular gen = sample_isomodular_operator(p, rs);

    std::vector<MatrixOperator::Column> columns = gen.matrix.columns();
    SparseSequence& col = columns[rs.index(0, columns.size() - 1)].second;
    std::vector<SparseSequence::Entry> entries = col.entries();
    Complex& v = entries[rs.index(0, entries.size() - 1)].second;
    v *= 1.2 / std::abs(v);  // modulus exactly 1.2, phase kept
    col = SparseSequence::from_entries(std::move(entries));
    MatrixOperator corrupted(gen.matrix.dimension(), std::move(columns));

    ++summary.injected;
    if (!structure_violations(corrupted, p, rs.next_u64()).empty()) ++summary.detected;
  }
  return summary;
}

FaultInjectionSummary inject_overlap_faults(const ExponentSequence& p, std::int64_t count,
                                            std::uint64_t seed) {
  FaultInjectionSummary summary;
  for (std::int64_t i = 0; i < count; ++i) {
    RandomSource rs = RandomSource::for_trial(seed, static_cast<std::uint64_t>(i));
    GeneratedIsomodular gen = sample_isomodular_operator(p, rs);

    std::vector<MatrixOperator::Column> columns = gen.matrix.columns();
    std::size_t j = rs.index(0, columns.size() - 1);
    std::size_t k = rs.index(0, columns.size() - 1);
    if (j == k) k = (k + 1) % columns.size();
    Index stolen = columns[j].second.entries().front().first;
    std::vector<SparseSequence::Entry> entries = columns[k].second.entries();
    entries.emplace_back(stolen, Complex(0.5, 0.0));
    columns[k].second = SparseSequence::from_entries(std::move(entries));
    MatrixOperator corrupted(gen.matrix.dimension(), std::move(columns));

    ++summary.injected;
    if (!orthogonality_violations(corrupted, p, rs.next_u64()).empty()) ++summary.detected;
  }
  return summary;
}

}  // namespace varlp
