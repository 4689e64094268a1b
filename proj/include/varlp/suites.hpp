#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "varlp/exponents.hpp"
#include "varlp/operators.hpp"
#include "varlp/sparse.hpp"

namespace varlp {

// Trial loops are independent; Parallel runs them under OpenMP with
// per-trial seeds and order-independent aggregation, so a report is
// byte-identical to the Serial reference (elapsed time aside).
enum class ExecMode { Serial, Parallel };

struct FailureRecord {
  std::int64_t trial = 0;
  nlohmann::ordered_json data;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::vector<FailureRecord> failures;  // sorted by trial index
  std::map<std::string, double> metrics;
  double elapsed_ms = 0.0;

  bool pass() const { return failures.empty(); }
  nlohmann::ordered_json to_json(bool include_elapsed) const;
};

// Clarkson sign and equality cases: gap = rho(a+b) + rho(a-b) - 2rho(a)
// - 2rho(b) is >= 0 for all-above-two exponents, <= 0 for all-below-two,
// exactly 0 for disjoint supports, and bounded away from 0 when a shared
// index carries entries above the magnitude floor.
SuiteReport suite_clarkson(const ExponentSequence& p, std::int64_t trials,
                           std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

// Generated isomodular operators map disjoint-support pairs to
// disjoint-support pairs; column pairs are checked exhaustively.
SuiteReport suite_orthogonality(const ExponentSequence& p, std::int64_t op_samples,
                                std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

// Structure recovery round-trip: certificate, (T, h) read-off, entrywise
// reconstruction, |h| <= 1, pointwise action identity, modular probes.
SuiteReport suite_structure_theorem(const ExponentSequence& p, std::int64_t op_samples,
                                    std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

// Exact exponent-match dichotomy for S_theta against the randomized norm
// check, witness gap contract, and the period-divides-k shift rule.
SuiteReport suite_shift_dichotomy(std::int64_t trials, std::uint64_t seed,
                                  ExecMode mode = ExecMode::Parallel);

struct ClarksonGapSample {
  SparseSequence a;
  SparseSequence b;
  double gap = 0.0;
  bool disjoint = false;
};

ClarksonGapSample clarkson_gap_sample(const SparseSequence& a, const SparseSequence& b,
                                      const ExponentSequence& p);

// a^(N) = sum_{k<=N} (1/k) e_{2k} with p = (1,2,1,2,...): the modular of
// a^(N) stays below pi^2/6 while the shifted image's modular is the N-th
// harmonic number. Returns (modular_a, modular_Sa).
std::pair<double, double> reproduce_example_41(std::uint64_t n_terms);

// Same a^(N) under the adjacent-transposition permutation; the image
// modular again grows like H_N even though the map is a bijection.
SuiteReport reproduce_example_42(std::uint64_t n_terms);

struct ExplorationReport {
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  std::vector<nlohmann::ordered_json> candidates;
  std::string note;
  nlohmann::ordered_json to_json() const;
};

// Random search for operators that pass the isometry probe but fail modular
// equality. Candidates are re-confirmed at 10x tighter tolerance before
// being reported. An empty list is not evidence of a theorem; the report
// says so explicitly.
ExplorationReport explore_isometric_not_isomodular(const ExponentSequence& p,
                                                   std::int64_t budget, std::uint64_t seed,
                                                   ExecMode mode = ExecMode::Parallel);

// Verification cores shared between the suites and the fault-injection
// harness: empty result means the operator window passed every check.
std::vector<std::string> structure_violations(const MatrixOperator& m,
                                              const ExponentSequence& p,
                                              std::uint64_t seed);
std::vector<std::string> orthogonality_violations(const MatrixOperator& m,
                                                  const ExponentSequence& p,
                                                  std::uint64_t seed);

struct FaultInjectionSummary {
  std::int64_t injected = 0;
  std::int64_t detected = 0;
};

// Corrupts one multiplier value of a generated isomodular operator to
// modulus 1.2 and counts how many corruptions the structure suite flags.
FaultInjectionSummary inject_multiplier_faults(const ExponentSequence& p,
                                               std::int64_t count, std::uint64_t seed);

// Copies a support index from one column into another and counts detection
// by the orthogonality checks.
FaultInjectionSummary inject_overlap_faults(const ExponentSequence& p, std::int64_t count,
                                            std::uint64_t seed);

}  // namespace varlp
