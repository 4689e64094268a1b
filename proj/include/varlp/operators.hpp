#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "varlp/exponents.hpp"
#include "varlp/set_iso.hpp"
#include "varlp/sparse.hpp"

namespace varlp {

// Multiplier-plus-set-isomorphism operator: (Sx)_n = h_n (Tx)_n.
// Requires |h_n| <= 1 and h supported inside the range of T.
class LampertiOperator {
 public:
  LampertiOperator(SparseSequence multiplier, RegularSetIso set_iso);

  const SparseSequence& multiplier() const { return multiplier_; }
  const RegularSetIso& set_iso() const { return set_iso_; }

  SparseSequence apply(const SparseSequence& x) const;

  bool operator==(const LampertiOperator&) const = default;

 private:
  SparseSequence multiplier_;
  RegularSetIso set_iso_;
};

SparseSequence apply_lamperti(const LampertiOperator& op, const SparseSequence& x);

// Injective self-map of N: a shift n -> n+k, a finite permutation table
// extended by the identity, or an explicit finite injective table.
class InjectionMap {
 public:
  struct Shift {
    std::uint64_t offset;  // >= 1
    bool operator==(const Shift&) const = default;
  };
  struct Permutation {
    std::vector<Index> images;  // images[i] = theta(i+1); bijection of 1..size
    bool operator==(const Permutation&) const = default;
  };
  struct Table {
    std::vector<std::pair<Index, Index>> entries;  // sorted by source, injective
    bool operator==(const Table&) const = default;
  };
  using Rule = std::variant<Shift, Permutation, Table>;

  explicit InjectionMap(Rule rule);

  static InjectionMap shift(std::uint64_t offset);
  static InjectionMap permutation(std::vector<Index> images);
  static InjectionMap table(std::vector<std::pair<Index, Index>> entries);

  const Rule& rule() const { return rule_; }

  // theta(n); nullopt when n is outside a Table's domain.
  std::optional<Index> image(Index n) const;
  Index image_or_throw(Index n) const;
  bool total() const;

  // S_theta x: moves x_n to position theta(n).
  SparseSequence apply(const SparseSequence& x) const;

  bool operator==(const InjectionMap&) const = default;

 private:
  Rule rule_;
};

SparseSequence apply_injection(const InjectionMap& theta, const SparseSequence& x);

// Finite window of a linear operator: columns[k] = S e_k with supports in
// 1..dimension. The column map may be partial; the action is defined for
// vectors supported on the mapped columns.
class MatrixOperator {
 public:
  using Column = std::pair<Index, SparseSequence>;

  MatrixOperator(std::uint64_t dimension, std::vector<Column> columns);

  std::uint64_t dimension() const { return dimension_; }
  const std::vector<Column>& columns() const { return columns_; }
  const SparseSequence* column(Index k) const;  // nullptr when unmapped
  bool has_column(Index k) const { return column(k) != nullptr; }

  SparseSequence apply(const SparseSequence& a) const;

  bool operator==(const MatrixOperator&) const = default;

 private:
  std::uint64_t dimension_ = 0;
  std::vector<Column> columns_;  // sorted by key
};

MatrixOperator lamperti_to_matrix(const LampertiOperator& op, std::uint64_t n);
MatrixOperator injection_to_matrix(const InjectionMap& theta, std::uint64_t n);

enum class IsomodularVerdict { Isomodular, NotIsomodular, Inconclusive };

const char* isomodular_verdict_name(IsomodularVerdict v);

struct ColumnReport {
  Index column = 0;
  std::vector<Index> support;
  bool exponent_match = false;   // p_n == p_column for every support index
  double column_modular = 0.0;   // sum_n |s_nk|^{p_n}
};

struct IsomodularCertificate {
  IsomodularVerdict verdict = IsomodularVerdict::Inconclusive;
  bool structural_pass = false;
  bool columns_disjoint = false;
  std::optional<SparseSequence> witness;  // NotIsomodular only
  double witness_gap = 0.0;               // |rho(Mw) - rho(w)|
  std::vector<ColumnReport> columns;
};

struct IsomodularCheckOptions {
  double column_tol = 1e-10;  // |column modular - 1| allowance
  double gap_tol = 1e-9;      // absolute part of the probe threshold
  double gap_rtol = 1e-12;    // relative part, scaled by max(rho(x), rho(Mx))
  int probe_rounds = 64;
  std::uint64_t seed = 0;
};

// Structural characterization: pairwise disjoint column supports, exponent
// constant on each support and equal to p_k there, unit column modular.
// These hold iff rho(Mx) = rho(x) for every x on the mapped columns; when
// they fail, a randomized probe (scaled basis vectors, two-term overlap
// combinations, random sparse vectors) hunts for a modular mismatch witness.
IsomodularCertificate check_isomodular_structural(
    const MatrixOperator& m, const ExponentSequence& p,
    const IsomodularCheckOptions& options = {});

struct IsometryCheckResult {
  bool pass = true;
  std::optional<SparseSequence> witness;
  double witness_input_norm = 0.0;
  double witness_output_norm = 0.0;
  int samples = 0;
};

// Norm-level probe: |  ||Mx|| - ||x||  | <= tol over basis vectors, pairwise
// sums, scaled basis vectors and random sparse vectors. PASS is evidence,
// never a proof.
IsometryCheckResult check_isometry_randomized(const MatrixOperator& m,
                                              const ExponentSequence& p, int trials,
                                              double tol, std::uint64_t seed);

// Same probe driven directly through S_theta, so shifts (whose windows
// always breach a square truncation) can be checked too. Probes include the
// two-term detector vectors 2^{-1/p_n} e_n + 2^{-1/p_theta(n)} e_theta(n).
IsometryCheckResult check_injection_isometry(const InjectionMap& theta,
                                             const ExponentSequence& p,
                                             Index probe_bound, int trials, double tol,
                                             std::uint64_t seed);

struct RecoveredStructure {
  RegularSetIso iso;
  SparseSequence multiplier;
};

// Reads the Lamperti form off a certified-isomodular window: T{k} is the
// support of column k and h is the superposition of the columns. Requires a
// non-Mixed regime and contiguous columns 1..K.
RecoveredStructure recover_structure(const MatrixOperator& m, const ExponentSequence& p);

struct ThetaDecision {
  bool isometric = false;
  Index violating_index = 0;              // least j with p_j != p_theta(j)
  std::optional<SparseSequence> witness;  // 2^{-1/p_j} e_j + 2^{-1/p_theta(j)} e_theta(j)
};

// Exact dichotomy: S_theta is isometric iff p_n == p_theta(n) (compared as
// stored values, not within tolerance) for every n <= probe bound.
ThetaDecision theta_isometry_decision(const InjectionMap& theta, const ExponentSequence& p,
                                      std::uint64_t n);

}  // namespace varlp
