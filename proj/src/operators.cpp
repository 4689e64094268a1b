#include "varlp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "varlp/errors.hpp"
#include "varlp/modular.hpp"
#include "varlp/rng.hpp"

namespace varlp {

namespace {

constexpr double kMultiplierSlack = 1e-12;

}  // namespace

LampertiOperator::LampertiOperator(SparseSequence multiplier, RegularSetIso set_iso)
    : multiplier_(std::move(multiplier)), set_iso_(std::move(set_iso)) {
  for (const auto& [n, h] : multiplier_.entries()) {
    if (std::abs(h) > 1.0 + kMultiplierSlack) {
      fail(Errc::BadInput, "multiplier modulus " + std::to_string(std::abs(h)) +
                               " at index " + std::to_string(n) + " exceeds 1");
    }
  }
  std::vector<Index> range = set_iso_.range();
  for (const auto& [n, h] : multiplier_.entries()) {
    if (!std::binary_search(range.begin(), range.end(), n)) {
      fail(Errc::BadInput,
           "multiplier index " + std::to_string(n) + " lies outside the range of T");
    }
  }
}

SparseSequence LampertiOperator::apply(const SparseSequence& x) const {
  SparseSequence moved = set_iso_.extend_to_sequence(x);
  std::vector<SparseSequence::Entry> out;
  out.reserve(moved.entries().size());
  for (const auto& [n, v] : moved.entries()) {
    Complex h = multiplier_.at(n);
    if (h != Complex(0.0, 0.0)) out.emplace_back(n, h * v);
  }
  return SparseSequence::from_entries(std::move(out));
}

SparseSequence apply_lamperti(const LampertiOperator& op, const SparseSequence& x) {
  return op.apply(x);
}

InjectionMap::InjectionMap(Rule rule) : rule_(std::move(rule)) {
  if (const auto* s = std::get_if<Shift>(&rule_)) {
    if (s->offset == 0) fail(Errc::BadInput, "shift offset must be >= 1");
  } else if (const auto* perm = std::get_if<Permutation>(&rule_)) {
    std::vector<bool> hit(perm->images.size(), false);
    for (Index v : perm->images) {
      if (v == 0 || v > perm->images.size() || hit[v - 1]) {
        fail(Errc::BadInput, "permutation table must be a bijection of 1..size");
      }
      hit[v - 1] = true;
    }
  } else {
    auto& entries = std::get<Table>(rule_).entries;
    std::sort(entries.begin(), entries.end());
    std::unordered_set<Index> targets;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto [src, dst] = entries[i];
      if (src == 0 || dst == 0) fail(Errc::BadInput, "table indices start at 1");
      if (i > 0 && entries[i - 1].first == src) {
        fail(Errc::BadInput, "duplicate source " + std::to_string(src));
      }
      if (!targets.insert(dst).second) {
        fail(Errc::BadInput, "table is not injective: target " + std::to_string(dst));
      }
    }
  }
}

InjectionMap InjectionMap::shift(std::uint64_t offset) { return InjectionMap(Shift{offset}); }

InjectionMap InjectionMap::permutation(std::vector<Index> images) {
  return InjectionMap(Permutation{std::move(images)});
}

InjectionMap InjectionMap::table(std::vector<std::pair<Index, Index>> entries) {
  return InjectionMap(Table{std::move(entries)});
}

std::optional<Index> InjectionMap::image(Index n) const {
  if (n == 0) fail(Errc::BadInput, "sequence positions start at 1");
  if (const auto* s = std::get_if<Shift>(&rule_)) return n + s->offset;
  if (const auto* perm = std::get_if<Permutation>(&rule_)) {
    return n <= perm->images.size() ? perm->images[n - 1] : n;  // identity past the table
  }
  const auto& entries = std::get<Table>(rule_).entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != entries.end() && it->first == n) return it->second;
  return std::nullopt;
}

Index InjectionMap::image_or_throw(Index n) const {
  auto t = image(n);
  if (!t) fail(Errc::OutOfDomain, "theta is undefined at " + std::to_string(n));
  return *t;
}

bool InjectionMap::total() const { return !std::holds_alternative<Table>(rule_); }

SparseSequence InjectionMap::apply(const SparseSequence& x) const {
  std::vector<SparseSequence::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& [n, v] : x.entries()) out.emplace_back(image_or_throw(n), v);
  return SparseSequence::from_entries(std::move(out));
}

SparseSequence apply_injection(const InjectionMap& theta, const SparseSequence& x) {
  return theta.apply(x);
}

MatrixOperator::MatrixOperator(std::uint64_t dimension, std::vector<Column> columns)
    : dimension_(dimension), columns_(std::move(columns)) {
  if (dimension_ == 0) fail(Errc::BadInput, "dimension must be >= 1");
  std::sort(columns_.begin(), columns_.end(),
            [](const Column& a, const Column& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    auto& [k, col] = columns_[i];
    if (k == 0 || k > dimension_) {
      fail(Errc::BadInput, "column key " + std::to_string(k) + " outside 1..N");
    }
    if (i > 0 && columns_[i - 1].first == k) {
      fail(Errc::BadInput, "duplicate column " + std::to_string(k));
    }
    if (col.max_index() > dimension_) {
      fail(Errc::BadInput, "column " + std::to_string(k) + " reaches past dimension");
    }
  }
}

const SparseSequence* MatrixOperator::column(Index k) const {
  auto it = std::lower_bound(columns_.begin(), columns_.end(), k,
                             [](const Column& c, Index key) { return c.first < key; });
  if (it != columns_.end() && it->first == k) return &it->second;
  return nullptr;
}

SparseSequence MatrixOperator::apply(const SparseSequence& a) const {
  std::vector<SparseSequence::Entry> out;
  for (const auto& [k, v] : a.entries()) {
    const SparseSequence* col = column(k);
    if (col == nullptr) {
      fail(Errc::OutOfDomain, "no column mapped for index " + std::to_string(k));
    }
    for (const auto& [n, s] : col->entries()) out.emplace_back(n, v * s);
  }
  return SparseSequence::from_entries(std::move(out));
}

MatrixOperator lamperti_to_matrix(const LampertiOperator& op, std::uint64_t n) {
  if (op.set_iso().domain_bound() < n) {
    fail(Errc::OutOfDomain, "operator is not defined through column " + std::to_string(n));
  }
  std::vector<MatrixOperator::Column> columns;
  columns.reserve(n);
  for (Index k = 1; k <= n; ++k) {
    SparseSequence col = op.apply(SparseSequence::basis(k));
    if (col.max_index() > n) {
      fail(Errc::TruncationBreach,
           "image of e_" + std::to_string(k) + " exceeds the window");
    }
    columns.emplace_back(k, std::move(col));
  }
  return MatrixOperator(n, std::move(columns));
}

MatrixOperator injection_to_matrix(const InjectionMap& theta, std::uint64_t n) {
  std::vector<MatrixOperator::Column> columns;
  columns.reserve(n);
  for (Index k = 1; k <= n; ++k) {
    Index t = theta.image_or_throw(k);
    if (t > n) {
      fail(Errc::TruncationBreach, "theta(" + std::to_string(k) + ") = " +
                                       std::to_string(t) + " exceeds the window");
    }
    columns.emplace_back(k, SparseSequence::basis(t));
  }
  return MatrixOperator(n, std::move(columns));
}

const char* isomodular_verdict_name(IsomodularVerdict v) {
  switch (v) {
    case IsomodularVerdict::Isomodular:
      return "isomodular";
    case IsomodularVerdict::NotIsomodular:
      return "not_isomodular";
    case IsomodularVerdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

// |rho(Mx) - rho(x)| against a mixed absolute/relative threshold.
bool modular_mismatch(const MatrixOperator& m, const ExponentSequence& p,
                      const SparseSequence& x, const IsomodularCheckOptions& opt,
                      double* gap_out) {
  double rho_x = modular(x, p);
  double rho_mx = modular(m.apply(x), p);
  double gap = std::abs(rho_mx - rho_x);
  *gap_out = gap;
  return gap > opt.gap_tol + opt.gap_rtol * std::max(rho_x, rho_mx);
}

}  // namespace

IsomodularCertificate check_isomodular_structural(const MatrixOperator& m,
                                                  const ExponentSequence& p,
                                                  const IsomodularCheckOptions& options) {
  IsomodularCertificate cert;
  std::unordered_map<Index, Index> owner;  // support index -> column
  std::vector<std::pair<Index, Index>> overlaps;
  cert.columns_disjoint = true;
  bool columns_ok = true;

  for (const auto& [k, col] : m.columns()) {
    ColumnReport report;
    report.column = k;
    report.support = col.support();
    double pk = p.at(k);
    report.exponent_match = true;
    for (Index n : report.support) {
      if (p.at(n) != pk) report.exponent_match = false;
      auto [it, fresh] = owner.try_emplace(n, k);
      if (!fresh) {
        cert.columns_disjoint = false;
        overlaps.emplace_back(it->second, k);
      }
    }
    report.column_modular = modular(col, p);
    bool unit = std::abs(report.column_modular - 1.0) <= options.column_tol;
    if (report.support.empty() || !report.exponent_match || !unit) columns_ok = false;
    cert.columns.push_back(std::move(report));
  }

  cert.structural_pass = cert.columns_disjoint && columns_ok;
  if (cert.structural_pass) {
    cert.verdict = IsomodularVerdict::Isomodular;
    return cert;
  }

  // Structural conditions failed; hunt for a numeric witness. Scaled basis
  // vectors come first (basis vectors alone are blind: rho(S e_k) = rho(e_k)
  // can hold for operators that are not isomodular).
  auto try_witness = [&](const SparseSequence& x) -> bool {
    double gap = 0.0;
    if (modular_mismatch(m, p, x, options, &gap)) {
      cert.verdict = IsomodularVerdict::NotIsomodular;
      cert.witness = x;
      cert.witness_gap = gap;
      return true;
    }
    return false;
  };

  std::vector<Index> keys;
  keys.reserve(m.columns().size());
  for (const auto& [k, col] : m.columns()) keys.push_back(k);

  for (Index k : keys) {
    if (try_witness(Complex(2.0, 0.0) * SparseSequence::basis(k))) return cert;
    if (try_witness(Complex(0.5, 0.0) * SparseSequence::basis(k))) return cert;
    if (try_witness(Complex(3.0, 0.0) * SparseSequence::basis(k))) return cert;
  }
  for (auto [j, k] : overlaps) {
    SparseSequence ej = SparseSequence::basis(j);
    SparseSequence ek = SparseSequence::basis(k);
    if (try_witness(ej + ek)) return cert;
    if (try_witness(ej - ek)) return cert;
  }

  RandomSource rs(options.seed);
  for (int round = 0; round < options.probe_rounds && !keys.empty(); ++round) {
    Index k = keys[rs.index(0, keys.size() - 1)];
    if (try_witness(rs.on_annulus(0.25, 3.0) * SparseSequence::basis(k))) return cert;
    Index j = keys[rs.index(0, keys.size() - 1)];
    if (j != k) {
      SparseSequence two = rs.on_annulus(0.25, 3.0) * SparseSequence::basis(j) +
                           rs.on_annulus(0.25, 3.0) * SparseSequence::basis(k);
      if (try_witness(two)) return cert;
    }
    std::vector<SparseSequence::Entry> entries;
    std::size_t size = rs.index(1, std::min<std::size_t>(8, keys.size()));
    for (std::size_t i = 0; i < size; ++i) {
      entries.emplace_back(keys[rs.index(0, keys.size() - 1)], rs.on_disk(2.0));
    }
    if (try_witness(SparseSequence::from_entries(std::move(entries)))) return cert;
  }

  cert.verdict = IsomodularVerdict::Inconclusive;
  return cert;
}

namespace {

IsometryCheckResult isometry_probe(
    const std::function<SparseSequence(const SparseSequence&)>& image,
    const ExponentSequence& p, const std::vector<SparseSequence>& fixed_probes,
    const std::function<SparseSequence(RandomSource&)>& random_probe, int trials,
    double tol, std::uint64_t seed) {
  IsometryCheckResult result;
  auto check = [&](const SparseSequence& x) -> bool {
    if (x.is_zero()) return true;
    ++result.samples;
    double nx = luxemburg_norm(x, p).value;
    double ny = luxemburg_norm(image(x), p).value;
    if (std::abs(ny - nx) > tol) {
      result.pass = false;
      result.witness = x;
      result.witness_input_norm = nx;
      result.witness_output_norm = ny;
      return false;
    }
    return true;
  };

  for (const SparseSequence& x : fixed_probes) {
    if (!check(x)) return result;
  }
  RandomSource rs(seed);
  for (int i = 0; i < trials; ++i) {
    if (!check(random_probe(rs))) return result;
  }
  return result;
}

}  // namespace

IsometryCheckResult check_isometry_randomized(const MatrixOperator& m,
                                              const ExponentSequence& p, int trials,
                                              double tol, std::uint64_t seed) {
  if (trials < 1) fail(Errc::BadInput, "trials must be >= 1");
  if (!(tol > 0.0)) fail(Errc::BadInput, "tol must be positive");

  std::vector<Index> keys;
  for (const auto& [k, col] : m.columns()) keys.push_back(k);

  std::vector<SparseSequence> fixed;
  for (Index k : keys) {
    fixed.push_back(SparseSequence::basis(k));
    fixed.push_back(Complex(2.0, 0.0) * SparseSequence::basis(k));
  }
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    fixed.push_back(SparseSequence::basis(keys[i]) + SparseSequence::basis(keys[i + 1]));
  }

  auto random_probe = [&keys](RandomSource& rs) {
    std::vector<SparseSequence::Entry> entries;
    std::size_t size = rs.index(1, std::min<std::size_t>(8, keys.size()));
    for (std::size_t i = 0; i < size; ++i) {
      entries.emplace_back(keys[rs.index(0, keys.size() - 1)], rs.on_annulus(0.1, 3.0));
    }
    return SparseSequence::from_entries(std::move(entries));
  };

  return isometry_probe([&m](const SparseSequence& x) { return m.apply(x); }, p, fixed,
                        random_probe, trials, tol, seed);
}

IsometryCheckResult check_injection_isometry(const InjectionMap& theta,
                                             const ExponentSequence& p, Index probe_bound,
                                             int trials, double tol, std::uint64_t seed) {
  if (probe_bound == 0) fail(Errc::BadInput, "probe bound must be >= 1");
  if (trials < 1) fail(Errc::BadInput, "trials must be >= 1");

  std::vector<SparseSequence> fixed;
  for (Index n = 1; n <= probe_bound; ++n) {
    fixed.push_back(SparseSequence::basis(n));
    Index t = theta.image_or_throw(n);
    if (t == n) continue;
    // The two-term detector from the dichotomy proof: unit norm by
    // construction, and its image norm moves whenever exponents mismatch.
    Complex cj = std::pow(2.0, -1.0 / p.at(n));
    Complex ct = std::pow(2.0, -1.0 / p.at(t));
    fixed.push_back(cj * SparseSequence::basis(n) + ct * SparseSequence::basis(t));
  }

  auto random_probe = [probe_bound](RandomSource& rs) {
    std::vector<SparseSequence::Entry> entries;
    std::size_t size = rs.index(1, std::min<Index>(8, probe_bound));
    for (std::size_t i = 0; i < size; ++i) {
      entries.emplace_back(rs.index(1, probe_bound), rs.on_annulus(0.1, 3.0));
    }
    return SparseSequence::from_entries(std::move(entries));
  };

  return isometry_probe([&theta](const SparseSequence& x) { return theta.apply(x); }, p,
                        fixed, random_probe, trials, tol, seed);
}

RecoveredStructure recover_structure(const MatrixOperator& m, const ExponentSequence& p) {
  if (p.regime() == Regime::Mixed) {
    fail(Errc::RegimeViolation, "structure recovery requires a non-mixed regime");
  }
  const auto& columns = m.columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].first != i + 1) {
      fail(Errc::BadInput, "recovery needs contiguous columns 1..K");
    }
  }

  std::unordered_set<Index> seen;
  std::vector<std::vector<Index>> images;
  std::vector<SparseSequence::Entry> multiplier_entries;
  images.reserve(columns.size());
  for (const auto& [k, col] : columns) {
    if (col.is_zero()) {
      fail(Errc::EmptyColumn, "column " + std::to_string(k) +
                                  " is zero; ||S e_k|| = 1 is impossible");
    }
    std::vector<Index> support = col.support();
    for (Index n : support) {
      if (!seen.insert(n).second) {
        fail(Errc::SupportOverlap,
             "columns share support index " + std::to_string(n));
      }
    }
    for (const auto& entry : col.entries()) multiplier_entries.push_back(entry);
    images.push_back(std::move(support));
  }

  return RecoveredStructure{RegularSetIso::from_family(std::move(images)),
                            SparseSequence::from_entries(std::move(multiplier_entries))};
}

ThetaDecision theta_isometry_decision(const InjectionMap& theta, const ExponentSequence& p,
                                      std::uint64_t n) {
  if (n == 0) fail(Errc::BadInput, "bound must be >= 1");
  for (Index j = 1; j <= n; ++j) {
    Index t = theta.image_or_throw(j);
    if (p.at(j) != p.at(t)) {  // exact dichotomy, not a tolerance
      ThetaDecision decision;
      decision.isometric = false;
      decision.violating_index = j;
      Complex cj = std::pow(2.0, -1.0 / p.at(j));
      Complex ct = std::pow(2.0, -1.0 / p.at(t));
      decision.witness =
          cj * SparseSequence::basis(j) + ct * SparseSequence::basis(t);
      return decision;
    }
  }
  ThetaDecision decision;
  decision.isometric = true;
  return decision;
}

}  // namespace varlp
