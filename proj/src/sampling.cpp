#include "varlp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "varlp/errors.hpp"

namespace varlp {

double sample_exponent_value(Regime regime, RandomSource& rs) {
  switch (regime) {
    case Regime::AllBelowTwo:
      return rs.uniform(1.0, 1.9);
    case Regime::AllAboveTwo:
      return rs.uniform(2.1, 20.0);
    case Regime::Mixed:
      break;
  }
  return rs.coin() ? rs.uniform(1.0, 1.9) : rs.uniform(2.1, 20.0);
}

ExponentSequence sample_exponent_sequence(Regime regime, RandomSource& rs) {
  auto values = [&](std::size_t count) {
    std::vector<double> v(count);
    for (double& x : v) x = sample_exponent_value(regime, rs);
    return v;
  };
  switch (rs.index(0, 2)) {
    case 0:
      return ExponentSequence::constant(sample_exponent_value(regime, rs));
    case 1:
      return ExponentSequence::periodic(values(rs.index(2, 4)));
    default:
      return ExponentSequence(values(rs.index(1, 3)),
                              ExponentSequence::PeriodicTail{values(rs.index(2, 4))});
  }
}

ExponentSequence sample_exponent_sequence_any(RandomSource& rs) {
  Regime regime = rs.coin() ? Regime::Mixed
                            : (rs.coin() ? Regime::AllBelowTwo : Regime::AllAboveTwo);
  return sample_exponent_sequence(regime, rs);
}

const std::vector<double>& dichotomy_exponent_palette() {
  static const std::vector<double> palette = {1.0, 1.2, 1.5, 1.8, 3.0, 5.0, 10.0};
  return palette;
}

ExponentSequence sample_palette_exponent_sequence(RandomSource& rs) {
  const auto& palette = dichotomy_exponent_palette();
  auto pick = [&] { return palette[rs.index(0, palette.size() - 1)]; };
  auto values = [&](std::size_t count) {
    std::vector<double> v(count);
    for (double& x : v) x = pick();
    return v;
  };
  switch (rs.index(0, 2)) {
    case 0:
      return ExponentSequence::constant(pick());
    case 1:
      return ExponentSequence::periodic(values(rs.index(1, 4)));
    default:
      return ExponentSequence(values(rs.index(1, 2)),
                              ExponentSequence::PeriodicTail{values(rs.index(1, 4))});
  }
}

namespace {

std::vector<Index> sample_support(RandomSource& rs, Index max_index, std::size_t size) {
  std::vector<Index> support;
  support.reserve(size);
  while (support.size() < size) {
    Index n = rs.index(1, max_index);
    if (std::find(support.begin(), support.end(), n) == support.end()) {
      support.push_back(n);
    }
  }
  std::sort(support.begin(), support.end());
  return support;
}

}  // namespace

SparseSequence sample_sparse(RandomSource& rs, const SparseOptions& options) {
  std::size_t size = rs.index(1, std::min<Index>(options.max_support, options.max_index));
  std::vector<SparseSequence::Entry> entries;
  for (Index n : sample_support(rs, options.max_index, size)) {
    entries.emplace_back(n, rs.on_disk(options.radius));
  }
  return SparseSequence::from_entries(std::move(entries));
}

std::pair<SparseSequence, SparseSequence> sample_disjoint_pair(
    RandomSource& rs, const SparseOptions& options) {
  std::size_t budget = std::min<Index>(options.max_support, options.max_index / 2);
  std::size_t size_a = rs.index(1, budget);
  std::size_t size_b = rs.index(1, budget);
  std::vector<Index> support = sample_support(rs, options.max_index, size_a + size_b);

  std::vector<SparseSequence::Entry> ea, eb;
  for (std::size_t i = 0; i < support.size(); ++i) {
    auto& target = i < size_a ? ea : eb;
    target.emplace_back(support[i], rs.on_disk(options.radius));
  }
  return {SparseSequence::from_entries(std::move(ea)),
          SparseSequence::from_entries(std::move(eb))};
}

std::pair<SparseSequence, SparseSequence> sample_overlapping_pair(
    RandomSource& rs, const OverlapOptions& options) {
  const SparseOptions& base = options.base;
  std::size_t shared = rs.index(1, options.max_shared);
  std::size_t own_a = rs.index(0, base.max_support / 2);
  std::size_t own_b = rs.index(0, base.max_support / 2);
  std::vector<Index> support =
      sample_support(rs, base.max_index, shared + own_a + own_b);

  std::vector<SparseSequence::Entry> ea, eb;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i < shared) {
      ea.emplace_back(support[i], rs.on_annulus(options.shared_floor, base.radius));
      eb.emplace_back(support[i], rs.on_annulus(options.shared_floor, base.radius));
    } else if (i < shared + own_a) {
      ea.emplace_back(support[i], rs.on_disk(base.radius));
    } else {
      eb.emplace_back(support[i], rs.on_disk(base.radius));
    }
  }
  return {SparseSequence::from_entries(std::move(ea)),
          SparseSequence::from_entries(std::move(eb))};
}

std::pair<SparseSequence, SparseSequence> sample_generic_pair(
    RandomSource& rs, const SparseOptions& options) {
  return {sample_sparse(rs, options), sample_sparse(rs, options)};
}

GeneratedIsomodular sample_isomodular_operator(const ExponentSequence& p, RandomSource& rs,
                                               const IsomodularGenOptions& options) {
  if (options.column_count == 0 || options.dimension < options.column_count) {
    fail(Errc::BadInput, "need at least one column inside the window");
  }

  // Pool the window indices by exact exponent value; a column with exponent
  // p_k may only land on indices of the same class. Every class holds at
  // least its own column indices, so one slot per column always exists.
  std::map<double, std::vector<Index>> classes;
  for (Index n = 1; n <= options.dimension; ++n) classes[p.at(n)].push_back(n);
  for (auto& [value, pool] : classes) {
    for (std::size_t i = pool.size(); i > 1; --i) {
      std::swap(pool[i - 1], pool[rs.index(0, i - 1)]);
    }
  }

  std::map<double, std::size_t> cursor;             // consumed per class
  std::map<double, std::size_t> columns_left;       // columns still to draw
  for (Index k = 1; k <= options.column_count; ++k) columns_left[p.at(k)] += 1;

  std::vector<std::vector<Index>> images(options.column_count);
  for (Index k = 1; k <= options.column_count; ++k) {
    double value = p.at(k);
    const auto& pool = classes[value];
    std::size_t& used = cursor[value];
    columns_left[value] -= 1;
    std::size_t available = pool.size() - used - columns_left[value];
    std::size_t size = rs.index(1, std::min<std::size_t>(options.max_image, available));
    images[k - 1].assign(pool.begin() + used, pool.begin() + used + size);
    used += size;
  }

  std::vector<SparseSequence::Entry> multiplier;
  for (Index k = 1; k <= options.column_count; ++k) {
    double pk = p.at(k);
    const auto& image = images[k - 1];
    std::vector<double> weights(image.size());
    double total = 0.0;
    for (double& w : weights) {
      w = rs.uniform(0.1, 1.0);
      total += w;
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
      double magnitude = std::pow(weights[i] / total, 1.0 / pk);
      multiplier.emplace_back(image[i], magnitude * rs.unit_phase());
    }
  }

  LampertiOperator op(SparseSequence::from_entries(std::move(multiplier)),
                      RegularSetIso::from_family(std::move(images)));

  std::vector<MatrixOperator::Column> columns;
  for (Index k = 1; k <= options.column_count; ++k) {
    columns.emplace_back(k, op.apply(SparseSequence::basis(k)));
  }
  return {std::move(op), MatrixOperator(options.dimension, std::move(columns))};
}

InjectionMap sample_permutation(RandomSource& rs, std::size_t size) {
  std::vector<Index> images(size);
  std::iota(images.begin(), images.end(), Index{1});
  for (std::size_t i = size; i > 1; --i) {
    std::swap(images[i - 1], images[rs.index(0, i - 1)]);
  }
  return InjectionMap::permutation(std::move(images));
}

}  // namespace varlp
