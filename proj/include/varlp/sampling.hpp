#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "varlp/exponents.hpp"
#include "varlp/operators.hpp"
#include "varlp/rng.hpp"
#include "varlp/set_iso.hpp"
#include "varlp/sparse.hpp"

namespace varlp {

// Exponent values stay 0.1 away from 2 on both sides; the degenerate p = 2
// case is excluded by the theory being exercised.
double sample_exponent_value(Regime regime, RandomSource& rs);

// Constant, periodic (pattern length <= 4) or prefixed-periodic sequence
// with all values drawn for the requested regime.
ExponentSequence sample_exponent_sequence(Regime regime, RandomSource& rs);

// Any regime, values in [1, 20]; for norm-level tests that do not care.
ExponentSequence sample_exponent_sequence_any(RandomSource& rs);

// Finite palette used by the shift-dichotomy sampling. Every triple
// (p1, p2, p3) from the palette with p1 != p2 keeps
// |2^{-p2/p1} + 2^{-p3/p2} - 1| >= ~4.6e-4, so two-term witness vectors
// always show a norm gap far above the 1e-6 detection threshold.
const std::vector<double>& dichotomy_exponent_palette();

ExponentSequence sample_palette_exponent_sequence(RandomSource& rs);

struct SparseOptions {
  Index max_index = 64;
  std::size_t max_support = 16;
  double radius = 10.0;  // entries area-uniform on this complex disk
};

SparseSequence sample_sparse(RandomSource& rs, const SparseOptions& options = {});

std::pair<SparseSequence, SparseSequence> sample_disjoint_pair(
    RandomSource& rs, const SparseOptions& options = {});

// Pair sharing at least one index; entries at shared indices have modulus in
// [shared_floor, radius] so the strict Clarkson branch has a provable gap.
struct OverlapOptions {
  SparseOptions base = {};
  std::size_t max_shared = 4;
  double shared_floor = 0.5;
};

std::pair<SparseSequence, SparseSequence> sample_overlapping_pair(
    RandomSource& rs, const OverlapOptions& options = {});

// Unconstrained pair (independent supports that may or may not overlap).
std::pair<SparseSequence, SparseSequence> sample_generic_pair(
    RandomSource& rs, const SparseOptions& options = {});

struct GeneratedIsomodular {
  LampertiOperator op;
  MatrixOperator matrix;  // window with columns 1..column_count
};

struct IsomodularGenOptions {
  std::uint64_t dimension = 64;
  std::size_t column_count = 12;
  std::size_t max_image = 4;
};

// Builds (h, T) with pairwise disjoint images drawn inside the exponent
// class of each column index and |h|^p weights summing to one per column,
// so the window is isomodular by construction.
GeneratedIsomodular sample_isomodular_operator(const ExponentSequence& p, RandomSource& rs,
                                               const IsomodularGenOptions& options = {});

InjectionMap sample_permutation(RandomSource& rs, std::size_t size);

}  // namespace varlp
