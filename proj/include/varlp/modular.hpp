#pragma once

#include "varlp/exponents.hpp"
#include "varlp/sparse.hpp"

namespace varlp {

// Exponents above this make |a_n|^{p_n} overflow double range for |a_n| > 1;
// modular() refuses them instead of returning inf silently.
inline constexpr double kDefaultExponentCap = 700.0;
inline constexpr double kDefaultNormTol = 1e-12;

// rho(a) = sum_n |a_n|^{p_n}, summed over the support in ascending index
// order with compensated accumulation.
double modular(const SparseSequence& a, const ExponentSequence& p,
               double exponent_cap = kDefaultExponentCap);

struct NormResult {
  double value = 0.0;
  double residual = 0.0;  // rho(a/value) - 1 at the returned value
  int iterations = 0;
};

// Luxemburg norm: for a != 0 the unique lambda > 0 with rho(a/lambda) = 1.
// Brackets from sup|a_n| / support_size by doubling, bisects until the
// residual is within tol, then polishes with guarded Newton steps.
NormResult luxemburg_norm(const SparseSequence& a, const ExponentSequence& p,
                          double tol = kDefaultNormTol);

// Constant-exponent cross check: ||a|| = rho(a)^{1/p}.
double norm_constant_p_oracle(const SparseSequence& a, double p_value);

// rho(a+b) + rho(a-b) - 2 rho(a) - 2 rho(b). Evaluated index by index: the
// bracket at an index where a_n b_n = 0 is exactly zero, and at shared
// indices the dominant-entry factorization keeps the rounding relative to
// the bracket instead of relative to the largest modular term.
double clarkson_gap(const SparseSequence& a, const SparseSequence& b,
                    const ExponentSequence& p);

// Single-index Clarkson bracket |z+w|^p + |z-w|^p - 2|z|^p - 2|w|^p.
double clarkson_bracket(Complex z, Complex w, double p);

}  // namespace varlp
