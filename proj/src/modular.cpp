#include "varlp/modular.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "varlp/errors.hpp"
#include "varlp/kahan.hpp"

namespace varlp {

namespace {

constexpr int kMaxBracketSteps = 80;
constexpr int kMaxBisectionSteps = 200;

// rho(a/lambda) - 1, saturating to +inf instead of erroring; the solver only
// needs the sign when terms blow up.
double residual_at(const SparseSequence& a, const ExponentSequence& p, double lambda) {
  KahanSum sum;
  for (const auto& [n, v] : a.entries()) {
    double term = std::pow(std::abs(v) / lambda, p.at(n));
    if (std::isinf(term)) return std::numeric_limits<double>::infinity();
    sum.add(term);
  }
  return sum.value() - 1.0;
}

// d/dlambda rho(a/lambda) = -sum_n p_n |a_n|^{p_n} lambda^{-p_n - 1}.
double residual_derivative(const SparseSequence& a, const ExponentSequence& p,
                           double lambda) {
  KahanSum sum;
  for (const auto& [n, v] : a.entries()) {
    double pn = p.at(n);
    sum.add(pn * std::pow(std::abs(v) / lambda, pn) / lambda);
  }
  return -sum.value();
}

}  // namespace

double modular(const SparseSequence& a, const ExponentSequence& p, double exponent_cap) {
  KahanSum sum;
  for (const auto& [n, v] : a.entries()) {
    double pn = p.at(n);
    if (pn > exponent_cap) {
      fail(Errc::Overflow, "exponent " + std::to_string(pn) + " at index " +
                               std::to_string(n) + " exceeds the cap " +
                               std::to_string(exponent_cap));
    }
    double term = std::pow(std::abs(v), pn);
    if (!std::isfinite(term)) {
      fail(Errc::Overflow, "|a_n|^{p_n} overflowed at index " + std::to_string(n));
    }
    sum.add(term);
  }
  return sum.value();
}

NormResult luxemburg_norm(const SparseSequence& a, const ExponentSequence& p, double tol) {
  if (!(tol > 0.0)) fail(Errc::BadInput, "tol must be positive");
  if (a.is_zero()) return {0.0, 0.0, 0};

  const double sup = a.sup_norm();
  const double count = static_cast<double>(a.support_size());

  // lambda <= sup||a|| forces a term >= 1, lambda >= sup * support_size
  // forces the sum <= 1; start below and double into the sign change.
  double lo = sup / count;
  double f_lo = residual_at(a, p, lo);
  int iterations = 0;

  while (f_lo < 0.0) {  // unreachable for canonical input; keeps the bracket honest
    lo *= 0.5;
    f_lo = residual_at(a, p, lo);
    if (++iterations > kMaxBracketSteps) {
      fail(Errc::NonConvergence, "failed to bracket the norm from below");
    }
  }

  double hi = lo;
  double f_hi = f_lo;
  while (f_hi > 0.0) {
    hi *= 2.0;
    if (std::isinf(hi)) hi = std::numeric_limits<double>::max();
    f_hi = residual_at(a, p, hi);
    if (++iterations > kMaxBracketSteps) {
      fail(Errc::NonConvergence, "failed to bracket the norm from above");
    }
  }

  double lambda = lo;
  double f = f_lo;
  if (std::abs(f_hi) < std::abs(f)) {
    lambda = hi;
    f = f_hi;
  }

  for (int step = 0; step < kMaxBisectionSteps && std::abs(f) > tol; ++step) {
    assert(f_lo >= 0.0 && f_hi <= 0.0);
    double mid = lo + 0.5 * (hi - lo);
    if (!(lo < mid && mid < hi)) break;  // interval exhausted at double precision
    double f_mid = residual_at(a, p, mid);
    ++iterations;
    if (std::abs(f_mid) < std::abs(f)) {
      lambda = mid;
      f = f_mid;
    }
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }

  // Newton polish: the residual is convex and decreasing in lambda, so the
  // step from the positive side converges monotonically; accept only
  // improvements so a bad derivative cannot undo the bisection.
  for (int polish = 0; polish < 2; ++polish) {
    double d = residual_derivative(a, p, lambda);
    if (!(d < 0.0) || !std::isfinite(d)) break;
    double candidate = lambda - f / d;
    if (!(candidate > 0.0) || !std::isfinite(candidate)) break;
    double f_candidate = residual_at(a, p, candidate);
    ++iterations;
    if (std::abs(f_candidate) < std::abs(f)) {
      lambda = candidate;
      f = f_candidate;
    } else {
      break;
    }
  }

  if (std::abs(f) > tol) {
    fail(Errc::NonConvergence, "residual " + std::to_string(f) +
                                   " did not reach tol " + std::to_string(tol));
  }
  return {lambda, f, iterations};
}

double norm_constant_p_oracle(const SparseSequence& a, double p_value) {
  if (!(p_value >= 1.0)) fail(Errc::BadInput, "constant exponent must be >= 1");
  if (a.is_zero()) return 0.0;
  return std::pow(modular(a, ExponentSequence::constant(p_value)), 1.0 / p_value);
}

double clarkson_bracket(Complex z, Complex w, double p) {
  if (z == Complex(0.0, 0.0) || w == Complex(0.0, 0.0)) return 0.0;
  double az = std::abs(z);
  double aw = std::abs(w);
  if (aw > az) {
    std::swap(z, w);
    std::swap(az, aw);
  }
  // |z|^p * (|1+r|^p + |1-r|^p - 2 - 2|r|^p) with r = w/z, |r| <= 1.
  // expm1/log1p keep the two nearly-cancelling terms accurate when |r| is
  // small, where the naive four-power form loses everything to rounding.
  Complex r = w / z;
  double u = r.real();
  double s2 = std::norm(r);
  double e_plus = std::expm1(0.5 * p * std::log1p(2.0 * u + s2));
  double e_minus = std::expm1(0.5 * p * std::log1p(-2.0 * u + s2));
  double cross = 2.0 * std::pow(std::abs(r), p);
  return std::pow(az, p) * (e_plus + e_minus - cross);
}

double clarkson_gap(const SparseSequence& a, const SparseSequence& b,
                    const ExponentSequence& p) {
  KahanSum sum;
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() && j != b.entries().end()) {
    if (i->first < j->first) {
      ++i;  // b_n = 0: the bracket vanishes identically
    } else if (j->first < i->first) {
      ++j;
    } else {
      double bracket = clarkson_bracket(i->second, j->second, p.at(i->first));
      if (!std::isfinite(bracket)) {
        fail(Errc::Overflow, "Clarkson bracket overflowed at index " +
                                 std::to_string(i->first));
      }
      sum.add(bracket);
      ++i;
      ++j;
    }
  }
  return sum.value();
}

}  // namespace varlp
