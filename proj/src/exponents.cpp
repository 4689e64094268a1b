#include "varlp/exponents.hpp"

#include <cmath>

#include "varlp/errors.hpp"

namespace varlp {

namespace {

void require_valid_exponent(double v) {
  if (!(v >= 1.0) || !std::isfinite(v)) {
    fail(Errc::BadInput, "exponent values must be finite and >= 1");
  }
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::AllBelowTwo:
      return "all_below_two";
    case Regime::AllAboveTwo:
      return "all_above_two";
    case Regime::Mixed:
      return "mixed";
  }
  return "unknown";
}

ExponentSequence::ExponentSequence(std::vector<double> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (double v : prefix_) require_valid_exponent(v);
  if (const auto* c = std::get_if<ConstantTail>(&tail_)) {
    require_valid_exponent(c->value);
  } else {
    const auto& pattern = std::get<PeriodicTail>(tail_).pattern;
    if (pattern.empty()) fail(Errc::BadInput, "periodic tail pattern must be nonempty");
    for (double v : pattern) require_valid_exponent(v);
  }
}

ExponentSequence ExponentSequence::constant(double value) {
  return ExponentSequence({}, ConstantTail{value});
}

ExponentSequence ExponentSequence::periodic(std::vector<double> pattern) {
  return ExponentSequence({}, PeriodicTail{std::move(pattern)});
}

double ExponentSequence::at(std::uint64_t n) const {
  if (n == 0) fail(Errc::BadInput, "sequence positions start at 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  std::uint64_t m = n - prefix_.size();  // position within the tail, >= 1
  if (const auto* c = std::get_if<ConstantTail>(&tail_)) return c->value;
  const auto& pattern = std::get<PeriodicTail>(tail_).pattern;
  return pattern[(m - 1) % pattern.size()];
}

std::vector<double> ExponentSequence::reachable_values() const {
  std::vector<double> values = prefix_;
  if (const auto* c = std::get_if<ConstantTail>(&tail_)) {
    values.push_back(c->value);
  } else {
    const auto& pattern = std::get<PeriodicTail>(tail_).pattern;
    values.insert(values.end(), pattern.begin(), pattern.end());
  }
  return values;
}

Regime ExponentSequence::regime() const {
  bool any_below = false;
  bool any_above = false;
  for (double v : reachable_values()) {
    if (v == 2.0) return Regime::Mixed;
    (v < 2.0 ? any_below : any_above) = true;
  }
  if (any_below && any_above) return Regime::Mixed;
  return any_above ? Regime::AllAboveTwo : Regime::AllBelowTwo;
}

std::optional<std::uint64_t> ExponentSequence::pure_period() const {
  if (!prefix_.empty()) return std::nullopt;
  if (std::holds_alternative<ConstantTail>(tail_)) return 1;
  const auto& pattern = std::get<PeriodicTail>(tail_).pattern;
  std::uint64_t len = pattern.size();
  for (std::uint64_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool works = true;
    for (std::uint64_t i = d; i < len && works; ++i) {
      works = pattern[i] == pattern[i % d];
    }
    if (works) return d;
  }
  return len;
}

double exponent_at(const ExponentSequence& p, std::uint64_t n) { return p.at(n); }

Regime classify_regime(const ExponentSequence& p) { return p.regime(); }

}  // namespace varlp
