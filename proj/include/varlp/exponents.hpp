#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace varlp {

enum class Regime { AllBelowTwo, AllAboveTwo, Mixed };

const char* regime_name(Regime r);

// Exponent sequence (p_n), n >= 1: an explicit finite prefix followed by a
// constant or periodically repeating tail. Every value must lie in [1, inf).
// The finite description is what makes the regime classifier total.
class ExponentSequence {
 public:
  struct ConstantTail {
    double value;
    bool operator==(const ConstantTail&) const = default;
  };
  struct PeriodicTail {
    std::vector<double> pattern;  // nonempty
    bool operator==(const PeriodicTail&) const = default;
  };
  using Tail = std::variant<ConstantTail, PeriodicTail>;

  ExponentSequence(std::vector<double> prefix, Tail tail);

  static ExponentSequence constant(double value);
  static ExponentSequence periodic(std::vector<double> pattern);

  // p_n for n >= 1: prefix value when n <= len(prefix), tail rule otherwise.
  double at(std::uint64_t n) const;

  const std::vector<double>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }

  // Every value the sequence takes (prefix entries plus tail values).
  std::vector<double> reachable_values() const;

  Regime regime() const;

  // Minimal period when the sequence is purely periodic (empty prefix);
  // nullopt for sequences with a prefix.
  std::optional<std::uint64_t> pure_period() const;

  bool operator==(const ExponentSequence&) const = default;

 private:
  std::vector<double> prefix_;
  Tail tail_;
};

double exponent_at(const ExponentSequence& p, std::uint64_t n);
Regime classify_regime(const ExponentSequence& p);

}  // namespace varlp
