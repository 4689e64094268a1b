#pragma once

#include <stdexcept>
#include <string>

namespace varlp {

enum class Errc {
  Overflow,
  NonConvergence,
  DisjointnessViolation,
  EmptyImage,
  OutOfDomain,
  TruncationBreach,
  SupportOverlap,
  EmptyColumn,
  RegimeViolation,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Overflow:
      return "overflow";
    case Errc::NonConvergence:
      return "non_convergence";
    case Errc::DisjointnessViolation:
      return "disjointness_violation";
    case Errc::EmptyImage:
      return "empty_image";
    case Errc::OutOfDomain:
      return "out_of_domain";
    case Errc::TruncationBreach:
      return "truncation_breach";
    case Errc::SupportOverlap:
      return "support_overlap";
    case Errc::EmptyColumn:
      return "empty_column";
    case Errc::RegimeViolation:
      return "regime_violation";
    case Errc::BadInput:
      return "bad_input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace varlp
