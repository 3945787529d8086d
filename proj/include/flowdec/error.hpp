#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace flowdec {

using Vertex = int;
using EdgeId = int;
using Weight = std::int64_t;

enum class Errc {
  CycleDetected,
  MultipleSources,
  MultipleSinks,
  DanglingVertex,
  InvalidVertex,
  EmptyGraph,
  ConservationViolated,
  NegativeFlow,
  UnknownEdge,
  EmptyFlow,
  Infeasible,
  IntegerOverflow,
  ParityAssertionFailed,
  BudgetExceeded,
  PreconditionViolated,
  InvalidParameters,
  ParseError,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::MultipleSources: return "MultipleSources";
    case Errc::MultipleSinks: return "MultipleSinks";
    case Errc::DanglingVertex: return "DanglingVertex";
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::ConservationViolated: return "ConservationViolated";
    case Errc::NegativeFlow: return "NegativeFlow";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::EmptyFlow: return "EmptyFlow";
    case Errc::Infeasible: return "Infeasible";
    case Errc::IntegerOverflow: return "IntegerOverflow";
    case Errc::ParityAssertionFailed: return "ParityAssertionFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index` names the offending vertex,
/// edge or line when one exists, and is -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::int64_t index, const std::string& detail)
      : std::runtime_error(format(code, index, detail)), code_(code), index_(index) {}
  explicit Error(Errc code, const std::string& detail = {}) : Error(code, -1, detail) {}

  Errc code() const noexcept { return code_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  static std::string format(Errc code, std::int64_t index, const std::string& detail) {
    std::string out = errc_name(code);
    if (index >= 0) out += "(" + std::to_string(index) + ")";
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  Errc code_;
  std::int64_t index_;
};

// Checked 64-bit arithmetic. Flow values in the binary-coded hardness
// family grow exponentially, so silent wrap-around is never acceptable.

inline Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::IntegerOverflow, "addition");
  return r;
}

inline Weight checked_sub(Weight a, Weight b) {
  Weight r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::IntegerOverflow, "subtraction");
  return r;
}

inline Weight checked_mul(Weight a, Weight b) {
  Weight r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::IntegerOverflow, "multiplication");
  return r;
}

inline Weight checked_pow2(int exponent) {
  if (exponent < 0 || exponent >= std::numeric_limits<Weight>::digits)
    throw Error(Errc::IntegerOverflow, "2^" + std::to_string(exponent));
  return Weight{1} << exponent;
}

}  // namespace flowdec
