#pragma once

#include <stdexcept>
#include <string>

namespace fy {

enum class Errc {
  OrderingViolation,
  OverlapViolation,
  EndpointViolation,
  RatioViolation,
  InvalidDigit,
  BudgetExceeded,
  IncompatibleIfs,
  MissingTailForm,
  ParamOutOfRange,
  ExponentTooSmall,
  NotWellDefined,
  ParseError,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fy
