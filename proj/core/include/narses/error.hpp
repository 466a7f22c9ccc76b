#pragma once

#include <stdexcept>
#include <string>

namespace narses {

enum class Errc {
  InvalidTime,
  SchedulingInPast,
  TimeRegression,
  UnknownNode,
  UnknownHost,
  UnknownFlow,
  ZeroSize,
  TooFewHosts,
  PortInUse,
  UnboundPort,
  InvalidParams,
  ParseError,
  InvariantViolation,
  ValidationFailed,
  EmptyInput,
  EmptyTable,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace narses
