#pragma once

#include <stdexcept>
#include <string>

namespace dybe {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Division by an exact zero in a field.
class zero_denominator : public error {
public:
  zero_denominator() : error("zero denominator") {}
};

/// Evaluation of a rational function at one of its poles.
class evaluation_at_pole : public error {
public:
  evaluation_at_pole() : error("evaluation at pole") {}
};

class variable_mismatch : public error {
public:
  explicit variable_mismatch(const std::string& what)
      : error("variable mismatch: " + what) {}
};

/// A rational lambda hits a pole of the coefficients being computed.
class non_generic_lambda : public error {
public:
  non_generic_lambda() : error("non-generic λ") {}
};

/// A lower parameter of a terminating series produced a zero Pochhammer
/// before the series terminated.
class lower_parameter_collision : public error {
public:
  lower_parameter_collision() : error("lower parameter collision") {}
};

class balance_violation : public error {
public:
  balance_violation() : error("balance condition violated") {}
};

class truncation_error : public error {
public:
  truncation_error() : error("truncation below module depth") {}
};

} // namespace dybe
