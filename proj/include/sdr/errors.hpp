#ifndef SDR_ERRORS_HPP
#define SDR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdr {

/// Invalid argument values or mismatched dimensions.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A point left the coordinate chart (w outside Gamma, q_n too small).
class OutOfChartError : public std::domain_error {
public:
  explicit OutOfChartError(const std::string& msg) : std::domain_error(msg) {}
};

/// A caller broke an API contract (non-tangent vector, asymmetric operator).
class ContractViolation : public std::logic_error {
public:
  explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

/// Matrix input is singular or degenerate beyond what clamping can absorb.
class SingularInputError : public std::runtime_error {
public:
  explicit SingularInputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computation produced non-finite values or otherwise failed numerically.
class NumericalFailure : public std::runtime_error {
public:
  explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sdr

#endif  // SDR_ERRORS_HPP
