#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace orbidegen {

/// Input violates a documented invariant (malformed table, bad decoration, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. a non-positive contact order).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size cap or enumeration bound was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite value produced by a host-supplied evaluator.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The correction iteration stopped making progress.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace orbidegen
