#pragma once

#include <stdexcept>
#include <string>

namespace mixinfo {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a documented precondition (off-support point, bad fit data, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature gave up; carries the best estimate it reached.
struct QuadratureError : Error {
    QuadratureError(const std::string& msg, double best, double err)
        : Error(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// A mathematical identity the code asserts (Pythagoras, coupling) failed numerically.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

}  // namespace mixinfo
