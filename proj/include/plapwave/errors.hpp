#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace plapwave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenvalue scan found fewer sign changes than requested modes.
struct BracketFailure : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// A state or assembled vector contains inf/nan.
struct NonFiniteValue : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Existence-time formula requires K > p*E(0).
struct InvalidK : Error {
    using Error::Error;
};

struct InvalidP : Error {
    using Error::Error;
};

// Exponent window or sign condition for the blow-up functional is violated.
struct NotBlowupCandidate : Error {
    using Error::Error;
};

struct BoundViolation : Error {
    using Error::Error;
    BoundViolation(const std::string& what, std::vector<double> witness_coeffs)
        : Error(what), witness(std::move(witness_coeffs)) {}
    // Coefficients of the test function that broke the bound.
    std::vector<double> witness;
};

}  // namespace plapwave
