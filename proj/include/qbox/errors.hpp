#pragma once

#include <stdexcept>
#include <string>

namespace qbox {

/// Argument outside the domain of an operation (position outside the well, non-positive fit data, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The state cannot define the requested quantity (zero state, c2 = 0 for the ratio).
class DegenerateStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Valid state, but outside what an analytic procedure supports (complex coefficients, |A| > 1).
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qbox
