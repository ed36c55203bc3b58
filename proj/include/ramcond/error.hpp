#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ramcond {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that violates a named structural invariant (malformed table,
// invalid filtration, bad scenario key, ...). The CLI maps this to exit 2.
class InvalidInput : public Error {
public:
    InvalidInput(std::string invariant, const std::string& what)
        : Error(invariant + ": " + what), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

// Operation called outside its domain (division by zero, wrong ring, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A computed result failed one of its post-conditions. The CLI maps this
// to exit 1.
class AssertionFailure : public Error {
public:
    using Error::Error;
};

} // namespace ramcond
