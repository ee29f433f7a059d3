#ifndef UNARY_ERRORS_HPP
#define UNARY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace unary {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size guard (lcm, window, materialized cycle) was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// A UFA-only operation received an ambiguous automaton.
/// `witness()` is a word length with two accepting runs, in decimal.
class AmbiguousInput : public Error {
public:
    AmbiguousInput(const std::string& what, std::string witness)
        : Error(what), witness_(std::move(witness)) {}
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

/// The complement recursion went deeper than its proven bound. Signals a bug.
class RecursionOverflow : public Error {
public:
    using Error::Error;
};

class StructureViolation : public Error {
public:
    using Error::Error;
};

class NotThreeOccur : public Error {
public:
    using Error::Error;
};

/// An oracle trajectory did not close within its iteration cap.
class Inexact : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class NoPeriodInWindow : public Error {
public:
    using Error::Error;
};

class ConcatDisallowed : public Error {
public:
    using Error::Error;
};

/// Malformed UAF, DIMACS, or formula text.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace unary

#endif  // UNARY_ERRORS_HPP
