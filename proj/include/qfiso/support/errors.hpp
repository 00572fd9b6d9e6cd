#pragma once

#include <stdexcept>
#include <string>

namespace qfiso {

/// Base class for every computational error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

class DenominatorVanishes : public Error {
public:
    explicit DenominatorVanishes(const std::string& what) : Error(what) {}
};

class UndefinedEntry : public Error {
public:
    explicit UndefinedEntry(const std::string& what) : Error(what) {}
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& what) : Error(what) {}
};

class NotPrime : public Error {
public:
    explicit NotPrime(const std::string& what) : Error(what) {}
};

class WrongCase : public Error {
public:
    explicit WrongCase(const std::string& what) : Error(what) {}
};

class SizeTooLarge : public Error {
public:
    explicit SizeTooLarge(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Raised when an internal consistency check fails; indicates a bug.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace qfiso
