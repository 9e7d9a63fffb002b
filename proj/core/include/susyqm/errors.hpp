#ifndef SUSYQM_ERRORS_HPP
#define SUSYQM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace susyqm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EvenNError : public Error {
public:
    explicit EvenNError(const std::string& msg) : Error(msg) {}
};

class NonPositiveError : public Error {
public:
    explicit NonPositiveError(const std::string& msg) : Error(msg) {}
};

class GridMismatchError : public Error {
public:
    explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

class LengthMismatchError : public Error {
public:
    explicit LengthMismatchError(const std::string& msg) : Error(msg) {}
};

class AsymmetricKernelError : public Error {
public:
    explicit AsymmetricKernelError(const std::string& msg) : Error(msg) {}
};

class InconsistentDerivativeError : public Error {
public:
    explicit InconsistentDerivativeError(const std::string& msg) : Error(msg) {}
};

class ConstraintViolatedError : public Error {
public:
    explicit ConstraintViolatedError(const std::string& msg) : Error(msg) {}
};

// Nonlocality parameter at a singular point (c = +1 or c = -1).
class SingularCError : public Error {
public:
    explicit SingularCError(const std::string& msg) : Error(msg) {}
};

class NotBoundError : public Error {
public:
    explicit NotBoundError(const std::string& msg) : Error(msg) {}
};

class UnsupportedFamilyError : public Error {
public:
    explicit UnsupportedFamilyError(const std::string& msg) : Error(msg) {}
};

class NotSymmetricError : public Error {
public:
    explicit NotSymmetricError(const std::string& msg) : Error(msg) {}
};

class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

class NotParityInvariantError : public Error {
public:
    explicit NotParityInvariantError(const std::string& msg) : Error(msg) {}
};

} // namespace susyqm

#endif
