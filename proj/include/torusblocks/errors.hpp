#ifndef TORUSBLOCKS_ERRORS_HPP
#define TORUSBLOCKS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torusblocks {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Scalars of different cyclotomic orders were mixed.
struct OrderMismatchError : Error {
    explicit OrderMismatchError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

// An index fell outside the admissible range of an identity or operation.
struct RangeError : Error {
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested at a pole; the message names the vanishing factor.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Laurent division left a nonzero remainder (input not x-even).
struct NondivisibleError : Error {
    explicit NondivisibleError(const std::string& msg) : Error(msg) {}
};

// A q-integer divisor in a shift-operator chain vanished at the root of unity.
struct VanishingDivisorError : Error {
    explicit VanishingDivisorError(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Continuous branch tracking detected an argument jump it could not resolve.
struct BranchError : Error {
    explicit BranchError(const std::string& msg) : Error(msg) {}
};

struct CacheError : Error {
    explicit CacheError(const std::string& msg) : Error(msg) {}
};

} // namespace torusblocks

#endif
