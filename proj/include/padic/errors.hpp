#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Operands built over different primes.
class PrimeMismatch : public std::invalid_argument {
public:
    explicit PrimeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

// A valuation decision could not be certified with the digits available.
// Callers are expected to retry at higher precision.
class PrecisionExhausted : public std::runtime_error {
public:
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrix : public std::runtime_error {
public:
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

class SamplerStuck : public std::runtime_error {
public:
    explicit SamplerStuck(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientSamples : public std::runtime_error {
public:
    explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

class TruncationTooSmall : public std::runtime_error {
public:
    explicit TruncationTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user-facing input: non-prime modulus, bad signature, bad measure.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace padic
