#pragma once

#include <stdexcept>
#include <string>

namespace pqa {

// Base class for all library errors that map to CLI exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A size/capacity guard was hit (e.g. too many qubits for the dense simulator).
struct CapacityError : Error {
    explicit CapacityError(const std::string& what) : Error(what) {}
};

// Operand shapes or moduli do not match.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// A value violates an operation's precondition.
struct ValueError : Error {
    explicit ValueError(const std::string& what) : Error(what) {}
};

// A randomized search exhausted its attempt budget.
struct RetryExhausted : Error {
    explicit RetryExhausted(const std::string& what) : Error(what) {}
};

// Syndrome decoding found no error pattern within the weight budget.
struct DecodeFailure : Error {
    explicit DecodeFailure(const std::string& what) : Error(what) {}
};

// Malformed serialized artifact (bad magic, truncation, bad field).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Socket-level or protocol-level failure in the PIR client/server.
struct NetError : Error {
    explicit NetError(const std::string& what) : Error(what) {}
};

}  // namespace pqa
