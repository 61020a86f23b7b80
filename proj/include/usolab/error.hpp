#pragma once

#include <stdexcept>
#include <string>

namespace usolab {

enum class ErrorKind {
    InvalidInput,   // malformed arguments, out-of-range vertices, bad shapes
    Parse,          // unreadable or ill-formed orientation files
    Size,           // an enumeration guard was exceeded
    Precondition,   // caller violated a documented precondition
    Sampling,       // rejection sampling exhausted its attempt budget
    Cyclic,         // a directed cycle where none may exist
    Reachability,   // absorbing set unreachable from some vertex
    Domain,         // numeric argument outside the defined domain
    Pivot,          // pivot not available at the current vertex
    Terminal,       // terminal pivot used as a move
    Internal,       // invariant failure inside the library
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace usolab
