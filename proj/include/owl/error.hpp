#pragma once

#include <stdexcept>
#include <string>

namespace owl {

/// Rejected input: malformed weights, non-finite entries, bad parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A numerical routine failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg)
{
    if (!cond) throw InvalidArgument(msg);
}

inline void require_same_size(long a, long b, const char* what)
{
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

} // namespace detail
} // namespace owl
