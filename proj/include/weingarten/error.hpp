#pragma once

#include <stdexcept>
#include <string>

namespace weingarten {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size or domain limit was exceeded (e.g. n above the enumeration cap).
class cap_exceeded : public error {
public:
    using error::error;
};

/// Malformed textual input (partitions, pairings, rational functions).
class parse_error : public error {
public:
    using error::error;
};

} // namespace weingarten
