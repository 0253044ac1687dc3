#pragma once

#include <stdexcept>
#include <string>

namespace cavqfi {

// Bad caller input (ranges, sizes, signs).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Superposition whose norm collapses, e.g. odd cat at alpha -> 0.
class DegenerateState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fock cutoff too small for the requested amplitude or displacement.
class InadequateCutoff : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Moment/characteristic inputs that do not come from one normalized state.
class InconsistentMoments : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// State vector that violates a normalization or dimension precondition.
class InvalidState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Oracle product dimension above the configured bound.
class DimensionOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration or command line.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Output file that cannot be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cavqfi
