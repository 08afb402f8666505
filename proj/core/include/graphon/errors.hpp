#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value lies outside the mathematical domain of an operation
// (word length exceeding the alphabet, kernel values outside [0,1], ...).
struct DomainError : Error {
    using Error::Error;
};

// A vertex index or word position is out of range.
struct IndexError : Error {
    using Error::Error;
};

// A target size is too small for the requested construction.
struct SizeError : Error {
    using Error::Error;
};

// An enumeration would exceed a configured blow-up cap.
struct ExplosionGuard : Error {
    using Error::Error;
};

// A malformed or inconsistent configuration (file, CLI, or struct).
// The command line tool maps this to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// A documented operation precondition does not hold for the given inputs.
struct PreconditionError : Error {
    using Error::Error;
};

// A file could not be opened or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace graphon
