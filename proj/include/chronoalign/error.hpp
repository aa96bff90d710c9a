#pragma once

#include <stdexcept>
#include <string>

namespace chronoalign {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid in-memory argument: out-of-range value, out-of-domain query,
// precondition violation (e.g. non-exclusive diarization, empty reference).
struct InputError : Error {
    using Error::Error;
};

// Invalid configuration value or combination (e.g. overlap >= max window).
struct ConfigError : Error {
    using Error::Error;
};

// Malformed file content. Messages carry line/field position.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed content that violates a documented invariant. Messages name
// the invariant.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace chronoalign
