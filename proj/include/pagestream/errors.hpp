#pragma once

#include <stdexcept>
#include <string>

namespace pagestream {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user-supplied graph data (ids out of range, bad counts).
struct InputError : Error { using Error::Error; };

// Invalid configuration value or combination.
struct ConfigError : Error { using Error::Error; };

// Text parsing failure; the message carries the line number.
struct ParseError : Error { using Error::Error; };

// Binary graph file violates the on-disk format.
struct FormatError : Error { using Error::Error; };

// Broken internal contract (illegal transition, size mismatch).
struct ContractError : Error { using Error::Error; };

// A report was requested without the data needed to produce it.
struct DataError : Error { using Error::Error; };

}  // namespace pagestream
