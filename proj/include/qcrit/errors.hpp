#pragma once

#include <stdexcept>
#include <string>

namespace qcrit {

// Base for everything thrown on purpose. CLI maps ConfigError -> exit 1,
// NumericError -> exit 2, anything else -> exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

// Vanishing mean spin: the Wineland parameter has no meaning, which is not
// the same thing as being zero.
struct SqueezingUndefinedError : NumericError {
  using NumericError::NumericError;
};

}
