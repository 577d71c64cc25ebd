#pragma once

#include <stdexcept>
#include <string>

namespace nlexit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched grid/dimension between objects that must share a layout.
struct DimensionError : Error {
  using Error::Error;
};

/// A scalar/structural argument outside its documented range.
struct ArgumentError : Error {
  using Error::Error;
};

/// Config file rejected; `pointer` is the JSON-pointer of the offending key.
struct ConfigError : Error {
  ConfigError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer(pointer) {}
  std::string pointer;
};

}  // namespace nlexit
