#pragma once

#include <stdexcept>
#include <string>

namespace weber {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested symbolic derivation is outside what the engine supports
/// (inexact input, mixed-sign three-radical cascade, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace weber
