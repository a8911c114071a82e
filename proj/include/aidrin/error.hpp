#pragma once

#include <stdexcept>
#include <string>

namespace aidrin {

/// Base for every error raised by the library. Metric code throws; the
/// report engine catches per metric and turns the message into a warning.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace aidrin
