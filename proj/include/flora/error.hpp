#pragma once

#include <stdexcept>
#include <string>

namespace flora {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be read at all: bad CSV/JSON syntax, wrong header, unparseable number.
class parse_error : public error {
 public:
  using error::error;
};

// Well-formed input that violates a domain invariant or operation precondition.
class validation_error : public error {
 public:
  using error::error;
};

}  // namespace flora
