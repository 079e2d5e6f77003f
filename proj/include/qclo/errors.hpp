#pragma once

#include <stdexcept>
#include <string>

namespace qclo {

// An input file could not be read or decoded (JSON syntax, malformed lines).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input violates a dataset, lexicon, or report contract.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qclo
