#pragma once

#include <stdexcept>
#include <string>

namespace cardvision {

enum class ErrorKind {
  Io,             // file missing, unreadable, unwritable
  Format,         // malformed image, manifest, spec or truth file
  Template,       // template set fails its invariants or coverage checks
  EmptyCorner,    // nothing survived corner preprocessing
  LowConfidence,  // best correlation below the configured floor
};

const char* to_string(ErrorKind kind);

// Runtime failures. Precondition violations on the in-process API throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cardvision
