#pragma once

#include <stdexcept>
#include <string>

namespace cubex {

// Malformed external input (measure files, manifests, fraction strings).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation was refused because it exceeds a resource guard.  Guards are
// explicit and produce a distinct exit code at the CLI; nothing is silently
// truncated.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem trouble (missing file, unwritable output directory).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cubex
