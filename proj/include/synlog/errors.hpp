#pragma once

#include <stdexcept>
#include <string>

namespace synlog {

// Raised when a log content string is empty after trimming whitespace.
class EmptyContentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an input file violates the expected layout (missing columns,
// malformed rule lines, unparsable fields).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a file cannot be opened, read, or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a predicted result and a ground truth do not cover the same
// set of line ids.
class DomainMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace synlog
