#ifndef FLATPSI_ERRORS_HPP
#define FLATPSI_ERRORS_HPP

#include <stdexcept>

namespace flatpsi {

/// Input exceeds the 32-vertex / 32-edge enumeration bound.
class SizeBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid input (bad endpoints, duplicate ids, loops where
/// forbidden, non-tubing collections, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace flatpsi

#endif
