#pragma once

#include <stdexcept>
#include <string>

namespace ainfty {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ill-formed caller input: dimension mismatches, unknown basis names, bad arities.
class malformed_input : public error {
  public:
    using error::error;
};

/// A supposed chain complex fails d∘d = 0; message names the offending degree and basis element.
class invalid_complex : public error {
  public:
    using error::error;
};

/// An operation needs structure maps beyond what the object carries.
class incomplete_structure : public error {
  public:
    using error::error;
};

/// A theorem hypothesis fails, so the requested computation is not defined.
class not_applicable : public error {
  public:
    using error::error;
};

/// Asking for the value of an obstructed (undefined) Massey product.
class undefined_product : public error {
  public:
    using error::error;
};

/// An internal exact identity failed. This is a bug in the engine, never user error;
/// computations abort loudly rather than return unverified data.
class internal_fault : public error {
  public:
    using error::error;
};

/// Document syntax or schema problem, with position information where available.
class parse_error : public error {
  public:
    using error::error;
};

} // namespace ainfty
