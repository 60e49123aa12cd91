#pragma once

#include <stdexcept>
#include <string>

namespace diagcl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  using Error::Error;
};

/// A partition spec whose ground set would be finite.
class GroundSetFinite : public Error {
public:
  using Error::Error;
};

class NotEquivalence : public Error {
public:
  using Error::Error;
};

class InvalidAddress : public Error {
public:
  using Error::Error;
};

class InvalidRepresentative : public Error {
public:
  using Error::Error;
};

/// Raised by realise_t1 when the relation has no T1 realisation.
class NotRealisable : public Error {
public:
  using Error::Error;
};

/// A basic open that does not belong to the construction it was handed to.
class ForeignVariant : public Error {
public:
  using Error::Error;
};

class NotT1Construction : public Error {
public:
  using Error::Error;
};

class BoundExceeded : public Error {
public:
  using Error::Error;
};

class SpecMismatch : public Error {
public:
  using Error::Error;
};

class NotInImage : public Error {
public:
  using Error::Error;
};

/// An open family that fails the topology axioms; the message names the witness.
class NotATopology : public Error {
public:
  using Error::Error;
};

/// Designated residue classes that overlap or leave a finite complement.
class InvalidDesignatedSets : public Error {
public:
  using Error::Error;
};

} // namespace diagcl
