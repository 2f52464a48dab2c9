#pragma once

#include <stdexcept>
#include <string>

namespace stripcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was applied outside its mathematical domain (sqrt of a
// negative enclosure, division by a value not certified nonzero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The precision ladder hit its cap before two values separated and no
// structural identity was found. Never resolved by guessing.
class Undecided : public Error {
 public:
  using Error::Error;
};

class CertificateFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidHeight : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ArityError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace stripcert
