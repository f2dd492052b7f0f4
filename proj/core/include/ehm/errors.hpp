#pragma once

#include <stdexcept>
#include <string>

namespace ehm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (dimension mismatch, bad index, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class PolarizationError : public Error {
 public:
  using Error::Error;
};

class NonIntegralWeight : public Error {
 public:
  using Error::Error;
};

class NotConvex : public Error {
 public:
  using Error::Error;
};

class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

// The equivariant index came out different in two chambers.
class ChamberInconsistency : public Error {
 public:
  using Error::Error;
};

class AssignmentAmbiguous : public Error {
 public:
  using Error::Error;
};

class UnsupportedType : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ehm
