#pragma once

#include <stdexcept>
#include <string>

namespace lqu_lab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside the numerical domain of an operation (bad temperature,
// non-Hermitian matrix, invalid state, ...). The CLI maps these to exit 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotPSD : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotADensityMatrix : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonUnitDirection : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidTemperature : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidXState : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnequalJosephsonEnergies : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidChannel : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed sweep specification or unknown figure preset; exit 1.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class UnknownFigureId : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

// File system failures; exit 3.
class IoError : public Error {
 public:
  using Error::Error;
};

// A numerical invariant that should hold by construction was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lqu_lab
