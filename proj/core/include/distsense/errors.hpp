#pragma once

#include <stdexcept>
#include <string>

namespace distsense {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside its mathematical domain (negative rate, u outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Interface contract violated: dimension mismatch, unsupported kind,
/// capability missing (e.g. skewing on a non-symmetric model).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Distortion score undefined because F_X or S_X vanishes at an observation.
class ScoreUndefinedError : public Error {
 public:
  using Error::Error;
};

/// All reweighting weights are zero or non-finite.
class DegenerateWeightsError : public Error {
 public:
  using Error::Error;
};

/// Sampler could not be initialized (non-finite log posterior at the start).
class InitError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dataset file could not be parsed.
class IngestError : public Error {
 public:
  using Error::Error;
};

/// Short machine-readable code for an error object (used in CLI error JSON).
std::string error_code(const Error& e);

}  // namespace distsense
