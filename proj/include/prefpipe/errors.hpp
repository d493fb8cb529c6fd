#pragma once

#include <stdexcept>
#include <string>

namespace prefpipe {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration file or parameter is missing/invalid. Carries the key path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage was requested but its input artifact does not exist.
class StageInputMissing : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Transport-level failures talking to an inference endpoint.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Endpoint still unreachable after the configured retry budget.
class RetryExhausted : public TransportError {
 public:
  using TransportError::TransportError;
};

/// Response did not match the chat-completions wire schema.
class ProtocolError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// 401/403 from the endpoint; never retried.
class AuthError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// Judge kept returning unusable verdicts past the retry budget.
class VerdictRetryExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace prefpipe
