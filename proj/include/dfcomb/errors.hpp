// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace dfc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A grid or time step too coarse for the physics it must resolve.
class ResolutionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resolution"; }
};

/// Non-finite values appeared while stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }
  const char* kind() const noexcept override { return "divergence"; }

 private:
  std::size_t step_;
};

/// Invalid input. key_path names the offending scenario key when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string key_path = {})
      : Error(key_path.empty() ? what : key_path + ": " + what),
        key_path_(std::move(key_path)) {}
  const std::string& key_path() const noexcept { return key_path_; }
  const char* kind() const noexcept override { return "validation"; }

 private:
  std::string key_path_;
};

class LookupError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "lookup"; }
};

/// An integration window falls outside the sampled grid.
class CoverageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "coverage"; }
};

/// The spectral propagator could not keep circular wrap-around under budget.
class PaddingError : public Error {
 public:
  PaddingError(const std::string& what, std::size_t required_length)
      : Error(what), required_length_(required_length) {}
  std::size_t required_length() const noexcept { return required_length_; }
  const char* kind() const noexcept override { return "padding"; }

 private:
  std::size_t required_length_;
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A sweep or job request exceeds its configured point budget.
class BudgetError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "budget"; }
};

}  // namespace dfc
