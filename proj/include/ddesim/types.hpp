// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ddesim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid problem definition or configuration value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The collocation matrix is numerically singular for the chosen degree.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double rcond)
      : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// A numerical routine (eigensolver, root finder) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddesim
