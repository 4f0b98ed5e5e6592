// Copyright 2026 The incentive_forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense linear algebra for the certificates and fixed-point solves.
// Everything is double precision, row-major, and sized for n <= ~100.

#ifndef INCENTIVE_FORGE_LINALG_MATRIX_HPP_
#define INCENTIVE_FORGE_LINALG_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace incentive_forge::linalg {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Row-list construction; every row must have the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);
  // The all-ones matrix 11^T.
  static Matrix OnesOuter(std::size_t n);
  static Matrix Diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Matrix Transposed() const;
  double MaxAbs() const;
  bool AllFinite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double NormInf(std::span<const double> v);
double DistInf(std::span<const double> a, std::span<const double> b);
double Dot(std::span<const double> a, std::span<const double> b);

// Gaussian elimination with partial pivoting. Throws NumericError when a
// pivot falls below 1e-13 times the largest entry of A.
Vector Solve(const Matrix& a, std::span<const double> b);
Matrix Inverse(const Matrix& a);

// Closed-form inverse of I + 11^T: I - 11^T / (n + 1).
Matrix ShermanMorrisonInverse(std::size_t n);

// Spectrum of a general real square matrix: balancing, Householder
// reduction to upper Hessenberg form, then Francis double-shift QR.
// Conjugate pairs appear adjacent, positive imaginary part first.
std::vector<std::complex<double>> Eigenvalues(const Matrix& a);

// Spectrum of a symmetric matrix via cyclic Jacobi rotations, ascending.
Vector SymmetricEigenvalues(const Matrix& a);

// Solves A^T M + M A = -I through the n^2 x n^2 Kronecker system and
// returns the symmetrized solution.
Matrix LyapunovSolve(const Matrix& a);

}  // namespace incentive_forge::linalg

#endif  // INCENTIVE_FORGE_LINALG_MATRIX_HPP_
