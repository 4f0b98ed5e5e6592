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

#include "linalg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "core/errors.hpp"

namespace incentive_forge::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::OnesOuter(std::size_t n) { return Matrix(n, n, 1.0); }

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::MaxAbs() const { return NormInf(data_); }

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidArgument("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidArgument("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch in *");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector shape mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = Dot(a.row(i), x);
  return y;
}

double NormInf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double DistInf(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vector length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// In-place LU with partial pivoting on an augmented right-hand side block.
void EliminateInPlace(Matrix& a, Matrix& rhs) {
  const std::size_t n = a.rows();
  const double scale = std::max(a.MaxAbs(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-13 * scale)
      throw NumericError("numerically singular matrix (pivot " +
                         std::to_string(a(piv, col)) + " in column " +
                         std::to_string(col) + ")");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      for (std::size_t c = 0; c < rhs.cols(); ++c)
        std::swap(rhs(piv, c), rhs(col, c));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(r, c) -= f * rhs(col, c);
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      double s = rhs(ri, c);
      for (std::size_t k = ri + 1; k < n; ++k) s -= a(ri, k) * rhs(k, c);
      rhs(ri, c) = s / a(ri, ri);
    }
  }
}

}  // namespace

Vector Solve(const Matrix& a, std::span<const double> b) {
  if (!a.square() || a.rows() != b.size())
    throw InvalidArgument("Solve: A must be square and conformant with b");
  if (!a.AllFinite()) throw NumericError("Solve: non-finite matrix entry");
  Matrix lu = a;
  Matrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  EliminateInPlace(lu, rhs);
  return Vector(rhs.data().begin(), rhs.data().end());
}

Matrix Inverse(const Matrix& a) {
  if (!a.square()) throw InvalidArgument("Inverse: matrix must be square");
  Matrix lu = a;
  Matrix rhs = Matrix::Identity(a.rows());
  EliminateInPlace(lu, rhs);
  return rhs;
}

Matrix ShermanMorrisonInverse(std::size_t n) {
  if (n == 0) throw InvalidArgument("ShermanMorrisonInverse: n must be positive");
  Matrix inv = Matrix::Identity(n);
  const double c = 1.0 / static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) -= c;
  return inv;
}

Matrix LyapunovSolve(const Matrix& a) {
  if (!a.square()) throw InvalidArgument("LyapunovSolve: matrix must be square");
  const std::size_t n = a.rows();
  const std::size_t nn = n * n;
  // Unknown M(r, c) lives at index r * n + c.
  Matrix kron(nn, nn);
  Vector rhs(nn, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t eq = r * n + c;
      for (std::size_t k = 0; k < n; ++k) {
        kron(eq, k * n + c) += a(k, r);  // (A^T M)(r, c)
        kron(eq, r * n + k) += a(k, c);  // (M A)(r, c)
      }
      if (r == c) rhs[eq] = -1.0;
    }
  }
  const Vector vec = Solve(kron, rhs);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = 0.5 * (vec[r * n + c] + vec[c * n + r]);
  return m;
}

}  // namespace incentive_forge::linalg
