// Copyright 2026 The typical-worlds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense complex linear algebra for the small operators used throughout the
 * library: observables, projectors, unitaries and density matrices.
 *
 * Storage is row-major. All routines are pure functions over values.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace typical::linalg {

using Complex = std::complex<double>;

/// Largest row or column count any routine will produce.
inline constexpr std::size_t kMaxDimension = 4096;

/// Default relative tolerance used to group eigenvalues into eigenspaces.
inline constexpr double kEigenGroupTolerance = 1e-9;

class Vector {
  public:
    Vector() = default;
    explicit Vector(std::size_t dim);
    Vector(std::initializer_list<Complex> entries);
    explicit Vector(std::vector<Complex> entries);

    /// Standard basis vector e_index of the given dimension.
    static Vector basis(std::size_t dim, std::size_t index);

    [[nodiscard]] std::size_t dim() const { return data_.size(); }
    Complex &operator[](std::size_t i) { return data_[i]; }
    const Complex &operator[](std::size_t i) const { return data_[i]; }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }
    [[nodiscard]] std::span<Complex> entries() { return data_; }

    [[nodiscard]] double norm() const;
    [[nodiscard]] Vector normalized() const;

    Vector &operator+=(const Vector &other);
    Vector &operator-=(const Vector &other);
    Vector &operator*=(Complex s);

  private:
    std::vector<Complex> data_;
};

Vector operator+(Vector a, const Vector &b);
Vector operator-(Vector a, const Vector &b);
Vector operator*(Complex s, Vector v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const Vector &a, const Vector &b);

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static Matrix diagonal(std::span<const double> diag);
    /// Square matrix whose columns are the given vectors.
    static Matrix from_columns(std::span<const Vector> columns);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }

    [[nodiscard]] Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector &v);

    [[nodiscard]] Matrix adjoint() const;
    [[nodiscard]] Complex trace() const;
    [[nodiscard]] double frobenius_norm() const;
    /// max_ij |m_ij - conj(m_ji)|
    [[nodiscard]] double hermiticity_defect() const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(Complex s);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &m, const Vector &v);

/// |a><b|
Matrix outer(const Vector &a, const Vector &b);
/// |v><v|
Matrix projector(const Vector &v);

/// ||a - b||_F
double distance(const Matrix &a, const Matrix &b);
/// ||U^dagger U - I||_F
double unitarity_residual(const Matrix &u);

/// Kronecker product. Throws CapExceeded past kMaxDimension.
Matrix tensor_product(const Matrix &a, const Matrix &b);
Vector tensor_product(const Vector &a, const Vector &b);
Matrix tensor_product(std::span<const Matrix> factors);

struct EigenPair {
    double value;
    Vector vector;
};

/// All eigenpairs of a Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations. Throws InvalidArgument when max|m - m^dagger| > tol.
std::vector<EigenPair> hermitian_eigenpairs(const Matrix &m, double tol = 1e-9);
std::vector<double> hermitian_eigenvalues(const Matrix &m, double tol = 1e-9);

struct Eigenspace {
    double value;
    Matrix projector;
};

/// Spectral decomposition with eigenvalues closer than tol * max(1, spectral
/// radius) merged into one eigenspace. Ascending by eigenvalue.
std::vector<Eigenspace> hermitian_eigendecomposition(const Matrix &m,
                                                     double tol = kEigenGroupTolerance);

/// Reduced operator on the factors listed in `keep` (ascending factor order).
/// `dims` gives the factor dimensions whose product is m.rows().
Matrix partial_trace(const Matrix &m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

/// 1/2 sum |eig(a - b)|
double trace_distance(const Matrix &a, const Matrix &b);

/// Square unitary whose leading columns are `columns`. The remaining columns
/// come from modified Gram-Schmidt (with one re-orthogonalization pass) over
/// the standard basis.
Matrix unitary_completion(std::span<const Vector> columns, double tol = 1e-9);

/// Full-space embedding of `op`, which acts on the tensor product of the
/// factors in `targets` (in that order), with identity on the other factors.
Matrix embed(const Matrix &op, std::span<const std::size_t> targets,
             std::span<const std::size_t> dims);

/// Computes embed(op, targets, dims) * v without forming the embedding.
Vector apply_on(const Matrix &op, std::span<const std::size_t> targets,
                std::span<const std::size_t> dims, const Vector &v);

/// Computes embed(op, targets, dims) * m without forming the embedding.
Matrix apply_on(const Matrix &op, std::span<const std::size_t> targets,
                std::span<const std::size_t> dims, const Matrix &m);

} // namespace typical::linalg
