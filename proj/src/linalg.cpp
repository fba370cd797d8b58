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

#include "typical/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "typical/error.hpp"

namespace typical::linalg {

namespace {

void require_same_shape(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument(std::string(what) + ": shape mismatch (" +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                              " vs " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + ")");
    }
}

void require_finite(std::span<const Complex> entries) {
    for (const auto &z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidArgument("matrix entries must be finite");
        }
    }
}

std::size_t checked_product(std::size_t a, std::size_t b) {
    if (a != 0 && b > kMaxDimension / a) {
        throw CapExceeded("tensor product dimension " + std::to_string(a) + "*" +
                          std::to_string(b) + " exceeds maximum " +
                          std::to_string(kMaxDimension));
    }
    return a * b;
}

// Index bookkeeping for operators acting on a subset of tensor factors.
// groups[rest * local + l] is the full index whose target digits encode l.
struct FactorSplit {
    std::size_t local = 1;
    std::size_t rest = 1;
    std::vector<std::size_t> groups;
};

FactorSplit split_factors(std::span<const std::size_t> targets,
                          std::span<const std::size_t> dims) {
    const std::size_t k = dims.size();
    std::vector<bool> is_target(k, false);
    FactorSplit split;
    for (auto t : targets) {
        if (t >= k || is_target[t]) {
            throw InvalidArgument("target factor indices must be distinct and < factor count");
        }
        is_target[t] = true;
        split.local *= dims[t];
    }
    std::size_t total = 1;
    for (auto d : dims) {
        total *= d;
    }
    split.rest = total / split.local;

    // Strides of each factor within the full index (factor 0 most significant).
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t j = k; j-- > 1;) {
        stride[j - 1] = stride[j] * dims[j];
    }
    std::vector<std::size_t> local_stride(k, 0);
    {
        std::size_t s = 1;
        for (std::size_t j = targets.size(); j-- > 0;) {
            local_stride[targets[j]] = s;
            s *= dims[targets[j]];
        }
    }
    std::vector<std::size_t> rest_stride(k, 0);
    {
        std::size_t s = 1;
        for (std::size_t j = k; j-- > 0;) {
            if (!is_target[j]) {
                rest_stride[j] = s;
                s *= dims[j];
            }
        }
    }
    split.groups.assign(total, 0);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t l = 0;
        std::size_t r = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t digit = (i / stride[j]) % dims[j];
            if (is_target[j]) {
                l += digit * local_stride[j];
            } else {
                r += digit * rest_stride[j];
            }
        }
        split.groups[r * split.local + l] = i;
    }
    return split;
}

} // namespace

// --- Vector -----------------------------------------------------------------

Vector::Vector(std::size_t dim) : data_(dim, Complex{0.0, 0.0}) {}
Vector::Vector(std::initializer_list<Complex> entries) : data_(entries) {}
Vector::Vector(std::vector<Complex> entries) : data_(std::move(entries)) {}

Vector Vector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw InvalidArgument("basis index out of range");
    }
    Vector v(dim);
    v[index] = 1.0;
    return v;
}

double Vector::norm() const {
    double s = 0.0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

Vector Vector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw InvalidArgument("cannot normalize the zero vector");
    }
    Vector out = *this;
    out *= 1.0 / n;
    return out;
}

Vector &Vector::operator+=(const Vector &other) {
    if (other.dim() != dim()) {
        throw InvalidArgument("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Vector &Vector::operator-=(const Vector &other) {
    if (other.dim() != dim()) {
        throw InvalidArgument("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Vector &Vector::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

Vector operator+(Vector a, const Vector &b) { return a += b; }
Vector operator-(Vector a, const Vector &b) { return a -= b; }
Vector operator*(Complex s, Vector v) { return v *= s; }

Complex inner(const Vector &a, const Vector &b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("inner product dimension mismatch");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

// --- Matrix -----------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw InvalidArgument("ragged matrix initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidArgument("entry count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
    require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
    if (columns.empty()) {
        return {};
    }
    const std::size_t n = columns.front().dim();
    Matrix m(n, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        m.set_column(c, columns[c]);
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void Matrix::set_column(std::size_t c, const Vector &v) {
    if (v.dim() != rows_ || c >= cols_) {
        throw InvalidArgument("set_column: dimension mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v[r];
    }
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex Matrix::trace() const {
    if (!square()) {
        throw InvalidArgument("trace of a non-square matrix");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) {
        s += (*this)(i, i);
    }
    return s;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double Matrix::hermiticity_defect() const {
    if (!square()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

Matrix &Matrix::operator+=(const Matrix &other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix &Matrix::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgument("matrix product: inner dimension mismatch");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Vector operator*(const Matrix &m, const Vector &v) {
    if (m.cols() != v.dim()) {
        throw InvalidArgument("matrix-vector product: dimension mismatch");
    }
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Matrix outer(const Vector &a, const Vector &b) {
    Matrix m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

Matrix projector(const Vector &v) { return outer(v, v); }

double distance(const Matrix &a, const Matrix &b) { return (a - b).frobenius_norm(); }

double unitarity_residual(const Matrix &u) {
    if (!u.square()) {
        return std::numeric_limits<double>::infinity();
    }
    return distance(u.adjoint() * u, Matrix::identity(u.rows()));
}

// --- Tensor products --------------------------------------------------------

Matrix tensor_product(const Matrix &a, const Matrix &b) {
    const std::size_t rows = checked_product(a.rows(), b.rows());
    const std::size_t cols = checked_product(a.cols(), b.cols());
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

Vector tensor_product(const Vector &a, const Vector &b) {
    Vector out(checked_product(a.dim(), b.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < b.dim(); ++k) {
            out[i * b.dim() + k] = a[i] * b[k];
        }
    }
    return out;
}

Matrix tensor_product(std::span<const Matrix> factors) {
    if (factors.empty()) {
        return Matrix::identity(1);
    }
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor_product(out, factors[i]);
    }
    return out;
}

// --- Hermitian eigenproblem -------------------------------------------------

std::vector<EigenPair> hermitian_eigenpairs(const Matrix &m, double tol) {
    if (!m.square()) {
        throw InvalidArgument("eigendecomposition of a non-square matrix");
    }
    const double defect = m.hermiticity_defect();
    if (defect > tol) {
        throw InvalidArgument("matrix is not Hermitian (max |m - m^dagger| = " +
                              std::to_string(defect) + ")");
    }
    const std::size_t n = m.rows();
    // Symmetrize so rounding in the input does not leak into the rotations.
    Matrix a = 0.5 * (m + m.adjoint());
    Matrix v = Matrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 100;
    bool converged = n <= 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= 1e-15 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                const Complex phase = std::conj(apq / mag); // e^{-i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = D * R with D = diag(.., 1 at p, e^{-i phi} at q, ..).
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * phase;
                const Complex gqq = c * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceError("Jacobi eigensolver did not converge");
    }

    std::vector<EigenPair> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pairs.push_back({a(i, i).real(), v.column(i)});
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair &x, const EigenPair &y) { return x.value < y.value; });
    return pairs;
}

std::vector<double> hermitian_eigenvalues(const Matrix &m, double tol) {
    std::vector<double> values;
    for (auto &p : hermitian_eigenpairs(m, tol)) {
        values.push_back(p.value);
    }
    return values;
}

std::vector<Eigenspace> hermitian_eigendecomposition(const Matrix &m, double tol) {
    const auto pairs = hermitian_eigenpairs(m, std::max(tol, 1e-9));
    double radius = 0.0;
    for (const auto &p : pairs) {
        radius = std::max(radius, std::abs(p.value));
    }
    const double gap = tol * std::max(1.0, radius);

    std::vector<Eigenspace> spaces;
    std::size_t begin = 0;
    while (begin < pairs.size()) {
        std::size_t end = begin + 1;
        while (end < pairs.size() && pairs[end].value - pairs[end - 1].value <= gap) {
            ++end;
        }
        Matrix proj(m.rows(), m.cols());
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            proj += projector(pairs[i].vector);
            sum += pairs[i].value;
        }
        spaces.push_back({sum / static_cast<double>(end - begin), std::move(proj)});
        begin = end;
    }
    return spaces;
}

// --- Partial trace, distances ----------------------------------------------

Matrix partial_trace(const Matrix &m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
    if (!m.square()) {
        throw InvalidArgument("partial trace of a non-square matrix");
    }
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) {
            throw InvalidArgument("partial trace: zero factor dimension");
        }
        total *= d;
    }
    if (total != m.rows()) {
        throw InvalidArgument("partial trace: factor dimensions multiply to " +
                              std::to_string(total) + ", matrix is " +
                              std::to_string(m.rows()));
    }
    if (keep.empty()) {
        throw InvalidArgument("partial trace: keep set must be nonempty");
    }
    std::vector<std::size_t> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("partial trace: duplicate factor in keep set");
    }
    const FactorSplit split = split_factors(sorted, dims);
    Matrix out(split.local, split.local);
    for (std::size_t r = 0; r < split.rest; ++r) {
        const std::size_t *g = &split.groups[r * split.local];
        for (std::size_t i = 0; i < split.local; ++i) {
            for (std::size_t j = 0; j < split.local; ++j) {
                out(i, j) += m(g[i], g[j]);
            }
        }
    }
    return out;
}

double trace_distance(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b, "trace distance");
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(a - b)) {
        s += std::abs(lambda);
    }
    return 0.5 * s;
}

// --- Unitary completion -----------------------------------------------------

Matrix unitary_completion(std::span<const Vector> columns, double tol) {
    if (columns.empty()) {
        throw InvalidArgument("unitary completion needs at least one column");
    }
    const std::size_t n = columns.front().dim();
    if (columns.size() > n) {
        throw InvalidArgument("more columns than the space dimension");
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].dim() != n) {
            throw InvalidArgument("unitary completion: column dimension mismatch");
        }
        for (std::size_t j = i; j < columns.size(); ++j) {
            const Complex g = inner(columns[i], columns[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > tol) {
                throw InvalidArgument("unitary completion: input columns are not orthonormal");
            }
        }
    }

    std::vector<Vector> basis(columns.begin(), columns.end());
    auto residual = [&basis](Vector v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : basis) {
                v -= inner(q, v) * q;
            }
        }
        return v;
    };

    const double accept = 0.5 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
        Vector r = residual(Vector::basis(n, k));
        if (r.norm() >= accept) {
            basis.push_back(r.normalized());
        }
    }
    while (basis.size() < n) {
        Vector best;
        double best_norm = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            Vector r = residual(Vector::basis(n, k));
            if (r.norm() > best_norm) {
                best_norm = r.norm();
                best = std::move(r);
            }
        }
        basis.push_back(best.normalized());
    }
    return Matrix::from_columns(basis);
}

// --- Operators on tensor factors --------------------------------------------

Matrix embed(const Matrix &op, std::span<const std::size_t> targets,
             std::span<const std::size_t> dims) {
    std::size_t total = 1;
    for (auto d : dims) {
        total = checked_product(total, d);
    }
    return apply_on(op, targets, dims, Matrix::identity(total));
}

Vector apply_on(const Matrix &op, std::span<const std::size_t> targets,
                std::span<const std::size_t> dims, const Vector &v) {
    const FactorSplit split = split_factors(targets, dims);
    if (op.rows() != split.local || op.cols() != split.local) {
        throw InvalidArgument("operator dimension does not match its target factors");
    }
    if (v.dim() != split.rest * split.local) {
        throw InvalidArgument("state dimension does not match the factor dimensions");
    }
    Vector out(v.dim());
    for (std::size_t r = 0; r < split.rest; ++r) {
        const std::size_t *g = &split.groups[r * split.local];
        for (std::size_t i = 0; i < split.local; ++i) {
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < split.local; ++j) {
                s += op(i, j) * v[g[j]];
            }
            out[g[i]] = s;
        }
    }
    return out;
}

Matrix apply_on(const Matrix &op, std::span<const std::size_t> targets,
                std::span<const std::size_t> dims, const Matrix &m) {
    const FactorSplit split = split_factors(targets, dims);
    if (op.rows() != split.local || op.cols() != split.local) {
        throw InvalidArgument("operator dimension does not match its target factors");
    }
    if (m.rows() != split.rest * split.local) {
        throw InvalidArgument("matrix dimension does not match the factor dimensions");
    }
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < split.rest; ++r) {
        const std::size_t *g = &split.groups[r * split.local];
        for (std::size_t i = 0; i < split.local; ++i) {
            for (std::size_t j = 0; j < split.local; ++j) {
                const Complex w = op(i, j);
                if (w == Complex{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    out(g[i], c) += w * m(g[j], c);
                }
            }
        }
    }
    return out;
}

} // namespace typical::linalg
