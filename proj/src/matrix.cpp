#include "detcs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detcs/errors.hpp"

namespace detcs {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ContractViolation("matrix dimensions must be positive, got " + std::to_string(rows) +
                                "x" + std::to_string(cols));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractViolation(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    require_positive(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_positive(rows, cols);
    if (data_.size() != rows * cols) {
        throw ContractViolation("entry count " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
    if (!all_finite()) throw ContractViolation("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    require_positive(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ContractViolation("ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw ContractViolation("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    return out;
}

ComplexMatrix ComplexMatrix::basis_column(std::size_t m, std::size_t j) {
    if (j >= m) throw ContractViolation("basis index out of range");
    ComplexMatrix out(m, 1);
    out(j, 0) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::hstack(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) throw ContractViolation("hstack of nothing");
    const std::size_t m = blocks.front().rows();
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (b.rows() != m) throw ContractViolation("hstack: row count mismatch");
        n += b.cols();
    }
    ComplexMatrix out(m, n);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, offset + j) = b(i, j);
        offset += b.cols();
    }
    return out;
}

ComplexMatrix ComplexMatrix::column(std::size_t j) const {
    if (j >= cols_) throw ContractViolation("column index out of range");
    ComplexMatrix out(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
    return out;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator+");
    ComplexMatrix out = a;
    auto dst = out.entries();
    auto src = b.entries();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator-");
    ComplexMatrix out = a;
    auto dst = out.entries();
    auto src = b.entries();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= src[k];
    return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (auto& z : out.entries()) z *= s;
    return out;
}

double frobenius_norm(const ComplexMatrix& a) {
    // Scaled sum of squares so large entries do not overflow.
    const double scale = max_abs(a);
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& z : a.entries()) sum += std::norm(z / scale);
    return scale * std::sqrt(sum);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace detcs
