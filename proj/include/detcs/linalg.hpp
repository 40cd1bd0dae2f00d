#pragma once

#include <cstddef>

#include "detcs/matrix.hpp"

namespace detcs {

// Default thresholds. None of these is canonical; every kernel takes an
// override.
inline constexpr double kSingularPivotRel = 1e-13;
inline constexpr double kHermitianRel = 1e-12;
inline constexpr double kPositiveDefiniteRel = 1e-13;
inline constexpr double kRankRel = 1e-10;

// Determinant stored as phase * exp(log_magnitude). When zero is set the
// other two fields carry no information.
struct SignedLogDet {
    Complex phase{1.0, 0.0};
    double log_magnitude = 0.0;
    bool zero = false;

    static SignedLogDet zero_value() { return {Complex{1.0, 0.0}, 0.0, true}; }

    // phase * exp(log_magnitude); under/overflows for extreme magnitudes.
    Complex value() const;
    SignedLogDet conj() const { return {std::conj(phase), log_magnitude, zero}; }
};

SignedLogDet operator*(const SignedLogDet& a, const SignedLogDet& b);

// Thin QR: q is m x n with orthonormal columns, r is n x n upper triangular
// with a real positive diagonal.
struct QRFactors {
    ComplexMatrix q;
    ComplexMatrix r;
};

class HpdFactor;

// Product with fixed left-to-right summation over the inner index.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

// LU with partial pivoting, eliminated in extended precision. A pivot smaller
// than singular_rel times the largest input entry magnitude marks the
// determinant as zero.
SignedLogDet log_det(const ComplexMatrix& a, double singular_rel = kSingularPivotRel);

// log det(X* Y) with the product and the elimination both carried in
// extended precision, so Gram determinants keep their accuracy when X and Y
// are ill conditioned. Same pivoting and singularity rule as log_det.
SignedLogDet gram_log_det(const ComplexMatrix& x, const ComplexMatrix& y,
                          double singular_rel = kSingularPivotRel);

// Householder thin QR, post-processed so diag(r) is real and positive.
// Throws RankDeficient when estimate_rank(a, rank_rel) < cols.
QRFactors qr_thin(const ComplexMatrix& a, double rank_rel = kRankRel);

// Upper Cholesky factor W of a hermitian positive definite M, so W* W = M.
HpdFactor cholesky_hpd(const ComplexMatrix& m,
                       double hermitian_rel = kHermitianRel,
                       double pd_rel = kPositiveDefiniteRel);

// Count of column-pivoted QR diagonal magnitudes above tol * (largest one).
std::size_t estimate_rank(const ComplexMatrix& a, double tol = kRankRel);

class HpdFactor {
public:
    const ComplexMatrix& m_matrix() const noexcept { return m_; }
    const ComplexMatrix& w_factor() const noexcept { return w_; }
    std::size_t dim() const noexcept { return m_.rows(); }

private:
    HpdFactor(ComplexMatrix m, ComplexMatrix w) : m_(std::move(m)), w_(std::move(w)) {}
    friend HpdFactor cholesky_hpd(const ComplexMatrix&, double, double);

    ComplexMatrix m_;
    ComplexMatrix w_;
};

}  // namespace detcs
