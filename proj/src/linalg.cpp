#include "detcs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "detcs/errors.hpp"

namespace detcs {

namespace {

std::string shape(const ComplexMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

Complex unit_phase(Complex z) {
    const double r = std::abs(z);
    return r == 0.0 ? Complex{1.0, 0.0} : z / r;
}

// Norm of column j restricted to rows [from, m), scaled against overflow.
double tail_norm(const ComplexMatrix& a, std::size_t j, std::size_t from) {
    double scale = 0.0;
    for (std::size_t i = from; i < a.rows(); ++i) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = from; i < a.rows(); ++i) sum += std::norm(a(i, j) / scale);
    return scale * std::sqrt(sum);
}

// Builds the Householder vector v (unit norm, stored in rows [k, m)) that maps
// column k of work onto alpha * e_k with alpha = -phase(x_k) * ||x||.
// Returns false when the column tail is already zero.
bool householder_vector(const ComplexMatrix& work, std::size_t k, std::vector<Complex>& v) {
    const std::size_t m = work.rows();
    const double xnorm = tail_norm(work, k, k);
    v.assign(m, Complex{});
    if (xnorm == 0.0) return false;
    const Complex alpha = -unit_phase(work(k, k)) * xnorm;
    for (std::size_t i = k; i < m; ++i) v[i] = work(i, k);
    v[k] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) return false;
    for (std::size_t i = k; i < m; ++i) v[i] /= vnorm;
    return true;
}

// work <- (I - 2 v v*) work on columns [col_begin, cols).
void apply_reflector_left(ComplexMatrix& work, const std::vector<Complex>& v, std::size_t k,
                          std::size_t col_begin) {
    for (std::size_t j = col_begin; j < work.cols(); ++j) {
        Complex dot{};
        for (std::size_t i = k; i < work.rows(); ++i) dot += std::conj(v[i]) * work(i, j);
        dot *= 2.0;
        for (std::size_t i = k; i < work.rows(); ++i) work(i, j) -= v[i] * dot;
    }
}

using WideComplex = std::complex<long double>;

// LU with partial pivoting on an n x n row-major buffer, in extended
// precision. Pivots below singular_rel * max|entry| mean det = 0.
SignedLogDet lu_log_det(std::vector<WideComplex>& lu, std::size_t n, double singular_rel) {
    long double largest = 0.0L;
    for (const auto& z : lu) largest = std::max(largest, std::abs(z));
    if (largest == 0.0L) return SignedLogDet::zero_value();
    const long double threshold = static_cast<long double>(singular_rel) * largest;

    WideComplex phase{1.0L, 0.0L};
    long double log_mag = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        long double best = std::abs(lu[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double cand = std::abs(lu[i * n + k]);
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best < threshold || best == 0.0L) return SignedLogDet::zero_value();
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
            phase = -phase;
        }
        const WideComplex pivot = lu[k * n + k];
        log_mag += std::log(best);
        phase *= pivot / best;
        for (std::size_t i = k + 1; i < n; ++i) {
            const WideComplex factor = lu[i * n + k] / pivot;
            if (factor == WideComplex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= factor * lu[k * n + j];
        }
    }
    const long double pm = std::abs(phase);
    const Complex unit(static_cast<double>(phase.real() / pm), static_cast<double>(phase.imag() / pm));
    return {unit_phase(unit), static_cast<double>(log_mag), false};
}

}  // namespace

Complex SignedLogDet::value() const {
    if (zero) return Complex{};
    return phase * std::exp(log_magnitude);
}

SignedLogDet operator*(const SignedLogDet& a, const SignedLogDet& b) {
    if (a.zero || b.zero) return SignedLogDet::zero_value();
    return {unit_phase(a.phase * b.phase), a.log_magnitude + b.log_magnitude, false};
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ContractViolation("matmul: inner dimensions differ (" + shape(a) + " * " +
                                shape(b) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

SignedLogDet log_det(const ComplexMatrix& a, double singular_rel) {
    if (!a.is_square()) throw ContractViolation("log_det: non-square input " + shape(a));
    const std::size_t n = a.rows();
    std::vector<WideComplex> work(a.entries().begin(), a.entries().end());
    return lu_log_det(work, n, singular_rel);
}

SignedLogDet gram_log_det(const ComplexMatrix& x, const ComplexMatrix& y, double singular_rel) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw ContractViolation("gram_log_det: shape mismatch " + shape(x) + " vs " + shape(y));
    }
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    std::vector<WideComplex> g(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            WideComplex acc{};
            for (std::size_t k = 0; k < m; ++k)
                acc += std::conj(WideComplex(x(k, i))) * WideComplex(y(k, j));
            g[i * n + j] = acc;
        }
    }
    return lu_log_det(g, n, singular_rel);
}

std::size_t estimate_rank(const ComplexMatrix& a, double tol) {
    if (!(tol > 0.0)) throw ContractViolation("estimate_rank: tol must be positive");
    ComplexMatrix work = a;
    const std::size_t m = work.rows();
    const std::size_t n = work.cols();
    const std::size_t steps = std::min(m, n);
    std::vector<Complex> v;
    double largest = 0.0;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        // Pivot: the remaining column with the largest tail norm (first on ties).
        std::size_t piv = k;
        double best = -1.0;
        for (std::size_t j = k; j < n; ++j) {
            const double nj = tail_norm(work, j, k);
            if (nj > best) {
                best = nj;
                piv = j;
            }
        }
        if (k == 0) largest = best;
        if (largest == 0.0 || best <= tol * largest) break;
        ++rank;
        if (piv != k)
            for (std::size_t i = 0; i < m; ++i) std::swap(work(i, k), work(i, piv));
        if (householder_vector(work, k, v)) apply_reflector_left(work, v, k, k);
    }
    return rank;
}

QRFactors qr_thin(const ComplexMatrix& a, double rank_rel) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) throw ContractViolation("qr_thin: need rows >= cols, got " + shape(a));
    const std::size_t rank = estimate_rank(a, rank_rel);
    if (rank < n) throw RankDeficient(rank, n);

    ComplexMatrix work = a;
    std::vector<std::vector<Complex>> reflectors(n);
    std::vector<bool> active(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        active[k] = householder_vector(work, k, reflectors[k]);
        if (active[k]) apply_reflector_left(work, reflectors[k], k, k);
    }

    // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of I_m.
    ComplexMatrix q(m, n);
    for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
    for (std::size_t k = n; k-- > 0;)
        if (active[k]) apply_reflector_left(q, reflectors[k], k, 0);

    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r(i, j) = work(i, j);

    // Rotate phases so the diagonal of r is real positive: A = (Q D)(D* R).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex d = unit_phase(r(k, k));
        for (std::size_t j = k; j < n; ++j) r(k, j) *= std::conj(d);
        r(k, k) = Complex{std::abs(r(k, k)), 0.0};
        for (std::size_t i = 0; i < m; ++i) q(i, k) *= d;
    }
    return {std::move(q), std::move(r)};
}

HpdFactor cholesky_hpd(const ComplexMatrix& m, double hermitian_rel, double pd_rel) {
    if (!m.is_square()) throw ContractViolation("cholesky_hpd: non-square input " + shape(m));
    const std::size_t n = m.rows();
    const double mnorm = frobenius_norm(m);
    if (frobenius_norm(m - conj_transpose(m)) > hermitian_rel * mnorm) {
        throw NotHermitian("matrix is not hermitian within relative tolerance " +
                           std::to_string(hermitian_rel));
    }
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
    const double pivot_floor = pd_rel * max_diag;

    ComplexMatrix w(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            Complex acc = m(i, j);
            for (std::size_t k = 0; k < i; ++k) acc -= std::conj(w(k, i)) * w(k, j);
            w(i, j) = acc / w(i, i).real();
        }
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(w(k, j));
        if (!(d > pivot_floor)) {
            throw NotPositiveDefinite("Cholesky pivot " + std::to_string(j) +
                                      " is not positive (value " + std::to_string(d) + ")");
        }
        w(j, j) = std::sqrt(d);
    }
    return HpdFactor(m, std::move(w));
}

}  // namespace detcs
