#include "detcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "detcs/errors.hpp"
#include "detcs/random.hpp"

namespace detcs::oracle {

namespace {

constexpr std::size_t kMaxSweeps = 64;
constexpr double kJacobiStopRel = 1e-13;
constexpr double kCosineSlack = 1e-10;

Complex cofactor_expand(const ComplexMatrix& a, std::vector<std::size_t>& rows_left,
                        std::vector<std::size_t>& cols_left) {
    if (rows_left.size() == 1) return a(rows_left[0], cols_left[0]);
    const std::size_t row = rows_left.front();
    rows_left.erase(rows_left.begin());
    Complex sum{};
    double sign = 1.0;
    for (std::size_t idx = 0; idx < cols_left.size(); ++idx) {
        const std::size_t col = cols_left[idx];
        if (a(row, col) != Complex{}) {
            cols_left.erase(cols_left.begin() + static_cast<std::ptrdiff_t>(idx));
            sum += sign * a(row, col) * cofactor_expand(a, rows_left, cols_left);
            cols_left.insert(cols_left.begin() + static_cast<std::ptrdiff_t>(idx), col);
        }
        sign = -sign;
    }
    rows_left.insert(rows_left.begin(), row);
    return sum;
}

double off_diagonal_norm(const ComplexMatrix& h) {
    double sum = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) sum += std::norm(h(i, j));
    return std::sqrt(sum);
}

// (Qa* Qb)_{ij} = sum_k conj(qa_ki) qb_kj, written out without the kernels.
ComplexMatrix cross_product(const ComplexMatrix& qa, const ComplexMatrix& qb) {
    ComplexMatrix c(qa.cols(), qb.cols());
    for (std::size_t i = 0; i < qa.cols(); ++i)
        for (std::size_t j = 0; j < qb.cols(); ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < qa.rows(); ++k) acc += std::conj(qa(k, i)) * qb(k, j);
            c(i, j) = acc;
        }
    return c;
}

}  // namespace

Complex det_cofactor(const ComplexMatrix& a) {
    if (!a.is_square()) throw ContractViolation("det_cofactor: non-square input");
    if (a.rows() > kMaxCofactorDim) {
        throw OracleError("det_cofactor refuses n = " + std::to_string(a.rows()) + " (limit " +
                          std::to_string(kMaxCofactorDim) + ")");
    }
    std::vector<std::size_t> rows(a.rows());
    std::vector<std::size_t> cols(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = cols[i] = i;
    return cofactor_expand(a, rows, cols);
}

ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ContractViolation("naive_matmul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * b(k, j);
    return out;
}

JacobiResult jacobi_eigenvalues(const ComplexMatrix& input) {
    if (!input.is_square()) throw ContractViolation("jacobi_eigenvalues: non-square input");
    ComplexMatrix h = input;
    const std::size_t n = h.rows();
    double skew = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) skew += std::norm(h(i, j) - std::conj(h(j, i)));
    if (std::sqrt(skew) > 1e-12 * std::max(frobenius_norm(h), 1e-300)) {
        throw ContractViolation("jacobi_eigenvalues: input is not hermitian");
    }

    JacobiResult result;
    result.off_norm_history.push_back(off_diagonal_norm(h));
    for (std::size_t sweep = 0;; ++sweep) {
        double diag_mass = 0.0;
        double max_off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag_mass += std::abs(h(i, i).real());
            for (std::size_t j = i + 1; j < n; ++j) max_off = std::max(max_off, std::abs(h(i, j)));
        }
        if (max_off <= kJacobiStopRel * diag_mass) break;
        if (sweep == kMaxSweeps) throw OracleError("Jacobi iteration did not converge");

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex c = h(p, q);
                const double mag = std::abs(c);
                if (mag == 0.0) continue;
                const Complex e = c / mag;
                const double theta = (h(q, q).real() - h(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                // J = diag(1, conj(e)) * [[cs, sn], [-sn, cs]]
                const Complex jpp = cs;
                const Complex jpq = sn;
                const Complex jqp = -sn * std::conj(e);
                const Complex jqq = cs * std::conj(e);
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex hp = h(r, p);
                    const Complex hq = h(r, q);
                    h(r, p) = hp * jpp + hq * jqp;
                    h(r, q) = hp * jpq + hq * jqq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex hp = h(p, r);
                    const Complex hq = h(q, r);
                    h(p, r) = std::conj(jpp) * hp + std::conj(jqp) * hq;
                    h(q, r) = std::conj(jpq) * hp + std::conj(jqq) * hq;
                }
                h(p, q) = h(q, p) = Complex{};
                h(p, p) = Complex{h(p, p).real(), 0.0};
                h(q, q) = Complex{h(q, q).real(), 0.0};
            }
        }
        result.off_norm_history.push_back(off_diagonal_norm(h));
    }

    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = h(i, i).real();
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
    return result;
}

PrincipalAngles principal_angle_cosines(const SubspaceBasis& qa, const SubspaceBasis& qb) {
    if (qa.ambient_dim() != qb.ambient_dim() || qa.dim() != qb.dim()) {
        throw ContractViolation("principal_angle_cosines: shape mismatch");
    }
    if (qa.ambient_dim() <= qa.dim()) {
        throw ContractViolation("principal_angle_cosines: need ambient dimension > subspace dimension");
    }
    const ComplexMatrix c = cross_product(qa.ortho(), qb.ortho());
    const ComplexMatrix h = cross_product(c, c);
    PrincipalAngles out;
    for (double lambda : jacobi_eigenvalues(h).eigenvalues) {
        const double cosine = std::sqrt(std::max(lambda, 0.0));
        if (cosine > 1.0 + kCosineSlack) {
            throw ContractViolation("principal_angle_cosines: cosine " + std::to_string(cosine) +
                                    " exceeds 1; bases are not orthonormal");
        }
        out.cosines.push_back(cosine);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    std::vector<double> out;
    for (double lambda : jacobi_eigenvalues(cross_product(a, a)).eigenvalues)
        out.push_back(std::sqrt(std::max(lambda, 0.0)));
    return out;
}

double bilinearity_discrepancy(const ComplexMatrix& a1, const ComplexMatrix& a2,
                               const ComplexMatrix& b, const std::optional<ComplexMatrix>& m) {
    if (a1.rows() != a2.rows() || a1.cols() != a2.cols() || a1.rows() != b.rows() ||
        a1.cols() != b.cols()) {
        throw ContractViolation("bilinearity_discrepancy: shape mismatch");
    }
    const ComplexMatrix mb = m ? naive_matmul(*m, b) : b;
    const auto det_of = [&](const ComplexMatrix& x) { return det_cofactor(cross_product(x, mb)); };
    return std::abs(det_of(a1 + a2) - det_of(a1) - det_of(a2));
}

BilinearityWitness find_bilinearity_counterexample(std::uint64_t seed) {
    for (std::size_t trial = 0; trial < kBilinearitySearchBound; ++trial) {
        Rng rng(derive_seed(seed, trial));
        const std::size_t n = rng.between(2, 4);
        ComplexMatrix a1 = ginibre(rng, n, n);
        ComplexMatrix a2 = ginibre(rng, n, n);
        ComplexMatrix b = ginibre(rng, n, n);
        const double d = bilinearity_discrepancy(a1, a2, b);
        if (d > 0.1) return {std::move(a1), std::move(a2), std::move(b), d, trial + 1};
    }
    throw OracleError("no bilinearity counterexample found within search bound");
}

}  // namespace detcs::oracle
