#include "detcs/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "detcs/errors.hpp"
#include "detcs/linalg.hpp"

namespace detcs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<double> log_spaced(std::size_t count, double lo, double hi) {
    std::vector<double> out(count, hi);
    if (count < 2) return out;
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(std::log(hi) - step * static_cast<double>(i));
    out.back() = lo;
    return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex{re, im} * M_SQRT1_2;
}

ComplexMatrix ginibre(Rng& rng, std::size_t m, std::size_t n) {
    ComplexMatrix out(m, n);
    for (auto& z : out.entries()) z = rng.complex_normal();
    return out;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    // A Ginibre draw is full rank with probability one; redraw otherwise.
    for (;;) {
        try {
            return qr_thin(ginibre(rng, n, n)).q;
        } catch (const RankDeficient&) {
        }
    }
}

ComplexMatrix random_hpd(Rng& rng, std::size_t m, double shift) {
    const ComplexMatrix g = ginibre(rng, m, m);
    ComplexMatrix out = matmul(conj_transpose(g), g);
    for (std::size_t i = 0; i < m; ++i) out(i, i) += shift;
    // Exact hermitian symmetry.
    for (std::size_t i = 0; i < m; ++i) {
        out(i, i) = Complex{out(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < m; ++j) out(j, i) = std::conj(out(i, j));
    }
    return out;
}

ComplexMatrix random_hpd_with_condition(Rng& rng, std::size_t m, double cond) {
    if (!(cond >= 1.0)) throw ContractViolation("condition number must be >= 1");
    const ComplexMatrix u = random_unitary(rng, m);
    const auto eig = log_spaced(m, 1.0 / cond, 1.0);
    std::vector<Complex> diag(eig.begin(), eig.end());
    ComplexMatrix out = matmul(matmul(u, ComplexMatrix::diagonal(diag)), conj_transpose(u));
    for (std::size_t i = 0; i < m; ++i) {
        out(i, i) = Complex{out(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < m; ++j) out(j, i) = std::conj(out(i, j));
    }
    return out;
}

ComplexMatrix random_low_rank(Rng& rng, std::size_t m, std::size_t n, std::size_t r) {
    if (r == 0) return ComplexMatrix(m, n);
    return matmul(ginibre(rng, m, r), ginibre(rng, r, n));
}

ComplexMatrix random_with_condition(Rng& rng, std::size_t m, std::size_t n, double cond) {
    if (!(cond >= 1.0)) throw ContractViolation("condition number must be >= 1");
    const std::size_t k = std::min(m, n);
    const ComplexMatrix u = random_unitary(rng, m);
    const ComplexMatrix v = random_unitary(rng, n);
    const auto s = log_spaced(k, 1.0 / cond, 1.0);
    ComplexMatrix sigma(m, n);
    for (std::size_t i = 0; i < k; ++i) sigma(i, i) = s[i];
    return matmul(matmul(u, sigma), conj_transpose(v));
}

}  // namespace detcs
