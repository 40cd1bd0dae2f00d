#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "detcs/matrix.hpp"

namespace detcs {

// splitmix64 finalizer over (master, index); gives independent per-trial
// streams that do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    // Uniform integer in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }
    // Standard complex normal: E|z|^2 = 1.
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// i.i.d. standard complex normal entries.
ComplexMatrix ginibre(Rng& rng, std::size_t m, std::size_t n);
// Haar-distributed unitary (QR of a Ginibre matrix with positive diag(R)).
ComplexMatrix random_unitary(Rng& rng, std::size_t n);
// G* G + shift I with G Ginibre m x m.
ComplexMatrix random_hpd(Rng& rng, std::size_t m, double shift);
// U diag(eigenvalues) U* with U Haar unitary; eigenvalues log-spaced so the
// 2-norm condition number is exactly `cond`.
ComplexMatrix random_hpd_with_condition(Rng& rng, std::size_t m, double cond);
// m x n matrix of exact rank r, as the product of thin Ginibre factors.
// r == 0 yields the zero matrix.
ComplexMatrix random_low_rank(Rng& rng, std::size_t m, std::size_t n, std::size_t r);
// U diag(s) V* with Haar U, V and singular values log-spaced in [1/cond, 1].
ComplexMatrix random_with_condition(Rng& rng, std::size_t m, std::size_t n, double cond);

}  // namespace detcs
