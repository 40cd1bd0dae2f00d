#pragma once

// Brute-force reference implementations. They are deliberately slow, share
// no code paths with the LU/QR kernels they check, and refuse inputs large
// enough to make a test suite crawl.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "detcs/matrix.hpp"
#include "detcs/subspace.hpp"

namespace detcs::oracle {

inline constexpr std::size_t kMaxCofactorDim = 6;
inline constexpr std::size_t kBilinearitySearchBound = 1000;

// Laplace expansion along the first row. n <= kMaxCofactorDim.
Complex det_cofactor(const ComplexMatrix& a);

// Textbook triple loop, accumulated column-by-column.
ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b);

struct JacobiResult {
    std::vector<double> eigenvalues;  // descending
    // Off-diagonal Frobenius norm before the first sweep and after each sweep.
    std::vector<double> off_norm_history;
};

// Cyclic complex Jacobi on a hermitian matrix. Stops once every off-diagonal
// magnitude is below 1e-13 * |trace|.
JacobiResult jacobi_eigenvalues(const ComplexMatrix& h);

struct PrincipalAngles {
    std::vector<double> cosines;  // descending, each in [0, 1 + 1e-10]
};

// Singular values of Qa* Qb via Jacobi on (Qa* Qb)* (Qa* Qb).
PrincipalAngles principal_angle_cosines(const SubspaceBasis& qa, const SubspaceBasis& qb);

// Singular values of an arbitrary matrix via the same Jacobi route, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

// |det((A1 + A2)* M B) - det(A1* M B) - det(A2* M B)|, cofactor determinants.
double bilinearity_discrepancy(const ComplexMatrix& a1, const ComplexMatrix& a2,
                               const ComplexMatrix& b,
                               const std::optional<ComplexMatrix>& m = std::nullopt);

struct BilinearityWitness {
    ComplexMatrix a1;
    ComplexMatrix a2;
    ComplexMatrix b;
    double discrepancy;
    std::size_t trials_used;
};

// Random search over square matrices of size 2..4 (1 x 1 determinants are
// linear and never qualify) for a triple with discrepancy > 0.1.
BilinearityWitness find_bilinearity_counterexample(std::uint64_t seed);

}  // namespace detcs::oracle
