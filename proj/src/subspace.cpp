#include "detcs/subspace.hpp"

#include <string>

#include "detcs/errors.hpp"

namespace detcs {

SubspaceBasis SubspaceBasis::from_orthonormal(ComplexMatrix q, double tol) {
    if (q.rows() < q.cols()) throw ContractViolation("SubspaceBasis: more columns than rows");
    const ComplexMatrix defect = matmul(conj_transpose(q), q) - ComplexMatrix::identity(q.cols());
    const double err = frobenius_norm(defect);
    if (err > tol) {
        throw ContractViolation("SubspaceBasis: columns not orthonormal (||Q*Q - I|| = " +
                                std::to_string(err) + ")");
    }
    return SubspaceBasis(std::move(q));
}

SubspaceBasis SubspaceBasis::span_of(const ComplexMatrix& a, double rank_rel) {
    return SubspaceBasis(qr_thin(a, rank_rel).q);
}

}  // namespace detcs
