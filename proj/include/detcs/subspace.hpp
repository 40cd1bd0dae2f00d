#pragma once

#include "detcs/linalg.hpp"
#include "detcs/matrix.hpp"

namespace detcs {

inline constexpr double kOrthonormalityTol = 1e-11;

// An m x n matrix with orthonormal columns, standing for its column space.
class SubspaceBasis {
public:
    // Validates ||Q* Q - I||_F <= tol.
    static SubspaceBasis from_orthonormal(ComplexMatrix q, double tol = kOrthonormalityTol);
    // Orthonormal basis of the column space of a full-column-rank matrix.
    static SubspaceBasis span_of(const ComplexMatrix& a, double rank_rel = kRankRel);

    const ComplexMatrix& ortho() const noexcept { return q_; }
    std::size_t ambient_dim() const noexcept { return q_.rows(); }
    std::size_t dim() const noexcept { return q_.cols(); }

private:
    explicit SubspaceBasis(ComplexMatrix q) : q_(std::move(q)) {}
    ComplexMatrix q_;
};

}  // namespace detcs
