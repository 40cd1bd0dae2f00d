#pragma once

// Determinantal Cauchy-Schwarz:  |det(A* M B)|^2 <= det(A* M A) det(B* M B)
// for A, B in C^{m x n} and hermitian positive definite M (M = I when absent).
//
// Equality structure:
//   m < n                         both sides vanish
//   m = n                         equality
//   m > n, rank A or rank B < n   both sides vanish
//   m > n, full column rank       equality iff span(A) = span(B)
//
// In the last regime |det(A*B)| = |det(Qa* Qb)| |det Ra| |det Rb|, and
// |det(Qa* Qb)| in [0, 1] is the determinantal correlation of the two
// column spaces (product of principal-angle cosines).

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "detcs/linalg.hpp"
#include "detcs/matrix.hpp"
#include "detcs/subspace.hpp"

namespace detcs {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultSubspaceTol = 1e-8;
// Raw correlation and column norms may exceed 1 by at most this much.
inline constexpr double kUnitBoundSlack = 1e-10;

enum class CaseTag {
    WideEqualZero,      // m < n
    SquareEqual,        // m = n
    RankDeficientZero,  // m > n, rank(A) < n or rank(B) < n
    FullRankSameSpan,   // m > n, full rank, equal column spaces
    FullRankStrict,     // m > n, full rank, different column spaces
};

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> case_tag_from_string(std::string_view name);
// Human statement of the equality clause the tag instantiates.
std::string_view clause_text(CaseTag tag);
bool implies_equality(CaseTag tag);
bool both_sides_vanish(CaseTag tag);

struct VerifyOptions {
    double tol = kDefaultTol;
    double subspace_tol = kDefaultSubspaceTol;
    double rank_tol = kRankRel;
};

struct CsReport {
    CaseTag case_tag;
    SignedLogDet lhs_log;  // |det(A* M B)|^2
    SignedLogDet rhs_log;  // det(A* M A) * det(B* M B)
    std::optional<double> correlation;
    double relative_gap;  // 1 - exp(lhs - rhs), clamped at 0
    bool equality;
    double tol_used;
    double subspace_tol_used;
    double rank_tol_used;
};

struct HadamardBound {
    double bound;    // product of column norms
    double det_mag;  // |det H|
};

// A* M B, evaluated as (W A)* (W B) when a weight is given, else A* B.
ComplexMatrix gram(const ComplexMatrix& a, const ComplexMatrix& b,
                   const HpdFactor* weight = nullptr);

// (W a, W b) with W* W = M.
std::pair<ComplexMatrix, ComplexMatrix> whitened_pair(const ComplexMatrix& a,
                                                      const ComplexMatrix& b,
                                                      const HpdFactor& weight);

// |det(Qa* Qb)| of the (whitened) inputs, unclamped. Throws InvariantViolation
// if it exceeds 1 + kUnitBoundSlack.
double det_correlation_raw(const ComplexMatrix& a, const ComplexMatrix& b,
                           const HpdFactor* weight = nullptr, double rank_tol = kRankRel);
// det_correlation_raw clamped to [0, 1].
double det_correlation(const ComplexMatrix& a, const ComplexMatrix& b,
                       const HpdFactor* weight = nullptr, double rank_tol = kRankRel);

HadamardBound hadamard_bound(const ComplexMatrix& h);

// Column norms of U* V; each is at most 1 for orthonormal U, V.
std::vector<double> column_norm_profile(const SubspaceBasis& u, const SubspaceBasis& v);

// True iff every principal-angle cosine between the column spaces is >= 1 - tol.
bool subspace_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                    double tol = kDefaultSubspaceTol, double rank_tol = kRankRel);

CaseTag classify_case(const ComplexMatrix& a, const ComplexMatrix& b,
                      const HpdFactor* weight = nullptr,
                      double subspace_tol = kDefaultSubspaceTol, double rank_tol = kRankRel);

// Evaluates both sides in the log domain and checks them against the case
// structure. Throws InequalityViolation if lhs > rhs * (1 + tol), and
// InvariantViolation if an equality case shows a gap above tol.
CsReport verify_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                           const HpdFactor* weight = nullptr, const VerifyOptions& opts = {});

}  // namespace detcs
