#include "detcs/inequality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "detcs/errors.hpp"
#include "detcs/oracle.hpp"

namespace detcs {

namespace {

struct TagInfo {
    CaseTag tag;
    std::string_view name;
    std::string_view clause;
};

constexpr std::array<TagInfo, 5> kTags{{
    {CaseTag::WideEqualZero, "WideEqualZero",
     "m < n: every n x n Gram product has rank at most m, so equality holds with both sides zero"},
    {CaseTag::SquareEqual, "SquareEqual",
     "m = n: det(A*B) = conj(det A) det B, so equality holds"},
    {CaseTag::RankDeficientZero, "RankDeficientZero",
     "m > n with rank(A) < n or rank(B) < n: equality holds with both sides zero"},
    {CaseTag::FullRankSameSpan, "FullRankSameSpan",
     "m > n, rank(A) = rank(B) = n, equal column spaces: equality holds"},
    {CaseTag::FullRankStrict, "FullRankStrict",
     "m > n, rank(A) = rank(B) = n, different column spaces: strict inequality"},
}};

const TagInfo& info(CaseTag tag) {
    for (const auto& t : kTags)
        if (t.tag == tag) return t;
    throw ContractViolation("unknown CaseTag");
}

void require_pair_shape(const ComplexMatrix& a, const ComplexMatrix& b, const HpdFactor* weight,
                        const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractViolation(std::string(op) + ": A and B must have the same shape");
    }
    if (weight && weight->dim() != a.rows()) {
        throw ContractViolation(std::string(op) + ": M must be " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.rows()));
    }
}

// (A, B) with the weight folded in, so everything downstream is unweighted.
std::pair<ComplexMatrix, ComplexMatrix> fold_weight(const ComplexMatrix& a,
                                                    const ComplexMatrix& b,
                                                    const HpdFactor* weight) {
    if (!weight) return {a, b};
    return whitened_pair(a, b, *weight);
}

CaseTag classify_unweighted(const ComplexMatrix& a, const ComplexMatrix& b, double subspace_tol,
                            double rank_tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) return CaseTag::WideEqualZero;
    if (m == n) return CaseTag::SquareEqual;
    if (estimate_rank(a, rank_tol) < n || estimate_rank(b, rank_tol) < n)
        return CaseTag::RankDeficientZero;
    return subspace_equal(a, b, subspace_tol, rank_tol) ? CaseTag::FullRankSameSpan
                                                         : CaseTag::FullRankStrict;
}

double raw_correlation_unweighted(const ComplexMatrix& a, const ComplexMatrix& b,
                                  double rank_tol) {
    if (a.rows() <= a.cols()) {
        throw WrongRegime("determinantal correlation needs m > n (got " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
    }
    const ComplexMatrix qa = qr_thin(a, rank_tol).q;
    const ComplexMatrix qb = qr_thin(b, rank_tol).q;
    const SignedLogDet d = log_det(matmul(conj_transpose(qa), qb));
    const double raw = d.zero ? 0.0 : std::exp(d.log_magnitude);
    if (raw > 1.0 + kUnitBoundSlack) {
        throw InvariantViolation("|det(Qa* Qb)| = " + std::to_string(raw) + " exceeds 1");
    }
    return raw;
}

SignedLogDet squared_magnitude(const SignedLogDet& d) {
    if (d.zero) return SignedLogDet::zero_value();
    return SignedLogDet{Complex{1.0, 0.0}, 2.0 * d.log_magnitude, false};
}

double log_abs_diagonal(const ComplexMatrix& r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r.cols(); ++i) sum += std::log(std::abs(r(i, i)));
    return sum;
}

}  // namespace

std::string_view to_string(CaseTag tag) { return info(tag).name; }

std::optional<CaseTag> case_tag_from_string(std::string_view name) {
    for (const auto& t : kTags)
        if (t.name == name) return t.tag;
    return std::nullopt;
}

std::string_view clause_text(CaseTag tag) { return info(tag).clause; }

bool implies_equality(CaseTag tag) { return tag != CaseTag::FullRankStrict; }

bool both_sides_vanish(CaseTag tag) {
    return tag == CaseTag::WideEqualZero || tag == CaseTag::RankDeficientZero;
}

ComplexMatrix gram(const ComplexMatrix& a, const ComplexMatrix& b, const HpdFactor* weight) {
    require_pair_shape(a, b, weight, "gram");
    if (!weight) return matmul(conj_transpose(a), b);
    const auto [wa, wb] = whitened_pair(a, b, *weight);
    return matmul(conj_transpose(wa), wb);
}

std::pair<ComplexMatrix, ComplexMatrix> whitened_pair(const ComplexMatrix& a,
                                                      const ComplexMatrix& b,
                                                      const HpdFactor& weight) {
    require_pair_shape(a, b, &weight, "whitened_pair");
    return {matmul(weight.w_factor(), a), matmul(weight.w_factor(), b)};
}

double det_correlation_raw(const ComplexMatrix& a, const ComplexMatrix& b,
                           const HpdFactor* weight, double rank_tol) {
    require_pair_shape(a, b, weight, "det_correlation");
    const auto [wa, wb] = fold_weight(a, b, weight);
    return raw_correlation_unweighted(wa, wb, rank_tol);
}

double det_correlation(const ComplexMatrix& a, const ComplexMatrix& b, const HpdFactor* weight,
                       double rank_tol) {
    return std::clamp(det_correlation_raw(a, b, weight, rank_tol), 0.0, 1.0);
}

HadamardBound hadamard_bound(const ComplexMatrix& h) {
    if (!h.is_square()) throw ContractViolation("hadamard_bound: non-square input");
    double bound = 1.0;
    for (std::size_t j = 0; j < h.cols(); ++j) bound *= frobenius_norm(h.column(j));
    const SignedLogDet d = log_det(h);
    const double det_mag = d.zero ? 0.0 : std::exp(d.log_magnitude);
    if (det_mag > bound * (1.0 + kUnitBoundSlack)) {
        throw InvariantViolation("|det H| = " + std::to_string(det_mag) +
                                 " exceeds the product of column norms " + std::to_string(bound));
    }
    return {bound, det_mag};
}

std::vector<double> column_norm_profile(const SubspaceBasis& u, const SubspaceBasis& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.dim() != v.dim()) {
        throw ContractViolation("column_norm_profile: shape mismatch");
    }
    if (u.ambient_dim() <= u.dim()) {
        throw ContractViolation("column_norm_profile: need m > n");
    }
    const ComplexMatrix w = matmul(conj_transpose(u.ortho()), v.ortho());
    std::vector<double> norms(w.cols());
    for (std::size_t j = 0; j < w.cols(); ++j) {
        norms[j] = frobenius_norm(w.column(j));
        if (norms[j] > 1.0 + kUnitBoundSlack) {
            throw InvariantViolation("column " + std::to_string(j) + " of U*V has norm " +
                                     std::to_string(norms[j]) + " > 1");
        }
    }
    return norms;
}

bool subspace_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                    double rank_tol) {
    require_pair_shape(a, b, nullptr, "subspace_equal");
    const std::size_t n = a.cols();
    if (a.rows() < n) throw ContractViolation("subspace_equal: need m >= n");
    if (const auto r = estimate_rank(a, rank_tol); r < n) throw RankDeficient(r, n);
    if (const auto r = estimate_rank(b, rank_tol); r < n) throw RankDeficient(r, n);
    // Two n-dimensional subspaces of C^n are both the whole space.
    if (a.rows() == n) return true;
    const auto angles = oracle::principal_angle_cosines(SubspaceBasis::span_of(a, rank_tol),
                                                        SubspaceBasis::span_of(b, rank_tol));
    return angles.cosines.back() >= 1.0 - tol;
}

CaseTag classify_case(const ComplexMatrix& a, const ComplexMatrix& b, const HpdFactor* weight,
                      double subspace_tol, double rank_tol) {
    require_pair_shape(a, b, weight, "classify_case");
    const auto [wa, wb] = fold_weight(a, b, weight);
    return classify_unweighted(wa, wb, subspace_tol, rank_tol);
}

CsReport verify_inequality(const ComplexMatrix& a, const ComplexMatrix& b,
                           const HpdFactor* weight, const VerifyOptions& opts) {
    require_pair_shape(a, b, weight, "verify_inequality");
    if (!(opts.tol > 0.0)) throw ContractViolation("verify_inequality: tol must be positive");
    const auto [wa, wb] = fold_weight(a, b, weight);
    const std::size_t n = wa.cols();

    CsReport report{};
    report.case_tag = classify_unweighted(wa, wb, opts.subspace_tol, opts.rank_tol);
    report.tol_used = opts.tol;
    report.subspace_tol_used = opts.subspace_tol;
    report.rank_tol_used = opts.rank_tol;
    report.equality = implies_equality(report.case_tag);

    // Vanishing sides are decided from shape and rank, never from noisy
    // near-zero determinants. A rank-deficient square pair vanishes too.
    bool structural_zero = both_sides_vanish(report.case_tag);
    if (report.case_tag == CaseTag::SquareEqual) {
        structural_zero = estimate_rank(wa, opts.rank_tol) < n ||
                          estimate_rank(wb, opts.rank_tol) < n;
    }
    if (structural_zero) {
        report.lhs_log = SignedLogDet::zero_value();
        report.rhs_log = SignedLogDet::zero_value();
        report.relative_gap = 0.0;
        return report;
    }

    if (report.case_tag == CaseTag::SquareEqual) {
        const SignedLogDet cross = gram_log_det(wa, wb);
        report.lhs_log = squared_magnitude(cross);
        report.rhs_log = gram_log_det(wa, wa) * gram_log_det(wb, wb);
    } else {
        // Full column rank: det(A*A) = |det Ra|^2 and det(A*B) = conj(det Ra) det(Qa* B).
        // Forming the Gram products instead squares the condition number.
        const QRFactors qa = qr_thin(wa, opts.rank_tol);
        const QRFactors qb = qr_thin(wb, opts.rank_tol);
        const double log_ra = log_abs_diagonal(qa.r);
        const double log_rb = log_abs_diagonal(qb.r);
        const SignedLogDet cross = gram_log_det(qa.q, wb);
        report.lhs_log = cross.zero ? SignedLogDet::zero_value()
                                    : SignedLogDet{Complex{1.0, 0.0},
                                                   2.0 * (log_ra + cross.log_magnitude), false};
        report.rhs_log = SignedLogDet{Complex{1.0, 0.0}, 2.0 * (log_ra + log_rb), false};
    }

    if (report.rhs_log.zero) {
        if (!report.lhs_log.zero) {
            throw InequalityViolation("lhs is nonzero while det(A*MA) det(B*MB) vanishes");
        }
        report.relative_gap = 0.0;
    } else if (report.lhs_log.zero) {
        report.relative_gap = 1.0;
    } else {
        const double excess = report.lhs_log.log_magnitude - report.rhs_log.log_magnitude;
        if (excess > std::log1p(opts.tol)) {
            throw InequalityViolation("log|det(A*MB)|^2 exceeds log(det(A*MA) det(B*MB)) by " +
                                      std::to_string(excess));
        }
        report.relative_gap = std::max(0.0, -std::expm1(excess));
    }

    if (report.equality && report.relative_gap > opts.tol) {
        throw InvariantViolation(std::string("case ") + std::string(to_string(report.case_tag)) +
                                 " implies equality but relative gap is " +
                                 std::to_string(report.relative_gap));
    }

    if (report.case_tag == CaseTag::FullRankSameSpan ||
        report.case_tag == CaseTag::FullRankStrict) {
        report.correlation =
            std::clamp(raw_correlation_unweighted(wa, wb, opts.rank_tol), 0.0, 1.0);
    }
    return report;
}

}  // namespace detcs
