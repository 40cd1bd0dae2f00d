#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "detcs/cli.hpp"
#include "detcs/errors.hpp"
#include "detcs/fuzz.hpp"
#include "detcs/inequality.hpp"
#include "detcs/linalg.hpp"
#include "detcs/matrix_io.hpp"
#include "detcs/oracle.hpp"

namespace py = pybind11;
using detcs::Complex;
using detcs::ComplexMatrix;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& arr) {
    if (arr.ndim() == 1) {
        const auto n = static_cast<std::size_t>(arr.shape(0));
        return ComplexMatrix(n, 1, std::vector<Complex>(arr.data(), arr.data() + n));
    }
    if (arr.ndim() != 2) throw detcs::ContractViolation("expected a 2-D array");
    const auto m = static_cast<std::size_t>(arr.shape(0));
    const auto n = static_cast<std::size_t>(arr.shape(1));
    return ComplexMatrix(m, n, std::vector<Complex>(arr.data(), arr.data() + m * n));
}

ComplexArray to_array(const ComplexMatrix& a) {
    ComplexArray out({a.rows(), a.cols()});
    std::copy(a.entries().begin(), a.entries().end(), out.mutable_data());
    return out;
}

std::optional<detcs::HpdFactor> to_weight(const std::optional<ComplexArray>& m) {
    if (!m) return std::nullopt;
    return detcs::cholesky_hpd(to_matrix(*m));
}

py::dict side_dict(const detcs::SignedLogDet& d) {
    py::dict out;
    out["zero"] = d.zero;
    out["log_magnitude"] = d.zero ? py::object(py::none()) : py::cast(d.log_magnitude);
    out["phase"] = d.zero ? py::object(py::none()) : py::cast(d.phase);
    return out;
}

py::dict report_dict(const detcs::CsReport& r) {
    py::dict out;
    out["case"] = std::string(detcs::to_string(r.case_tag));
    out["lhs"] = side_dict(r.lhs_log);
    out["rhs"] = side_dict(r.rhs_log);
    out["correlation"] = r.correlation ? py::cast(*r.correlation) : py::object(py::none());
    out["relative_gap"] = r.relative_gap;
    out["equality"] = r.equality;
    out["tol"] = r.tol_used;
    out["subspace_tol"] = r.subspace_tol_used;
    out["rank_tol"] = r.rank_tol_used;
    return out;
}

}  // namespace

PYBIND11_MODULE(_detcs, m) {
    m.doc() = "Determinantal Cauchy-Schwarz inequality |det(A*MB)|^2 <= det(A*MA) det(B*MB)";

    static py::exception<detcs::Error> base(m, "DetcsError");
    py::register_exception<detcs::ContractViolation>(m, "ContractViolation", base.ptr());
    py::register_exception<detcs::RankDeficient>(m, "RankDeficient", base.ptr());
    py::register_exception<detcs::NotHermitian>(m, "NotHermitian", base.ptr());
    py::register_exception<detcs::NotPositiveDefinite>(m, "NotPositiveDefinite", base.ptr());
    py::register_exception<detcs::WrongRegime>(m, "WrongRegime", base.ptr());
    py::register_exception<detcs::ParseError>(m, "ParseError", base.ptr());
    py::register_exception<detcs::OracleError>(m, "OracleError", base.ptr());
    static py::exception<detcs::InvariantViolation> invariant(m, "InvariantViolation", base.ptr());
    py::register_exception<detcs::InequalityViolation>(m, "InequalityViolation", invariant.ptr());

    m.def("log_det", [](const ComplexArray& a) {
        const auto d = detcs::log_det(to_matrix(a));
        return py::make_tuple(d.phase, d.log_magnitude, d.zero);
    }, py::arg("a"), "Signed log-determinant as (phase, log|det|, zero).");

    m.def("qr_thin", [](const ComplexArray& a) {
        const auto f = detcs::qr_thin(to_matrix(a));
        return py::make_tuple(to_array(f.q), to_array(f.r));
    }, py::arg("a"));

    m.def("cholesky_hpd", [](const ComplexArray& mm) {
        return to_array(detcs::cholesky_hpd(to_matrix(mm)).w_factor());
    }, py::arg("m"), "Upper factor W with W^* W = M.");

    m.def("estimate_rank", [](const ComplexArray& a, double tol) {
        return detcs::estimate_rank(to_matrix(a), tol);
    }, py::arg("a"), py::arg("tol") = detcs::kRankRel);

    m.def("gram", [](const ComplexArray& a, const ComplexArray& b,
                     const std::optional<ComplexArray>& mm) {
        const auto w = to_weight(mm);
        return to_array(detcs::gram(to_matrix(a), to_matrix(b), w ? &*w : nullptr));
    }, py::arg("a"), py::arg("b"), py::arg("m") = py::none());

    m.def("det_correlation", [](const ComplexArray& a, const ComplexArray& b,
                                const std::optional<ComplexArray>& mm) {
        const auto w = to_weight(mm);
        return detcs::det_correlation(to_matrix(a), to_matrix(b), w ? &*w : nullptr);
    }, py::arg("a"), py::arg("b"), py::arg("m") = py::none());

    m.def("column_norm_profile", [](const ComplexArray& a, const ComplexArray& b) {
        return detcs::column_norm_profile(detcs::SubspaceBasis::span_of(to_matrix(a)),
                                          detcs::SubspaceBasis::span_of(to_matrix(b)));
    }, py::arg("a"), py::arg("b"),
       "Column norms of Qa^* Qb for orthonormal bases of span(a), span(b).");

    m.def("hadamard_bound", [](const ComplexArray& h) {
        const auto r = detcs::hadamard_bound(to_matrix(h));
        return py::make_tuple(r.bound, r.det_mag);
    }, py::arg("h"));

    m.def("subspace_equal", [](const ComplexArray& a, const ComplexArray& b, double tol) {
        return detcs::subspace_equal(to_matrix(a), to_matrix(b), tol);
    }, py::arg("a"), py::arg("b"), py::arg("tol") = detcs::kDefaultSubspaceTol);

    m.def("classify_case", [](const ComplexArray& a, const ComplexArray& b,
                              const std::optional<ComplexArray>& mm, double subspace_tol) {
        const auto w = to_weight(mm);
        return std::string(detcs::to_string(
            detcs::classify_case(to_matrix(a), to_matrix(b), w ? &*w : nullptr, subspace_tol)));
    }, py::arg("a"), py::arg("b"), py::arg("m") = py::none(),
       py::arg("subspace_tol") = detcs::kDefaultSubspaceTol);

    m.def("verify_inequality", [](const ComplexArray& a, const ComplexArray& b,
                                  const std::optional<ComplexArray>& mm, double tol,
                                  double subspace_tol) {
        const auto w = to_weight(mm);
        detcs::VerifyOptions opts;
        opts.tol = tol;
        opts.subspace_tol = subspace_tol;
        return report_dict(
            detcs::verify_inequality(to_matrix(a), to_matrix(b), w ? &*w : nullptr, opts));
    }, py::arg("a"), py::arg("b"), py::arg("m") = py::none(),
       py::arg("tol") = detcs::kDefaultTol, py::arg("subspace_tol") = detcs::kDefaultSubspaceTol);

    m.def("parse_matrix", [](const std::string& text) {
        return to_array(detcs::parse_matrix(text));
    }, py::arg("text"));
    m.def("serialize_matrix", [](const ComplexArray& a) {
        return detcs::serialize_matrix(to_matrix(a));
    }, py::arg("a"));

    m.def("find_bilinearity_counterexample", [](std::uint64_t seed) {
        const auto w = detcs::oracle::find_bilinearity_counterexample(seed);
        py::dict out;
        out["a1"] = to_array(w.a1);
        out["a2"] = to_array(w.a2);
        out["b"] = to_array(w.b);
        out["discrepancy"] = w.discrepancy;
        out["trials_used"] = w.trials_used;
        return out;
    }, py::arg("seed"));

    m.def("fuzz", [](std::size_t trials, std::uint64_t seed, std::size_t m_max, std::size_t n_max,
                     const std::vector<std::string>& ensembles, double tol) {
        detcs::fuzz::FuzzConfig config;
        config.trials = trials;
        config.seed = seed;
        config.m_max = m_max;
        config.n_max = n_max;
        config.tol = tol;
        config.ensembles.clear();
        for (const auto& name : ensembles) {
            const auto e = detcs::fuzz::ensemble_from_string(name);
            if (!e) throw detcs::ContractViolation("unknown ensemble '" + name + "'");
            config.ensembles.push_back(*e);
        }
        const auto summary = detcs::fuzz::run_fuzz(config);
        py::dict out;
        out["violations"] = summary.total_violations();
        out["summary"] = detcs::cli::format_fuzz_summary(summary);
        return out;
    }, py::arg("trials"), py::arg("seed"), py::arg("m_max") = 8, py::arg("n_max") = 8,
       py::arg("ensembles") = std::vector<std::string>{"ginibre", "rank_deficient", "shared_span",
                                                       "weighted"},
       py::arg("tol") = detcs::kDefaultTol);
}
