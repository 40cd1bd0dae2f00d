#include "detcs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detcs/errors.hpp"
#include "detcs/linalg.hpp"
#include "detcs/matrix_io.hpp"
#include "detcs/oracle.hpp"

namespace detcs::cli {

namespace {

constexpr double kCheckTol = 1e-9;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string describe_side(const SignedLogDet& d) {
    if (d.zero) return "0 (vanishes)";
    return "exp(" + format_double(d.log_magnitude) + ")";
}

nlohmann::json side_json(const SignedLogDet& d) {
    nlohmann::json j;
    j["zero"] = d.zero;
    if (d.zero) {
        j["log_magnitude"] = nullptr;
        j["phase"] = nullptr;
    } else {
        j["log_magnitude"] = d.log_magnitude;
        j["phase"] = {d.phase.real(), d.phase.imag()};
    }
    return j;
}

struct Inputs {
    ComplexMatrix a;
    ComplexMatrix b;
    std::optional<HpdFactor> factor;
    const HpdFactor* weight() const { return factor ? &*factor : nullptr; }
};

Inputs load_inputs(const std::string& a_path, const std::string& b_path,
                   const std::string& m_path) {
    Inputs in{read_matrix_file(a_path), read_matrix_file(b_path), std::nullopt};
    if (in.a.rows() != in.b.rows() || in.a.cols() != in.b.cols()) {
        throw ContractViolation("A and B must have the same shape");
    }
    if (!m_path.empty()) {
        const ComplexMatrix m = read_matrix_file(m_path);
        if (m.rows() != in.a.rows() || m.cols() != in.a.rows()) {
            throw ContractViolation("M must be " + std::to_string(in.a.rows()) + "x" +
                                    std::to_string(in.a.rows()));
        }
        in.factor = cholesky_hpd(m);
    }
    return in;
}

std::pair<ComplexMatrix, ComplexMatrix> whitened(const Inputs& in) {
    if (in.factor) return whitened_pair(in.a, in.b, *in.factor);
    return {in.a, in.b};
}

// Cofactor determinants of the three Gram products vs the LU path, and the
// Jacobi cosine product vs the reported correlation.
bool verify_checks(const Inputs& in, const CsReport& report, std::ostream& out) {
    const auto [wa, wb] = whitened(in);
    const std::size_t n = wa.cols();
    bool ok = true;
    if (n > oracle::kMaxCofactorDim) {
        out << "check: determinant oracle skipped (n > " << oracle::kMaxCofactorDim << ")\n";
    } else if (both_sides_vanish(report.case_tag) || report.rhs_log.zero) {
        out << "check: determinant oracle skipped (both sides vanish)\n";
    } else {
        double worst = 0.0;
        for (const auto& [x, y] : {std::pair{&wa, &wb}, std::pair{&wa, &wa}, std::pair{&wb, &wb}}) {
            const ComplexMatrix g = oracle::naive_matmul(conj_transpose(*x), *y);
            const Complex exact = oracle::det_cofactor(g);
            const Complex fast = log_det(g).value();
            if (std::abs(exact) > 0.0) worst = std::max(worst, std::abs(fast - exact) / std::abs(exact));
        }
        const bool pass = worst <= kCheckTol;
        ok = ok && pass;
        out << "check: determinant oracle max relative error " << sci(worst)
            << (pass ? " ok" : " FAILED") << "\n";
    }
    if (report.correlation) {
        const auto angles = oracle::principal_angle_cosines(SubspaceBasis::span_of(wa),
                                                            SubspaceBasis::span_of(wb));
        double product = 1.0;
        for (double c : angles.cosines) product *= c;
        const double diff = std::abs(product - *report.correlation);
        const bool pass = diff <= kCheckTol;
        ok = ok && pass;
        out << "check: principal-angle product differs from correlation by " << sci(diff)
            << (pass ? " ok" : " FAILED") << "\n";
    }
    return ok;
}

int cmd_verify(const std::string& a_path, const std::string& b_path, const std::string& m_path,
               const VerifyOptions& opts, bool json, bool check, std::ostream& out) {
    const Inputs in = load_inputs(a_path, b_path, m_path);
    const CsReport report = verify_inequality(in.a, in.b, in.weight(), opts);
    out << (json ? format_report_json(report) + "\n" : format_report_text(report));
    if (check && !verify_checks(in, report, out)) return kInvariantViolation;
    return kVerified;
}

int cmd_correlate(const std::string& a_path, const std::string& b_path,
                  const std::string& m_path, bool check, std::ostream& out) {
    const Inputs in = load_inputs(a_path, b_path, m_path);
    const auto [wa, wb] = whitened(in);
    const double corr = det_correlation(wa, wb);
    const auto ua = SubspaceBasis::span_of(wa);
    const auto ub = SubspaceBasis::span_of(wb);
    const auto profile = column_norm_profile(ua, ub);
    out << "correlation: " << format_double(corr) << "\n";
    out << "profile:";
    for (double p : profile) out << ' ' << format_double(p);
    out << "\n";
    if (!check) return kVerified;

    const auto angles = oracle::principal_angle_cosines(ua, ub);
    double product = 1.0;
    out << "cosines:";
    for (double c : angles.cosines) {
        product *= c;
        out << ' ' << format_double(c);
    }
    out << "\n";
    bool ok = std::abs(product - corr) <= kCheckTol;
    out << "check: principal-angle product differs by " << sci(std::abs(product - corr))
        << (ok ? " ok" : " FAILED") << "\n";
    if (wa.cols() <= oracle::kMaxCofactorDim) {
        const Complex d = oracle::det_cofactor(
            oracle::naive_matmul(conj_transpose(ua.ortho()), ub.ortho()));
        const double diff = std::abs(std::abs(d) - corr);
        const bool pass = diff <= kCheckTol;
        ok = ok && pass;
        out << "check: cofactor |det(Qa*Qb)| differs by " << sci(diff)
            << (pass ? " ok" : " FAILED") << "\n";
    }
    return ok ? kVerified : kInvariantViolation;
}

int cmd_classify(const std::string& a_path, const std::string& b_path, const std::string& m_path,
                 double subspace_tol, std::ostream& out) {
    const Inputs in = load_inputs(a_path, b_path, m_path);
    const CaseTag tag = classify_case(in.a, in.b, in.weight(), subspace_tol);
    out << "case: " << to_string(tag) << "\n";
    out << "clause: " << clause_text(tag) << "\n";
    return kVerified;
}

int cmd_fuzz(fuzz::FuzzConfig config, std::ostream& out) {
    const fuzz::FuzzSummary summary = fuzz::run_fuzz(config);
    out << format_fuzz_summary(summary);
    if (summary.total_violations() == 0) return kVerified;
    for (const auto& es : summary.ensembles) {
        for (const auto& v : es.violations) {
            const auto paths = fuzz::write_replay(v, config.replay_dir);
            out << "replay " << fuzz::to_string(es.ensemble) << " trial " << v.trial
                << ": detcs verify --a " << paths[0].string() << " --b " << paths[1].string();
            if (paths.size() > 2) out << " --m " << paths[2].string();
            out << " --tol " << format_double(config.tol) << " --subspace-tol "
                << format_double(config.subspace_tol) << "\n";
        }
    }
    return kInvariantViolation;
}

std::vector<fuzz::Ensemble> parse_ensembles(const std::string& list) {
    std::vector<fuzz::Ensemble> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto e = fuzz::ensemble_from_string(item);
        if (!e) throw ContractViolation("unknown ensemble '" + item + "'");
        if (std::find(out.begin(), out.end(), *e) == out.end()) out.push_back(*e);
    }
    return out;
}

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw ContractViolation("invalid seed '" + text + "'");
    }
    return v;
}

}  // namespace

std::string format_report_text(const CsReport& report) {
    std::ostringstream os;
    os << "case: " << to_string(report.case_tag) << "\n";
    os << "clause: " << clause_text(report.case_tag) << "\n";
    os << "lhs |det(A*MB)|^2: " << describe_side(report.lhs_log) << "\n";
    os << "rhs det(A*MA)*det(B*MB): " << describe_side(report.rhs_log) << "\n";
    os << "correlation: " << (report.correlation ? format_double(*report.correlation) : "n/a")
       << "\n";
    os << "relative_gap: " << format_double(report.relative_gap) << "\n";
    os << "equality: " << (report.equality ? "true" : "false") << "\n";
    os << "tol: " << format_double(report.tol_used)
       << " subspace_tol: " << format_double(report.subspace_tol_used)
       << " rank_tol: " << format_double(report.rank_tol_used) << "\n";
    return os.str();
}

std::string format_report_json(const CsReport& report) {
    nlohmann::json j;
    j["case"] = to_string(report.case_tag);
    j["lhs"] = side_json(report.lhs_log);
    j["rhs"] = side_json(report.rhs_log);
    j["correlation"] = report.correlation ? nlohmann::json(*report.correlation) : nlohmann::json();
    j["relative_gap"] = report.relative_gap;
    j["equality"] = report.equality;
    j["tol"] = report.tol_used;
    j["subspace_tol"] = report.subspace_tol_used;
    j["rank_tol"] = report.rank_tol_used;
    return j.dump();
}

std::string format_fuzz_summary(const fuzz::FuzzSummary& summary) {
    const auto& c = summary.config;
    std::ostringstream os;
    os << "fuzz seed=" << c.seed << " trials=" << c.trials << " m_max=" << c.m_max
       << " n_max=" << c.n_max << " tol=" << format_double(c.tol)
       << " subspace_tol=" << format_double(c.subspace_tol) << "\n";
    std::size_t passed = 0;
    std::size_t total = 0;
    for (const auto& es : summary.ensembles) {
        passed += es.passed;
        total += es.trials;
        os << fuzz::to_string(es.ensemble) << ": " << es.passed << "/" << es.trials << " passed\n";
        os << "  cases:";
        for (std::size_t t = 0; t < es.case_counts.size(); ++t)
            os << ' ' << to_string(static_cast<CaseTag>(t)) << '=' << es.case_counts[t];
        os << "\n";
        os << "  worst log slack: " << (es.worst_log_slack ? sci(*es.worst_log_slack) : "n/a")
           << "\n";
        os << "  max raw correlation: "
           << (es.max_raw_correlation ? sci(*es.max_raw_correlation) : "n/a")
           << ", max column norm: "
           << (es.max_profile_entry ? sci(*es.max_profile_entry) : "n/a") << "\n";
        for (const auto& v : es.violations)
            os << "  VIOLATION trial " << v.trial << ": " << v.message << "\n";
    }
    os << "total: " << passed << "/" << total << " passed, " << summary.total_violations()
       << " violations\n";
    return os.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Determinantal Cauchy-Schwarz verification", "detcs"};
    app.require_subcommand(1);

    std::string a_path, b_path, m_path;
    VerifyOptions opts;
    bool json = false;
    bool check = false;

    auto* verify = app.add_subcommand("verify", "check |det(A*MB)|^2 <= det(A*MA) det(B*MB)");
    verify->add_option("--a", a_path, "matrix file for A")->required();
    verify->add_option("--b", b_path, "matrix file for B")->required();
    verify->add_option("--m", m_path, "hermitian positive definite weight M");
    verify->add_option("--tol", opts.tol, "relative tolerance for equality")->capture_default_str();
    verify->add_option("--subspace-tol", opts.subspace_tol, "principal-angle cosine tolerance")
        ->capture_default_str();
    verify->add_flag("--json", json, "emit a single-line JSON record");
    verify->add_flag("--check", check, "cross-check against brute-force oracles");

    auto* correlate = app.add_subcommand("correlate", "determinantal correlation of column spaces");
    correlate->add_option("--a", a_path, "matrix file for A")->required();
    correlate->add_option("--b", b_path, "matrix file for B")->required();
    correlate->add_option("--m", m_path, "hermitian positive definite weight M");
    correlate->add_flag("--check", check, "cross-check against brute-force oracles");

    double subspace_tol = kDefaultSubspaceTol;
    auto* classify = app.add_subcommand("classify", "report which equality clause applies");
    classify->add_option("--a", a_path, "matrix file for A")->required();
    classify->add_option("--b", b_path, "matrix file for B")->required();
    classify->add_option("--m", m_path, "hermitian positive definite weight M");
    classify->add_option("--subspace-tol", subspace_tol, "principal-angle cosine tolerance")
        ->capture_default_str();

    fuzz::FuzzConfig config;
    std::string seed_text = "0";
    std::string ensembles = "ginibre,rank_deficient,shared_span,weighted";
    std::string replay_dir = config.replay_dir.string();
    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized verification over matrix ensembles");
    fuzz_cmd->add_option("--trials", config.trials, "trials per ensemble")->required();
    fuzz_cmd->add_option("--seed", seed_text, "master seed (DETCS_SEED overrides)");
    fuzz_cmd->add_option("--m-max", config.m_max, "largest row count")->capture_default_str();
    fuzz_cmd->add_option("--n-max", config.n_max, "largest column count")->capture_default_str();
    fuzz_cmd->add_option("--ensembles", ensembles, "comma-separated ensemble list")
        ->capture_default_str();
    fuzz_cmd->add_option("--tol", config.tol, "relative tolerance for equality")
        ->capture_default_str();
    fuzz_cmd->add_option("--subspace-tol", config.subspace_tol, "principal-angle cosine tolerance")
        ->capture_default_str();
    fuzz_cmd->add_option("--replay-dir", replay_dir, "where violating instances are written")
        ->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kVerified : kInputError;
    }

    try {
        if (verify->parsed()) return cmd_verify(a_path, b_path, m_path, opts, json, check, out);
        if (correlate->parsed()) return cmd_correlate(a_path, b_path, m_path, check, out);
        if (classify->parsed()) return cmd_classify(a_path, b_path, m_path, subspace_tol, out);
        if (const char* env = std::getenv("DETCS_SEED"); env && *env) seed_text = env;
        config.seed = parse_seed(seed_text);
        config.ensembles = parse_ensembles(ensembles);
        config.replay_dir = replay_dir;
        fuzz::validate(config);
        return cmd_fuzz(std::move(config), out);
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const OracleError& e) {
        err << "oracle failure: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const WrongRegime& e) {
        err << "wrong regime: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace detcs::cli
