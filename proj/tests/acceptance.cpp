#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "detcs/cli.hpp"
#include "detcs/fuzz.hpp"
#include "detcs/inequality.hpp"
#include "detcs/linalg.hpp"
#include "detcs/oracle.hpp"
#include "detcs/random.hpp"

// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1], when given, is the path of the detcs binary used for the
// byte-for-byte reproducibility check.

using namespace detcs;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Rng rng_for(std::uint64_t suite, std::size_t trial) {
    return Rng(derive_seed(derive_seed(0xacce97, suite), trial));
}

double cond2(const ComplexMatrix& a) {
    const auto sv = oracle::singular_values(a);
    return sv.back() > 0.0 ? sv.front() / sv.back() : INFINITY;
}

ComplexMatrix well_conditioned_square(Rng& rng, std::size_t n) {
    ComplexMatrix c = ginibre(rng, n, n);
    while (cond2(c) >= 1e4) c = ginibre(rng, n, n);
    return c;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// Shared by criteria 1 and 4.
const fuzz::FuzzSummary& main_fuzz() {
    static const fuzz::FuzzSummary summary = [] {
        fuzz::FuzzConfig config;
        config.trials = 10000;
        config.seed = 7;
        return fuzz::run_fuzz(config);
    }();
    return summary;
}

Outcome criterion_fuzz() {
    const auto& s = main_fuzz();
    std::size_t total = 0;
    for (const auto& e : s.ensembles) total += e.trials;
    const auto v = s.total_violations();
    std::string detail = std::to_string(total) + " trials over " +
                         std::to_string(s.ensembles.size()) + " ensembles, " +
                         std::to_string(v) + " violations";
    for (const auto& e : s.ensembles)
        for (const auto& viol : e.violations)
            detail += "\n    " + std::string(fuzz::to_string(e.ensemble)) + " trial " +
                      std::to_string(viol.trial) + ": " + viol.message;
    return {v == 0, detail};
}

Outcome criterion_taxonomy() {
    constexpr std::size_t kPerClause = 1000;
    std::size_t wide_ok = 0, deficient_ok = 0, square_ok = 0, shared_ok = 0, strict = 0;
    double worst_square_gap = 0.0, worst_shared_corr = 0.0;

    for (std::size_t t = 0; t < kPerClause; ++t) {
        {
            Rng rng = rng_for(20, t);
            const auto m = rng.between(1, 7);
            const auto n = rng.between(m + 1, 8);
            const auto r = verify_inequality(ginibre(rng, m, n), ginibre(rng, m, n));
            if (r.case_tag == CaseTag::WideEqualZero && r.lhs_log.zero && r.rhs_log.zero &&
                r.equality)
                ++wide_ok;
        }
        {
            Rng rng = rng_for(21, t);
            const auto n = rng.between(1, 7);
            const auto m = rng.between(n + 1, 8);
            const auto which = rng.between(0, 2);
            const auto rank = [&] { return rng.between(0, n - 1); };
            const auto a = which != 1 ? random_low_rank(rng, m, n, rank()) : ginibre(rng, m, n);
            const auto b = which != 0 ? random_low_rank(rng, m, n, rank()) : ginibre(rng, m, n);
            const auto r = verify_inequality(a, b);
            if (r.case_tag == CaseTag::RankDeficientZero && r.lhs_log.zero && r.rhs_log.zero &&
                r.equality)
                ++deficient_ok;
        }
        {
            Rng rng = rng_for(22, t);
            const auto n = rng.between(1, 8);
            const auto r = verify_inequality(ginibre(rng, n, n), ginibre(rng, n, n));
            worst_square_gap = std::max(worst_square_gap, r.relative_gap);
            if (r.case_tag == CaseTag::SquareEqual && r.equality && r.relative_gap <= 1e-10)
                ++square_ok;
        }
        {
            Rng rng = rng_for(23, t);
            const auto n = rng.between(1, 7);
            const auto m = rng.between(n + 1, 8);
            const auto a = ginibre(rng, m, n);
            const auto b = matmul(a, well_conditioned_square(rng, n));
            const auto r = verify_inequality(a, b);
            const double dev = r.correlation ? std::abs(*r.correlation - 1.0) : INFINITY;
            const double raw_dev = std::abs(det_correlation_raw(a, b) - 1.0);
            worst_shared_corr = std::max({worst_shared_corr, dev, raw_dev});
            if (r.case_tag == CaseTag::FullRankSameSpan && r.equality && dev <= 1e-10 &&
                raw_dev <= 1e-10)
                ++shared_ok;
        }
        {
            Rng rng = rng_for(24, t);
            const auto n = rng.between(1, 7);
            const auto m = rng.between(n + 1, 8);
            if (verify_inequality(ginibre(rng, m, n), ginibre(rng, m, n)).case_tag ==
                CaseTag::FullRankStrict)
                ++strict;
        }
    }
    const bool pass = wide_ok == kPerClause && deficient_ok == kPerClause &&
                      square_ok == kPerClause && shared_ok == kPerClause &&
                      strict * 1000 >= 999 * kPerClause;
    const auto n = std::to_string(kPerClause);
    return {pass, "wide " + std::to_string(wide_ok) + "/" + n + ", rank-deficient " +
                      std::to_string(deficient_ok) + "/" + n + ", square " +
                      std::to_string(square_ok) + "/" + n + " (max gap " +
                      sci(worst_square_gap) + "), shared span " + std::to_string(shared_ok) +
                      "/" + n + " (max |corr-1| " + sci(worst_shared_corr) + "), generic strict " +
                      std::to_string(strict) + "/" + n};
}

Outcome criterion_factorization_identity() {
    constexpr std::size_t kInstances = 1000;
    std::size_t used = 0, draws = 0;
    double worst_ginibre = 0.0, worst_conditioned = 0.0;
    while (used < kInstances) {
        Rng rng = rng_for(30, draws++);
        const auto n = rng.between(1, 7);
        const auto m = rng.between(n + 1, 8);
        // Half plain Ginibre, half with prescribed condition numbers up to 1e6.
        const bool conditioned = used % 2 == 1;
        const double target = std::pow(10.0, 6.0 * rng.uniform());
        const auto a = conditioned ? random_with_condition(rng, m, n, target) : ginibre(rng, m, n);
        const auto b = conditioned ? random_with_condition(rng, m, n, target) : ginibre(rng, m, n);
        if (!(cond2(a) < 1e6 && cond2(b) < 1e6)) continue;
        ++used;
        const auto report = verify_inequality(a, b);
        const double lhs = report.lhs_log.log_magnitude;
        const double rhs = 2.0 * std::log(det_correlation_raw(a, b)) + report.rhs_log.log_magnitude;
        (conditioned ? worst_conditioned : worst_ginibre) =
            std::max(conditioned ? worst_conditioned : worst_ginibre, std::abs(lhs - rhs));
    }
    const double worst = std::max(worst_ginibre, worst_conditioned);
    return {worst <= 1e-9, std::to_string(used) + " instances (" + std::to_string(draws) +
                               " drawn), max |log difference| " + sci(worst_ginibre) +
                               " ginibre, " + sci(worst_conditioned) + " conditioned"};
}

Outcome criterion_unit_bounds() {
    const auto& s = main_fuzz();
    double corr = 0.0, profile = 0.0;
    for (const auto& e : s.ensembles) {
        if (e.max_raw_correlation) corr = std::max(corr, *e.max_raw_correlation);
        if (e.max_profile_entry) profile = std::max(profile, *e.max_profile_entry);
    }
    const double bound = 1.0 + 1e-10;
    return {corr <= bound && profile <= bound && s.total_violations() == 0,
            "max raw correlation minus 1 = " + sci(corr - 1.0) +
                ", max column norm minus 1 = " + sci(profile - 1.0)};
}

Outcome criterion_oracles() {
    double worst_det = 0.0, worst_angle = 0.0;
    for (std::size_t t = 0; t < 1000; ++t) {
        Rng rng = rng_for(51, t);
        const auto n = rng.between(1, 5);
        const auto a = ginibre(rng, n, n);
        const Complex exact = oracle::det_cofactor(a);
        worst_det = std::max(worst_det, std::abs(log_det(a).value() - exact) / std::abs(exact));
    }
    for (std::size_t t = 0; t < 1000; ++t) {
        Rng rng = rng_for(52, t);
        const auto n = rng.between(1, 5);
        const auto m = rng.between(n + 1, 12);
        const auto a = ginibre(rng, m, n);
        const auto b = ginibre(rng, m, n);
        double prod = 1.0;
        for (double c : oracle::principal_angle_cosines(SubspaceBasis::span_of(a),
                                                        SubspaceBasis::span_of(b))
                            .cosines)
            prod *= c;
        worst_angle = std::max(worst_angle, std::abs(prod - det_correlation(a, b)));
    }
    return {worst_det <= 1e-9 && worst_angle <= 1e-9,
            "LU vs cofactor max relative error " + sci(worst_det) +
                ", cosine product vs correlation max difference " + sci(worst_angle)};
}

Outcome criterion_whitening() {
    std::size_t agree = 0;
    double worst = 0.0;
    const auto diff = [](const SignedLogDet& x, const SignedLogDet& y) {
        if (x.zero || y.zero) return x.zero == y.zero ? 0.0 : INFINITY;
        return std::abs(x.log_magnitude - y.log_magnitude);
    };
    for (std::size_t t = 0; t < 1000; ++t) {
        const auto inst = fuzz::generate_trial(fuzz::Ensemble::Weighted, 606, t, 8, 8);
        const auto f = cholesky_hpd(*inst.weight);
        const auto wa = oracle::naive_matmul(f.w_factor(), inst.a);
        const auto wb = oracle::naive_matmul(f.w_factor(), inst.b);
        const auto weighted = verify_inequality(inst.a, inst.b, &f);
        const auto plain = verify_inequality(wa, wb);
        double d = std::max({diff(weighted.lhs_log, plain.lhs_log),
                             diff(weighted.rhs_log, plain.rhs_log),
                             std::abs(weighted.relative_gap - plain.relative_gap)});
        if (weighted.correlation.has_value() != plain.correlation.has_value()) {
            d = INFINITY;
        } else if (weighted.correlation) {
            d = std::max(d, std::abs(*weighted.correlation - *plain.correlation));
        }
        worst = std::max(worst, d);
        if (weighted.case_tag == plain.case_tag && weighted.equality == plain.equality && d <= 1e-9)
            ++agree;
    }
    return {agree == 1000, std::to_string(agree) + "/1000 weighted instances agree, max numeric "
                                                   "difference " + sci(worst)};
}

Outcome criterion_non_bilinearity() {
    const auto w = oracle::find_bilinearity_counterexample(2024);
    const bool pass = w.discrepancy > 0.1 && w.trials_used <= oracle::kBilinearitySearchBound;
    return {pass, "discrepancy " + sci(w.discrepancy) + " after " +
                      std::to_string(w.trials_used) + " trials, n = " + std::to_string(w.a1.rows())};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    if (::pclose(pipe) != 0) out += "\n<nonzero exit>";
    return out;
}

Outcome criterion_reproducible(const char* binary) {
    ::unsetenv("DETCS_SEED");
    std::string first, second, how;
    if (binary) {
        const std::string cmd = std::string("'") + binary + "' fuzz --trials 1000 --seed 7";
        first = capture(cmd);
        second = capture(cmd);
        how = "two runs of the binary";
    } else {
        const std::vector<std::string> args{"fuzz", "--trials", "1000", "--seed", "7"};
        std::ostringstream o1, o2, e;
        cli::run(args, o1, e);
        cli::run(args, o2, e);
        first = o1.str();
        second = o2.str();
        how = "two in-process runs";
    }
    const bool clean = first.find("total: 4000/4000 passed, 0 violations") != std::string::npos;
    return {!first.empty() && first == second && clean,
            how + ", " + std::to_string(first.size()) + " bytes, " +
                (first == second ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
    const char* binary = argc > 1 ? argv[1] : nullptr;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"fuzz finds no violations", criterion_fuzz},
        {"case taxonomy", criterion_taxonomy},
        {"factorization identity", criterion_factorization_identity},
        {"unit bounds on correlation and column norms", criterion_unit_bounds},
        {"oracle agreement", criterion_oracles},
        {"weighted reduces to whitened", criterion_whitening},
        {"non-bilinearity witness", criterion_non_bilinearity},
        {"fuzz output is reproducible", [binary] { return criterion_reproducible(binary); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " ("
                  << criteria[i].first << "): " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
