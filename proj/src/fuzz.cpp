#include "detcs/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detcs/errors.hpp"
#include "detcs/linalg.hpp"
#include "detcs/matrix_io.hpp"
#include "detcs/oracle.hpp"

namespace detcs::fuzz {

namespace {

constexpr std::array<std::string_view, 4> kNames{"ginibre", "rank_deficient", "shared_span",
                                                 "weighted"};

std::size_t index_of(Ensemble e) { return static_cast<std::size_t>(e); }

ComplexMatrix mixing_matrix(Rng& rng, std::size_t n) {
    for (;;) {
        ComplexMatrix c = ginibre(rng, n, n);
        const auto sv = oracle::singular_values(c);
        if (sv.back() > 0.0 && sv.front() <= kMaxMixingCondition * sv.back()) return c;
    }
}

void update_min(std::optional<double>& slot, double v) { slot = slot ? std::min(*slot, v) : v; }
void update_max(std::optional<double>& slot, double v) { slot = slot ? std::max(*slot, v) : v; }

}  // namespace

std::string_view to_string(Ensemble e) { return kNames[index_of(e)]; }

std::optional<Ensemble> ensemble_from_string(std::string_view name) {
    for (Ensemble e : kAllEnsembles)
        if (to_string(e) == name) return e;
    return std::nullopt;
}

void validate(const FuzzConfig& config) {
    if (config.trials < 1) throw ContractViolation("fuzz: trials must be >= 1");
    if (config.m_max < 1 || config.n_max < 1) throw ContractViolation("fuzz: m_max, n_max must be >= 1");
    if (config.ensembles.empty()) throw ContractViolation("fuzz: no ensembles selected");
    if (!(config.tol > 0.0)) throw ContractViolation("fuzz: tol must be positive");
    if (!(config.subspace_tol > 0.0)) throw ContractViolation("fuzz: subspace_tol must be positive");
}

std::size_t FuzzSummary::total_violations() const {
    std::size_t total = 0;
    for (const auto& e : ensembles) total += e.violations.size();
    return total;
}

Instance generate_instance(Ensemble ensemble, Rng& rng, std::size_t m, std::size_t n) {
    switch (ensemble) {
    case Ensemble::Ginibre: {
        ComplexMatrix a = ginibre(rng, m, n);
        ComplexMatrix b = ginibre(rng, m, n);
        return {ensemble, ensemble, std::move(a), std::move(b), std::nullopt};
    }
    case Ensemble::RankDeficient: {
        const std::size_t r = n >= 2 ? rng.between(1, n - 1) : 0;
        // 0: only A deficient, 1: only B, 2: both
        const std::size_t which = rng.between(0, 2);
        ComplexMatrix a = which != 1 ? random_low_rank(rng, m, n, r) : ginibre(rng, m, n);
        ComplexMatrix b = which != 0 ? random_low_rank(rng, m, n, r) : ginibre(rng, m, n);
        return {ensemble, ensemble, std::move(a), std::move(b), std::nullopt};
    }
    case Ensemble::SharedSpan: {
        ComplexMatrix a = ginibre(rng, m, n);
        ComplexMatrix b = matmul(a, mixing_matrix(rng, n));
        return {ensemble, ensemble, std::move(a), std::move(b), std::nullopt};
    }
    case Ensemble::Weighted: {
        const Ensemble structure = kAllEnsembles[rng.between(0, 2)];
        Instance inst = generate_instance(structure, rng, m, n);
        inst.ensemble = Ensemble::Weighted;
        inst.weight = random_hpd(rng, m, kWeightShift);
        return inst;
    }
    }
    throw ContractViolation("unknown ensemble");
}

Instance generate_trial(Ensemble ensemble, std::uint64_t seed, std::size_t trial,
                        std::size_t m_max, std::size_t n_max) {
    Rng rng(derive_seed(derive_seed(seed, index_of(ensemble) + 1), trial));
    const std::size_t m = rng.between(1, m_max);
    const std::size_t n = rng.between(1, n_max);
    return generate_instance(ensemble, rng, m, n);
}

TrialResult check_instance(const Instance& instance, const FuzzConfig& config) {
    TrialResult result;
    try {
        std::optional<HpdFactor> factor;
        if (instance.weight) factor = cholesky_hpd(*instance.weight);
        const HpdFactor* weight = factor ? &*factor : nullptr;

        VerifyOptions opts;
        opts.tol = config.tol;
        opts.subspace_tol = config.subspace_tol;
        const CsReport report = verify_inequality(instance.a, instance.b, weight, opts);
        result.report = report;

        const CaseTag tag = report.case_tag;
        const bool full_rank = tag == CaseTag::FullRankSameSpan || tag == CaseTag::FullRankStrict;
        const std::size_t m = instance.a.rows();
        const std::size_t n = instance.a.cols();
        auto fail = [&](std::string msg) {
            result.violation = std::string(to_string(tag)) + ": " + std::move(msg);
            return result;
        };

        if (report.equality != implies_equality(tag)) return fail("equality flag disagrees with case");
        if (report.equality && report.relative_gap > config.tol) return fail("equality case with gap above tol");
        if (both_sides_vanish(tag) && !(report.lhs_log.zero && report.rhs_log.zero))
            return fail("structurally vanishing case has a nonzero side");
        if (report.correlation.has_value() != full_rank) return fail("correlation presence disagrees with case");
        if (!report.lhs_log.zero && !report.rhs_log.zero &&
            report.lhs_log.log_magnitude > report.rhs_log.log_magnitude + std::log1p(config.tol))
            return fail("lhs exceeds rhs");

        if (instance.structure == Ensemble::SharedSpan && !report.equality)
            return fail("shared span must give equality");
        if (instance.structure == Ensemble::RankDeficient && m > n &&
            tag != CaseTag::RankDeficientZero)
            return fail("rank-deficient pair not detected");

        if (full_rank) {
            ComplexMatrix wa = instance.a;
            ComplexMatrix wb = instance.b;
            if (weight) std::tie(wa, wb) = whitened_pair(instance.a, instance.b, *weight);
            const double raw = det_correlation_raw(wa, wb);
            result.raw_correlation = raw;
            result.profile = column_norm_profile(SubspaceBasis::span_of(wa), SubspaceBasis::span_of(wb));
            if (tag == CaseTag::FullRankStrict && raw >= 1.0 - 1e-12)
                return fail("strict case with unit correlation");
            if (tag == CaseTag::FullRankSameSpan && std::abs(raw - 1.0) > kUnitBoundSlack)
                return fail("equal spans with correlation away from 1");
        }
    } catch (const InvariantViolation& e) {
        result.violation = e.what();
    } catch (const Error& e) {
        result.violation = std::string("unexpected error: ") + e.what();
    }
    return result;
}

FuzzSummary run_fuzz(const FuzzConfig& config) {
    validate(config);
    FuzzSummary summary{config, {}};
    for (Ensemble ensemble : config.ensembles) {
        EnsembleSummary es;
        es.ensemble = ensemble;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            Instance inst = generate_trial(ensemble, config.seed, trial, config.m_max, config.n_max);
            const TrialResult r = check_instance(inst, config);
            ++es.trials;
            if (r.report) {
                ++es.case_counts[static_cast<std::size_t>(r.report->case_tag)];
                if (!r.report->lhs_log.zero && !r.report->rhs_log.zero)
                    update_min(es.worst_log_slack,
                               r.report->rhs_log.log_magnitude - r.report->lhs_log.log_magnitude);
            }
            if (r.raw_correlation) update_max(es.max_raw_correlation, *r.raw_correlation);
            for (double p : r.profile) update_max(es.max_profile_entry, p);
            if (r.violation) {
                es.violations.push_back({trial, *r.violation, std::move(inst)});
            } else {
                ++es.passed;
            }
        }
        summary.ensembles.push_back(std::move(es));
    }
    return summary;
}

std::vector<std::filesystem::path> write_replay(const Violation& v,
                                                const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string stem =
        std::string(to_string(v.instance.ensemble)) + "-" + std::to_string(v.trial);
    std::vector<std::filesystem::path> paths{dir / (stem + "-a.txt"), dir / (stem + "-b.txt")};
    write_matrix_file(paths[0], v.instance.a);
    write_matrix_file(paths[1], v.instance.b);
    if (v.instance.weight) {
        paths.push_back(dir / (stem + "-m.txt"));
        write_matrix_file(paths[2], *v.instance.weight);
    }
    return paths;
}

}  // namespace detcs::fuzz
