#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "detcs/inequality.hpp"
#include "detcs/matrix.hpp"
#include "detcs/random.hpp"

namespace detcs::fuzz {

// ginibre: independent complex normal A, B.
// rank_deficient: A and/or B a product of thin factors (rank < n).
// shared_span: B = A C with C nonsingular.
// weighted: one of the above under a random HPD weight M = G*G + 1e-3 I.
enum class Ensemble { Ginibre, RankDeficient, SharedSpan, Weighted };

inline constexpr std::array<Ensemble, 4> kAllEnsembles{
    Ensemble::Ginibre, Ensemble::RankDeficient, Ensemble::SharedSpan, Ensemble::Weighted};
inline constexpr double kWeightShift = 1e-3;
// Mixing matrices C for shared spans are redrawn above this condition number.
inline constexpr double kMaxMixingCondition = 1e4;

std::string_view to_string(Ensemble e);
std::optional<Ensemble> ensemble_from_string(std::string_view name);

struct FuzzConfig {
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t m_max = 8;
    std::size_t n_max = 8;
    std::vector<Ensemble> ensembles{kAllEnsembles.begin(), kAllEnsembles.end()};
    double tol = kDefaultTol;
    double subspace_tol = kDefaultSubspaceTol;
    std::filesystem::path replay_dir = "detcs-replay";
};

void validate(const FuzzConfig& config);

struct Instance {
    Ensemble ensemble;
    Ensemble structure;  // differs from ensemble only for Weighted
    ComplexMatrix a;
    ComplexMatrix b;
    std::optional<ComplexMatrix> weight;
};

// Draws one instance of the given structure at a fixed shape.
Instance generate_instance(Ensemble ensemble, Rng& rng, std::size_t m, std::size_t n);
// Draws the shape and instance for one trial; depends only on (seed, ensemble, trial).
Instance generate_trial(Ensemble ensemble, std::uint64_t seed, std::size_t trial,
                        std::size_t m_max, std::size_t n_max);

struct TrialResult {
    std::optional<CsReport> report;
    std::optional<std::string> violation;
    std::optional<double> raw_correlation;
    std::vector<double> profile;
};

// Runs verify_inequality plus the report, unit-bound and ensemble contracts.
TrialResult check_instance(const Instance& instance, const FuzzConfig& config);

struct Violation {
    std::size_t trial;
    std::string message;
    Instance instance;
};

struct EnsembleSummary {
    Ensemble ensemble;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::array<std::size_t, 5> case_counts{};
    // min over numerically evaluated trials of log(rhs) - log(lhs)
    std::optional<double> worst_log_slack;
    std::optional<double> max_raw_correlation;
    std::optional<double> max_profile_entry;
    std::vector<Violation> violations;
};

struct FuzzSummary {
    FuzzConfig config;
    std::vector<EnsembleSummary> ensembles;
    std::size_t total_violations() const;
};

FuzzSummary run_fuzz(const FuzzConfig& config);

// Writes a, b (and m) matrix files for a violation; returns their paths.
std::vector<std::filesystem::path> write_replay(const Violation& v,
                                                const std::filesystem::path& dir);

}  // namespace detcs::fuzz
