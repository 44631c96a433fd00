#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "arfima/adaptive.hpp"
#include "arfima/types.hpp"

namespace arfima {

/// Either a fixed upper bound or an adaptive rule with a tail probability.
struct Procedure {
    enum class Kind { FixedBound, Adaptive };
    Kind kind = Kind::Adaptive;
    double d_bar = 0.5;     // FixedBound
    double epsilon = 0.5;   // Adaptive; 0.5 = BND

    std::string label() const;
};

struct StudyConfig {
    Vector d_values;
    std::vector<int> n_values;
    int replications = 500;
    std::vector<Objective> objectives;
    std::vector<Procedure> procedures;
    std::uint64_t seed = 1;
    int parallelism = 0;  // 0 = hardware concurrency
    double delta = 0.01;
    double ci_level = 0.95;
    double d_bar_max = 5.5;

    void validate() const;  // throws Error listing every problem at once
};

struct CellKey {
    double d = 0.0;
    int n = 0;
    Objective objective;
    Procedure procedure;
};

struct CellSummary {
    CellKey key;
    int requested = 0;
    int successes = 0;
    int failure_count = 0;
    double mean_d_hat = 0.0;
    double bias = 0.0;
    double abs_bias = 0.0;
    double mc_sd = 0.0;   // population standard deviation over successes
    double rmse = 0.0;    // sqrt(bias^2 + mc_sd^2) by construction
    double mean_se = 0.0;
    double coverage = 0.0;  // share of successful CIs containing the true d
    double mean_sigma2_hat = 0.0;
    double mean_d_bar_final = 0.0;
};

struct ReplicationRecord {
    int rep = 0;
    bool failed = false;
    double d_hat = 0.0;
    double se = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double sigma2_hat = 0.0;
    double d_bar_final = 0.0;
};

/// Simulate and fit `replications` ARFIMA(0, d, 0) series with mu and
/// sigma2 treated as unknown. Streams are keyed by (seed, d index, n index,
/// replication) so every estimator sees the same draws and any execution
/// order gives identical output.
CellSummary run_cell(const StudyConfig& config, const CellKey& key, int d_index, int n_index,
                     std::vector<ReplicationRecord>* raw = nullptr);

using CellCallback = std::function<void(const CellSummary&, const std::vector<ReplicationRecord>&)>;

/// Full cartesian sweep; cells run sequentially, replications in parallel.
/// The callback fires after each completed cell (progress + incremental
/// output), in deterministic cell order.
std::vector<CellSummary> run_study(const StudyConfig& config, const CellCallback& on_cell = {});

}  // namespace arfima
