#include "arfima/sim_study.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "arfima/process.hpp"

namespace arfima {

std::string Procedure::label() const {
    std::ostringstream os;
    if (kind == Kind::FixedBound) {
        os << "fixed(" << d_bar << ")";
    } else if (epsilon == 0.5) {
        os << "BND";
    } else {
        os << "BFR(" << epsilon << ")";
    }
    return os.str();
}

void StudyConfig::validate() const {
    std::vector<std::string> problems;
    if (d_values.empty()) problems.push_back("d_values must not be empty");
    if (n_values.empty()) problems.push_back("n_values must not be empty");
    for (int n : n_values) {
        if (n < 32) problems.push_back("n = " + std::to_string(n) + " is too short");
    }
    if (replications < 1) problems.push_back("replications must be at least 1");
    if (objectives.empty()) problems.push_back("objectives must not be empty");
    if (procedures.empty()) problems.push_back("procedures must not be empty");
    for (const auto& proc : procedures) {
        if (proc.kind == Procedure::Kind::FixedBound && proc.d_bar < 0.5) {
            problems.push_back("fixed d_bar below 0.5");
        }
        if (proc.kind == Procedure::Kind::Adaptive &&
            !(proc.epsilon > 0.0 && proc.epsilon <= 0.5)) {
            problems.push_back("epsilon must be in (0, 0.5]");
        }
    }
    for (double d : d_values) {
        if (d >= d_bar_max) problems.push_back("true d >= d_bar_max: cell cannot be estimated");
        if (d <= -1.0) problems.push_back("true d <= -1 is outside the simulable range");
    }
    if (!(delta > 0.0 && delta <= 0.05)) problems.push_back("delta must be in (0, 0.05]");
    if (!(ci_level > 0.0 && ci_level < 1.0)) problems.push_back("ci_level must be in (0,1)");
    if (!problems.empty()) {
        std::string joined = "invalid study configuration:";
        for (const auto& p : problems) joined += "\n  - " + p;
        throw Error(joined);
    }
}

namespace {

std::uint64_t replication_stream(int d_index, int n_index, int rep) {
    return (static_cast<std::uint64_t>(d_index) << 48) | (static_cast<std::uint64_t>(n_index) << 40) |
           static_cast<std::uint64_t>(rep);
}

ReplicationRecord run_one(const StudyConfig& config, const CellKey& key, int d_index, int n_index,
                          int rep) {
    ReplicationRecord rec;
    rec.rep = rep;
    ArfimaParams truth;
    truth.d = key.d;
    truth.sigma2 = 1.0;
    truth.mean_spec = MeanSpec::none();  // mu = 0, but treated as unknown below
    const Vector y =
        simulate_arfima(truth, static_cast<std::size_t>(key.n), config.seed,
                        replication_stream(d_index, n_index, rep));

    const MeanSpec mean = MeanSpec::constant();
    const Order order{0, 0};
    try {
        FitResult fit;
        double d_bar_used = 0.0;
        if (key.procedure.kind == Procedure::Kind::FixedBound) {
            fit = fit_bounded(y, mean, order, key.procedure.d_bar, key.objective);
            d_bar_used = key.procedure.d_bar;
        } else {
            AdaptiveConfig acfg;
            acfg.delta = config.delta;
            acfg.epsilon = key.procedure.epsilon;
            acfg.objective = key.objective;
            acfg.d_bar_max = config.d_bar_max;
            const AdaptiveTrace trace = adaptive_fit(y, mean, order, acfg);
            if (!trace.final_fit) throw OptimFailed("adaptive loop produced no fit");
            fit = *trace.final_fit;
            d_bar_used = trace.d_bar_final;
        }
        rec.d_hat = fit.d_hat;
        rec.sigma2_hat = fit.sigma2_hat;
        rec.d_bar_final = d_bar_used;
        const IntervalEstimate ci = confidence_interval(y, mean, order, d_bar_used, key.objective,
                                                        fit, config.ci_level);
        rec.se = ci.se;
        rec.lower = ci.lower;
        rec.upper = ci.upper;
    } catch (const Error&) {
        rec.failed = true;
    }
    return rec;
}

}  // namespace

CellSummary run_cell(const StudyConfig& config, const CellKey& key, int d_index, int n_index,
                     std::vector<ReplicationRecord>* raw) {
    const int reps = config.replications;
    std::vector<ReplicationRecord> records(static_cast<std::size_t>(reps));

    int workers = config.parallelism > 0 ? config.parallelism
                                         : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, reps));
    std::atomic<int> next{0};
    const auto worker = [&] {
        while (true) {
            const int rep = next.fetch_add(1);
            if (rep >= reps) break;
            records[static_cast<std::size_t>(rep)] = run_one(config, key, d_index, n_index, rep);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CellSummary cell;
    cell.key = key;
    cell.requested = reps;
    double sum_d = 0.0;
    double sum_d2 = 0.0;
    double sum_se = 0.0;
    double sum_cover = 0.0;
    double sum_s2 = 0.0;
    double sum_dbar = 0.0;
    for (const auto& rec : records) {
        if (rec.failed) {
            ++cell.failure_count;
            continue;
        }
        ++cell.successes;
        sum_d += rec.d_hat;
        sum_d2 += rec.d_hat * rec.d_hat;
        sum_se += rec.se;
        sum_cover += (rec.lower <= key.d && key.d <= rec.upper) ? 1.0 : 0.0;
        sum_s2 += rec.sigma2_hat;
        sum_dbar += rec.d_bar_final;
    }
    if (cell.successes > 0) {
        const double ns = static_cast<double>(cell.successes);
        cell.mean_d_hat = sum_d / ns;
        cell.bias = cell.mean_d_hat - key.d;
        cell.abs_bias = std::abs(cell.bias);
        const double var = std::max(0.0, sum_d2 / ns - cell.mean_d_hat * cell.mean_d_hat);
        cell.mc_sd = std::sqrt(var);
        cell.rmse = std::sqrt(cell.bias * cell.bias + var);
        cell.mean_se = sum_se / ns;
        cell.coverage = sum_cover / ns;
        cell.mean_sigma2_hat = sum_s2 / ns;
        cell.mean_d_bar_final = sum_dbar / ns;
    }
    if (raw) *raw = std::move(records);
    return cell;
}

std::vector<CellSummary> run_study(const StudyConfig& config, const CellCallback& on_cell) {
    config.validate();
    std::vector<CellSummary> out;
    for (std::size_t di = 0; di < config.d_values.size(); ++di) {
        for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
            for (const auto& objective : config.objectives) {
                for (const auto& procedure : config.procedures) {
                    CellKey key;
                    key.d = config.d_values[di];
                    key.n = config.n_values[ni];
                    key.objective = objective;
                    key.procedure = procedure;
                    std::vector<ReplicationRecord> raw;
                    CellSummary cell = run_cell(config, key, static_cast<int>(di),
                                                static_cast<int>(ni), &raw);
                    if (on_cell) on_cell(cell, raw);
                    out.push_back(std::move(cell));
                }
            }
        }
    }
    return out;
}

}  // namespace arfima
