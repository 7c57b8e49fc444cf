#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablelike/model.hpp"

namespace stablelike::mc {

struct SimConfig {
    long n_steps = 10000;
    long n_paths = 200;
    std::uint64_t seed = 42;
    double x0 = 0.0;
    double return_radius = 1.0;
    long burn_in = 0;  // must stay below n_steps
};

void validate(const SimConfig& c);

// Positions are clamped-with-flag at |x| = 1e300; a flagged path freezes at
// the clamp and reports transient-style statistics.
inline constexpr double kOverflowClamp = 1e300;

struct TrajectoryStats {
    long visits_to_ball = 0;               // steps n > burn_in with |X_n| <= radius
    std::optional<long> last_return_step;  // last n >= 1 with |X_n| <= radius
    double max_abs = 0.0;
    double final_abs = 0.0;
    bool overflowed = false;
};

// Streams one trajectory (no full-path storage); the random stream is
// mix64(seed, path_index), so results do not depend on scheduling.
TrajectoryStats simulate_path(const model::StableLikeModel& m, const SimConfig& c,
                              long path_index);

struct EnsembleSummary {
    long n_paths = 0;
    long n_steps = 0;
    long burn_in = 0;
    std::uint64_t seed = 0;
    double x0 = 0.0;
    double return_radius = 0.0;
    double mean_visits = 0.0;
    double median_visits = 0.0;
    long paths_with_return = 0;
    std::optional<double> mean_last_return;
    std::optional<double> median_last_return;
    double mean_max_abs = 0.0;
    double median_max_abs = 0.0;
    double mean_final_abs = 0.0;
    double median_final_abs = 0.0;
    double recurrence_score = 0.0;  // mean visits / (n_steps - burn_in)
    long overflow_count = 0;
};

struct EnsembleResult {
    std::vector<TrajectoryStats> paths;  // in path-index order
    EnsembleSummary summary;
};

EnsembleResult run_ensemble(const model::StableLikeModel& m, const SimConfig& c,
                            int threads = 0);

inline EnsembleSummary ensemble_stats(const model::StableLikeModel& m,
                                      const SimConfig& c, int threads = 0) {
    return run_ensemble(m, c, threads).summary;
}

// canonical JSON / CSV renderings
std::string summary_to_json(const EnsembleSummary& s);
std::string paths_to_csv(const std::vector<TrajectoryStats>& paths);

}  // namespace stablelike::mc
