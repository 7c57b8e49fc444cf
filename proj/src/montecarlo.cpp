#include "stablelike/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stablelike/errors.hpp"
#include "stablelike/manifest.hpp"
#include "stablelike/parallel.hpp"
#include "stablelike/rng.hpp"

namespace stablelike::mc {

void validate(const SimConfig& c) {
    if (!(c.n_steps > 0)) throw DomainError("n_steps must be positive");
    if (!(c.n_paths > 0)) throw DomainError("n_paths must be positive");
    if (!(c.return_radius > 0.0)) throw DomainError("return_radius must be positive");
    if (!(c.burn_in >= 0 && c.burn_in < c.n_steps))
        throw DomainError("burn_in must lie in [0, n_steps)");
    if (!std::isfinite(c.x0)) throw DomainError("x0 must be finite");
}

TrajectoryStats simulate_path(const model::StableLikeModel& m, const SimConfig& c,
                              long path_index) {
    validate(c);
    RandomStream rng(mix64(c.seed, static_cast<std::uint64_t>(path_index)));
    TrajectoryStats stats;
    double x = c.x0;
    stats.max_abs = std::abs(x);
    for (long n = 1; n <= c.n_steps; ++n) {
        if (!stats.overflowed) {
            x += model::jump_sample(m, x, rng);
            if (std::abs(x) > kOverflowClamp || !std::isfinite(x)) {
                x = std::copysign(kOverflowClamp, x);
                stats.overflowed = true;  // frozen at the clamp from here on
            }
        }
        const double ax = std::abs(x);
        stats.max_abs = std::max(stats.max_abs, ax);
        if (ax <= c.return_radius) {
            stats.last_return_step = n;
            if (n > c.burn_in) ++stats.visits_to_ball;
        }
    }
    stats.final_abs = std::abs(x);
    return stats;
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EnsembleResult run_ensemble(const model::StableLikeModel& m, const SimConfig& c,
                            int threads) {
    validate(c);
    EnsembleResult result;
    result.paths.resize(static_cast<std::size_t>(c.n_paths));
    parallel_for(static_cast<std::size_t>(c.n_paths), threads, [&](std::size_t i) {
        result.paths[i] = simulate_path(m, c, static_cast<long>(i));
    });

    EnsembleSummary& s = result.summary;
    s.n_paths = c.n_paths;
    s.n_steps = c.n_steps;
    s.burn_in = c.burn_in;
    s.seed = c.seed;
    s.x0 = c.x0;
    s.return_radius = c.return_radius;

    std::vector<double> visits, returns, maxs, finals;
    for (const TrajectoryStats& p : result.paths) {  // path-index order
        visits.push_back(static_cast<double>(p.visits_to_ball));
        if (p.last_return_step) {
            returns.push_back(static_cast<double>(*p.last_return_step));
            ++s.paths_with_return;
        }
        maxs.push_back(p.max_abs);
        finals.push_back(p.final_abs);
        if (p.overflowed) ++s.overflow_count;
    }
    const auto mean_of = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double t : v) acc += t;
        return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
    };
    s.mean_visits = mean_of(visits);
    s.median_visits = median_of(visits);
    if (!returns.empty()) {
        s.mean_last_return = mean_of(returns);
        s.median_last_return = median_of(returns);
    }
    s.mean_max_abs = mean_of(maxs);
    s.median_max_abs = median_of(maxs);
    s.mean_final_abs = mean_of(finals);
    s.median_final_abs = median_of(finals);
    s.recurrence_score =
        s.mean_visits / static_cast<double>(c.n_steps - c.burn_in);
    return result;
}

std::string summary_to_json(const EnsembleSummary& s) {
    nlohmann::json j;
    j["n_paths"] = s.n_paths;
    j["n_steps"] = s.n_steps;
    j["burn_in"] = s.burn_in;
    j["seed"] = s.seed;
    j["x0"] = s.x0;
    j["return_radius"] = s.return_radius;
    j["mean_visits"] = s.mean_visits;
    j["median_visits"] = s.median_visits;
    j["paths_with_return"] = s.paths_with_return;
    j["mean_last_return"] =
        s.mean_last_return ? nlohmann::json(*s.mean_last_return) : nlohmann::json();
    j["median_last_return"] = s.median_last_return
                                  ? nlohmann::json(*s.median_last_return)
                                  : nlohmann::json();
    j["mean_max_abs"] = s.mean_max_abs;
    j["median_max_abs"] = s.median_max_abs;
    j["mean_final_abs"] = s.mean_final_abs;
    j["median_final_abs"] = s.median_final_abs;
    j["recurrence_score"] = s.recurrence_score;
    j["overflow_count"] = s.overflow_count;
    j["note"] =
        "finite-horizon statistics are recurrence evidence, not proof; "
        "recurrence in the theorems is a statement about all sets of positive "
        "measure";
    return manifest::canonical_dump(j, 2);
}

std::string paths_to_csv(const std::vector<TrajectoryStats>& paths) {
    std::string out = "path_index,visits,last_return,max_abs,final_abs,overflow_flag\n";
    char line[160];
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const TrajectoryStats& p = paths[i];
        std::snprintf(line, sizeof line, "%zu,%ld,%ld,%.17g,%.17g,%d\n", i,
                      p.visits_to_ball,
                      p.last_return_step ? *p.last_return_step : -1L, p.max_abs,
                      p.final_abs, p.overflowed ? 1 : 0);
        out += line;
    }
    return out;
}

}  // namespace stablelike::mc
