#pragma once

#include <string>
#include <vector>

#include "stablelike/model.hpp"

namespace stablelike::drift {

enum class TestKind { RecurrenceLog, TransiencePower };

// V(x) = ln(1+|x|) (recurrence) or V(x) = 1 - (1+|x|)^-beta (transience).
struct TestFunction {
    TestKind kind = TestKind::RecurrenceLog;
    double beta = 0.0;  // TransiencePower only
};

struct DriftValue {
    double value = 0.0;
    double abs_error = 0.0;
};

// Delta(x) = int f_x(y) [V(x+y) - V(x)] dy. The integral is split at the
// kink y = -x and into core/tail zones; the far tails, where the density is
// exactly a power law, are evaluated in closed form through gauss_2f1.
DriftValue drift(const model::StableLikeModel& m, const TestFunction& test, double x);

// ((1+|x|)^alpha(x) / c(x)) * Delta_log(x)
double scaled_drift_recurrence(const model::StableLikeModel& m, double x);

// (alpha(x) |x|^(alpha(x)+beta) / c(x)) * Delta_beta(x)
double scaled_drift_transience(const model::StableLikeModel& m, double x, double beta);

enum class Verdict { RecurrentEvidence, TransientEvidence, Inconclusive };

const char* verdict_name(Verdict v);

struct DriftReport {
    TestFunction test;
    std::vector<double> x_grid;  // signed, ascending
    std::vector<double> raw_drift;
    std::vector<double> scaled_drift;
    double radius = 0.0;
    double margin = 0.0;
    double beta = 0.0;  // winning candidate for transience reports
    Verdict verdict = Verdict::Inconclusive;
    std::vector<model::ConditionReport> conditions;
    // per-x value of the (1.5) check at the smallest delta (recurrence side)
    std::vector<double> condition_15_values;
    std::string note;
};

// Runs the recurrence route when inf alpha > 1 over the grid, the transience
// route over beta_candidates when sup alpha < 1, and throws MixedRegimeError
// otherwise. A non-positive margin selects the defaults 0.05 R(alpha_inf) /
// 0.05 T(alpha_sup, beta). The grid is mirrored to both signs; it must reach
// at least two decades beyond the radius.
DriftReport classify(const model::StableLikeModel& m, std::vector<double> beta_candidates,
                     std::vector<double> grid, double radius, double margin = 0.0,
                     int threads = 0);

std::string report_to_json(const DriftReport& r);
std::string report_to_csv(const DriftReport& r);

}  // namespace stablelike::drift
