#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stablelike/expr.hpp"
#include "stablelike/rng.hpp"
#include "stablelike/stable.hpp"

namespace stablelike::model {

// Jump family with exact S_alpha(x)(skew(x), scale(x), shift(x)) densities.
struct ExactStableFamily {
    expr::Profile alpha;
    expr::Profile skew;
    expr::Profile scale;
    expr::Profile shift;
};

// Jump family with exact power-law tails
//   f_x(y) = c+-(x) |y|^(-alpha+-(x)-1) for +-y >= y0(x)
// and a constant plateau on (-y0, y0). The core radius y0(x) and plateau
// height are solved jointly so the total mass is exactly 1, with the plateau
// pinned to the mean of the two tail junction values; core_halfwidth is a
// floor for y0 (when it binds, the plateau height comes from normalization
// alone).
struct ParetoTailFamily {
    expr::Profile alpha_plus;
    expr::Profile alpha_minus;
    expr::Profile c_plus;
    expr::Profile c_minus;
    double core_halfwidth = 1.0;
};

using DensityFamily = std::variant<ExactStableFamily, ParetoTailFamily>;

struct StableLikeModel {
    DensityFamily family;
    double k_cutoff = 1.0;
    double l_cutoff = 1.0;
};

// The jump density f_x resolved at one state x. Beyond the per-side start
// radii the density is exactly
//   f(y) = coeff_pos (y - tail_shift)^(-alpha_pos-1),   y >= tail_start_pos,
//   f(y) = coeff_neg |y - tail_shift|^(-alpha_neg-1),   y <= -tail_start_neg.
struct JumpSpec {
    double x = 0.0;
    double alpha_pos = 0.0, alpha_neg = 0.0;
    double coeff_pos = 0.0, coeff_neg = 0.0;
    double tail_start_pos = 0.0, tail_start_neg = 0.0;
    double tail_shift = 0.0;
    std::function<double(double)> density;

    // ParetoTail details (0 when not applicable)
    double core_radius = 0.0;
    double plateau_height = 0.0;

    std::shared_ptr<const stable::StableDensity> exact;  // ExactStable only

    // escape-direction tail exponent / coefficient for the condition checks
    double alpha_at() const { return x >= 0.0 ? alpha_pos : alpha_neg; }
    double coeff_at() const { return x >= 0.0 ? coeff_pos : coeff_neg; }

    // the same jump law viewed through y -> -y (swaps the tails)
    JumpSpec mirrored() const;
};

// Evaluates profiles at x and builds the density; throws ProfileRangeError
// when a profile leaves its admissible range at this x.
JumpSpec resolve(const StableLikeModel& m, double x);

double jump_density(const StableLikeModel& m, double x, double y);
double jump_sample(const StableLikeModel& m, double x, RandomStream& rng);

// ---- condition quantities --------------------------------------------------

// sgn(x) |x|^(alpha(x)-1)/c(x) * E[jump], the per-x quantity of the mean
// drift condition; requires alpha(x) > 1.
double condition_mean_drift(const StableLikeModel& m, double x);

// ((1+|x|)^alpha(x)/c(x)) int_{-d(1+|x|)}^{d(1+|x|)} ln(1+sgn(x) y/(1+|x|)) f_x(y) dy
double condition_truncated_log(const StableLikeModel& m, double x, double delta);

// (alpha(x)|x|^alpha(x)/c(x)) int_{-a}^{a} (1-(1+sgn(x) y/(1+|x|))^-beta) f_x(y) dy;
// requires alpha(x) < 1.
double condition_transience_integral(const StableLikeModel& m, double x, double a,
                                     double beta);

struct SimpleConditionPair {
    double lhs;  // alpha(x) |x|^(alpha(x)-1) / c(x)
    double rhs;  // T(alpha_sup, beta) / (a0 beta)
};
// alpha_sup is the limsup estimate (max of alpha over the working grid
// beyond the report radius); requires alpha(x) < 1.
SimpleConditionPair condition_transience_simple(const StableLikeModel& m, double x,
                                                double beta, double a0,
                                                double alpha_sup);

// ---- uniformity diagnostic (C3) ---------------------------------------------

struct TailUniformityRow {
    double y;
    double sup_deviation;  // sup over x and both sides of |f_x(+-y) y^(a+1)/c - 1|
};

struct TailUniformityTable {
    std::vector<TailUniformityRow> rows;
    bool non_increasing = true;
};

// x_grid entries must satisfy |x| > m.k_cutoff; y_grid must be increasing
// and positive.
TailUniformityTable check_tail_uniformity(const StableLikeModel& m,
                                          const std::vector<double>& x_grid,
                                          const std::vector<double>& y_grid);

// ---- condition reports -------------------------------------------------------

struct ConditionReport {
    std::string kind;        // "mean_drift_13", "truncated_log_15",
                             // "transience_integral_14", "transience_simple_17"
    std::vector<double> x_grid;
    std::vector<double> values;
    double threshold = 0.0;
    double margin = 0.0;
    double radius = 0.0;
    std::string direction;   // values must stay "below" or "above" threshold
    bool satisfied = false;
    // auxiliary series, e.g. the delta trend of the truncated-log check
    std::map<std::string, std::vector<double>> extra;
};

ConditionReport report_condition_13(const StableLikeModel& m,
                                    const std::vector<double>& grid, double radius,
                                    double margin);
ConditionReport report_condition_15(const StableLikeModel& m,
                                    const std::vector<double>& grid, double radius,
                                    double margin,
                                    const std::vector<double>& deltas = {0.5, 0.2, 0.1,
                                                                         0.05});
ConditionReport report_condition_14(const StableLikeModel& m,
                                    const std::vector<double>& grid, double radius,
                                    double margin, double beta, double a0 = 1.0);
ConditionReport report_condition_17(const StableLikeModel& m,
                                    const std::vector<double>& grid, double radius,
                                    double margin, double beta, double a0 = 1.0);

// min / max of the escape-direction alpha over grid points with |x| >= radius
// (over the whole grid when radius exceeds every |x|).
double alpha_inf_estimate(const StableLikeModel& m, const std::vector<double>& grid,
                          double radius);
double alpha_sup_estimate(const StableLikeModel& m, const std::vector<double>& grid,
                          double radius);

// ---- config and presets -------------------------------------------------------

// JSON text <-> model; schema documented in the README. Throws ParseError /
// DomainError with context on malformed documents.
StableLikeModel load_config_text(const std::string& json_text);
std::string config_to_text(const StableLikeModel& m);

// Named presets: "sas_const" (alpha), "two_valued" (alpha_minus, alpha_plus),
// "periodic" (base, amplitude). Unknown keys throw DomainError.
StableLikeModel preset(const std::string& name,
                       const std::map<std::string, double>& params = {});

// Desk-scale profile validation over a grid: ranges, and the finite-value
// requirement for index profiles reaching [1, 2) while skew or scale vary.
void validate_profiles(const StableLikeModel& m, const std::vector<double>& grid);

}  // namespace stablelike::model
