#include "stablelike/drift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "stablelike/constants.hpp"
#include "stablelike/errors.hpp"
#include "stablelike/manifest.hpp"
#include "stablelike/parallel.hpp"
#include "stablelike/quadrature.hpp"
#include "stablelike/specfun.hpp"

namespace stablelike::drift {

namespace {

using model::JumpSpec;

// V(x+y) - V(x) for x >= 0, evaluated in cancellation-free forms.
double dv_log(double x, double y) {
    const double s = 1.0 + x;
    if (y >= -x) return std::log1p(y / s);
    return std::log((1.0 - x - y) / s);
}

double dv_pow(double x, double y, double beta) {
    const double s = 1.0 + x;
    const double sb = std::pow(s, -beta);
    if (y >= -x) return -sb * std::expm1(-beta * std::log1p(y / s));
    return sb - std::pow(1.0 - x - y, -beta);
}

// int_U^inf u^(-a-1) ln(1 + u/S) du  (far right tail, log test)
double tail_log_right(double U, double S, double a) {
    const double f = specfun::gauss_2f1(1.0, a, a + 1.0, -S / U);
    return std::pow(U, -a) / a * (std::log1p(U / S) + f / a);
}

// int_U^inf u^(-a-1) [ln(u + q) - ln(s)] du with |q| <= U/2
double tail_log_left(double U, double q, double s, double a) {
    const double ua = std::pow(U, -a);
    const double f = specfun::gauss_2f1(1.0, a + 1.0, a + 2.0, -q / U);
    return ua * std::log(U / s) / a + ua / (a * a) + ua * std::log1p(q / U) / a -
           q / a * std::pow(U, -a - 1.0) / (a + 1.0) * f;
}

// int_U^inf u^(-a-1) (S + u)^(-beta) du via the hypergeometric antiderivative
// -2F1(-a, beta, 1-a; -u/S) / (a u^a S^beta), whose limit at infinity is
// -Gamma(1-a)Gamma(a+beta) / (Gamma(beta) a S^(a+beta)).
double tail_pow_integral(double U, double S, double a, double beta) {
    const double f = specfun::gauss_2f1(-a, beta, 1.0 - a, -U / S);
    const double at_u = f / (a * std::pow(U, a) * std::pow(S, beta));
    const double k_inf =
        std::exp(specfun::ln_gamma(1.0 - a) + specfun::ln_gamma(a + beta) -
                 specfun::ln_gamma(beta));
    const double at_inf = -k_inf / (a * std::pow(S, a + beta));
    return at_inf + at_u;
}

// int_U^inf u^(-a-1) (u + q)^(-beta) du with |q| <= U/2
double tail_pow_left(double U, double q, double a, double beta) {
    const double f = specfun::gauss_2f1(beta, a + beta, a + beta + 1.0, -q / U);
    return std::pow(U, -(a + beta)) / (a + beta) * f;
}

struct TieredQuad {
    double value;
    double error;
    bool degraded;  // tolerance was widened after the first pass failed
};

TieredQuad integrate_tiered(const std::function<double(double)>& f,
                            const std::vector<double>& pts) {
    try {
        const auto r = quad::integrate_segments(f, pts, 1e-280, 1e-11, 30000);
        return {r.value, r.abs_error, false};
    } catch (const NumericalError&) {
        const auto r = quad::integrate_segments(f, pts, 1e-280, 1e-6, 60000);
        return {r.value, r.abs_error, true};
    }
}

std::vector<double> drift_breakpoints(const JumpSpec& spec, double x, double yl,
                                      double yr) {
    std::set<double> pts{-yl, yr};
    const auto add = [&](double v) {
        if (v > -yl && v < yr) pts.insert(v);
    };
    add(-x);  // kink of V(x+y)
    add(0.0);
    add(1.0);
    add(-1.0);
    add(spec.tail_start_pos);
    add(-spec.tail_start_neg);
    for (double t = std::max(spec.tail_start_pos, 1.0); 2.0 * t < yr; t *= 2.0)
        add(2.0 * t);
    for (double t = std::max(spec.tail_start_neg, 1.0); 2.0 * t < yl; t *= 2.0)
        add(-2.0 * t);
    // refine around the kink where the log test has its V-shaped minimum
    if (x > 2.0) {
        add(-0.5 * x);
        add(-2.0 * x);
    }
    return {pts.begin(), pts.end()};
}

DriftValue drift_positive_x(const JumpSpec& spec, const TestFunction& test,
                            double x) {
    const double s = 1.0 + x;
    const double d = spec.tail_shift;
    // far-tail cutoffs: inside the exact power-law zones and far enough that
    // the closed-form argument ratios stay within [-1/2, 1/2]
    const double yr = std::max(spec.tail_start_pos, 2.0 * s + 2.0 * std::abs(d));
    const double yl = std::max(spec.tail_start_neg, 2.0 * s + 2.0 * std::abs(d));

    const auto dv = [&](double y) {
        return test.kind == TestKind::RecurrenceLog ? dv_log(x, y)
                                                    : dv_pow(x, y, test.beta);
    };
    const auto integrand = [&](double y) { return spec.density(y) * dv(y); };
    const TieredQuad core =
        integrate_tiered(integrand, drift_breakpoints(spec, x, yl, yr));

    // closed-form far tails; substitution u = y - d (right), u = d - y (left)
    const double ap = spec.alpha_pos, an = spec.alpha_neg;
    const double ur = yr - d;
    const double ul = yl + d;
    double tails = 0.0;
    if (test.kind == TestKind::RecurrenceLog) {
        const double s_right = s + d;  // ln(1+x+y) = ln(s_right + u)
        const double right =
            spec.coeff_pos *
            (tail_log_right(ur, s_right, ap) +
             std::log1p(d / s) * std::pow(ur, -ap) / ap);
        const double q_left = 2.0 - s - d;  // ln(1+|x+y|) = ln(u + q_left)
        const double left = spec.coeff_neg * tail_log_left(ul, q_left, s, an);
        tails = right + left;
    } else {
        const double beta = test.beta;
        const double sb = std::pow(s, -beta);
        const double s_right = s + d;
        const double right =
            spec.coeff_pos * (sb * std::pow(ur, -ap) / ap -
                              tail_pow_integral(ur, s_right, ap, beta));
        const double q_left = 2.0 - s - d;
        const double left =
            spec.coeff_neg * (sb * std::pow(ul, -an) / an -
                              tail_pow_left(ul, q_left, an, beta));
        tails = right + left;
    }
    const double value = core.value + tails;
    const double err = core.error + 1e-13 * std::abs(tails);
    return {value, err};
}

JumpSpec escape_view(const model::StableLikeModel& m, double x) {
    JumpSpec spec = model::resolve(m, x);
    if (!(std::max(spec.alpha_pos, spec.alpha_neg) < 2.0))
        throw DomainError("drift requires alpha(x) < 2 (power tails)");
    if (x < 0.0) spec = spec.mirrored();
    return spec;
}

}  // namespace

DriftValue drift(const model::StableLikeModel& m, const TestFunction& test, double x) {
    if (test.kind == TestKind::TransiencePower &&
        !(test.beta > 0.0 && test.beta < 1.0))
        throw DomainError("transience test requires beta in (0, 1)");
    const JumpSpec spec = escape_view(m, x);
    return drift_positive_x(spec, test, std::abs(x));
}

double scaled_drift_recurrence(const model::StableLikeModel& m, double x) {
    const JumpSpec spec = escape_view(m, x);
    if (!(spec.alpha_pos > 1.0))
        throw DomainError("scaled recurrence drift requires alpha(x) > 1");
    const DriftValue d =
        drift_positive_x(spec, {TestKind::RecurrenceLog, 0.0}, std::abs(x));
    const double s = 1.0 + std::abs(x);
    return std::pow(s, spec.alpha_pos) / spec.coeff_pos * d.value;
}

double scaled_drift_transience(const model::StableLikeModel& m, double x, double beta) {
    const JumpSpec spec = escape_view(m, x);
    if (!(spec.alpha_pos < 1.0))
        throw DomainError("scaled transience drift requires alpha(x) < 1");
    if (!(beta > 0.0 && beta < 1.0 - spec.alpha_pos))
        throw DomainError("beta must lie in (0, 1 - alpha(x))");
    const DriftValue d =
        drift_positive_x(spec, {TestKind::TransiencePower, beta}, std::abs(x));
    const double ax = spec.alpha_pos;
    return ax * std::pow(std::abs(x), ax + beta) / spec.coeff_pos * d.value;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::RecurrentEvidence: return "RecurrentEvidence";
        case Verdict::TransientEvidence: return "TransientEvidence";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

std::vector<double> signed_sorted_grid(const std::vector<double>& grid) {
    std::set<double> pts;
    for (double x : grid) {
        if (!(std::abs(x) > 0.0)) throw DomainError("grid points must be non-zero");
        pts.insert(x);
        pts.insert(-x);
    }
    return {pts.begin(), pts.end()};
}

}  // namespace

DriftReport classify(const model::StableLikeModel& m, std::vector<double> beta_candidates,
                     std::vector<double> grid, double radius, double margin,
                     int threads) {
    if (grid.size() < 2) throw DomainError("classify needs a grid of at least 2 points");
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    const std::vector<double> xs = signed_sorted_grid(grid);
    double max_abs = 0.0;
    for (double x : xs) max_abs = std::max(max_abs, std::abs(x));
    if (max_abs < 100.0 * radius)
        throw DomainError("grid must span at least two decades beyond the radius");

    double a_min = std::numeric_limits<double>::infinity();
    double a_max = 0.0;
    for (double x : xs) {
        const JumpSpec spec = model::resolve(m, x);
        const double ax = spec.alpha_at();
        a_min = std::min(a_min, ax);
        a_max = std::max(a_max, ax);
    }
    if (!(a_min > 1.0) && !(a_max < 1.0))
        throw MixedRegimeError(
            "alpha(x) straddles 1 on the grid; the drift theorems do not cover "
            "the mixed regime");
    if (!(a_max < 2.0)) throw DomainError("alpha(x) must stay below 2 on the grid");

    DriftReport rep;
    rep.x_grid = xs;
    rep.radius = radius;
    rep.note =
        "numerical evidence on a finite grid; asymptotic conditions are not "
        "certified";

    const double alpha_inf = model::alpha_inf_estimate(m, xs, radius);
    const double alpha_sup = model::alpha_sup_estimate(m, xs, radius);

    if (a_min > 1.0) {
        // recurrence route
        rep.test = {TestKind::RecurrenceLog, 0.0};
        const double margin_eff =
            margin > 0.0
                ? margin
                : 0.05 * constants::recurrence_constant(alpha_inf).value;
        rep.margin = margin_eff;
        rep.raw_drift.resize(xs.size());
        rep.scaled_drift.resize(xs.size());
        parallel_for(xs.size(), threads, [&](std::size_t i) {
            const JumpSpec spec = escape_view(m, xs[i]);
            const DriftValue d = drift_positive_x(
                spec, {TestKind::RecurrenceLog, 0.0}, std::abs(xs[i]));
            rep.raw_drift[i] = d.value;
            rep.scaled_drift[i] = std::pow(1.0 + std::abs(xs[i]), spec.alpha_pos) /
                                  spec.coeff_pos * d.value;
        });
        bool all_negative = true;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::abs(xs[i]) >= radius && !(rep.scaled_drift[i] <= -margin_eff))
                all_negative = false;
        rep.verdict =
            all_negative ? Verdict::RecurrentEvidence : Verdict::Inconclusive;
        rep.conditions.push_back(model::report_condition_13(m, xs, radius, margin_eff));
        rep.conditions.push_back(model::report_condition_15(m, xs, radius, margin_eff));
        const double d_min = 0.05;
        rep.condition_15_values.resize(xs.size());
        parallel_for(xs.size(), threads, [&](std::size_t i) {
            rep.condition_15_values[i] = model::condition_truncated_log(m, xs[i], d_min);
        });
        return rep;
    }

    // transience route
    if (beta_candidates.empty()) beta_candidates = {0.25, 0.1, 0.05};
    std::vector<double> usable;
    for (double b : beta_candidates)
        if (b > 0.0 && b < 1.0 - a_max) usable.push_back(b);
    if (usable.empty())
        throw DomainError("no beta candidate lies in (0, 1 - max alpha)");

    rep.verdict = Verdict::Inconclusive;
    bool first = true;
    for (double beta : usable) {
        const double margin_eff =
            margin > 0.0
                ? margin
                : 0.05 * constants::transience_constant(alpha_sup, beta).value;
        std::vector<double> raw(xs.size()), scaled(xs.size());
        parallel_for(xs.size(), threads, [&](std::size_t i) {
            const JumpSpec spec = escape_view(m, xs[i]);
            const DriftValue d = drift_positive_x(
                spec, {TestKind::TransiencePower, beta}, std::abs(xs[i]));
            raw[i] = d.value;
            scaled[i] = spec.alpha_pos *
                        std::pow(std::abs(xs[i]), spec.alpha_pos + beta) /
                        spec.coeff_pos * d.value;
        });
        bool all_positive = true;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::abs(xs[i]) >= radius && !(scaled[i] >= margin_eff))
                all_positive = false;
        if (first || all_positive) {
            rep.test = {TestKind::TransiencePower, beta};
            rep.beta = beta;
            rep.margin = margin_eff;
            rep.raw_drift = std::move(raw);
            rep.scaled_drift = std::move(scaled);
            first = false;
        }
        if (all_positive) {
            rep.verdict = Verdict::TransientEvidence;
            break;
        }
    }
    rep.conditions.push_back(
        model::report_condition_14(m, xs, radius, 0.0, rep.beta));
    rep.conditions.push_back(
        model::report_condition_17(m, xs, radius, 0.0, rep.beta));
    return rep;
}

namespace {

nlohmann::json condition_to_json(const model::ConditionReport& c) {
    nlohmann::json j;
    j["kind"] = c.kind;
    j["x_grid"] = c.x_grid;
    j["values"] = c.values;
    j["threshold"] = c.threshold;
    j["margin"] = c.margin;
    j["radius"] = c.radius;
    j["direction"] = c.direction;
    j["satisfied"] = c.satisfied;
    for (const auto& [key, series] : c.extra) j["extra"][key] = series;
    return j;
}

}  // namespace

std::string report_to_json(const DriftReport& r) {
    nlohmann::json j;
    j["test"] = r.test.kind == TestKind::RecurrenceLog ? "recurrence_log"
                                                       : "transience_power";
    if (r.test.kind == TestKind::TransiencePower) j["beta"] = r.beta;
    j["x_grid"] = r.x_grid;
    j["raw_drift"] = r.raw_drift;
    j["scaled_drift"] = r.scaled_drift;
    j["radius"] = r.radius;
    j["margin"] = r.margin;
    j["verdict"] = verdict_name(r.verdict);
    j["note"] = r.note;
    for (const auto& c : r.conditions) j["conditions"].push_back(condition_to_json(c));
    if (!r.condition_15_values.empty())
        j["condition_15_values"] = r.condition_15_values;
    return manifest::canonical_dump(j, 2);
}

std::string report_to_csv(const DriftReport& r) {
    std::string out;
    char line[256];
    const model::ConditionReport* c13 = nullptr;
    const model::ConditionReport* c14 = nullptr;
    const model::ConditionReport* c17 = nullptr;
    for (const auto& c : r.conditions) {
        if (c.kind == "mean_drift_13") c13 = &c;
        if (c.kind == "transience_integral_14") c14 = &c;
        if (c.kind == "transience_simple_17") c17 = &c;
    }
    if (r.test.kind == TestKind::RecurrenceLog) {
        out = "x,raw_drift,scaled_drift,condition_13,condition_15_delta_trend\n";
        for (std::size_t i = 0; i < r.x_grid.size(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          r.x_grid[i], r.raw_drift[i], r.scaled_drift[i],
                          c13 ? c13->values[i] : 0.0,
                          i < r.condition_15_values.size() ? r.condition_15_values[i]
                                                           : 0.0);
            out += line;
        }
    } else {
        out = "x,raw_drift,scaled_drift,condition_14,condition_17_lhs,condition_17_rhs\n";
        for (std::size_t i = 0; i < r.x_grid.size(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          r.x_grid[i], r.raw_drift[i], r.scaled_drift[i],
                          c14 ? c14->values[i] : 0.0, c17 ? c17->values[i] : 0.0,
                          c17 ? c17->threshold : 0.0);
            out += line;
        }
    }
    return out;
}

}  // namespace stablelike::drift
