#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stablelike/constants.hpp"
#include "stablelike/drift.hpp"
#include "stablelike/errors.hpp"
#include "stablelike/model.hpp"
#include "stablelike/rng.hpp"
#include "support/oracles.hpp"

using namespace stablelike;
using namespace stablelike::drift;
using namespace stablelike::model;

namespace {

// Blind high-resolution quadrature of int f_x(y)[V(x+y)-V(x)] dy with no
// knowledge of the production splits; analytic remainder beyond L.
double drift_oracle(const StableLikeModel& m, const TestFunction& t, double x) {
    const JumpSpec spec = resolve(m, x);
    const double s = 1.0 + std::abs(x);
    const auto dv = [&](double y) {
        const double v1 = t.kind == TestKind::RecurrenceLog
                              ? std::log1p(std::abs(x + y))
                              : 1.0 - std::pow(1.0 + std::abs(x + y), -t.beta);
        const double v0 = t.kind == TestKind::RecurrenceLog
                              ? std::log(s)
                              : 1.0 - std::pow(s, -t.beta);
        return v1 - v0;
    };
    const auto f = [&](double y) { return spec.density(y) * dv(y); };
    const double L = 4e9 * s;
    double total = oracle::integrate(f, -2.0, 2.0, 1e-14);
    for (double lo = 2.0; lo < L; lo *= 2.0)
        total += oracle::integrate(f, lo, std::min(2.0 * lo, L), 1e-14);
    for (double lo = 2.0; lo < L; lo *= 2.0)
        total += oracle::integrate(f, -std::min(2.0 * lo, L), -lo, 1e-14);
    // analytic remainders: dv is essentially constant out there
    const double ap = spec.alpha_pos, an = spec.alpha_neg;
    if (t.kind == TestKind::RecurrenceLog) {
        // ln((L..)/s) grows too slowly to matter against y^-a-1 only when the
        // product is already below resolution; integrate by parts instead
        const double cr = spec.coeff_pos, cl = spec.coeff_neg;
        total += cr * (std::pow(L, -ap) / ap * std::log(L / s) +
                       std::pow(L, -ap) / (ap * ap));
        total += cl * (std::pow(L, -an) / an * std::log(L / s) +
                       std::pow(L, -an) / (an * an));
    } else {
        const double sb = std::pow(s, -t.beta);
        total += spec.coeff_pos * (sb * std::pow(L, -ap) / ap -
                                   std::pow(L, -(ap + t.beta)) / (ap + t.beta));
        total += spec.coeff_neg * (sb * std::pow(L, -an) / an -
                                   std::pow(L, -(an + t.beta)) / (an + t.beta));
    }
    return total;
}

StableLikeModel pareto_sym(double alpha) {
    return preset("pareto_sym", {{"alpha", alpha}});
}

}  // namespace

TEST_CASE("drift at the origin is positive for the log test") {
    const auto d = drift::drift(pareto_sym(1.5), {TestKind::RecurrenceLog, 0.0}, 0.0);
    CHECK(d.value > 0.0);
    CHECK(d.value == doctest::Approx(0.680716958178).epsilon(1e-9));
}

TEST_CASE("power-test drift is bounded by the range of V") {
    for (double x : {0.0, 17.0, 1e4}) {
        const auto d = drift::drift(pareto_sym(0.5), {TestKind::TransiencePower, 0.25}, x);
        CHECK(d.value > -1.0);
        CHECK(d.value < 1.0);
    }
}

TEST_CASE("log drift turns negative far from the origin") {
    const auto d = drift::drift(pareto_sym(1.5), {TestKind::RecurrenceLog, 0.0}, 1000.0);
    CHECK(d.value < 0.0);
}

TEST_CASE("production drift equals the blind oracle") {
    const TestFunction log_test{TestKind::RecurrenceLog, 0.0};
    const TestFunction pow_test{TestKind::TransiencePower, 0.25};
    RandomStream rng(mix64(2024, 9));
    for (int i = 0; i < 5; ++i) {
        const double x = rng.uniform(-2000.0, 2000.0);
        const auto d = drift::drift(pareto_sym(1.5), log_test, x);
        const double o = drift_oracle(pareto_sym(1.5), log_test, x);
        CHECK(std::abs(d.value - o) < 1e-8 * (1.0 + std::abs(d.value)) + 1e-12);
    }
    for (int i = 0; i < 5; ++i) {
        const double x = rng.uniform(-2000.0, 2000.0);
        const auto d = drift::drift(pareto_sym(0.5), pow_test, x);
        const double o = drift_oracle(pareto_sym(0.5), pow_test, x);
        CHECK(std::abs(d.value - o) < 1e-8 * (1.0 + std::abs(d.value)) + 1e-12);
    }
}

TEST_CASE("scaled recurrence drift: negative with margin on the decade grid") {
    const StableLikeModel m = pareto_sym(1.5);
    const double margin = 0.05 * constants::recurrence_constant(1.5).value;
    for (double x : {1e3, 1e4, 1e5}) {
        const double v = scaled_drift_recurrence(m, x);
        CHECK(v <= -margin);
    }
    CHECK(scaled_drift_recurrence(pareto_sym(1.2), 1e4) < 0.0);
    CHECK(scaled_drift_recurrence(pareto_sym(1.8), 1e4) < 0.0);
}

TEST_CASE("strongly shifted model flips the scaled drift sign") {
    const StableLikeModel m = load_config_text(
        R"json({"family":"exact_stable","alpha":"1.5","skew":"0","scale":"1",
            "shift":"10","k_cutoff":1.0,"l_cutoff":1.0})json");
    CHECK(scaled_drift_recurrence(m, 1e4) > 0.0);
}

TEST_CASE("scaled transience drift: positive with margin; beta boundary shrinks it") {
    const StableLikeModel m = pareto_sym(0.5);
    const double t = constants::transience_constant(0.5, 0.25).value;
    for (double x : {1e3, 1e4, 1e5}) {
        CHECK(scaled_drift_transience(m, x, 0.25) >= 0.05 * t);
    }
    // margin shrinks toward the beta boundary where T -> 0
    CHECK(scaled_drift_transience(m, 1e4, 0.49) <
          scaled_drift_transience(m, 1e4, 0.25));
    CHECK(scaled_drift_transience(m, 1e4, 0.49) > 0.0);
    // near-critical index
    CHECK(scaled_drift_transience(pareto_sym(0.9), 1e4, 0.05) > 0.0);
}

TEST_CASE("scaled drift limits match the threshold constants") {
    // symmetric power-tail family: the transience limit is T(alpha, beta)
    const double t = constants::transience_constant(0.5, 0.25).value;
    CHECK(scaled_drift_transience(pareto_sym(0.5), 1e6, 0.25) ==
          doctest::Approx(t).epsilon(2e-4));
}

TEST_CASE("normalization variant (1+|x|) vs |x| converges and agrees on verdicts") {
    const StableLikeModel m = pareto_sym(1.5);
    double prev = 1e9;
    for (double x : {1e3, 1e4, 1e5}) {
        const double with_one = scaled_drift_recurrence(m, x);
        const double bare = with_one * std::pow(std::abs(x) / (1.0 + std::abs(x)), 1.5);
        const double ratio_gap = std::abs(bare / with_one - 1.0);
        CHECK(ratio_gap < prev);
        prev = ratio_gap;
        CHECK(std::signbit(bare) == std::signbit(with_one));
    }
}

TEST_CASE("symmetric families give identical scaled drift at +-x") {
    const StableLikeModel m = pareto_sym(1.5);
    for (double x : {100.0, 5000.0}) {
        CHECK(std::abs(scaled_drift_recurrence(m, x) -
                       scaled_drift_recurrence(m, -x)) < 1e-9);
    }
}

TEST_CASE("classify: pareto recurrence and transience routes") {
    const std::vector<double> grid = {1e3, 1e4, 1e5};
    const auto rec = classify(pareto_sym(1.5), {}, grid, 1e3);
    CHECK(rec.verdict == Verdict::RecurrentEvidence);
    CHECK(rec.conditions.size() == 2);
    for (const auto& c : rec.conditions) CHECK(c.satisfied);

    const auto tr = classify(pareto_sym(0.5), {0.25, 0.1}, grid, 1e3);
    CHECK(tr.verdict == Verdict::TransientEvidence);
    CHECK(tr.beta == 0.25);
    for (const auto& c : tr.conditions) CHECK(c.satisfied);
}

TEST_CASE("classify: exact-stable presets match the random-walk corollary") {
    const std::vector<double> grid = {1e3, 1e4, 1e5};
    const auto rec = classify(preset("sas_const", {{"alpha", 1.5}}), {}, grid, 1e3);
    CHECK(rec.verdict == Verdict::RecurrentEvidence);

    const auto tr = classify(preset("sas_const", {{"alpha", 0.5}}), {}, grid, 1e3);
    CHECK(tr.verdict == Verdict::TransientEvidence);

    const auto two =
        classify(preset("two_valued", {{"alpha_minus", 0.4}, {"alpha_plus", 0.6}}),
                 {}, grid, 1e3);
    CHECK(two.verdict == Verdict::TransientEvidence);
}

TEST_CASE("classify rejects the mixed regime and bad grids") {
    const StableLikeModel mixed = load_config_text(
        R"json({"family":"exact_stable","alpha":"ite(x<0,0.8,1.5)","skew":"0",
            "scale":"1","shift":"0","k_cutoff":1.0,"l_cutoff":1.0})json");
    CHECK_THROWS_AS(classify(mixed, {}, {1e3, 1e4, 1e5}, 1e3), MixedRegimeError);
    CHECK_THROWS_AS(classify(pareto_sym(1.5), {}, {1e3, 2e3}, 1e3), DomainError);
}

TEST_CASE("verdict never contradicts the attached condition reports") {
    const std::vector<double> grid = {1e3, 1e4, 1e5};
    const auto rec = classify(pareto_sym(1.5), {}, grid, 1e3);
    if (rec.verdict == Verdict::RecurrentEvidence)
        for (const auto& c : rec.conditions) CHECK(c.satisfied);
    // repelling shifted model: drift positive, conditions unsatisfied
    const StableLikeModel repel = load_config_text(
        R"json({"family":"exact_stable","alpha":"1.5","skew":"0","scale":"1",
            "shift":"ite(x<0,-0.5,0.5)","k_cutoff":1.0,"l_cutoff":1.0})json");
    const auto rep = classify(repel, {}, grid, 1e3);
    CHECK(rep.verdict == Verdict::Inconclusive);
    for (const auto& c : rep.conditions) CHECK(!c.satisfied);
}

TEST_CASE("report serialization carries the documented columns") {
    const auto rec = classify(pareto_sym(1.5), {}, {1e3, 1e4, 1e5}, 1e3);
    const std::string csv = report_to_csv(rec);
    CHECK(csv.find("x,raw_drift,scaled_drift,condition_13,condition_15_delta_trend") !=
          std::string::npos);
    const std::string js = report_to_json(rec);
    CHECK(js.find("\"verdict\": \"RecurrentEvidence\"") != std::string::npos);

    const auto tr = classify(pareto_sym(0.5), {0.25}, {1e3, 1e4, 1e5}, 1e3);
    const std::string csv2 = report_to_csv(tr);
    CHECK(csv2.find("condition_17_lhs,condition_17_rhs") != std::string::npos);
}
