#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablelike/constants.hpp"
#include "stablelike/errors.hpp"
#include "support/oracles.hpp"

using namespace stablelike;
using namespace stablelike::constants;

namespace {

// Independent recurrence-constant oracle: 1e6-term series with integral tail
// bound, plus the digamma pair replaced by its integral representation.
double recurrence_oracle(double alpha) {
    const double series = oracle::recurrence_series_oracle(alpha);
    const double psi_pair = 2.0 * oracle::lemma_integral(alpha);  // Psi((a+1)/2)-Psi(a/2)
    return series - std::log(2.0) / alpha - psi_pair / (2.0 * alpha);
}

// Independent transience-constant oracle: hypergeometric term through its
// Euler integral, beta terms through std::lgamma.
double transience_oracle(double alpha, double beta) {
    const double gamma_ratio =
        std::exp(oracle::std_lgamma(1.0 - alpha) - oracle::std_lgamma(beta) -
                 oracle::std_lgamma(1.0 - alpha - beta));
    const double integral = oracle::incomplete_beta_quad(0.5, beta, 1.0 - beta) +
                            oracle::incomplete_beta_quad(0.5, 1.0 - beta, beta);
    const double f_at_one = gamma_ratio * integral;
    return f_at_one + beta * oracle::std_beta(alpha + beta, 1.0 - alpha) -
           alpha * oracle::std_beta(alpha + beta, 1.0 - beta);
}

}  // namespace

TEST_CASE("R near the lower boundary and domain rejection") {
    const auto r = recurrence_constant(1.0 + 1e-7);
    CHECK(std::abs(r.value) < 1e-5);
    CHECK(r.value > 0.0);
    CHECK_THROWS_AS(recurrence_constant(1.0), DomainError);
    CHECK_THROWS_AS(recurrence_constant(2.0), DomainError);
    CHECK_THROWS_AS(recurrence_constant(0.5), DomainError);
}

TEST_CASE("R matches the long-series oracle") {
    for (double alpha : {1.2, 1.5, 1.8}) {
        const auto r = recurrence_constant(alpha);
        CHECK(std::abs(r.value - recurrence_oracle(alpha)) < 1e-8);
    }
    // frozen reference for the canonical point
    CHECK(recurrence_constant(1.5).value ==
          doctest::Approx(1.6852580098064559).epsilon(1e-11));
}

TEST_CASE("R strictly increasing; growth toward alpha = 2") {
    double prev = 0.0;
    for (double alpha = 1.05; alpha < 1.96; alpha += 0.05) {
        const double v = recurrence_constant(alpha).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK(recurrence_constant(1.999).value > recurrence_constant(1.9).value + 1.0);
}

TEST_CASE("R series truncation bound") {
    for (double alpha : {1.05, 1.5, 1.95}) {
        const auto r = recurrence_constant(alpha);
        CHECK(r.abs_error_estimate <= 1e-12 * r.value);
    }
}

TEST_CASE("T boundary values and domain rejection") {
    CHECK(std::abs(transience_constant(0.0, 0.5).value - 2.0) < 1e-10);
    CHECK(std::abs(transience_constant(0.5, 0.5 - 1e-6).value) < 1e-4);
    CHECK(std::abs(transience_constant(0.3, 1e-6).value) < 1e-4);
    CHECK_THROWS_AS(transience_constant(1.0, 0.1), DomainError);
    CHECK_THROWS_AS(transience_constant(-0.1, 0.1), DomainError);
    CHECK_THROWS_AS(transience_constant(0.5, 0.5), DomainError);
    CHECK_THROWS_AS(transience_constant(0.5, 0.0), DomainError);
}

TEST_CASE("T matches the quadrature oracle") {
    for (double alpha : {0.0, 0.2, 0.5, 0.7}) {
        for (double beta : {0.1, 0.25}) {
            if (!(beta < 1.0 - alpha)) continue;
            const auto t = transience_constant(alpha, beta);
            CHECK(std::abs(t.value - transience_oracle(alpha, beta)) < 1e-8);
            CHECK(t.value > 0.0);
        }
    }
    CHECK(transience_constant(0.5, 0.25).value ==
          doctest::Approx(0.3509271499416131).epsilon(1e-11));
}

TEST_CASE("T strictly decreasing in alpha at fixed beta") {
    double prev = 3.0;
    for (double alpha = 0.0; alpha < 0.7 - 1e-12; alpha += 0.05) {
        const double v = transience_constant(alpha, 0.3).value;
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK(std::abs(transience_constant(0.0, 0.3).value - 2.0) < 1e-10);
}

TEST_CASE("T(alpha, .)/beta strictly decreasing in beta") {
    const double alpha = 0.3;
    double prev = 1e30;
    for (double beta : {0.05, 0.15, 0.3, 0.45, 0.55, 0.65}) {
        const double v = transience_ratio(alpha, beta);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(transience_ratio(0.0, 0.5) == doctest::Approx(4.0).epsilon(1e-10));
}
