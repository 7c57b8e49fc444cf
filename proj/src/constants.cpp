#include "stablelike/constants.hpp"

#include <cmath>

#include "stablelike/errors.hpp"
#include "stablelike/specfun.hpp"

namespace stablelike::constants {

namespace {

constexpr long kSeriesTerms = 4'000'000;

// Partial sum of sum_i 1/(i(2i - alpha)) plus an integral bracket for the
// remainder. The summand is decreasing, so
//   int_{N+1}^inf f <= tail <= int_N^inf f,  int_N^inf f = -ln(1 - alpha/(2N))/alpha.
// N = 4e6 gives bracket width ~ 1/(2 N^2) ~ 3e-14, below 1e-12 of R over the
// working grid.
struct SeriesValue {
    double value;
    double tail_halfwidth;
};

SeriesValue harmonic_like_series(double alpha) {
    double sum = 0.0, comp = 0.0;  // Kahan, summing small terms first
    for (long i = kSeriesTerms; i >= 1; --i) {
        const double term = 1.0 / (static_cast<double>(i) * (2.0 * i - alpha));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double n = static_cast<double>(kSeriesTerms);
    const double upper = -std::log1p(-alpha / (2.0 * n)) / alpha;
    const double lower = -std::log1p(-alpha / (2.0 * (n + 1.0))) / alpha;
    return {sum + 0.5 * (upper + lower), 0.5 * (upper - lower)};
}

}  // namespace

ThresholdConstant recurrence_constant(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("recurrence constant requires alpha in (1, 2)");
    const SeriesValue s = harmonic_like_series(alpha);
    const double psi_term =
        (specfun::digamma((alpha + 1.0) / 2.0) - specfun::digamma(alpha / 2.0)) /
        (2.0 * alpha);
    const double value = s.value - std::log(2.0) / alpha - psi_term;
    ThresholdConstant out;
    out.kind = ThresholdKind::Recurrence;
    out.alpha = alpha;
    out.beta = 0.0;
    out.value = value;
    out.abs_error_estimate =
        s.tail_halfwidth + 4.0 * 2.220446049250313e-16 * std::abs(value) + 1e-14;
    return out;
}

ThresholdConstant transience_constant(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw DomainError("transience constant requires alpha in [0, 1)");
    if (!(beta > 0.0 && beta < 1.0 - alpha))
        throw DomainError("transience constant requires beta in (0, 1 - alpha)");
    // c - a - b = 1 - beta > 0, so the z = 1 closed form applies
    const specfun::SpecialValue f = specfun::gauss_2f1_ex(-alpha, beta, 1.0 - alpha, 1.0);
    const double b1 = specfun::beta(alpha + beta, 1.0 - alpha);
    const double b2 = specfun::beta(alpha + beta, 1.0 - beta);
    ThresholdConstant out;
    out.kind = ThresholdKind::Transience;
    out.alpha = alpha;
    out.beta = beta;
    out.value = f.value + beta * b1 - alpha * b2;
    out.abs_error_estimate =
        f.abs_error_estimate + 1e-14 * (std::abs(beta * b1) + std::abs(alpha * b2)) + 1e-15;
    return out;
}

double transience_ratio(double alpha, double beta) {
    return transience_constant(alpha, beta).value / beta;
}

}  // namespace stablelike::constants
