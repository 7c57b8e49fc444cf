#pragma once

// Test-only numerical oracles. Deliberately independent of the library's
// Gauss-Kronrod integrator and special functions: adaptive Simpson here,
// std::lgamma / std::tgamma for gamma factors.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double fa,
                      double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on a finite interval.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 52) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, depth);
}

// Integral over [a, inf) of a function with power-law-ish decay: geometric
// panels until the last panel contributes less than tol_abs.
inline double integrate_to_infinity(const std::function<double(double)>& f, double a,
                                    double tol = 1e-12, double ratio = 2.0,
                                    int max_panels = 600) {
    double lo = a, total = 0.0;
    for (int i = 0; i < max_panels; ++i) {
        const double hi = lo * ratio + (lo == 0.0 ? 1.0 : 0.0);
        const double piece = integrate(f, lo, hi, tol / 8.0);
        total += piece;
        if (std::abs(piece) < tol && i > 4) return total;
        lo = hi;
    }
    throw std::runtime_error("oracle::integrate_to_infinity did not converge");
}

// Integral over [1, inf) of y^(-a)/(1+y): substitute y = 1/u to get
// int_0^1 u^(a-1)/(1+u) du; the u^(a-1) endpoint is handled by a series on
// [0, eps] for a < 1.
inline double lemma_integral(double a, double tol = 1e-12) {
    const auto g = [a](double u) { return std::pow(u, a - 1.0) / (1.0 + u); };
    const double eps = 0.25;
    double head = 0.0;
    // int_0^eps u^(a-1) sum_k (-u)^k du = sum_k (-1)^k eps^(a+k)/(a+k)
    double p = std::pow(eps, a);
    for (int k = 0; k < 200; ++k) {
        const double term = (k % 2 == 0 ? 1.0 : -1.0) * p / (a + k);
        head += term;
        p *= eps;
        if (std::abs(term) < tol * 1e-3) break;
    }
    return head + integrate(g, eps, 1.0, tol);
}

// ln Gamma via the standard library (independent of the artifact's Lanczos).
inline double std_lgamma(double z) { return std::lgamma(z); }

// Complete beta via std::lgamma.
inline double std_beta(double z, double w) {
    return std::exp(std::lgamma(z) + std::lgamma(w) - std::lgamma(z + w));
}

// Incomplete beta B(x; z, w) by direct quadrature with endpoint-series
// handling of the t^(z-1) singularity.
inline double incomplete_beta_quad(double x, double z, double w,
                                   double tol = 1e-12) {
    if (x == 0.0) return 0.0;
    const double eps = std::min(0.25, 0.5 * x);
    // int_0^eps t^(z-1)(1-t)^(w-1) dt via binomial series in t
    double head = 0.0, coeff = 1.0;
    double p = std::pow(eps, z);
    for (int k = 0; k < 400; ++k) {
        const double term = coeff * p / (z + k);
        head += term;
        coeff *= -(w - 1.0 - k) / (k + 1.0);
        p *= eps;
        if (std::abs(term) < tol * 1e-3 && k > 4) break;
    }
    const auto g = [z, w](double t) {
        return std::pow(t, z - 1.0) * std::pow(1.0 - t, w - 1.0);
    };
    return head + integrate(g, eps, x, tol);
}

// 10^6-term partial sum of sum_i 1/(i(2i-alpha)) plus the integral tail bound.
inline double recurrence_series_oracle(double alpha) {
    const long n = 1'000'000;
    long double sum = 0.0L;
    for (long i = n; i >= 1; --i)
        sum += 1.0L / (static_cast<long double>(i) * (2.0L * i - alpha));
    // integral bracket midpoint of the tail; bound <= 1/(2N)
    const long double up = -std::log1p(-alpha / (2.0L * n)) / alpha;
    const long double lo = -std::log1p(-alpha / (2.0L * (n + 1))) / alpha;
    return static_cast<double>(sum + 0.5L * (up + lo));
}

}  // namespace oracle
