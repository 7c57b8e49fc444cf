#pragma once

namespace stablelike::specfun {

// A computed scalar together with an a-posteriori absolute error estimate.
struct SpecialValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

// ln Gamma(z) for z > 0. Relative error below 1e-13 on [1e-3, 1e3].
double ln_gamma(double z);

// log |Gamma(z)| and the sign of Gamma(z) for any non-pole real z.
struct SignedLogGamma {
    double log_abs;
    int sign;  // +1 or -1
};
SignedLogGamma signed_ln_gamma(double z);

// Gamma(z) for real z away from the poles 0, -1, -2, ...; negative
// arguments go through the reflection formula.
double reflect_gamma(double z);

// Digamma Psi(z) for z > 0. Absolute error below 1e-12 on [1e-2, 1e3].
double digamma(double z);

// Gauss hypergeometric 2F1(a, b; c; z) for real parameters, z <= 1.
// c must not be a non-positive integer; z = 1 requires c - a - b > 0.
SpecialValue gauss_2f1_ex(double a, double b, double c, double z);
double gauss_2f1(double a, double b, double c, double z);

// Incomplete beta B(x; z, w) = int_0^x t^(z-1) (1-t)^(w-1) dt
// for x in [0, 1], z > 0, w > 0. Not regularized.
SpecialValue incomplete_beta_ex(double x, double z, double w);
double incomplete_beta(double x, double z, double w);

// Complete beta B(1; z, w) = Gamma(z)Gamma(w)/Gamma(z+w).
double beta(double z, double w);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

}  // namespace stablelike::specfun
