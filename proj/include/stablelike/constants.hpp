#pragma once

namespace stablelike::constants {

enum class ThresholdKind { Recurrence, Transience };

struct ThresholdConstant {
    ThresholdKind kind;
    double alpha = 0.0;
    double beta = 0.0;  // unused (0) for the recurrence constant
    double value = 0.0;
    double abs_error_estimate = 0.0;
};

// R(alpha) for alpha in (1, 2):
//   sum_{i>=1} 1/(i(2i - alpha)) - ln(2)/alpha
//     - (Psi((alpha+1)/2) - Psi(alpha/2)) / (2 alpha).
// Strictly increasing with R(1) = 0; absolute error <= 1e-10.
ThresholdConstant recurrence_constant(double alpha);

// T(alpha, beta) for alpha in [0, 1), beta in (0, 1 - alpha):
//   2F1(-alpha, beta, 1-alpha; 1) + beta B(1; alpha+beta, 1-alpha)
//     - alpha B(1; alpha+beta, 1-beta).
// Strictly positive on the open domain; absolute error <= 1e-10.
ThresholdConstant transience_constant(double alpha, double beta);

// T(alpha, beta) / beta; strictly decreasing in beta on (0, 1 - alpha).
double transience_ratio(double alpha, double beta);

}  // namespace stablelike::constants
