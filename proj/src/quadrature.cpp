#include "stablelike/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "stablelike/errors.hpp"

namespace stablelike::quad {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (positive half; symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double result_g = fc * kWg[3];
    double result_k = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        result_k += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
    }
    const double value = result_k * h;
    double err = std::abs((result_k - result_g) * h);
    // standard QUADPACK-style sharpening of the raw K-G difference
    const double scale = resabs * std::abs(h);
    if (scale > 0.0 && err > 0.0)
        err = scale * std::min(1.0, std::pow(200.0 * err / scale, 1.5));
    return {a, b, value, err};
}

QuadResult run(const std::function<double(double)>& f, std::vector<Panel> panels,
               double abs_tol, double rel_tol, int max_panels) {
    std::priority_queue<Panel> heap(panels.begin(), panels.end());
    double value = 0.0, error = 0.0;
    for (const auto& p : panels) {
        value += p.value;
        error += p.error;
    }
    double floor_error = 0.0;  // panels at floating-point resolution
    int used = static_cast<int>(panels.size());
    while (!heap.empty() && used < max_panels &&
           error + floor_error > std::max(abs_tol, rel_tol * std::abs(value))) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            error -= worst.error;
            floor_error += worst.error;
            continue;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    const double total_error = error + floor_error;
    if (total_error > std::max(abs_tol, rel_tol * std::abs(value)))
        throw NumericalError("adaptive quadrature did not converge", total_error);
    return {value, total_error};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels) {
    if (a == b) return {0.0, 0.0};
    return run(f, {gk15(f, a, b)}, abs_tol, rel_tol, max_panels);
}

QuadResult integrate_segments(const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints,
                              double abs_tol, double rel_tol, int max_panels) {
    if (breakpoints.size() < 2) return {0.0, 0.0};
    std::vector<Panel> panels;
    panels.reserve(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] <= breakpoints[i])
            throw DomainError("quadrature breakpoints must be strictly increasing");
        panels.push_back(gk15(f, breakpoints[i], breakpoints[i + 1]));
    }
    return run(f, std::move(panels), abs_tol, rel_tol, max_panels);
}

std::vector<double> geometric_breakpoints(double a, double b, double ratio) {
    std::vector<double> pts{a};
    double t = a;
    while (t * ratio < b) {
        t *= ratio;
        pts.push_back(t);
    }
    pts.push_back(b);
    return pts;
}

}  // namespace stablelike::quad
