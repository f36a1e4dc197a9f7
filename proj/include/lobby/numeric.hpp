#pragma once

// Scalar root finding and maximization used by every solver.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace lobby::numeric {

inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection on [lo, hi] for a function whose values at the two ends have
// opposite signs (or vanish). Stops when the bracket is below x_tol or can no
// longer be split in double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double x_tol = 1e-15, int max_iter = 400) {
    double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    const double f_hi = f(hi);
    if (f_hi == 0.0) return hi;
    const int s_lo = sign(f_lo);
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (sign(f_mid) == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double x_tol = 1e-12,
                                             int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

// `steps` evenly spaced points from `from` to `to` inclusive.
inline std::vector<double> linspace(double from, double to, std::size_t steps) {
    std::vector<double> out;
    if (steps == 0) return out;
    if (steps == 1) {
        out.push_back(from);
        return out;
    }
    out.reserve(steps);
    const double step = (to - from) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        out.push_back(i + 1 == steps ? to : from + step * static_cast<double>(i));
    }
    return out;
}

} // namespace lobby::numeric
