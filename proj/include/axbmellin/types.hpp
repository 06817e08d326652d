#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "axbmellin/errors.hpp"

namespace axb {

using cplx = std::complex<double>;

// A point s = sigma + i*s1 on the Mellin plane.  s1 is always real.
struct ComplexPoint {
    double sigma = 0.0;
    double s1 = 0.0;

    ComplexPoint(double sigma_, double s1_) : sigma(sigma_), s1(s1_) {
        if (!std::isfinite(sigma) || !std::isfinite(s1))
            throw config_error("ComplexPoint: components must be finite");
    }
    ComplexPoint(cplx s) : ComplexPoint(s.real(), s.imag()) {}

    cplx value() const { return {sigma, s1}; }
};

// An element a*b_t of the ax+b group in the (a, t) chart, a > 0.
struct GroupElement {
    double a = 1.0;
    double t = 0.0;

    GroupElement(double a_, double t_) : a(a_), t(t_) {
        if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(t))
            throw config_error("GroupElement: requires a > 0 and finite t");
    }
};

// The same element in the b_T * a chart: b_T a = a * b_{aT}, so T = t / a.
struct ChartBTA {
    double T;
    double a;
};

inline ChartBTA chart_convert(const GroupElement& g) { return {g.t / g.a, g.a}; }
inline GroupElement from_bTa(double T, double a) { return GroupElement(a, a * T); }

// Truncated uniform grid in h = ln x.  Drives every quadrature in the
// library: integrals over R+ are done as trapezoid sums in h after the
// substitution x = exp h.
struct LogGrid {
    double h_min;
    double h_max;
    int n_points;

    LogGrid(double h_min_, double h_max_, int n_points_)
        : h_min(h_min_), h_max(h_max_), n_points(n_points_) {
        if (!(h_min < h_max))
            throw config_error("LogGrid: requires h_min < h_max");
        if (n_points < 2)
            throw config_error("LogGrid: requires n_points >= 2");
        if (!std::isfinite(h_min) || !std::isfinite(h_max))
            throw config_error("LogGrid: bounds must be finite");
    }

    double spacing() const { return (h_max - h_min) / (n_points - 1); }
    double node(int j) const { return h_min + spacing() * j; }
    double x(int j) const { return std::exp(node(j)); }

    // Same range, halved spacing.  Used for refinement-delta estimates.
    LogGrid refined() const { return LogGrid(h_min, h_max, 2 * n_points - 1); }

    // New range at (approximately) the same spacing.
    LogGrid with_range(double lo, double hi) const {
        int n = 2 + static_cast<int>(std::ceil((hi - lo) / spacing()));
        return LogGrid(lo, hi, n);
    }

    // Covers x in [e^-12, e^12]; enough for every builtin family at 1e-8.
    static LogGrid standard() { return LogGrid(-12.0, 12.0, 4096); }
};

// Plain uniform grid (t-integrals, s1 lines).
struct UniformGrid {
    double lo;
    double hi;
    int n;

    UniformGrid(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
        if (!(lo < hi) || n < 2)
            throw config_error("UniformGrid: requires lo < hi and n >= 2");
    }
    double step() const { return (hi - lo) / (n - 1); }
    double node(int j) const { return lo + step() * j; }
};

} // namespace axb
