#include "axbmellin/group.hpp"

#include <cmath>
#include <numbers>

#include "axbmellin/errors.hpp"
#include "axbmellin/kernels.hpp"

namespace axb {

using std::numbers::pi;

GroupElement compose(const GroupElement& g, const GroupElement& g2) {
    return GroupElement(g.a * g2.a, g2.a * g.t + g2.t);
}

GroupElement inverse(const GroupElement& g) {
    return GroupElement(1.0 / g.a, -g.t / g.a);
}

TestFunction act_mu(const GroupElement& g, const TestFunction& f) {
    // a^(-1/2) f(x/a) is the mu*(1/a)-scale of f; the b_t factor is a
    // modulation at frequency t/a.
    TestFunction out = modulate(scale_arg(f, 1.0 / g.a), g.t / g.a);
    out.name = "mu(" + std::to_string(g.a) + "," + std::to_string(g.t) + ")" + f.name;
    return out;
}

TestFunction lie_E(const TestFunction& f) {
    TestFunction g = f;
    g.name = "lie_E(" + f.name + ")";
    auto base = f;
    g.eval = [base](double x) -> cplx { return cplx(0.0, -2.0 * pi) * x * base(x); };
    if (f.deriv) {
        g.deriv = [base](double x) -> cplx {
            return cplx(0.0, -2.0 * pi) * (base(x) + x * base.d1(x));
        };
    } else {
        g.deriv = nullptr;
    }
    g.mellin_oracle = nullptr;
    g.zero_decay = {2.0 * pi * f.zero_decay.C0, f.zero_decay.delta + 1.0};
    if (f.infinity_decay) {
        auto fi = f.infinity_decay;
        g.infinity_decay = [fi](int m) { return 2.0 * pi * fi(m + 1); };
    }
    if (f.deriv_zero_decay) {
        g.deriv_zero_decay = ZeroDecay{
            2.0 * pi * (f.zero_decay.C0 + f.deriv_zero_decay->C0),
            std::min(f.zero_decay.delta, f.deriv_zero_decay->delta + 1.0)};
    }
    if (f.deriv_infinity_decay && f.infinity_decay) {
        auto fi = f.infinity_decay;
        auto di = f.deriv_infinity_decay;
        g.deriv_infinity_decay = [fi, di](int m) {
            return 2.0 * pi * (fi(m) + di(m + 1));
        };
    }
    return g;
}

TestFunction lie_H(const TestFunction& f) {
    TestFunction g = f;
    g.name = "lie_H(" + f.name + ")";
    auto base = f;
    g.eval = [base](double x) -> cplx { return -0.5 * base(x) - x * base.d1(x); };
    g.deriv = nullptr; // second derivative rule not propagated
    g.mellin_oracle = nullptr;
    g.numeric_derivative = !f.deriv;
    // |lie_H f| <= |f|/2 + x |f'|.
    if (f.deriv_zero_decay) {
        g.zero_decay =
            ZeroDecay{0.5 * f.zero_decay.C0 + f.deriv_zero_decay->C0,
                      std::min(f.zero_decay.delta, f.deriv_zero_decay->delta + 1.0)};
    } else {
        g.zero_decay = f.zero_decay;
        g.estimated_certificates = true;
    }
    if (f.deriv_infinity_decay && f.infinity_decay) {
        auto fi = f.infinity_decay;
        auto di = f.deriv_infinity_decay;
        g.infinity_decay = [fi, di](int m) { return 0.5 * fi(m) + di(m + 1); };
    } else {
        g.estimated_certificates = true;
    }
    return g;
}

HFunction op_I(const TestFunction& f) {
    auto base = f;
    return HFunction{[base](double h) -> cplx {
        return std::exp(0.5 * h) * base(std::exp(h));
    }};
}

TestFunction op_I_inv(const HFunction& phi) {
    TestFunction g;
    g.name = "I_inv";
    auto e = phi.eval;
    g.eval = [e](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        return e(std::log(x)) / std::sqrt(x);
    };
    g.estimated_certificates = true;
    g.zero_decay = {1.0, 0.0};
    g.infinity_decay = [](int m) { return m == 0 ? 1.0 : 0.0; };
    return g;
}

// f^(n) with nested central differences once the closed-form rule runs out.
static cplx nth_deriv(const TestFunction& f, int n, double x) {
    if (n == 0) return f(x);
    if (n == 1) return f.d1(x);
    const double step = std::max(2e-4, 2e-4 * x);
    return (nth_deriv(f, n - 1, x + step) - nth_deriv(f, n - 1, x - step)) /
           (2.0 * step);
}

SmoothnessReport smoothness_probe(const TestFunction& f, int n_max, const LogGrid& grid) {
    if (n_max > 4)
        throw config_error("smoothness_probe: n_max capped at 4 "
                           "(nested numeric differentiation)");
    SmoothnessReport rep;
    rep.numeric_derivatives = !f.deriv || n_max >= 2;
    const LogGrid near0 = grid.with_range(grid.h_min, 0.0);
    const LogGrid near0_ext = grid.with_range(grid.h_min - 6.0, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        SmoothnessEntry e;
        e.n = n;
        auto integrand = [&](double h) {
            const double x = std::exp(h);
            const double v = std::abs(nth_deriv(f, n, x)) * std::pow(x, n);
            return v * v * x; // |x^n f^(n)|^2 dx = (...) e^h dh
        };
        e.l2_near_zero = std::sqrt(
            kernels::trapezoid_log_serial<double>(near0, integrand));
        e.l2_near_zero_extended = std::sqrt(
            kernels::trapezoid_log_serial<double>(near0_ext, integrand));
        e.l2_diverging =
            e.l2_near_zero_extended > 1.5 * e.l2_near_zero + 1e-12 ||
            !std::isfinite(e.l2_near_zero_extended);
        if (e.l2_diverging) rep.any_blow_up = true;
        for (int m = 0; m <= n_max; ++m) {
            double sup = 0.0;
            for (int j = 0; j < grid.n_points; ++j) {
                const double x = grid.x(j);
                if (x <= 1.0) continue;
                sup = std::max(sup, std::pow(1.0 + x, m) *
                                        std::abs(nth_deriv(f, n, x)));
            }
            e.sup_tail.push_back(sup);
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

double haar_integral(const std::function<double(double, double)>& F,
                     const HaarWeight& w, const LogGrid& a_grid,
                     const UniformGrid& t_grid) {
    // da dt = e^h dh dt on the log grid.
    return kernels::trapezoid_log<double>(a_grid, [&](double h) {
        const double a = std::exp(h);
        const double row = kernels::trapezoid_uniform<double>(
            t_grid, [&](double t) { return F(a, t) * w.density(a, t); });
        return row * a;
    });
}

} // namespace axb
