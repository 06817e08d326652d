#include "axbmellin/function.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "axbmellin/errors.hpp"
#include "axbmellin/special.hpp"

namespace axb {

static constexpr double inf = std::numeric_limits<double>::infinity();

double TestFunction::sup_bound() const {
    double near_zero = (zero_decay.delta >= 0.5) ? zero_decay.C0 : inf;
    if (support && support->lo > 0.0) {
        // |f| <= C0 lo^(delta-1/2) on the support when delta < 1/2
        near_zero = zero_decay.C0 *
                    std::pow(support->lo, zero_decay.delta - 0.5);
        if (zero_decay.delta >= 0.5) near_zero = zero_decay.C0;
    }
    double beyond_one = inf;
    if (infinity_decay) {
        for (int m = 0; m <= 8; ++m)
            beyond_one = std::min(beyond_one, infinity_decay(m));
    }
    return std::max(near_zero, beyond_one);
}

double TestFunction::sigma_min() const {
    if (support && support->lo > 0.0) return -inf;
    return 0.5 - zero_decay.delta;
}

// ---------------------------------------------------------------------------
// builtins
// ---------------------------------------------------------------------------

TestFunction builtin_exp_decay(double alpha) {
    if (!(alpha >= 0.0))
        throw config_error("exp_decay: requires alpha >= 0");
    TestFunction f;
    f.name = "exp_decay(alpha=" + std::to_string(alpha) + ")";
    f.eval = [alpha](double x) -> cplx {
        if (x <= 0.0) return (alpha == 0.0) ? 1.0 : 0.0;
        return std::pow(x, alpha) * std::exp(-x);
    };
    f.deriv = [alpha](double x) -> cplx {
        if (x <= 0.0) return (alpha == 0.0) ? -1.0 : 0.0;
        if (alpha == 0.0) return -std::exp(-x);
        return std::pow(x, alpha - 1.0) * (alpha - x) * std::exp(-x);
    };
    // x^alpha e^-x <= x^alpha for all x.
    f.zero_decay = {1.0, alpha + 0.5};
    // sup_{x>1} x^(alpha+m) e^-x attained at x = alpha + m.
    f.infinity_decay = [alpha](int m) {
        const double p = alpha + m;
        if (p <= 1.0) return std::exp(-1.0);
        return std::exp(p * (std::log(p) - 1.0));
    };
    f.mellin_oracle = [alpha](cplx s) { return gamma_complex(s + alpha); };
    if (alpha == 0.0) {
        f.deriv_zero_decay = ZeroDecay{1.0, 0.5};
    } else {
        // |f'| = |alpha - x| x^(alpha-1) e^-x <= (alpha+1) x^(alpha-1) on (0,1].
        f.deriv_zero_decay = ZeroDecay{alpha + 1.0, alpha - 0.5};
    }
    // |f'| <= (x + alpha) x^(alpha-1) e^-x <= (1+alpha) x^alpha e^-x for x >= 1.
    f.deriv_infinity_decay = [f, alpha](int m) {
        return (1.0 + alpha) * f.infinity_decay(m);
    };
    return f;
}

// sup over h <= 0 of exp(-beta (h-c)^2 + gamma h)
static double gaussian_sup_left(double beta, double c, double gamma) {
    const double h_star = c + gamma / (2.0 * beta);
    const double h = std::min(h_star, 0.0);
    return std::exp(-beta * (h - c) * (h - c) + gamma * h);
}

// sup over h >= 0 of exp(-beta (h-c)^2 + gamma h)
static double gaussian_sup_right(double beta, double c, double gamma) {
    const double h_star = c + gamma / (2.0 * beta);
    const double h = std::max(h_star, 0.0);
    return std::exp(-beta * (h - c) * (h - c) + gamma * h);
}

TestFunction builtin_log_gaussian(double beta, double c) {
    if (!(beta > 0.0))
        throw config_error("log_gaussian: requires beta > 0");
    TestFunction f;
    f.name = "log_gaussian(beta=" + std::to_string(beta) +
             ",c=" + std::to_string(c) + ")";
    f.eval = [beta, c](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        const double d = std::log(x) - c;
        return std::exp(-beta * d * d);
    };
    f.deriv = [beta, c](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        const double d = std::log(x) - c;
        return std::exp(-beta * d * d) * (-2.0 * beta * d / x);
    };
    // Decays faster than any power at both ends; a single certificate pair
    // has to fix one exponent, so take a wide one.
    const double delta = 8.0;
    f.zero_decay = {gaussian_sup_left(beta, c, 0.5 - delta), delta};
    f.infinity_decay = [beta, c](int m) {
        return gaussian_sup_right(beta, c, static_cast<double>(m));
    };
    // |f'| = 2 beta |h - c| f / x <= 2 beta (e^-1 + |c|) f x^-2 on (0,1]
    // and <= 2 beta (1 + |c|) f on [1, inf).
    const double kl = 2.0 * beta * (std::exp(-1.0) + std::abs(c));
    const double kr = 2.0 * beta * (1.0 + std::abs(c));
    f.deriv_zero_decay =
        ZeroDecay{kl * gaussian_sup_left(beta, c, 0.5 - delta), delta - 2.0};
    f.deriv_infinity_decay = [beta, c, kr](int m) {
        return kr * gaussian_sup_right(beta, c, static_cast<double>(m));
    };
    return f;
}

TestFunction builtin_bump(double x0, double x1) {
    if (!(0.0 < x0 && x0 < x1))
        throw config_error("bump: requires 0 < x0 < x1");
    TestFunction f;
    f.name = "bump(" + std::to_string(x0) + "," + std::to_string(x1) + ")";
    const double mid = 0.5 * (x0 + x1);
    const double half = 0.5 * (x1 - x0);
    auto phi = [](double u) -> double {
        const double w = 1.0 - u * u;
        if (w <= 1e-12) return 0.0;
        return std::exp(1.0 - 1.0 / w);
    };
    auto dphi = [phi](double u) -> double {
        const double w = 1.0 - u * u;
        if (w <= 1e-12) return 0.0;
        return phi(u) * (-2.0 * u / (w * w));
    };
    f.eval = [mid, half, phi](double x) -> cplx { return phi((x - mid) / half); };
    f.deriv = [mid, half, dphi](double x) -> cplx {
        return dphi((x - mid) / half) / half;
    };
    f.support = Support{x0, x1};
    f.zero_decay = {1.0, 0.5};
    f.infinity_decay = [x1](int m) {
        return std::pow(std::max(x1, 1.0), m);
    };
    // sup |phi'| over (-1,1), scanned once; 1.05 headroom for the scan gap.
    double dsup = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = -1.0 + 2.0 * (i + 0.5) / 100000.0;
        dsup = std::max(dsup, std::abs(dphi(u)));
    }
    dsup = 1.05 * dsup / half;
    f.deriv_zero_decay = ZeroDecay{dsup, 0.5};
    f.deriv_infinity_decay = [x1, dsup](int m) {
        return dsup * std::pow(std::max(x1, 1.0), m);
    };
    return f;
}

TestFunction builtin_function(const std::string& name, const FunctionParams& p) {
    if (name == "exp_decay") return builtin_exp_decay(p.alpha);
    if (name == "log_gaussian") return builtin_log_gaussian(p.beta, p.c);
    if (name == "bump") return builtin_bump(p.x0, p.x1);
    throw config_error("builtin_function: unknown family '" + name + "'");
}

void audit_decay(const TestFunction& f, const LogGrid& grid) {
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.x(j);
        const double mag = std::abs(f(x));
        if (f.support && (x < f.support->lo || x > f.support->hi)) {
            if (mag != 0.0)
                throw data_error("audit_decay: '" + f.name +
                                 "' nonzero outside declared support at x = " +
                                 std::to_string(x));
            continue;
        }
        if (x <= 1.0) {
            const double b =
                f.zero_decay.C0 * std::pow(x, f.zero_decay.delta - 0.5);
            if (mag > b * (1.0 + 1e-9) + 1e-300)
                throw data_error("audit_decay: '" + f.name +
                                 "' violates zero_decay at x = " + std::to_string(x));
        } else if (f.infinity_decay) {
            for (int m = 0; m <= 6; ++m) {
                const double b = f.infinity_decay(m) * std::pow(x, -m);
                if (mag > b * (1.0 + 1e-9) + 1e-300)
                    throw data_error("audit_decay: '" + f.name +
                                     "' violates infinity_decay(m=" + std::to_string(m) +
                                     ") at x = " + std::to_string(x));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

TestFunction modulate(const TestFunction& f, double T) {
    using std::numbers::pi;
    if (T == 0.0) return f;
    TestFunction g = f;
    g.name = "modulate(" + f.name + ",T=" + std::to_string(T) + ")";
    auto base = f;
    g.eval = [base, T](double x) -> cplx {
        return std::exp(cplx(0.0, -2.0 * pi * T * x)) * base(x);
    };
    if (f.deriv) {
        g.deriv = [base, T](double x) -> cplx {
            const cplx ph = std::exp(cplx(0.0, -2.0 * pi * T * x));
            return ph * (base.d1(x) - cplx(0.0, 2.0 * pi * T) * base(x));
        };
    } else {
        g.deriv = nullptr;
    }
    g.mellin_oracle = nullptr;
    // |g| = |f| pointwise: modulus certificates unchanged.  For g' combine
    // the f' certificate with 2 pi |T| |f|.
    const double w = 2.0 * pi * std::abs(T);
    if (f.deriv_zero_decay) {
        g.deriv_zero_decay =
            ZeroDecay{f.deriv_zero_decay->C0 + w * f.zero_decay.C0,
                      std::min(f.deriv_zero_decay->delta, f.zero_decay.delta)};
    }
    if (f.deriv_infinity_decay && f.infinity_decay) {
        auto di = f.deriv_infinity_decay;
        auto fi = f.infinity_decay;
        g.deriv_infinity_decay = [di, fi, w](int m) { return di(m) + w * fi(m); };
    }
    return g;
}

TestFunction scale_arg(const TestFunction& f, double a) {
    if (!(a > 0.0)) throw config_error("scale_arg: requires a > 0");
    TestFunction g = f;
    g.name = "scale(" + f.name + ",a=" + std::to_string(a) + ")";
    auto base = f;
    const double ra = std::sqrt(a);
    g.eval = [base, a, ra](double x) -> cplx { return ra * base(a * x); };
    if (f.deriv) {
        g.deriv = [base, a, ra](double x) -> cplx { return ra * a * base.d1(a * x); };
    } else {
        g.deriv = nullptr;
    }
    g.mellin_oracle = nullptr;
    g.zero_decay = {f.zero_decay.C0 * std::pow(a, f.zero_decay.delta),
                    f.zero_decay.delta};
    {
        auto fi = f.infinity_decay;
        const double c0 = f.zero_decay.C0;
        g.infinity_decay = [fi, c0, a](int m) {
            const double base_c = fi ? std::max(fi(m), c0) : c0;
            return base_c * std::pow(a, 0.5 - m);
        };
    }
    if (f.support)
        g.support = Support{f.support->lo / a, f.support->hi / a};
    if (f.deriv_zero_decay) {
        g.deriv_zero_decay =
            ZeroDecay{f.deriv_zero_decay->C0 * std::pow(a, 1.0 + f.deriv_zero_decay->delta),
                      f.deriv_zero_decay->delta};
    }
    if (f.deriv_infinity_decay) {
        auto di = f.deriv_infinity_decay;
        const double cd0 = f.deriv_zero_decay ? f.deriv_zero_decay->C0 : di(0);
        g.deriv_infinity_decay = [di, cd0, a](int m) {
            return std::max(di(m), cd0) * std::pow(a, 1.5 - m);
        };
    }
    return g;
}

TestFunction restrict_plus(const TestFunction& f) {
    TestFunction g = f;
    g.name = f.name + "_plus";
    auto base = f;
    g.eval = [base](double x) -> cplx { return x >= 1.0 ? base(x) : 0.0; };
    if (f.deriv)
        g.deriv = [base](double x) -> cplx { return x >= 1.0 ? base.d1(x) : 0.0; };
    g.mellin_oracle = nullptr;
    g.zero_decay = {0.0, 0.5};
    if (f.support)
        g.support = Support{std::max(1.0, f.support->lo), f.support->hi};
    else
        g.support = Support{1.0, inf};
    return g;
}

TestFunction restrict_minus(const TestFunction& f) {
    TestFunction g = f;
    g.name = f.name + "_minus";
    auto base = f;
    g.eval = [base](double x) -> cplx { return x < 1.0 ? base(x) : 0.0; };
    if (f.deriv)
        g.deriv = [base](double x) -> cplx { return x < 1.0 ? base.d1(x) : 0.0; };
    g.mellin_oracle = nullptr;
    g.infinity_decay = [](int) { return 0.0; };
    if (f.support)
        g.support = Support{f.support->lo, std::min(1.0, f.support->hi)};
    else
        g.support = Support{0.0, 1.0};
    return g;
}

} // namespace axb
