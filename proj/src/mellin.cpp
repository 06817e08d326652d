#include "axbmellin/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

#include "axbmellin/errors.hpp"
#include "axbmellin/group.hpp"
#include "axbmellin/kernels.hpp"

namespace axb {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// certificate-driven tail bounds
// ---------------------------------------------------------------------------

QuadTails mellin_tail_bounds(const TestFunction& f, double sigma, double h_lo,
                             double h_hi) {
    QuadTails t{0.0, 0.0};

    // x -> 0 side
    if (f.support && f.support->lo > 0.0 && h_lo <= std::log(f.support->lo)) {
        t.lower = 0.0;
    } else {
        const double q = sigma - 0.5 + f.zero_decay.delta;
        if (q <= 0.0)
            throw domain_error(
                "mellin: sigma = " + std::to_string(sigma) +
                " violates the zero_decay certificate of '" + f.name +
                "' (requires sigma > " + std::to_string(0.5 - f.zero_decay.delta) +
                ")");
        const double edge = std::min(h_lo, 0.0);
        t.lower = f.zero_decay.C0 * std::exp(q * edge) / q;
        if (h_lo > 0.0) {
            // certificate covers x <= 1 only; charge the rest to sup_bound
            t.lower += f.sup_bound() * h_lo * std::exp(sigma * h_lo);
        }
    }

    // x -> inf side
    if (f.support && std::isfinite(f.support->hi) &&
        h_hi >= std::log(std::max(f.support->hi, 1e-300))) {
        t.upper = 0.0;
    } else if (f.infinity_decay) {
        const double edge = std::max(h_hi, 0.0);
        double best = std::numeric_limits<double>::infinity();
        for (int m = 1; m <= 60; ++m) {
            if (m <= sigma) continue;
            const double b =
                f.infinity_decay(m) * std::exp((sigma - m) * edge) / (m - sigma);
            best = std::min(best, b);
        }
        if (!std::isfinite(best))
            throw domain_error(
                "mellin: no usable infinity_decay certificate of '" + f.name +
                "' for sigma = " + std::to_string(sigma));
        t.upper = best;
    } else {
        throw domain_error("mellin: '" + f.name +
                           "' carries no infinity_decay certificate");
    }
    return t;
}

// ---------------------------------------------------------------------------
// grid selection
// ---------------------------------------------------------------------------

LogGrid adequate_grid(const TestFunction& f, double sigma_lo, double sigma_hi,
                      double tol) {
    const double dh = 0.002;
    const double budget = std::max(tol, 1e-290) / 4.0;

    double h_lo;
    if (f.support && f.support->lo > 0.0) {
        h_lo = std::log(f.support->lo) - 2.0 * dh;
    } else {
        const double q = sigma_lo - 0.5 + f.zero_decay.delta;
        if (q <= 0.0)
            throw domain_error(
                "adequate_grid: sigma = " + std::to_string(sigma_lo) +
                " violates the zero_decay certificate of '" + f.name + "'");
        const double c0 = std::max(f.zero_decay.C0, 1e-290);
        h_lo = std::min(-1.0, std::log(budget * q / c0) / q);
        h_lo = std::max(h_lo, -640.0);
    }

    double h_hi;
    if (f.support && std::isfinite(f.support->hi)) {
        h_hi = std::log(f.support->hi) + 2.0 * dh;
    } else {
        if (!f.infinity_decay)
            throw domain_error("adequate_grid: '" + f.name +
                               "' carries no infinity_decay certificate");
        h_hi = 1.0;
        while (h_hi < 640.0) {
            double best = std::numeric_limits<double>::infinity();
            for (int m = 1; m <= 60; ++m) {
                if (m <= sigma_hi) continue;
                best = std::min(best, f.infinity_decay(m) *
                                          std::exp((sigma_hi - m) * h_hi) /
                                          (m - sigma_hi));
            }
            if (best <= budget) break;
            h_hi += 1.0;
        }
    }

    const int n = 1 + static_cast<int>(std::ceil((h_hi - h_lo) / dh));
    if (n > (1 << 22))
        throw tolerance_error("adequate_grid: certificate-driven window for '" +
                              f.name + "' needs " + std::to_string(n) +
                              " nodes; tolerance unreachable");
    return LogGrid(h_lo, h_hi, n);
}

LogGrid merge_grids(const LogGrid& a, const LogGrid& b) {
    const double h_lo = std::min(a.h_min, b.h_min);
    const double h_hi = std::max(a.h_max, b.h_max);
    const double dh = std::min(a.spacing(), b.spacing());
    const int n = 1 + static_cast<int>(std::ceil((h_hi - h_lo) / dh));
    return LogGrid(h_lo, h_hi, n);
}

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

static cplx mellin_on_grid(const TestFunction& f, cplx s, const LogGrid& grid) {
    return kernels::trapezoid_log<cplx>(grid, [&](double h) {
        return f(std::exp(h)) * std::exp(s * h);
    });
}

cplx mellin(const TestFunction& f, const ComplexPoint& s, const LogGrid& grid) {
    mellin_tail_bounds(f, s.sigma, grid.h_min, grid.h_max); // band check
    return mellin_on_grid(f, s.value(), grid);
}

MellinResult mellin_detailed(const TestFunction& f, const ComplexPoint& s,
                             const LogGrid& grid) {
    const QuadTails tails = mellin_tail_bounds(f, s.sigma, grid.h_min, grid.h_max);
    const cplx coarse = mellin_on_grid(f, s.value(), grid);
    const cplx fine = mellin_on_grid(f, s.value(), grid.refined());
    return {fine, tails.total() + std::abs(fine - coarse)};
}

// Samples of M^sigma f over a uniform s1 grid.  Per node the phase walks a
// recurrence along the h grid, so the cost is one complex multiply per
// (node, h) pair; nodes are farmed to workers independently.
MellinSamples fourier_mellin(const TestFunction& f, double sigma,
                             const UniformGrid& s1_grid, const LogGrid& grid) {
    const QuadTails tails = mellin_tail_bounds(f, sigma, grid.h_min, grid.h_max);

    const int nh = grid.n_points;
    const double dh = grid.spacing();
    std::vector<cplx> w(static_cast<std::size_t>(nh));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < nh; ++j) {
        const double h = grid.node(j);
        cplx v = f(std::exp(h)) * std::exp(sigma * h) * dh;
        if (j == 0 || j == nh - 1) v *= 0.5;
        w[static_cast<std::size_t>(j)] = v;
    }

    auto line = [&](const UniformGrid& sg) {
        std::vector<cplx> vals(static_cast<std::size_t>(sg.n));
#pragma omp parallel for schedule(static)
        for (int k = 0; k < sg.n; ++k) {
            const double s1 = sg.node(k);
            const cplx rot = std::exp(cplx(0.0, s1 * dh));
            cplx phase = std::exp(cplx(0.0, s1 * grid.h_min));
            cplx acc = 0.0;
            for (int j = 0; j < nh; ++j) {
                acc += w[static_cast<std::size_t>(j)] * phase;
                phase *= rot;
            }
            vals[static_cast<std::size_t>(k)] = acc;
        }
        return vals;
    };

    MellinSamples out{sigma, s1_grid, line(s1_grid), 0.0};

    // refinement delta probed at three nodes of the refined h grid
    const LogGrid fine = grid.refined();
    double delta = 0.0;
    for (int k : {0, s1_grid.n / 2, s1_grid.n - 1}) {
        const cplx a = out.values[static_cast<std::size_t>(k)];
        const cplx b = mellin_on_grid(f, cplx(sigma, s1_grid.node(k)), fine);
        delta = std::max(delta, std::abs(a - b));
    }
    out.truncation_error = tails.total() + delta;
    return out;
}

MellinSamples fourier_mellin(const TestFunction& f, double sigma,
                             const UniformGrid& s1_grid) {
    return fourier_mellin(f, sigma, s1_grid, adequate_grid(f, sigma, sigma, 1e-10));
}

void MellinSamples::write_csv(std::ostream& os) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# sigma=%.17g truncation_error=%.17g\n",
                  sigma, truncation_error);
    os << buf << "s1,re,im\n";
    for (int k = 0; k < s1_grid.n; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s1_grid.node(k),
                      values[static_cast<std::size_t>(k)].real(),
                      values[static_cast<std::size_t>(k)].imag());
        os << buf;
    }
}

// Estimated decay rate of |values| at the ends of the sampled line; used to
// bound what the truncated inversion integral is missing.
static double line_tail_estimate(const MellinSamples& s) {
    const int n = s.s1_grid.n;
    const int k = std::max(4, n / 16);
    auto tail_one_side = [&](int i_far, int i_near) {
        const double v_far = std::abs(s.values[static_cast<std::size_t>(i_far)]);
        const double v_near = std::abs(s.values[static_cast<std::size_t>(i_near)]);
        const double span = std::abs(s.s1_grid.node(i_far) - s.s1_grid.node(i_near));
        if (v_far <= 1e-300) return v_far;
        if (v_near <= v_far) // not decaying: no usable rate
            return std::numeric_limits<double>::infinity();
        const double rate = std::log(v_near / v_far) / span;
        return v_far / rate; // int_0^inf v_far e^(-rate u) du
    };
    return tail_one_side(n - 1, n - 1 - k) + tail_one_side(0, k);
}

cplx inverse_mellin(const MellinSamples& samples, double x, double tol) {
    if (!(x > 0.0)) throw config_error("inverse_mellin: requires x > 0");
    const double tail = line_tail_estimate(samples) / (2.0 * pi);
    if (!(tail <= tol)) {
        throw tolerance_error(
            "inverse_mellin: sampled line [" + std::to_string(samples.s1_grid.lo) +
            ", " + std::to_string(samples.s1_grid.hi) +
            "] leaves an estimated tail " + std::to_string(tail) +
            " > tol; extend the s1 range");
    }
    const UniformGrid& sg = samples.s1_grid;
    const double lx = std::log(x);
    auto term = [&](std::int64_t k) -> cplx {
        const double s1 = sg.node(static_cast<int>(k));
        cplx v = samples.values[static_cast<std::size_t>(k)] *
                 std::exp(cplx(0.0, -s1 * lx));
        if (k == 0 || k == sg.n - 1) v *= 0.5;
        return v;
    };
    const cplx sum = kernels::pairwise_sum<cplx>(sg.n, term);
    return sum * sg.step() * std::exp(-samples.sigma * lx) / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// identity checks and probes
// ---------------------------------------------------------------------------

// x -> x f(x), with shifted certificates.
static TestFunction times_x(const TestFunction& f) {
    TestFunction g = f;
    g.name = "x*" + f.name;
    auto base = f;
    g.eval = [base](double x) -> cplx { return x * base(x); };
    if (f.deriv)
        g.deriv = [base](double x) -> cplx { return base(x) + x * base.d1(x); };
    else
        g.deriv = nullptr;
    g.mellin_oracle = nullptr;
    g.zero_decay = {f.zero_decay.C0, f.zero_decay.delta + 1.0};
    if (f.infinity_decay) {
        auto fi = f.infinity_decay;
        g.infinity_decay = [fi](int m) { return fi(m + 1); };
    }
    return g;
}

ShiftIdentityCheck shift_identity_check(const TestFunction& f,
                                        const ComplexPoint& s) {
    const double tol = 1e-10;
    const TestFunction xf = times_x(f);
    const TestFunction hf = lie_H(f);
    const LogGrid grid = merge_grids(
        merge_grids(adequate_grid(f, s.sigma, s.sigma + 1.0, tol),
                    adequate_grid(xf, s.sigma, s.sigma, tol)),
        adequate_grid(hf, s.sigma, s.sigma, tol));
    ShiftIdentityCheck r{};
    r.lhs_shift = mellin(xf, s, grid);
    r.rhs_shift = mellin(f, ComplexPoint(s.sigma + 1.0, s.s1), grid);
    r.gap_shift = std::abs(r.lhs_shift - r.rhs_shift);
    r.lhs_lie = mellin(hf, s, grid);
    r.rhs_lie = (s.value() - 0.5) * mellin(f, s, grid);
    r.gap_lie = std::abs(r.lhs_lie - r.rhs_lie);
    return r;
}

ScalingCheck scaling_identity_check(const TestFunction& f, double a,
                                    const ComplexPoint& s) {
    const double tol = 1e-10;
    const TestFunction fa = scale_arg(f, a);
    const LogGrid grid = merge_grids(adequate_grid(f, s.sigma, s.sigma, tol),
                                     adequate_grid(fa, s.sigma, s.sigma, tol));
    ScalingCheck r{};
    r.lhs = mellin(fa, s, grid);
    r.rhs = std::pow(cplx(a, 0.0), 0.5 - s.value()) * mellin(f, s, grid);
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

double vertical_decay_probe(const TestFunction& f, double sigma, int n,
                            double s1_max) {
    if (n > 6) throw config_error("vertical_decay_probe: n capped at 6");
    if (!(s1_max > 0.0))
        throw config_error("vertical_decay_probe: requires s1_max > 0");
    const int nodes = std::max(64, static_cast<int>(std::ceil(s1_max / 0.25)) + 1);
    const MellinSamples samples =
        fourier_mellin(f, sigma, UniformGrid(-s1_max, s1_max, 2 * nodes - 1));
    double sup = 0.0;
    for (int k = 0; k < samples.s1_grid.n; ++k) {
        const double s1 = samples.s1_grid.node(k);
        sup = std::max(sup, std::pow(std::abs(s1), n) *
                                std::abs(samples.values[static_cast<std::size_t>(k)]));
    }
    return sup;
}

NormIdentityReport norm_identity_probe(const TestFunction& f, double sigma) {
    const LogGrid grid = adequate_grid(f, sigma, sigma, 1e-11);
    NormIdentityReport r{};
    r.rhs = kernels::trapezoid_log<double>(grid, [&](double h) {
        const double v = std::abs(f(std::exp(h)));
        return v * v * std::exp(2.0 * sigma * h);
    });

    // s1 line integral of |M^sigma f|^2, extended in mirrored blocks until
    // two consecutive block pairs are negligible.  Adjacent blocks share
    // their halved endpoints, so the pieces compose into one trapezoid rule.
    const double ds1 = 0.05;
    auto block_integral = [&](double lo, double hi) {
        const int n = static_cast<int>(std::lround((hi - lo) / ds1)) + 1;
        MellinSamples ms = fourier_mellin(f, sigma, UniformGrid(lo, hi, n), grid);
        double part = 0.0;
        for (int k = 0; k < n; ++k) {
            double v = std::norm(ms.values[static_cast<std::size_t>(k)]);
            if (k == 0 || k == n - 1) v *= 0.5;
            part += v;
        }
        return part * ds1;
    };
    double lhs = 0.0;
    double first_block = -1.0;
    int calm = 0;
    for (int block = 0; block < 40 && calm < 2; ++block) {
        const double lo = 20.0 * block, hi = 20.0 * (block + 1);
        const double part = block_integral(lo, hi) + block_integral(-hi, -lo);
        lhs += part;
        if (first_block < 0.0) first_block = part;
        calm = (part <= 1e-12 * first_block) ? calm + 1 : 0;
    }

    r.lhs = lhs;
    r.measured_constant = r.lhs / r.rhs;
    struct Candidate {
        const char* name;
        double value;
    };
    const Candidate cands[] = {{"2pi", 2.0 * pi}, {"1", 1.0}, {"1/(2pi)", 0.5 / pi}};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
        const double gap = std::abs(r.measured_constant - c.value) / c.value;
        if (gap < best) {
            best = gap;
            r.verdict = c.name;
        }
    }
    r.rel_gap_to_verdict = best;
    return r;
}

double measured_plancherel_constant() {
    static std::once_flag flag;
    static double value = 0.0;
    std::call_once(flag, [] {
        const NormIdentityReport r =
            norm_identity_probe(builtin_exp_decay(0.0), 1.0);
        value = r.measured_constant;
    });
    return value;
}

} // namespace axb
