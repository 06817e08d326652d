#include "axbmellin/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "axbmellin/errors.hpp"
#include "axbmellin/kernels.hpp"
#include "axbmellin/mellin.hpp"

namespace axb {

using std::numbers::pi;
static constexpr double inf = std::numeric_limits<double>::infinity();

std::string DirichletEval::to_json() const {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "{\"re\":%.17g,\"im\":%.17g,\"N\":%lld,\"tail_bound\":%.17g}",
                  value.real(), value.imag(),
                  static_cast<long long>(truncation_N), tail_bound);
    return buf;
}

// tau ladder for Ramanujan-certificate scans below an exclusive cap.
static std::vector<double> tau_ladder(double cap) {
    std::vector<double> taus;
    for (double fr : {0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9})
        if (fr * cap > 0.0) taus.push_back(fr * cap);
    for (double t : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0})
        if (t < cap) taus.push_back(t);
    return taus;
}

double dirichlet_tail_bound(const CoefficientSequence& d, double sigma,
                            std::int64_t N) {
    double best = inf;
    const double nn = static_cast<double>(N);
    if (sigma > d.growth_k + 1.0) {
        best = d.growth_C * std::pow(nn, d.growth_k + 1.0 - sigma) /
               (sigma - d.growth_k - 1.0);
    }
    if (d.ramanujan) {
        for (double tau : tau_ladder(sigma - 1.0)) {
            const double c = d.ramanujan(tau);
            if (!std::isfinite(c)) continue;
            best = std::min(best, c * std::pow(nn, tau + 1.0 - sigma) /
                                      (sigma - tau - 1.0));
        }
    }
    return best;
}

// Smallest N in [1, cap] with bound(N) <= tol; bound must be nonincreasing.
template <class BoundFn>
static std::int64_t smallest_cutoff(double tol, std::int64_t cap, BoundFn bound,
                                    const std::string& who) {
    if (!(bound(cap) <= tol))
        throw tolerance_error(who + ": certified tail bound " +
                              std::to_string(bound(cap)) + " at the N cap " +
                              std::to_string(cap) + " still exceeds tol = " +
                              std::to_string(tol));
    std::int64_t lo = 1, hi = cap;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= tol)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// ---------------------------------------------------------------------------
// partial sums
// ---------------------------------------------------------------------------

namespace {

inline double pow_int_recip(std::int64_t n, int k) {
    const double r = 1.0 / static_cast<double>(n);
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= r;
    return v;
}

cplx dirichlet_partial_sum(const CoefficientSequence& d, cplx s, std::int64_t N) {
    const double sigma = s.real();
    const int k = static_cast<int>(std::lround(sigma));
    if (s.imag() == 0.0 && k == sigma && k >= 0 && k <= 12) {
        return coeff_weighted_sum(d, N, [k](std::int64_t n) -> cplx {
            return pow_int_recip(n, k);
        });
    }
    if (s.imag() == 0.0) {
        return coeff_weighted_sum(d, N, [sigma](std::int64_t n) -> cplx {
            return std::pow(static_cast<double>(n), -sigma);
        });
    }
    return coeff_weighted_sum(d, N, [s](std::int64_t n) -> cplx {
        return std::exp(-s * std::log(static_cast<double>(n)));
    });
}

} // namespace

DirichletEval eval_L(const CoefficientSequence& d, const ComplexPoint& s,
                     double tol) {
    if (!(s.sigma > d.growth_k + 1.0))
        throw domain_error("eval_L: Re s = " + std::to_string(s.sigma) +
                           " is not above the convergence abscissa k+1 = " +
                           std::to_string(d.growth_k + 1.0) + " of '" + d.name +
                           "' (continuation not attempted)");
    if (!(tol > 0.0)) throw config_error("eval_L: tol must be positive");
    const std::int64_t N = smallest_cutoff(
        tol, std::int64_t{1} << 28,
        [&](std::int64_t n) { return dirichlet_tail_bound(d, s.sigma, n); },
        "eval_L");
    return {dirichlet_partial_sum(d, s.value(), N), N,
            dirichlet_tail_bound(d, s.sigma, N)};
}

double c_epsilon_tail(const CoefficientSequence& d, double eps, std::int64_t N) {
    double best = inf;
    const double nn = static_cast<double>(N);
    if (eps > 2.0 * d.growth_k) {
        best = d.growth_C * d.growth_C *
               std::pow(nn, 2.0 * d.growth_k - eps) / (eps - 2.0 * d.growth_k);
    }
    if (d.ramanujan) {
        for (double tau : tau_ladder(eps / 2.0)) {
            const double c = d.ramanujan(tau);
            if (!std::isfinite(c)) continue;
            best = std::min(best,
                            c * c * std::pow(nn, 2.0 * tau - eps) / (eps - 2.0 * tau));
        }
    }
    return best;
}

double c_epsilon(const CoefficientSequence& d, double eps, double tol) {
    if (!(eps > 0.0)) throw config_error("c_epsilon: eps must be positive");
    if (!(eps > 2.0 * d.growth_k) && !d.ramanujan)
        throw domain_error("c_epsilon: certificates of '" + d.name +
                           "' do not certify summability of n^(-1-eps) |d_n|^2 "
                           "(needs eps > 2k or a Ramanujan rule)");
    const std::int64_t N = smallest_cutoff(
        tol, std::int64_t{1} << 28,
        [&](std::int64_t n) { return c_epsilon_tail(d, eps, n); }, "c_epsilon");
    d.ensure_cached(N);
    const double expo = 1.0 + eps;
    const int k = static_cast<int>(std::lround(expo));
    const bool int_fast = (k == expo && k <= 12);
    const std::int64_t C = kernels::chunk_size;
    const std::int64_t nc = (N + C - 1) / C;
    std::vector<double> partial(static_cast<std::size_t>(nc));
#pragma omp parallel
    {
        std::vector<cplx> buf(static_cast<std::size_t>(C));
#pragma omp for schedule(static)
        for (std::int64_t c = 0; c < nc; ++c) {
            const std::int64_t n0 = c * C + 1;
            const std::int64_t len = std::min(C, N - (n0 - 1));
            d.fill(n0, len, buf.data());
            auto term = [&](std::int64_t i) -> double {
                const double m = std::norm(buf[static_cast<std::size_t>(i)]);
                const std::int64_t n = n0 + i;
                return int_fast ? m * pow_int_recip(n, k)
                                : m * std::pow(static_cast<double>(n), -expo);
            };
            partial[static_cast<std::size_t>(c)] =
                kernels::detail::tree_sum<double>(0, len, term);
        }
    }
    return kernels::detail::tree_reduce(partial.data(), nc);
}

// ---------------------------------------------------------------------------
// series cutoffs from the function-side certificates
// ---------------------------------------------------------------------------

double series_tail(const CoefficientSequence& d, const TestFunction& f,
                   double a, std::int64_t N) {
    if (f.support && std::isfinite(f.support->hi)) {
        if (static_cast<double>(N + 1) * a > f.support->hi) return 0.0;
    }
    if (!f.infinity_decay) return inf;
    if (static_cast<double>(N) * a < 1.0) return inf; // certificate needs an > 1
    double best = inf;
    const double nn = static_cast<double>(N);
    for (int m = 2; m <= 60; ++m) {
        const double cm = f.infinity_decay(m);
        if (!std::isfinite(cm)) continue;
        if (m > d.growth_k + 1) {
            best = std::min(best, d.growth_C * cm * std::pow(a, -m) *
                                      std::pow(nn, d.growth_k + 1.0 - m) /
                                      (m - d.growth_k - 1.0));
        }
        if (d.ramanujan) {
            for (double tau : {0.25, 0.5, 1.0}) {
                if (m <= tau + 1.0) continue;
                const double c = d.ramanujan(tau);
                if (!std::isfinite(c)) continue;
                best = std::min(best, c * cm * std::pow(a, -m) *
                                          std::pow(nn, tau + 1.0 - m) /
                                          (m - tau - 1.0));
            }
        }
    }
    return best;
}

std::int64_t series_cutoff(const CoefficientSequence& d, const TestFunction& f,
                           double a, double tol) {
    if (f.support && std::isfinite(f.support->hi)) {
        const std::int64_t n_supp =
            static_cast<std::int64_t>(std::floor(f.support->hi / a));
        return std::max<std::int64_t>(n_supp, 1);
    }
    const std::int64_t floor_n =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(1.0 / a)));
    try {
        const std::int64_t n = smallest_cutoff(
            tol, std::int64_t{1} << 22,
            [&](std::int64_t m) { return series_tail(d, f, a, std::max(m, floor_n)); },
            "series_cutoff");
        return std::max(n, floor_n);
    } catch (const tolerance_error&) {
        throw tolerance_error(
            "series_cutoff: decay certificates of '" + f.name +
            "' with sequence '" + d.name + "' at a = " + std::to_string(a) +
            " cannot certify tol = " + std::to_string(tol) +
            " within the term cap (diagnostic N = " +
            std::to_string(std::int64_t{1} << 22) + ")");
    }
}

// ---------------------------------------------------------------------------
// the antiderivative embedding
// ---------------------------------------------------------------------------

namespace {

struct PrefixSums {
    std::mutex m;
    std::vector<cplx> S; // S[i] = d_1 + ... + d_{i+1}
};

cplx prefix_sum(const std::shared_ptr<PrefixSums>& ps,
                const CoefficientSequence& d, std::int64_t n) {
    if (n < 1) return 0.0;
    {
        std::scoped_lock lock(ps->m);
        if (static_cast<std::size_t>(n) > ps->S.size()) {
            const std::size_t cap = std::size_t{1} << 22;
            const std::size_t want =
                std::min(cap, std::max<std::size_t>(static_cast<std::size_t>(n),
                                                    2 * ps->S.size() + 64));
            cplx acc = ps->S.empty() ? cplx(0.0) : ps->S.back();
            for (std::size_t i = ps->S.size(); i < want; ++i) {
                acc += d.d(static_cast<std::int64_t>(i) + 1);
                ps->S.push_back(acc);
            }
        }
        if (static_cast<std::size_t>(n) <= ps->S.size())
            return ps->S[static_cast<std::size_t>(n - 1)];
    }
    // beyond the cache cap: straight summation
    cplx acc = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) acc += d.d(i);
    return acc;
}

} // namespace

EmbeddedDistribution embed_distribution(const CoefficientSequence& d) {
    const int k = d.growth_k;
    auto ps = std::make_shared<PrefixSums>();
    CoefficientSequence seq = d;
    TestFunction F;
    F.name = "antiderivative(" + d.name + ")";
    F.eval = [ps, seq, k](double x) -> cplx {
        if (x < 1.0) return 0.0;
        const std::int64_t n = static_cast<std::int64_t>(std::floor(x));
        return prefix_sum(ps, seq, n) * std::pow(x, -(k + 2.0));
    };
    F.support = Support{1.0, inf};
    F.zero_decay = {0.0, 0.5};
    // |F(x)| <= C_k (sum_{n<=x} n^k) x^(-k-2) <= C_k x^(k+1) x^(-k-2) = C_k/x
    const double ck = d.growth_C;
    F.infinity_decay = [ck](int m) { return m <= 1 ? ck : inf; };
    return {F, k};
}

WeakPairingCheck weak_pairing_check(const CoefficientSequence& d,
                                    const TestFunction& f, double tol) {
    const int k = d.growth_k;
    const std::int64_t N_direct = series_cutoff(d, f, 1.0, tol / 4.0);
    const cplx direct = coeff_weighted_sum(
        d, N_direct, [&](std::int64_t n) -> cplx { return f(static_cast<double>(n)); });

    // via_F = -int F (x^(k+2) f)' dx with F = x^(-k-2) S(floor x):
    // exactly sum_n S(n) * int_n^(n+1) [(k+2) f/x + f'] dx, truncated where
    // |S(n)| <= C_k n^(k+1) times the interval bound is below tol/4.
    auto interval_bound = [&](std::int64_t n) {
        double best = inf;
        if (!f.infinity_decay) return best;
        const double nn = static_cast<double>(n);
        for (int m = k + 3; m <= 60; ++m) {
            const double cm = f.infinity_decay(m);
            if (!std::isfinite(cm)) continue;
            best = std::min(best, 3.0 * d.growth_C * cm *
                                      std::pow(nn, k + 2.0 - m) / (m - k - 2.0));
        }
        return best;
    };
    std::int64_t Nt = 4;
    if (f.support && std::isfinite(f.support->hi)) {
        Nt = static_cast<std::int64_t>(std::ceil(f.support->hi)) + 1;
    } else {
        while (Nt < (std::int64_t{1} << 22) && !(interval_bound(Nt) <= tol / 4.0))
            Nt *= 2;
    }

    // -int F (x^(k+2) f)' dx contributes -(k+2) f/x - f' per unit of S(n);
    // the operator's own first-order piece adds +(k+2) f/x back.
    auto ps = std::make_shared<PrefixSums>();
    cplx via_F = 0.0;
    for (std::int64_t n = 1; n <= Nt; ++n) {
        const int panels = 32;
        const double hstep = 1.0 / panels;
        cplx anti = 0.0, oper = 0.0; // Simpson over [n, n+1]
        for (int i = 0; i <= panels; ++i) {
            const double x = static_cast<double>(n) + i * hstep;
            const double wgt = (i == 0 || i == panels) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
            anti += wgt * ((k + 2.0) * f(x) / x + f.d1(x));
            oper += wgt * ((k + 2.0) * f(x) / x);
        }
        anti *= hstep / 3.0;
        oper *= hstep / 3.0;
        via_F += prefix_sum(ps, d, n) * (oper - anti);
    }
    WeakPairingCheck r{direct, via_F, std::abs(direct - via_F)};
    return r;
}

// ---------------------------------------------------------------------------
// Mellin-line pairings
// ---------------------------------------------------------------------------

namespace {

// Truncated Dirichlet polynomial sum_{n<=N} d_n n^(-r-i s1) along a line.
std::vector<cplx> dirichlet_polynomial_line(const CoefficientSequence& d,
                                            std::int64_t N, double r,
                                            const UniformGrid& sg) {
    d.ensure_cached(N);
    std::vector<cplx> out(static_cast<std::size_t>(sg.n));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < sg.n; ++j) {
        const double s1 = sg.node(j);
        auto term = [&](std::int64_t i) -> cplx {
            const std::int64_t n = i + 1;
            const double ln = std::log(static_cast<double>(n));
            return d.d(n) * std::exp(-r * ln) * std::exp(cplx(0.0, -s1 * ln));
        };
        out[static_cast<std::size_t>(j)] = kernels::detail::tree_sum<cplx>(0, N, term);
    }
    return out;
}

// Alias period for the trapezoid line quadrature: the discrete sum equals
// the target series plus images at h -> h +- jP; P is chosen so the
// certified image mass stays below budget.
double alias_period(const CoefficientSequence& d, const TestFunction& f,
                    double a, double r, std::int64_t N, double budget) {
    double P = 6.0;
    const double nn = static_cast<double>(N);

    if (f.support && f.support->lo > 0.0) {
        // images vanish exactly once a n e^-P < lo for every n <= N
        P = std::max(P, std::log(a * nn / f.support->lo) + 1.0);
    } else {
        const double ql = r + f.zero_decay.delta - 0.5;
        if (ql <= 0.0)
            throw domain_error("pairing: cannot certify the small-x alias for '" +
                               f.name + "' at r = " + std::to_string(r));
        const double amp =
            2.0 * f.zero_decay.C0 * d.growth_C * std::pow(a, f.zero_decay.delta) *
            std::pow(nn, d.growth_k + f.zero_decay.delta + 0.5) /
            (d.growth_k + f.zero_decay.delta + 0.5);
        P = std::max(P, std::log(std::max(2.0 * amp / budget, 2.0)) / ql);
        P = std::max(P, std::log(a * nn) + 1.0); // zero-certificate validity
    }

    if (f.support && std::isfinite(f.support->hi)) {
        P = std::max(P, std::log(std::max(f.support->hi / a, 1.0)) + 1.0);
    } else {
        double bestP = inf;
        for (int m = d.growth_k + 2; m <= 60; ++m) {
            const double cm = f.infinity_decay ? f.infinity_decay(m) : inf;
            if (!std::isfinite(cm)) continue;
            const double amp = 4.0 * d.growth_C * cm * std::pow(a, 0.5 - m) *
                               (1.0 + 1.0 / (m - d.growth_k - 1.0));
            bestP = std::min(bestP,
                             std::log(std::max(2.0 * amp / budget, 2.0)) / (m - r));
        }
        if (!std::isfinite(bestP))
            throw domain_error("pairing: no usable infinity_decay certificate of '" +
                               f.name + "'");
        P = std::max(P, bestP);
    }
    return P;
}

cplx pairing_line(const CoefficientSequence& d, const TestFunction& f, double a,
                  double r, double tol, const ContinuationRule& continuation) {
    if (!continuation && !(r > d.growth_k + 1.0))
        throw domain_error("pairing: r = " + std::to_string(r) +
                           " is inside the unverified strip for '" + d.name +
                           "' (needs r > k+1 = " + std::to_string(d.growth_k + 1.0) +
                           " or a continuation rule)");
    if (continuation && !(r > 0.5))
        throw domain_error("pairing: r must exceed 1/2 even with a continuation");

    const std::int64_t N =
        continuation ? 0 : series_cutoff(d, f, a, tol / (8.0 * std::sqrt(a)));
    const std::int64_t N_alias = continuation ? 10'000 : N;
    const double P = alias_period(d, f, a, r, N_alias, tol / 8.0);
    const double ds1 = 2.0 * pi / P;
    const LogGrid fgrid = adequate_grid(f, r, r, 1e-13);
    const double lna = std::log(a);

    // mirrored blocks addressed by node index so every node sits exactly on
    // the lattice s1 = k * ds1; shared endpoints compose one trapezoid rule
    const int block_nodes = std::max(2, static_cast<int>(std::ceil(10.0 / ds1)));
    auto block_value = [&](std::int64_t k0, std::int64_t k1) -> cplx {
        const int n = static_cast<int>(k1 - k0) + 1;
        const UniformGrid sg(ds1 * static_cast<double>(k0),
                             ds1 * static_cast<double>(k1), n);
        const MellinSamples mf = fourier_mellin(f, r, sg, fgrid);
        std::vector<cplx> lv;
        if (continuation) {
            lv.resize(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                lv[static_cast<std::size_t>(j)] = continuation(cplx(r, sg.node(j)));
        } else {
            lv = dirichlet_polynomial_line(d, N, r, sg);
        }
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double s1 = sg.node(j);
            cplx v = lv[static_cast<std::size_t>(j)] *
                     mf.values[static_cast<std::size_t>(j)] *
                     std::pow(a, 0.5 - r) * std::exp(cplx(0.0, -s1 * lna));
            if (j == 0 || j == n - 1) v *= 0.5;
            acc += v;
        }
        return acc * ds1;
    };

    cplx total = 0.0;
    double first = -1.0;
    int calm = 0;
    for (int b = 0; b < 400 && calm < 2; ++b) {
        const std::int64_t k0 = static_cast<std::int64_t>(b) * block_nodes;
        const std::int64_t k1 = k0 + block_nodes;
        const cplx part = block_value(k0, k1) + block_value(-k1, -k0);
        total += part;
        if (first < 0.0) first = std::abs(part);
        const double scale = std::max(first, 1e-30);
        calm = (std::abs(part) <= std::max(tol / 16.0, 1e-14 * scale)) ? calm + 1 : 0;
        if (ds1 * static_cast<double>(k1) > 3000.0)
            throw tolerance_error("pairing: s1 line did not settle below tol by "
                                  "s1 = 3000; tolerance unreachable");
    }
    return total / (2.0 * pi);
}

} // namespace

cplx pairing_via_mellin(const CoefficientSequence& d, const TestFunction& f,
                        double r, double tol,
                        const ContinuationRule& continuation) {
    return pairing_line(d, f, 1.0, r, tol, continuation);
}

cplx pairing_action_a(const CoefficientSequence& d, const TestFunction& f,
                      double a, double r, double tol,
                      const ContinuationRule& continuation) {
    if (!(a > 0.0)) throw config_error("pairing_action_a: requires a > 0");
    return pairing_line(d, f, a, r, tol, continuation);
}

} // namespace axb
