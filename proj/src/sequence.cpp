#include "axbmellin/sequence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "axbmellin/errors.hpp"

namespace axb {

cplx CoefficientSequence::d(std::int64_t n) const {
    if (n < 1) return 0.0;
    Cache& c = *cache_;
    // relaxed read: size only grows, and prefix elements are written before
    // size is advanced inside ensure_cached's critical section.
    const std::int64_t sz =
        std::atomic_ref<std::int64_t>(c.size).load(std::memory_order_acquire);
    if (n <= sz) return c.prefix[static_cast<std::size_t>(n - 1)];
    return coeff(n);
}

void CoefficientSequence::fill(std::int64_t n0, std::int64_t count, cplx* out) const {
    if (coeff_block) {
        coeff_block(n0, count, out);
        return;
    }
    for (std::int64_t i = 0; i < count; ++i) out[i] = d(n0 + i);
}

void CoefficientSequence::ensure_cached(std::int64_t n) const {
    n = std::min(n, cache_cap);
    Cache& c = *cache_;
    std::scoped_lock lock(c.m);
    if (n <= c.size) return;
    c.prefix.resize(static_cast<std::size_t>(n));
    for (std::int64_t k = c.size; k < n; ++k)
        c.prefix[static_cast<std::size_t>(k)] = coeff(k + 1);
    std::atomic_ref<std::int64_t>(c.size).store(n, std::memory_order_release);
}

// ---------------------------------------------------------------------------
// builtin families
// ---------------------------------------------------------------------------

static std::int64_t divisor_count(std::int64_t n) {
    std::int64_t cnt = 0;
    for (std::int64_t m = 1; m * m <= n; ++m) {
        if (n % m == 0) cnt += (m * m == n) ? 1 : 2;
    }
    return cnt;
}

double divisor_growth_constant(double tau) {
    if (!(tau > 0.0)) throw config_error("divisor_growth_constant: tau must be > 0");
    // Primes p >= 2^(1/tau) contribute a factor <= 1, so the product below
    // over p < 2^(1/tau) bounds tau(n)/n^tau for every n.  Below tau = 0.1
    // that range explodes; the rule declines (callers skip +inf).
    if (tau < 0.1) return std::numeric_limits<double>::infinity();
    const double p_max = std::pow(2.0, 1.0 / tau);
    double prod = 1.0;
    for (std::int64_t p = 2; static_cast<double>(p) < p_max; ++p) {
        bool prime = p >= 2;
        for (std::int64_t q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (!prime) continue;
        double best = 1.0; // alpha = 0
        for (int alpha = 1; alpha < 512; ++alpha) {
            const double v = (alpha + 1) * std::pow(static_cast<double>(p), -alpha * tau);
            best = std::max(best, v);
            if (v < 1.0) break;
        }
        prod *= best;
    }
    return prod;
}

CoefficientSequence builtin_sequence(const std::string& name) {
    CoefficientSequence s;
    s.name = name;
    if (name == "ones") {
        s.coeff = [](std::int64_t) -> cplx { return 1.0; };
        s.coeff_block = [](std::int64_t, std::int64_t count, cplx* out) {
            std::fill(out, out + count, cplx(1.0));
        };
        s.growth_k = 0;
        s.growth_C = 1.0;
        s.ramanujan = [](double) { return 1.0; };
    } else if (name == "alternating") {
        s.coeff = [](std::int64_t n) -> cplx { return (n % 2 == 1) ? 1.0 : -1.0; };
        s.coeff_block = [](std::int64_t n0, std::int64_t count, cplx* out) {
            for (std::int64_t i = 0; i < count; ++i)
                out[i] = ((n0 + i) % 2 == 1) ? 1.0 : -1.0;
        };
        s.growth_k = 0;
        s.growth_C = 1.0;
        s.ramanujan = [](double) { return 1.0; };
    } else if (name == "single_delta") {
        s.coeff = [](std::int64_t n) -> cplx { return n == 1 ? 1.0 : 0.0; };
        s.coeff_block = [](std::int64_t n0, std::int64_t count, cplx* out) {
            std::fill(out, out + count, cplx(0.0));
            if (n0 == 1 && count > 0) out[0] = 1.0;
            else if (n0 < 1 && n0 + count > 1) out[1 - n0] = 1.0;
        };
        s.growth_k = 0;
        s.growth_C = 1.0;
        s.ramanujan = [](double) { return 1.0; };
    } else if (name == "divisor") {
        s.coeff = [](std::int64_t n) -> cplx {
            return static_cast<double>(divisor_count(n));
        };
        // tau(n) <= 2 sqrt(n) <= 2 n, so (k, C) = (1, 2) is a valid coarse
        // certificate; the Ramanujan rule carries the sharp information.
        s.growth_k = 1;
        s.growth_C = 2.0;
        s.ramanujan = [](double tau) { return divisor_growth_constant(tau); };
    } else {
        throw config_error("builtin_sequence: unknown family '" + name + "'");
    }
    return s;
}

CoefficientSequence convolve(const CoefficientSequence& d, const CoefficientSequence& d2) {
    CoefficientSequence j;
    j.name = d.name + "#" + d2.name;
    // Keep copies so the rule owns everything it needs.
    CoefficientSequence a = d, b = d2;
    a.ensure_cached(1024);
    b.ensure_cached(1024);
    j.coeff = [a, b](std::int64_t l) -> cplx {
        cplx s = 0.0;
        for (std::int64_t m = 1; m * m <= l; ++m) {
            if (l % m != 0) continue;
            const std::int64_t q = l / m;
            s += a.d(m) * b.d(q);
            if (q != m) s += a.d(q) * b.d(m);
        }
        return s;
    };
    // |j_l| <= sum_{mn=l} C1 m^k1 C2 n^k2 <= C1 C2 tau(l) l^max(k1,k2)
    //       <= 2 C1 C2 l^(k1+k2+1).
    j.growth_k = a.growth_k + b.growth_k + 1;
    j.growth_C = 2.0 * a.growth_C * b.growth_C;
    j.real_valued = a.real_valued && b.real_valued;
    if (a.ramanujan && b.ramanujan) {
        auto ra = a.ramanujan, rb = b.ramanujan;
        // |j_l| <= C_a(t/2) C_b(t/2) tau(l) l^(t/2) <= [C_a C_b C_div](t/2) l^t.
        j.ramanujan = [ra, rb](double tau) {
            return ra(tau / 2) * rb(tau / 2) * divisor_growth_constant(tau / 2);
        };
    }
    return j;
}

void audit_growth(const CoefficientSequence& d, std::int64_t n_audit) {
    d.ensure_cached(n_audit);
    // A small tau ladder is enough to catch a lying Ramanujan rule.
    static const double taus[] = {0.05, 0.1, 0.25, 0.5, 1.0, 2.0};
    std::vector<double> cs;
    if (d.ramanujan)
        for (double t : taus) cs.push_back(d.ramanujan(t)); // +inf entries are skipped
    for (std::int64_t n = 1; n <= n_audit; ++n) {
        const double mag = std::abs(d.d(n));
        const double gb = d.growth_C * std::pow(static_cast<double>(n), d.growth_k);
        if (mag > gb * (1.0 + 1e-12))
            throw data_error("audit_growth: |d_" + std::to_string(n) + "| = " +
                             std::to_string(mag) + " exceeds growth certificate " +
                             std::to_string(gb) + " for sequence '" + d.name + "'");
        if (d.ramanujan) {
            for (std::size_t i = 0; i < cs.size(); ++i) {
                if (!std::isfinite(cs[i])) continue;
                const double rb = cs[i] * std::pow(static_cast<double>(n), taus[i]);
                if (mag > rb * (1.0 + 1e-12))
                    throw data_error("audit_growth: |d_" + std::to_string(n) +
                                     "| exceeds Ramanujan certificate at tau = " +
                                     std::to_string(taus[i]) + " for sequence '" +
                                     d.name + "'");
            }
        }
    }
}

} // namespace axb
