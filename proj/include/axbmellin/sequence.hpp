#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "axbmellin/kernels.hpp"
#include "axbmellin/types.hpp"

namespace axb {

// A sequence {d_n}, n >= 1, with growth certificates.  Coefficients are a
// lazily evaluated rule, never a stored array; a bounded prefix cache keeps
// repeated access (divisor enumeration, audits) cheap.
//
// Certificates:
//   growth:    |d_n| <= growth_C * n^growth_k            (always present)
//   ramanujan: |d_n| <= ramanujan(tau) * n^tau, tau > 0   (optional rule)
struct CoefficientSequence {
    std::string name;
    std::function<cplx(std::int64_t)> coeff;
    // Optional bulk evaluation; used by the big partial-sum kernels.
    std::function<void(std::int64_t n0, std::int64_t count, cplx* out)> coeff_block;
    int growth_k = 0;
    double growth_C = 1.0;
    std::function<double(double)> ramanujan; // tau -> C_tau, or empty
    bool real_valued = true;

    // Memoized access to d_n.  Reads are lock-free once the prefix covers n;
    // the prefix only grows through ensure_cached.  Copies share the memo,
    // so never rebind coeff on a copy; build a fresh sequence instead.
    cplx d(std::int64_t n) const;
    void fill(std::int64_t n0, std::int64_t count, cplx* out) const;
    // Pre-fill the prefix cache up to min(n, cache cap).  Call before
    // handing the sequence to parallel workers.
    void ensure_cached(std::int64_t n) const;

    static constexpr std::int64_t cache_cap = std::int64_t{1} << 20;

private:
    struct Cache {
        std::mutex m;
        std::vector<cplx> prefix;
        std::int64_t size = 0; // accessed under m for writes; plain read ok after fence
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Builtin families: ones, alternating, single_delta, divisor.
CoefficientSequence builtin_sequence(const std::string& name);

// Dirichlet convolution j_l = sum_{mn=l} d_m d'_n by trial division.
// Growth certificate k = k1 + k2 + 1 with C = 2 C1 C2; the Ramanujan rule
// is composed when both inputs carry one.
CoefficientSequence convolve(const CoefficientSequence& d, const CoefficientSequence& d2);

// Valid constant for tau(n) <= C * n^tau: finite product over primes
// p < 2^(1/tau) of max_alpha (alpha+1) p^(-alpha*tau).
double divisor_growth_constant(double tau);

// Checks every declared certificate for n <= n_audit; throws data_error on
// the first violation.
void audit_growth(const CoefficientSequence& d, std::int64_t n_audit);

// sum_{n=1}^{N} d_n * w(n), chunked with bulk coefficient fill; the
// reduction tree depends only on N, so the result is thread-count
// independent.
template <class W>
cplx coeff_weighted_sum(const CoefficientSequence& d, std::int64_t N, W&& w) {
    if (N <= 0) return 0.0;
    d.ensure_cached(N);
    const std::int64_t C = kernels::chunk_size;
    const std::int64_t nc = (N + C - 1) / C;
    std::vector<cplx> partial(static_cast<std::size_t>(nc));
#pragma omp parallel
    {
        std::vector<cplx> buf(static_cast<std::size_t>(C));
#pragma omp for schedule(static)
        for (std::int64_t c = 0; c < nc; ++c) {
            const std::int64_t n0 = c * C + 1;
            const std::int64_t len = std::min(C, N - (n0 - 1));
            d.fill(n0, len, buf.data());
            auto term = [&](std::int64_t i) -> cplx {
                return buf[static_cast<std::size_t>(i)] * w(n0 + i);
            };
            partial[static_cast<std::size_t>(c)] =
                kernels::detail::tree_sum<cplx>(0, len, term);
        }
    }
    return kernels::detail::tree_reduce(partial.data(), nc);
}

} // namespace axb
