#pragma once

// Summation / quadrature kernels.
//
// Every reduction in the library goes through pairwise_sum: terms are split
// into fixed-size chunks, chunks are evaluated in parallel (OpenMP), and the
// chunk results are combined along a tree that depends only on the term
// count.  The result is therefore bit-identical for any thread count.
//
// The *_serial variants are plain left-to-right accumulation, kept as the
// reference implementations for tests and for the benchmark tool.

#include <cstdint>
#include <vector>

#include "axbmellin/types.hpp"

namespace axb::kernels {

inline constexpr std::int64_t chunk_size = 4096;

namespace detail {

// Pairwise sum of term(i) for i in [i0, i0+n); fixed recursion tree.
template <class T, class F>
T tree_sum(std::int64_t i0, std::int64_t n, F& term) {
    if (n <= 16) {
        T s{};
        for (std::int64_t i = 0; i < n; ++i) s += term(i0 + i);
        return s;
    }
    const std::int64_t h = n / 2;
    return tree_sum<T>(i0, h, term) + tree_sum<T>(i0 + h, n - h, term);
}

template <class T>
T tree_reduce(const T* v, std::int64_t n) {
    if (n <= 16) {
        T s{};
        for (std::int64_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::int64_t h = n / 2;
    return tree_reduce(v, h) + tree_reduce(v + h, n - h);
}

} // namespace detail

template <class T, class F>
T pairwise_sum(std::int64_t n, F&& term) {
    if (n <= 0) return T{};
    if (n <= chunk_size) return detail::tree_sum<T>(0, n, term);
    const std::int64_t nc = (n + chunk_size - 1) / chunk_size;
    std::vector<T> partial(static_cast<std::size_t>(nc));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nc; ++c) {
        const std::int64_t i0 = c * chunk_size;
        const std::int64_t len = std::min(chunk_size, n - i0);
        partial[static_cast<std::size_t>(c)] = detail::tree_sum<T>(i0, len, term);
    }
    return detail::tree_reduce(partial.data(), nc);
}

template <class T, class F>
T sum_serial(std::int64_t n, F&& term) {
    T s{};
    for (std::int64_t i = 0; i < n; ++i) s += term(i);
    return s;
}

// Trapezoid rule over a LogGrid for an integrand given in h.  Spectrally
// accurate for smooth integrands that decay at both ends of the window.
template <class T, class F>
T trapezoid_log(const LogGrid& g, F&& fh) {
    const double dh = g.spacing();
    auto term = [&](std::int64_t j) -> T {
        T v = fh(g.node(static_cast<int>(j)));
        if (j == 0 || j == g.n_points - 1) v *= 0.5;
        return v;
    };
    return pairwise_sum<T>(g.n_points, term) * dh;
}

template <class T, class F>
T trapezoid_log_serial(const LogGrid& g, F&& fh) {
    const double dh = g.spacing();
    T s{};
    for (int j = 0; j < g.n_points; ++j) {
        T v = fh(g.node(j));
        if (j == 0 || j == g.n_points - 1) v *= 0.5;
        s += v;
    }
    return s * dh;
}

// Trapezoid over a plain uniform grid.
template <class T, class F>
T trapezoid_uniform(const UniformGrid& g, F&& fv) {
    const double dt = g.step();
    auto term = [&](std::int64_t j) -> T {
        T v = fv(g.node(static_cast<int>(j)));
        if (j == 0 || j == g.n - 1) v *= 0.5;
        return v;
    };
    return pairwise_sum<T>(g.n, term) * dt;
}

// Parallel map: out[i] = fn(i).  Each slot written exactly once.
template <class T, class F>
std::vector<T> map_nodes(std::int64_t n, F&& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
}

} // namespace axb::kernels
