#include <cmath>
#include <omp.h>

#include "axbmellin/kernels.hpp"
#include "doctest.h"

using namespace axb;

TEST_CASE("pairwise sum matches the serial reference") {
    auto term = [](std::int64_t i) { return 1.0 / ((i + 1.0) * (i + 1.0)); };
    const double par = kernels::pairwise_sum<double>(1'000'000, term);
    const double ser = kernels::sum_serial<double>(1'000'000, term);
    CHECK(std::abs(par - ser) <= 1e-13 * std::abs(ser));
}

TEST_CASE("pairwise sum is bit-identical across thread counts") {
    auto term = [](std::int64_t i) {
        const double x = 1.0 + 1e-6 * static_cast<double>(i);
        return std::sin(x) / x;
    };
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = kernels::pairwise_sum<double>(3'000'000, term);
    omp_set_num_threads(saved);
    const double many = kernels::pairwise_sum<double>(3'000'000, term);
    CHECK(one == many); // exact: reduction tree depends only on n
}

TEST_CASE("pairwise sum beats naive accumulation on an ill-conditioned sum") {
    // sum_{i<n} (-1)^i / (i+1) -> ln 2; reference in long double
    const std::int64_t n = 20'000'001;
    long double ref = 0.0L;
    for (std::int64_t i = n - 1; i >= 0; --i)
        ref += (i % 2 == 0 ? 1.0L : -1.0L) / static_cast<long double>(i + 1);
    auto term = [](std::int64_t i) {
        return (i % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(i + 1);
    };
    const double par = kernels::pairwise_sum<double>(n, term);
    CHECK(std::abs(par - static_cast<double>(ref)) <= 1e-14);
}

TEST_CASE("log-grid trapezoid integrates a gaussian in h") {
    // int exp(-h^2) dh = sqrt(pi) once the window covers the mass
    const LogGrid g(-12.0, 12.0, 4096);
    auto fh = [](double h) { return std::exp(-h * h); };
    const double v = kernels::trapezoid_log<double>(g, fh);
    const double v_ser = kernels::trapezoid_log_serial<double>(g, fh);
    CHECK(std::abs(v - std::sqrt(M_PI)) <= 1e-12);
    CHECK(std::abs(v - v_ser) <= 1e-14);
}

TEST_CASE("uniform trapezoid on a full period of a trig polynomial") {
    const UniformGrid g(0.0, 1.0, 257);
    const double v = kernels::trapezoid_uniform<double>(
        g, [](double t) { return 1.0 + std::cos(2.0 * M_PI * t * 3.0); });
    CHECK(std::abs(v - 1.0) <= 1e-14);
}

TEST_CASE("map_nodes fills every slot") {
    auto v = kernels::map_nodes<double>(1000, [](std::int64_t i) {
        return static_cast<double>(i) * 0.5;
    });
    REQUIRE(v.size() == 1000);
    CHECK(v[999] == doctest::Approx(499.5));
}
