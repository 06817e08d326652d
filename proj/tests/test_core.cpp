#include <cmath>
#include <random>

#include "axbmellin/errors.hpp"
#include "axbmellin/function.hpp"
#include "axbmellin/mellin.hpp"
#include "axbmellin/sequence.hpp"
#include "axbmellin/types.hpp"
#include "doctest.h"

using namespace axb;

TEST_CASE("builtin sequences: family values") {
    auto ones = builtin_sequence("ones");
    CHECK(ones.d(5) == cplx(1.0));
    auto sd = builtin_sequence("single_delta");
    CHECK(sd.d(1) == cplx(1.0));
    CHECK(sd.d(2) == cplx(0.0));
    CHECK(sd.d(17) == cplx(0.0));
    auto div = builtin_sequence("divisor");
    CHECK(div.d(6) == cplx(4.0)); // divisors of 6: 1,2,3,6
    CHECK(div.d(12) == cplx(6.0));
    auto alt = builtin_sequence("alternating");
    CHECK(alt.d(1) == cplx(1.0));
    CHECK(alt.d(2) == cplx(-1.0));
    CHECK_THROWS_AS(builtin_sequence("nope"), config_error);
}

TEST_CASE("builtin sequences: growth certificates audit to 1e4") {
    for (const char* name : {"ones", "alternating", "single_delta", "divisor"})
        CHECK_NOTHROW(audit_growth(builtin_sequence(name), 10'000));
}

TEST_CASE("audit catches a lying certificate") {
    CoefficientSequence bad;
    bad.name = "liar";
    bad.coeff = [](std::int64_t n) -> cplx { return static_cast<double>(n); };
    bad.growth_k = 0;
    bad.growth_C = 1.0;
    CHECK_THROWS_AS(audit_growth(bad, 100), data_error);
}

TEST_CASE("coefficient block fill agrees with the rule") {
    auto div = builtin_sequence("divisor");
    cplx block[16];
    div.fill(5, 16, block);
    for (int i = 0; i < 16; ++i) CHECK(block[i] == div.d(5 + i));
}

TEST_CASE("chart conversion") {
    auto [T, a] = chart_convert(GroupElement(2.0, 6.0));
    CHECK(T == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(a == 2.0);
    auto [T2, a2] = chart_convert(GroupElement(1.0, -4.5));
    CHECK(T2 == -4.5);
    CHECK(a2 == 1.0);
    auto [T3, a3] = chart_convert(GroupElement(4.0, 2.0));
    CHECK(T3 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a3 == 4.0);
}

TEST_CASE("chart round trip to 1e-14 relative") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ua(-3.0, 3.0), ut(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g(std::exp(ua(rng)), ut(rng));
        const auto c = chart_convert(g);
        const GroupElement back = from_bTa(c.T, c.a);
        CHECK(std::abs(back.a - g.a) <= 1e-14 * std::abs(g.a));
        CHECK(std::abs(back.t - g.t) <= 1e-14 * (std::abs(g.t) + 1.0));
    }
}

TEST_CASE("builtin functions: boundary behavior") {
    auto e = builtin_exp_decay(0.0);
    CHECK(std::abs(e(1e-14) - cplx(1.0)) <= 2e-14); // f -> 1 as x -> 0+
    CHECK(std::abs(e(1.0) - cplx(std::exp(-1.0))) <= 1e-16);
    auto lg = builtin_log_gaussian(1.0, 0.0);
    CHECK(lg(1.0) == cplx(1.0)); // peak value
    auto b = builtin_bump(1.0, 2.0);
    CHECK(b(3.0) == cplx(0.0)); // exactly zero outside support
    CHECK(b(0.5) == cplx(0.0));
    CHECK(std::abs(b(1.5)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(builtin_exp_decay(-1.0), config_error);
    CHECK_THROWS_AS(builtin_log_gaussian(0.0, 0.0), config_error);
    CHECK_THROWS_AS(builtin_bump(2.0, 1.0), config_error);
}

TEST_CASE("builtin functions: decay certificates audit") {
    const LogGrid grid = LogGrid::standard();
    CHECK_NOTHROW(audit_decay(builtin_exp_decay(0.0), grid));
    CHECK_NOTHROW(audit_decay(builtin_exp_decay(1.5), grid));
    CHECK_NOTHROW(audit_decay(builtin_log_gaussian(1.0, 0.0), grid));
    CHECK_NOTHROW(audit_decay(builtin_log_gaussian(2.0, 1.5), grid));
    CHECK_NOTHROW(audit_decay(builtin_bump(1.0, 2.0), grid));
    CHECK_NOTHROW(audit_decay(builtin_bump(0.25, 0.5), grid));
}

TEST_CASE("mellin oracle matches quadrature at s = 2, 3") {
    const LogGrid grid = LogGrid::standard();
    for (double alpha : {0.0, 1.0}) {
        auto f = builtin_exp_decay(alpha);
        for (double s : {2.0, 3.0}) {
            const cplx oracle = f.mellin_oracle(cplx(s, 0.0));
            const cplx quad = mellin(f, ComplexPoint(s, 0.0), grid);
            CHECK(std::abs(quad - oracle) <= 1e-8 * std::abs(oracle));
        }
    }
}

TEST_CASE("grid and point validation") {
    CHECK_THROWS_AS(LogGrid(1.0, -1.0, 100), config_error);
    CHECK_THROWS_AS(LogGrid(-1.0, 1.0, 1), config_error);
    CHECK_THROWS_AS(ComplexPoint(std::nan(""), 0.0), config_error);
    CHECK_THROWS_AS(GroupElement(-2.0, 0.0), config_error);
    const LogGrid g = LogGrid::standard();
    CHECK(g.node(0) == -12.0);
    CHECK(g.node(g.n_points - 1) == doctest::Approx(12.0));
    CHECK(g.x(0) == doctest::Approx(std::exp(-12.0)));
}

TEST_CASE("divisor growth constant is a valid certificate on a long prefix") {
    auto div = builtin_sequence("divisor");
    for (double tau : {0.25, 0.5, 1.0}) {
        const double C = divisor_growth_constant(tau);
        for (std::int64_t n = 1; n <= 20'000; ++n) {
            CHECK(std::abs(div.d(n)) <=
                  C * std::pow(static_cast<double>(n), tau) * (1.0 + 1e-12));
        }
    }
}
