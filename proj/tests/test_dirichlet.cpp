#include <cmath>
#include <numbers>
#include <random>

#include "axbmellin/dirichlet.hpp"
#include "axbmellin/errors.hpp"
#include "axbmellin/function.hpp"
#include "axbmellin/kernels.hpp"
#include "doctest.h"

using namespace axb;
using std::numbers::pi;

// ---------------------------------------------------------------------------
// test-side oracles
// ---------------------------------------------------------------------------

// zeta(sigma) bracketed by partial sums plus the integral comparison
static std::pair<double, double> zeta_bracket(double sigma, std::int64_t N) {
    double s = 0.0;
    for (std::int64_t n = N; n >= 1; --n) s += std::pow(static_cast<double>(n), -sigma);
    const double lo = s + std::pow(static_cast<double>(N + 1), 1.0 - sigma) / (sigma - 1.0);
    const double hi = s + std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0);
    return {lo, hi};
}

// alternating zeta via Borwein's accelerated series; entire in s
static cplx eta_borwein(cplx s) {
    const int n = 48;
    std::vector<double> dk(n + 1);
    double t = 1.0 / n;
    dk[0] = n * t;
    for (int i = 1; i <= n; ++i) {
        t *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
        dk[i] = dk[i - 1] + n * t;
    }
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * (dk[n] - dk[k]) *
               std::exp(-s * std::log(static_cast<double>(k + 1)));
    }
    return acc / dk[n];
}

TEST_CASE("test oracle sanity: Borwein eta") {
    CHECK(std::abs(eta_borwein(cplx(1.0, 0.0)) - std::log(2.0)) <= 1e-12);
    CHECK(std::abs(eta_borwein(cplx(2.0, 0.0)) - pi * pi / 12.0) <= 1e-12);
}

// ---------------------------------------------------------------------------
// eval_L
// ---------------------------------------------------------------------------

TEST_CASE("eval_L: zeta(2) and zeta(4) with honest tails") {
    auto ones = builtin_sequence("ones");
    const double z2 = pi * pi / 6.0;
    const double z4 = pi * pi * pi * pi / 90.0;

    // the independent bracket oracle agrees with the constants
    {
        const auto [lo, hi] = zeta_bracket(2.0, 1'000'000);
        CHECK(lo <= z2);
        CHECK(z2 <= hi);
    }

    const DirichletEval e2 = eval_L(ones, ComplexPoint(2.0, 0.0), 5e-9);
    CHECK(std::abs(e2.value - z2) <= 1e-8);
    CHECK(e2.tail_bound <= 5e-9);
    CHECK(std::abs(e2.value - z2) <= e2.tail_bound + 1e-12);

    const DirichletEval e4 = eval_L(ones, ComplexPoint(4.0, 0.0), 5e-9);
    CHECK(std::abs(e4.value - z4) <= 1e-8);
}

TEST_CASE("eval_L: single term sequence is exact") {
    auto sd = builtin_sequence("single_delta");
    // the partial sum is exactly d_1 = 1; the certificates still govern how
    // far the sum must run, so ask only what they can certify
    const std::pair<double, double> cases[] = {{1.5, 1e-3}, {2.0, 1e-8}, {7.0, 1e-10}};
    for (const auto& [sig, tol] : cases) {
        const DirichletEval e = eval_L(sd, ComplexPoint(sig, 3.0), tol);
        CHECK(std::abs(e.value - 1.0) <= 1e-14);
    }
}

TEST_CASE("eval_L: divergence domain error, continuation not attempted") {
    auto ones = builtin_sequence("ones");
    CHECK_THROWS_AS(eval_L(ones, ComplexPoint(1.0, 0.0), 1e-6), domain_error);
    CHECK_THROWS_AS(eval_L(ones, ComplexPoint(0.75, 2.0), 1e-6), domain_error);
    auto div = builtin_sequence("divisor"); // k = 1
    CHECK_THROWS_AS(eval_L(div, ComplexPoint(1.9, 0.0), 1e-6), domain_error);
}

TEST_CASE("eval_L: tail honesty under tol halving") {
    auto ones = builtin_sequence("ones");
    for (double sig : {2.5, 3.0}) {
        double tol = 1e-4;
        cplx prev = eval_L(ones, ComplexPoint(sig, 1.0), tol).value;
        for (int i = 0; i < 6; ++i) {
            tol *= 0.5;
            const cplx cur = eval_L(ones, ComplexPoint(sig, 1.0), tol).value;
            CHECK(std::abs(cur - prev) <= 2.0 * tol); // old tol
            prev = cur;
        }
    }
}

TEST_CASE("eval_L: tail_bound dominates the true remainder") {
    auto ones = builtin_sequence("ones");
    const DirichletEval loose = eval_L(ones, ComplexPoint(3.0, 0.0), 1e-6);
    const DirichletEval tight = eval_L(ones, ComplexPoint(3.0, 0.0), 1e-12);
    CHECK(std::abs(loose.value - tight.value) <= loose.tail_bound);
}

// ---------------------------------------------------------------------------
// convolution ring
// ---------------------------------------------------------------------------

TEST_CASE("convolve: divisor counting and the ring identity") {
    auto ones = builtin_sequence("ones");
    auto j = convolve(ones, ones);
    CHECK(j.d(6) == cplx(4.0));
    CHECK(j.d(1) == cplx(1.0));
    CHECK(j.d(12) == cplx(6.0));

    auto sd = builtin_sequence("single_delta");
    auto div = builtin_sequence("divisor");
    auto same = convolve(sd, div);
    for (std::int64_t n : {1, 2, 6, 17, 100})
        CHECK(same.d(n) == div.d(n));

    CHECK_NOTHROW(audit_growth(j, 10'000));
}

TEST_CASE("ring property: L(3, ones#ones) = zeta(3)^2") {
    auto ones = builtin_sequence("ones");
    auto j = convolve(ones, ones);
    const DirichletEval z3 = eval_L(ones, ComplexPoint(3.0, 0.0), 1e-10);
    const DirichletEval Lj = eval_L(j, ComplexPoint(3.0, 0.0), 1e-6);
    CHECK(std::abs(Lj.value - z3.value * z3.value) <= 2e-6);
}

TEST_CASE("ring homomorphism at random points, gap within combined tails") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> us(3.0, 6.0), ut(-4.0, 4.0);
    auto ones = builtin_sequence("ones");
    auto alt = builtin_sequence("alternating");
    const std::pair<CoefficientSequence, CoefficientSequence> pairs[] = {
        {ones, ones}, {ones, alt}, {alt, alt}};
    for (int i = 0; i < 10; ++i) {
        const ComplexPoint s(us(rng), ut(rng));
        for (const auto& [d1, d2] : pairs) {
            auto j = convolve(d1, d2);
            const double tol = 1e-7;
            const DirichletEval L1 = eval_L(d1, s, tol);
            const DirichletEval L2 = eval_L(d2, s, tol);
            const DirichletEval Lj = eval_L(j, s, tol);
            const double combined =
                Lj.tail_bound +
                (std::abs(L1.value) + std::abs(L2.value) + 1.0) * tol + 1e-10;
            CHECK(std::abs(Lj.value - L1.value * L2.value) <= combined);
        }
    }
}

// ---------------------------------------------------------------------------
// C_eps
// ---------------------------------------------------------------------------

TEST_CASE("c_epsilon values") {
    auto ones = builtin_sequence("ones");
    CHECK(std::abs(c_epsilon(ones, 1.0, 5e-9) - pi * pi / 6.0) <= 1e-8);
    CHECK(std::abs(c_epsilon(ones, 3.0, 1e-9) - pi * pi * pi * pi / 90.0) <= 1e-8);
    auto sd = builtin_sequence("single_delta");
    // the partial sum is exactly 1 at any eps; only the certified tail
    // depends on the requested tolerance
    CHECK(std::abs(c_epsilon(sd, 0.5, 1e-3) - 1.0) <= 1e-12);
    CHECK(std::abs(c_epsilon(sd, 4.0, 1e-10) - 1.0) <= 1e-12);
}

TEST_CASE("c_epsilon rejects non-summable certificates") {
    CoefficientSequence growy;
    growy.name = "k1_no_ramanujan";
    growy.coeff = [](std::int64_t n) -> cplx { return static_cast<double>(n); };
    growy.growth_k = 1;
    growy.growth_C = 1.0;
    CHECK_THROWS_AS(c_epsilon(growy, 1.0, 1e-6), domain_error);
}

// ---------------------------------------------------------------------------
// the antiderivative embedding
// ---------------------------------------------------------------------------

TEST_CASE("embed_distribution: piecewise values") {
    auto sd = builtin_sequence("single_delta");
    auto [F, k] = embed_distribution(sd);
    CHECK(k == 0);
    CHECK(F(0.5) == cplx(0.0));
    CHECK(std::abs(F(1.0) - 1.0) <= 1e-15);
    CHECK(std::abs(F(2.5) - std::pow(2.5, -2.0)) <= 1e-15);

    auto ones = builtin_sequence("ones");
    auto [G, k1] = embed_distribution(ones);
    CHECK(k1 == 0);
    for (double x : {1.3, 2.0, 7.9, 100.2}) {
        const double want = std::floor(x) * std::pow(x, -2.0);
        CHECK(std::abs(G(x) - want) <= 1e-13 * (1.0 + want));
    }
}

TEST_CASE("embedded antiderivative is square integrable (audit)") {
    auto ones = builtin_sequence("ones");
    auto [F, k] = embed_distribution(ones);
    (void)k;
    auto norm_on = [&](double h_hi) {
        const LogGrid g(0.0, h_hi, 4096);
        return kernels::trapezoid_log<double>(
            g, [&](double h) { return std::norm(F(std::exp(h))) * std::exp(h); });
    };
    const double n1 = norm_on(10.0);
    const double n2 = norm_on(14.0);
    CHECK(std::isfinite(n2));
    CHECK(n2 - n1 <= 1e-3 * n1); // tail already converged
}

TEST_CASE("weak pairing: direct sum against the integrated-by-parts route") {
    auto sd = builtin_sequence("single_delta");
    auto ones = builtin_sequence("ones");
    auto f = builtin_exp_decay(0.0);

    const WeakPairingCheck a = weak_pairing_check(sd, f, 1e-7);
    CHECK(std::abs(a.direct - std::exp(-1.0)) <= 1e-10);
    CHECK(a.gap <= 1e-6 * (1.0 + std::abs(a.direct)));

    const WeakPairingCheck b = weak_pairing_check(ones, f, 1e-7);
    CHECK(std::abs(b.direct - 1.0 / (std::exp(1.0) - 1.0)) <= 2.5e-8);
    CHECK(b.gap <= 1e-6 * (1.0 + std::abs(b.direct)));

    auto lg = builtin_log_gaussian(1.0, 0.0);
    const WeakPairingCheck c = weak_pairing_check(ones, lg, 1e-7);
    CHECK(c.gap <= 1e-6 * (1.0 + std::abs(c.direct)));
}

// ---------------------------------------------------------------------------
// Mellin-line pairings
// ---------------------------------------------------------------------------

// direct sum oracle, independent of the line quadrature
static cplx direct_sum(const CoefficientSequence& d, const TestFunction& f,
                       double a = 1.0) {
    cplx acc = 0.0;
    for (std::int64_t n = 1; n <= 200'000; ++n) {
        const cplx term = d.d(n) * f(a * static_cast<double>(n));
        acc += std::sqrt(a) * term;
        if (n > 64 && std::abs(term) < 1e-18) break;
    }
    return acc;
}

TEST_CASE("pairing_via_mellin at the spec points") {
    auto ones = builtin_sequence("ones");
    auto f = builtin_exp_decay(0.0);
    const cplx p = pairing_via_mellin(ones, f, 2.0, 1e-6);
    CHECK(std::abs(p - 1.0 / (std::exp(1.0) - 1.0)) <= 1e-6);

    auto sd = builtin_sequence("single_delta");
    auto lg = builtin_log_gaussian(1.0, 0.0);
    const cplx q = pairing_via_mellin(sd, lg, 2.0, 1e-6);
    CHECK(std::abs(q - lg(1.0)) <= 1e-6);
}

TEST_CASE("pairing equals the direct sum across builtins at r in {2,3}") {
    const CoefficientSequence seqs[] = {
        builtin_sequence("ones"), builtin_sequence("alternating"),
        builtin_sequence("single_delta"), builtin_sequence("divisor")};
    const TestFunction fns[] = {builtin_exp_decay(0.0),
                                builtin_log_gaussian(1.0, 0.0),
                                builtin_bump(1.0, 2.0)};
    for (const auto& d : seqs) {
        for (const auto& f : fns) {
            for (double r : {2.0, 3.0}) {
                if (!(r > d.growth_k + 1.0)) continue; // op precondition
                const cplx got = pairing_via_mellin(d, f, r, 1e-6);
                const cplx want = direct_sum(d, f);
                CHECK(std::abs(got - want) <= 1e-6);
            }
        }
    }
}

TEST_CASE("pairing is linear in the sequence") {
    auto ones = builtin_sequence("ones");
    CoefficientSequence scaled; // fresh: copies would share the memo cache
    scaled.name = "2.5*ones";
    scaled.coeff = [](std::int64_t) -> cplx { return 2.5; };
    scaled.coeff_block = [](std::int64_t, std::int64_t count, cplx* out) {
        std::fill(out, out + count, cplx(2.5));
    };
    scaled.growth_k = 0;
    scaled.growth_C = 2.5;
    scaled.ramanujan = [](double) { return 2.5; };
    auto f = builtin_exp_decay(1.0);
    const cplx p1 = pairing_via_mellin(ones, f, 2.0, 1e-8);
    const cplx p2 = pairing_via_mellin(scaled, f, 2.0, 1e-8);
    CHECK(std::abs(p2 - 2.5 * p1) <= 1e-7);
}

TEST_CASE("pairing in the strip requires a continuation rule") {
    auto ones = builtin_sequence("ones");
    auto f = builtin_exp_decay(0.0);
    CHECK_THROWS_AS(pairing_via_mellin(ones, f, 0.8, 1e-5), domain_error);
}

TEST_CASE("pairing with an injected continuation below the abscissa") {
    // L(s, alternating) = eta(s), entire and polynomially bounded, so the
    // strip extension applies with the test-supplied rule
    auto alt = builtin_sequence("alternating");
    auto f = builtin_exp_decay(0.0);
    const cplx want = direct_sum(alt, f); // 1/(e+1)
    CHECK(std::abs(want - 1.0 / (std::exp(1.0) + 1.0)) <= 1e-12);
    for (double r : {0.8, 1.0}) {
        const cplx got = pairing_via_mellin(alt, f, r, 1e-5, eta_borwein);
        CHECK(std::abs(got - want) <= 1e-5);
    }
}

TEST_CASE("pairing_action_a") {
    auto sd = builtin_sequence("single_delta");
    auto ones = builtin_sequence("ones");
    auto f = builtin_exp_decay(0.0);

    // a = 1 reduces to the plain pairing
    const cplx p1 = pairing_action_a(ones, f, 1.0, 2.0, 1e-7);
    const cplx p0 = pairing_via_mellin(ones, f, 2.0, 1e-7);
    CHECK(std::abs(p1 - p0) <= 1e-7);

    const cplx q = pairing_action_a(sd, f, 2.0, 2.0, 1e-6);
    CHECK(std::abs(q - std::sqrt(2.0) * std::exp(-2.0)) <= 1e-6);

    const cplx w = pairing_action_a(ones, f, 2.0, 2.0, 1e-6);
    CHECK(std::abs(w - std::sqrt(2.0) / (std::exp(2.0) - 1.0)) <= 1e-6);

    for (double a : {1.0 / 3.0, 0.5, 3.0}) {
        const cplx got = pairing_action_a(ones, f, a, 3.0, 1e-6);
        CHECK(std::abs(got - direct_sum(ones, f, a)) <= 1e-6);
    }
}

TEST_CASE("DirichletEval serializes to JSON") {
    auto ones = builtin_sequence("ones");
    const DirichletEval e = eval_L(ones, ComplexPoint(3.0, 0.0), 1e-8);
    const std::string j = e.to_json();
    CHECK(j.find("\"re\":") != std::string::npos);
    CHECK(j.find("\"im\":") != std::string::npos);
    CHECK(j.find("\"N\":") != std::string::npos);
    CHECK(j.find("\"tail_bound\":") != std::string::npos);
    CHECK(j.front() == '{');
    CHECK(j.back() == '}');
}
