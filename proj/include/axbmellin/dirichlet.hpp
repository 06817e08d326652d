#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "axbmellin/function.hpp"
#include "axbmellin/sequence.hpp"
#include "axbmellin/types.hpp"

namespace axb {

// L(s, d) = sum d_n n^-s evaluated by certified partial sums.
struct DirichletEval {
    cplx value;
    std::int64_t truncation_N;
    double tail_bound;

    std::string to_json() const; // {"re":..,"im":..,"N":..,"tail_bound":..}
};

// Upper bound on sum_{n>N} |d_n| n^-sigma, minimized over the growth and
// Ramanujan certificates (integral comparison in both cases).
double dirichlet_tail_bound(const CoefficientSequence& d, double sigma,
                            std::int64_t N);

// Requires Re s > growth_k + 1 (no continuation is attempted here).
DirichletEval eval_L(const CoefficientSequence& d, const ComplexPoint& s,
                     double tol);

// C_eps = sum n^(-1-eps) |d_n|^2 with certified truncation.
double c_epsilon(const CoefficientSequence& d, double eps, double tol);
// Upper bound on the remainder sum_{n>N} n^(-1-eps) |d_n|^2.
double c_epsilon_tail(const CoefficientSequence& d, double eps, std::int64_t N);

// Certified cutoff for sum_n |d_n| |f(a n)|: smallest N whose remainder
// bound is <= tol, or tolerance_error with the diagnostic N if the budget
// cap cannot reach it.
std::int64_t series_cutoff(const CoefficientSequence& d, const TestFunction& f,
                           double a, double tol);
double series_tail(const CoefficientSequence& d, const TestFunction& f,
                   double a, std::int64_t N);

// Antiderivative embedding: F(x) = x^(-k-2) sum_{n<=x} d_n, so that
// d = (x^(k+2) d/dx + (k+2) x^(k+1)) F with F in L2(R+).
struct EmbeddedDistribution {
    TestFunction F;
    int k;
};
EmbeddedDistribution embed_distribution(const CoefficientSequence& d);

// <d, f> two ways: directly as sum d_n f(n), and through the antiderivative
// via integration by parts: -int F(x) d/dx(x^(k+2) f(x)) dx.
struct WeakPairingCheck {
    cplx direct;
    cplx via_F;
    double gap;
};
WeakPairingCheck weak_pairing_check(const CoefficientSequence& d,
                                    const TestFunction& f, double tol);

// User-supplied analytic continuation s -> L(s, d), needed below
// the absolute-convergence abscissa.
using ContinuationRule = std::function<cplx(cplx)>;

// <d, f> = (1/2pi) int L(r + i s1) M f(r + i s1) ds1 by line quadrature.
// Without a continuation rule this requires r > growth_k + 1.
cplx pairing_via_mellin(const CoefficientSequence& d, const TestFunction& f,
                        double r, double tol,
                        const ContinuationRule& continuation = {});

// <mu(a) d, f> = (1/2pi) int L(r+is1) M f(r+is1) a^(1/2-r-is1) ds1
//             = sum_n a^(1/2) d_n f(a n).
cplx pairing_action_a(const CoefficientSequence& d, const TestFunction& f,
                      double a, double r, double tol,
                      const ContinuationRule& continuation = {});

} // namespace axb
