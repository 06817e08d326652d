#pragma once

#include <iosfwd>
#include <vector>

#include "axbmellin/function.hpp"
#include "axbmellin/types.hpp"

namespace axb {

// Convention, fixed throughout the library:
//   M f(s)        = int_0^inf f(x) x^s dx/x = int f(e^h) e^(s h) dh
//   M^sigma f(s1) = int f(e^h) e^(sigma h) e^(+i s1 h) dh
//   f(x)          = (1/2pi) int M^sigma f(s1) x^(-sigma - i s1) ds1
// With this convention the measured Plancherel constant is
//   int |M^sigma f(s1)|^2 ds1 = K int |f(x)|^2 x^(2 sigma - 1) dx,
// where K is what norm_identity_probe measures (see its report).

// Samples of M^sigma f along a vertical line.
struct MellinSamples {
    double sigma;
    UniformGrid s1_grid;
    std::vector<cplx> values;
    double truncation_error; // certificate tails + grid-refinement delta

    void write_csv(std::ostream& os) const;
};

struct MellinResult {
    cplx value;
    double abs_error; // tail bounds + refinement delta
};

// Certified bounds on the two quadrature tails of int |f(e^h)| e^(sigma h) dh
// outside [h_lo, h_hi].  Throws domain_error when sigma is outside the band
// the certificates cover.
struct QuadTails {
    double lower;
    double upper;
    double total() const { return lower + upper; }
};
QuadTails mellin_tail_bounds(const TestFunction& f, double sigma, double h_lo,
                             double h_hi);

// A log grid whose truncation tails (certified by f's decay data) stay below
// tol across abscissae in [sigma_lo, sigma_hi], at identity-check resolution.
LogGrid adequate_grid(const TestFunction& f, double sigma_lo, double sigma_hi,
                      double tol);
LogGrid merge_grids(const LogGrid& a, const LogGrid& b);

cplx mellin(const TestFunction& f, const ComplexPoint& s, const LogGrid& grid);
MellinResult mellin_detailed(const TestFunction& f, const ComplexPoint& s,
                             const LogGrid& grid);

MellinSamples fourier_mellin(const TestFunction& f, double sigma,
                             const UniformGrid& s1_grid, const LogGrid& grid);
// Same, on an internally chosen adequate h-grid.
MellinSamples fourier_mellin(const TestFunction& f, double sigma,
                             const UniformGrid& s1_grid);

// Fourier-Mellin inversion at a point.  Throws tolerance_error (naming the
// required extent) when the sampled line does not cover enough decay.
cplx inverse_mellin(const MellinSamples& samples, double x, double tol);

// Lemma-level identities, both sides returned with their gaps:
//   M(x f)(s) = M f(s+1)   and   M(mu(H) f)(s) = (s - 1/2) M f(s).
struct ShiftIdentityCheck {
    cplx lhs_shift, rhs_shift;
    double gap_shift;
    cplx lhs_lie, rhs_lie;
    double gap_lie;
};
ShiftIdentityCheck shift_identity_check(const TestFunction& f,
                                        const ComplexPoint& s);

// M(mu*(a^-1) f)(s) = a^(1/2 - s) M f(s).
struct ScalingCheck {
    cplx lhs, rhs;
    double gap;
};
ScalingCheck scaling_identity_check(const TestFunction& f, double a,
                                    const ComplexPoint& s);

// max over the sampled line of |s1|^n |M f(sigma + i s1)|.
double vertical_decay_probe(const TestFunction& f, double sigma, int n,
                            double s1_max);

// Measures the constant K in ||M^sigma f||^2 = K int |f|^2 x^(2 sigma - 1) dx
// and reports which of {2pi, 1, 1/2pi} it matches.
struct NormIdentityReport {
    double lhs;               // int |M^sigma f(s1)|^2 ds1
    double rhs;               // int |f(x)|^2 x^(2 sigma - 1) dx
    double measured_constant; // lhs / rhs
    const char* verdict;      // "2pi", "1", or "1/(2pi)"
    double rel_gap_to_verdict;
};
NormIdentityReport norm_identity_probe(const TestFunction& f, double sigma);

// The library-wide measured convention constant (cached; probed once on a
// reference function).
double measured_plancherel_constant();

} // namespace axb
