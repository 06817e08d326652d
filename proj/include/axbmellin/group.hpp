#pragma once

#include <functional>
#include <vector>

#include "axbmellin/function.hpp"
#include "axbmellin/types.hpp"

namespace axb {

// Haar densities in the (a, t) chart: left = da/a dt, right = da/a^2 dt.
struct HaarWeight {
    enum class Side { left, right };
    Side side;

    double density(double a, double /*t*/) const {
        return side == Side::left ? 1.0 / a : 1.0 / (a * a);
    }
    static HaarWeight left() { return {Side::left}; }
    static HaarWeight right() { return {Side::right}; }
};

// Group law a b_t * a' b_t' = (a a') b_(a' t + t').
GroupElement compose(const GroupElement& g, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);
inline GroupElement identity() { return GroupElement(1.0, 0.0); }

// mu(a b_t) f(x) = a^(-1/2) exp(-2 pi i t x / a) f(x / a), as a new lazy rule.
TestFunction act_mu(const GroupElement& g, const TestFunction& f);

// Lie algebra action: mu(H) = -1/2 - x d/dx, mu(E) = -2 pi i x.
TestFunction lie_H(const TestFunction& f);
TestFunction lie_E(const TestFunction& f);

// The log-substitution unitary I(f)(h) = e^(h/2) f(e^h), L2(R+) -> L2(R).
struct HFunction {
    std::function<cplx(double)> eval;
};
HFunction op_I(const TestFunction& f);
TestFunction op_I_inv(const HFunction& phi);

// Finite-order numeric probe of the smooth-vector criteria: estimates
// ||x^n f^(n)||_L2(0,1) and sup_{x>1} (1+x)^m |f^(n)(x)| for n, m <= n_max.
// Divergence is detected by growth of the L2 estimate under grid extension.
struct SmoothnessEntry {
    int n;
    double l2_near_zero;          // on the base window
    double l2_near_zero_extended; // window pushed 6 units further into x -> 0
    bool l2_diverging;
    std::vector<double> sup_tail; // index m = 0..n_max
};
struct SmoothnessReport {
    std::vector<SmoothnessEntry> entries;
    bool any_blow_up = false;
    bool numeric_derivatives = false;
};
SmoothnessReport smoothness_probe(const TestFunction& f, int n_max, const LogGrid& grid);

// Integral of F(a, t) against a Haar weight on a tensor grid (log in a,
// uniform in t).  Used to exercise invariance of the measures.
double haar_integral(const std::function<double(double, double)>& F,
                     const HaarWeight& w, const LogGrid& a_grid,
                     const UniformGrid& t_grid);

} // namespace axb
