#pragma once

#include <functional>
#include <optional>
#include <string>

#include "axbmellin/types.hpp"

namespace axb {

// |f(x)| <= C0 * x^(delta - 1/2) for x <= 1.  delta may be negative.
struct ZeroDecay {
    double C0 = 1.0;
    double delta = 0.5;
};

struct Support {
    double lo;
    double hi;
};

// A function on R+ with evaluation/derivative rules and decay certificates.
// The certificates are data, not proofs: audit_decay samples them and any
// violation is a data error.  Every quadrature tail bound in the library is
// derived from these fields.
struct TestFunction {
    std::string name;
    std::function<cplx(double)> eval;
    std::function<cplx(double)> deriv; // empty => numeric central difference
    ZeroDecay zero_decay;
    // m -> C_m with |f(x)| <= C_m x^-m for x > 1 (any m >= 0 the rule accepts).
    std::function<double(int)> infinity_decay;
    std::optional<Support> support;
    std::function<cplx(cplx)> mellin_oracle; // optional closed form

    // Certificates for f' when derivable in closed form (builtins fill
    // these); lie_H needs them to certify its output.
    std::optional<ZeroDecay> deriv_zero_decay;
    std::function<double(int)> deriv_infinity_decay;

    // Set when a transform had to fall back to numeric differentiation or
    // to sampled (rather than derived) certificates.
    bool numeric_derivative = false;
    bool estimated_certificates = false;

    // Evaluation respecting bounded support exactly.
    cplx operator()(double x) const {
        if (support && (x < support->lo || x > support->hi)) return 0.0;
        return eval(x);
    }

    // f'(x): closed-form rule when present, else central difference with
    // step max(1e-6, 1e-6 x).
    cplx d1(double x) const {
        if (deriv) {
            if (support && (x < support->lo || x > support->hi)) return 0.0;
            return deriv(x);
        }
        const double h = std::max(1e-6, 1e-6 * x);
        return ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
    }

    // Certified bound on sup |f| over R+.
    double sup_bound() const;

    // Smallest sigma (exclusive) for which the x->0 tail of the Mellin
    // integrand is certified integrable.  -inf when the support is bounded
    // away from zero.
    double sigma_min() const;
};

// f(x) = x^alpha e^-x, alpha >= 0.  Carries mellin_oracle Gamma(s + alpha).
TestFunction builtin_exp_decay(double alpha);
// f(x) = exp(-beta (ln x - c)^2), beta > 0.
TestFunction builtin_log_gaussian(double beta, double c);
// Smooth bump supported exactly on [x0, x1], 0 < x0 < x1, peak value 1.
TestFunction builtin_bump(double x0, double x1);

struct FunctionParams {
    double alpha = 0.0;
    double beta = 1.0;
    double c = 0.0;
    double x0 = 1.0;
    double x1 = 2.0;
};
TestFunction builtin_function(const std::string& name, const FunctionParams& p = {});

// Sampled check of the decay certificates on an audit grid; throws
// data_error on violation.
void audit_decay(const TestFunction& f, const LogGrid& grid);

// x -> e^(-2 pi i T x) f(x).  |.|-certificates unchanged.
TestFunction modulate(const TestFunction& f, double T);
// x -> a^(1/2) f(a x)  (the mu*(a^-1) action on the function side).
TestFunction scale_arg(const TestFunction& f, double a);
// Pointwise restriction to [1, inf) and (0, 1).
TestFunction restrict_plus(const TestFunction& f);
TestFunction restrict_minus(const TestFunction& f);

} // namespace axb
