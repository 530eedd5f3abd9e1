#ifndef NORMALFAM_JET_HPP
#define NORMALFAM_JET_HPP

#include <array>
#include <stdexcept>

#include "normalfam/extended.hpp"

namespace normalfam {

inline constexpr int max_jet_order = 6;

/// Raised when an evaluation leaves the representable range (essential
/// singularity scale magnitudes) or is indeterminate. Never silent NaN.
class eval_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncated Taylor data of a function at a point: coeff[k] = f^(k)(z) / k!.
/// When `pole` is set, the coefficients describe 1/f at the same point.
struct Jet {
    std::array<cdouble, max_jet_order + 1> coeff{};
    int order = 0;
    bool pole = false;

    cdouble c(int k) const { return coeff[static_cast<size_t>(k)]; }

    /// k-th derivative value (k! * coeff[k]) of whatever chart this jet is on.
    cdouble derivative(int k) const;

    /// Value on the Riemann sphere.
    ExtendedComplex extended_value() const;

    /// Spherical derivative |f'|/(1+|f|^2); chart-invariant, so it reads the
    /// same off either chart. Requires order >= 1.
    double spherical() const;

    static Jet constant(cdouble v, int order);
    static Jet variable(cdouble z, int order);
};

// Chart-aware jet arithmetic. Inputs may be on either chart; results are
// canonical: pole flag set exactly when |value| exceeds pole_threshold.
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
Jet jet_neg(const Jet& a);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_div(const Jet& a, const Jet& b);
Jet jet_pow(const Jet& a, long n);
Jet jet_exp(const Jet& a);
Jet jet_sin(const Jet& a);
Jet jet_cos(const Jet& a);

/// (a f + b) / (c f + d); requires ad - bc != 0.
Jet jet_mobius(const Jet& f, cdouble a, cdouble b, cdouble c, cdouble d);

/// Composition F(g) from the Taylor coefficients of F at g's value.
/// `outer` must be a normal-chart jet of F at outer-expansion point g(z);
/// `inner` is the jet of g. The result is canonicalized.
Jet jet_compose(const Jet& outer, const Jet& inner);

/// Affine reparametrization: jet of z -> f(a z + b) at z0 from the jet of f
/// at a*z0 + b (coefficients scale by a^k; exact chain rule).
Jet jet_affine_pullback(const Jet& f_at_point, cdouble a);

namespace detail {
// Plain truncated-Taylor helpers on the normal chart (no pole logic).
using Coeffs = std::array<cdouble, max_jet_order + 1>;
Coeffs plain_mul(const Coeffs& a, const Coeffs& b, int order);
Coeffs plain_div(const Coeffs& a, const Coeffs& b, int order);  // requires b[0] != 0
void check_finite(const Coeffs& a, int order);
Jet canonicalize(Coeffs v, int order);
Jet divide_core(const Coeffs& num, const Coeffs& den, int order);
} // namespace detail

} // namespace normalfam

#endif
