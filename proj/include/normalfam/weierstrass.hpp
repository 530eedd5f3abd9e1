#ifndef NORMALFAM_WEIERSTRASS_HPP
#define NORMALFAM_WEIERSTRASS_HPP

#include <utility>

#include "normalfam/extended.hpp"
#include "normalfam/jet.hpp"

namespace normalfam {

/// Invariants of a Weierstrass function y^2 = 4x^3 - g2 x - g3, together with
/// the substitution constant used when the source cubic was not in normal
/// form (x = X - shift).
struct WeierstrassParams {
    cdouble g2{0.0, 0.0};
    cdouble g3{0.0, 0.0};
    cdouble shift{0.0, 0.0};
    int series_order = 24;
    int duplication_steps = 40;  // cap, actual count is argument-driven
};

/// Reduces the cubic 4x^3 + alpha x^2 + beta x + gamma to normal form via
/// x = X - alpha/12. Throws on a degenerate (zero discriminant) cubic.
WeierstrassParams params_from_cubic(cdouble alpha, cdouble beta, cdouble gamma);

/// (wp(z), wp'(z)) for the normal form with invariants (g2, g3).
/// Truncated Laurent series inside a small disk, then argument duplication.
std::pair<cdouble, cdouble> wp_normal(cdouble g2, cdouble g3, cdouble z,
                                      int series_order = 24);

/// (wp, wp') satisfying the ORIGINAL cubic of `params` (shift applied).
/// Returns Infinity components when z is too close to a lattice point.
std::pair<ExtendedComplex, ExtendedComplex> wp_pair(const WeierstrassParams& params, cdouble z);

/// Jet of the normal-form wp at z. Higher coefficients follow from
/// wp'' = 6 wp^2 - g2/2 through the Taylor recurrence. Canonical chart.
Jet wp_jet(cdouble g2, cdouble g3, cdouble z, int order);

/// Jet of wp' at z (one extra differentiation of the same recurrence).
Jet wp_prime_jet(cdouble g2, cdouble g3, cdouble z, int order);

inline cdouble wp_discriminant(cdouble g2, cdouble g3) {
    return g2 * g2 * g2 - 27.0 * g3 * g3;
}

} // namespace normalfam

#endif
