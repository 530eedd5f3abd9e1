#ifndef NORMALFAM_SPHERE_HPP
#define NORMALFAM_SPHERE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "normalfam/expr.hpp"

namespace normalfam {

/// Lower-bound estimate of sup f# over a disk: stratified sampling, ray
/// sweeps through the incumbent, then multi-scale local polish. Deterministic
/// for fixed (budget, seed). Evaluation failures contribute nothing (the
/// spherical derivative vanishes at essential-blowup scales).
struct SupResult {
    double sup = 0.0;             // max of weight(z) * f#(z)
    cdouble argmax{0.0, 0.0};
    double sph_at_argmax = 0.0;   // unweighted f# at argmax
    long evals = 0;
    long failures = 0;
};

SupResult sup_sph_on_disk(const FunctionHandle& f, cdouble center, double radius, long budget,
                          uint64_t seed);

/// Same search maximizing (radius - |z - center|) * f#(z), the selection
/// functional of the rescaling construction.
SupResult sup_weighted_on_disk(const FunctionHandle& f, cdouble center, double radius, long budget,
                               uint64_t seed);

/// Ahlfors-Shimizu characteristic T(r) = (1/pi) * integral over |z| <= r of
/// (f#)^2 ln(r/|z|) dA, by adaptive polar quadrature with a fixed refinement
/// budget. Sets *converged=false when refinement stalls above the target.
double ahlfors_shimizu_T(const FunctionHandle& f, double r, long budget, uint64_t seed,
                         bool* converged = nullptr);

struct GrowthReport {
    std::vector<double> radii;
    std::vector<double> sup_values;   // sup of f# on each closed disk
    std::vector<double> T_values;
    std::vector<double> local_slopes; // consecutive d(log T)/d(log r)
    double order_estimate = 0.0;      // least-squares slope of log T vs log r
    bool superpolynomial = false;
    long budget_used = 0;
};

/// Growth report over log-spaced radii. Superpolynomial flag: local slopes
/// increase monotonically by more than 1.0 across the window.
GrowthReport order_estimate(const FunctionHandle& f, double r_min, double r_max, int steps,
                            long budget, uint64_t seed);

struct MartyReport {
    std::vector<double> radii;
    std::vector<double> sup_values;
    std::vector<cdouble> argmax;
    double log_sup_slope = 0.0;  // least-squares slope of ln sup vs radius
    bool evidence = false;       // slope >= 1: sup grows at least e-fold per unit radius
};

/// Marty-criterion probe for the translate family {h(z + w)}: unbounded f#
/// over expanding disks is evidence of non-normality at z0.
MartyReport marty_probe(const FunctionHandle& h, cdouble z0, const std::vector<double>& radii,
                        long budget, uint64_t seed);

/// Stratified f# samples over a disk, for CSV emission: (re, im, sph_deriv).
std::vector<std::array<double, 3>> sph_samples(const FunctionHandle& f, cdouble center,
                                               double radius, long count, uint64_t seed);

} // namespace normalfam

#endif
