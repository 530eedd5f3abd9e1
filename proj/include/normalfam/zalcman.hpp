#ifndef NORMALFAM_ZALCMAN_HPP
#define NORMALFAM_ZALCMAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normalfam/criterion.hpp"
#include "normalfam/expr.hpp"

namespace normalfam {

struct GridPoint {
    cdouble xi;
    Jet jet;           // jet of g_n at xi (order k_max), chart-flagged
    bool failed = false;
};

struct TraceStep {
    int index = 0;
    double search_radius = 0.0;
    cdouble z_n{0.0, 0.0};
    double weighted_max = 0.0;   // max of (R - |z - z0|) h#(z)
    double rho = 0.0;            // 1 / h#(z_n)
    std::vector<GridPoint> grid;
};

/// One rescaling run: per-step selection data and sampled grids of the
/// rescaled functions g_n(xi) = f_n(z_n + rho_n xi).
struct RescalingTrace {
    std::vector<TraceStep> steps;
    std::string description;
    double xi_radius = 2.0;
    int k_max = 2;
    bool conclusive = false;  // rho strictly decreasing and shrinking

    // Members backing each step (translates share one handle).
    bool translate_mode = true;
    FunctionHandle base;
    std::vector<FunctionHandle> members;
    cdouble center{0.0, 0.0};

    const FunctionHandle& member(size_t step) const;
    /// Jet of g_n at xi (fresh evaluation; grids are samples of the same map).
    Jet eval_g(size_t step, cdouble xi, int order) const;
};

struct GridSpec {
    double xi_radius = 2.0;
    int rings = 18;
    int spokes = 44;
};

/// Rescaling run for the translate family {h(z + w)}: per step n the point
/// z_n maximizes (R_n - |z - z0|) h#(z) over |z - z0| <= R_n and
/// rho_n = 1/h#(z_n), so g_n#(0) = 1 by construction.
RescalingTrace zalcman_extract(const FunctionHandle& h, cdouble z0,
                               const std::vector<double>& schedule, const GridSpec& grid,
                               int k_max, long budget_per_step, uint64_t seed);

/// Same construction for an explicit sequence of members searched over a
/// fixed disk (non-translate families).
RescalingTrace zalcman_extract_sequence(const std::vector<FunctionHandle>& members, cdouble center,
                                        double region_radius, const GridSpec& grid, int k_max,
                                        long budget_per_step, uint64_t seed);

/// sup of g_n# over |xi| <= xi_cap at the final step stays within 1 + slack.
bool check_bounded_blowup(const RescalingTrace& trace, double xi_cap, double slack,
                          double* measured = nullptr);

/// Chordal distance from every grid sample to `a` stays >= delta at the final
/// two steps (Hurwitz inheritance of omitted values).
bool check_inherited_omission(const RescalingTrace& trace, const ExtendedComplex& a, double delta,
                              double* worst = nullptr);

struct BCheckPoint {
    cdouble xi;
    cdouble g_prime;
    double error;  // |g' - rho b|
    bool comply;
};

/// At refined b-points of g_n (final two steps): |g_n'(xi) - rho_n b| must
/// stay within delta (1 + |b|). Reproduces the derivative identity of the
/// rescaled b-point computation.
bool check_inherited_B(const RescalingTrace& trace, cdouble b, double delta,
                       std::vector<BCheckPoint>* witness = nullptr);

/// At refined c-points of g_n (final two steps): |g_n^(k)(xi)| <= rho^k M +
/// delta for k = 1..m-1 (reciprocal chart for c = infinity).
bool check_inherited_C(const RescalingTrace& trace, const ExtendedComplex& c, int m, double M,
                       double delta, double* worst = nullptr);

// -------------------------------------------------------------- probes -----

struct ProbeOptions {
    double seed_delta = 0.05;  // chordal closeness that triggers refinement
    double tol = 1e-2;         // derivative comparison tolerance
    uint64_t seed = 0xC0FFEE;
};

struct ConditionResult {
    std::string condition;
    bool pass = true;
    int refined_points = 0;
    int violations = 0;
    int unresolved = 0;
    double worst = 0.0;
    std::vector<cdouble> violation_points;
};

struct ProbeReport {
    std::vector<ConditionResult> conditions;
    bool pass = true;
    long samples = 0;
};

/// Numeric spot-check (not a proof) of the hypothesis triple on h over a
/// disk. Near-level samples are refined to actual level points before the
/// derivative conditions are tested; seeds that converge to no level point
/// count as unresolved, not violations. The profile is taken as raw
/// conditions (no structural validation).
ProbeReport hypothesis_probe(const FunctionHandle& h, const ConditionProfile& profile,
                             cdouble center, double radius, long samples,
                             const ProbeOptions& opts = {});

/// Set-sharing spot-check: wherever h lands on a value of S, h' must land on
/// some value of S within tol.
ProbeReport set_sharing_probe(const FunctionHandle& h, const std::vector<cdouble>& S,
                              cdouble center, double radius, long samples,
                              const ProbeOptions& opts = {});

/// Refines a seed towards a level point of h - c (roots of 1/h for infinite
/// c). Returns the refined point when Newton converges.
std::optional<cdouble> refine_level_point(const FunctionHandle& h, const ExtendedComplex& c,
                                          cdouble seed_point, double region_bound);

} // namespace normalfam

#endif
