#include "normalfam/zalcman.hpp"

#include <algorithm>
#include <cmath>

#include "normalfam/sphere.hpp"

namespace normalfam {

const FunctionHandle& RescalingTrace::member(size_t step) const {
    if (translate_mode) return base;
    return members.at(step);
}

Jet RescalingTrace::eval_g(size_t step, cdouble xi, int order) const {
    const TraceStep& st = steps.at(step);
    Jet at_point = eval_jet(member(step), st.z_n + st.rho * xi, order);
    return jet_affine_pullback(at_point, st.rho);
}

namespace {

std::vector<GridPoint> sample_grid(const RescalingTrace& trace, size_t step, const GridSpec& spec,
                                   int k_max) {
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<size_t>(spec.rings) * spec.spokes + 1);
    auto push = [&](cdouble xi) {
        GridPoint gp;
        gp.xi = xi;
        try {
            gp.jet = trace.eval_g(step, xi, k_max);
        } catch (const eval_error&) {
            gp.failed = true;
        }
        grid.push_back(gp);
    };
    push(cdouble(0.0, 0.0));
    for (int r = 1; r <= spec.rings; ++r) {
        double rr = spec.xi_radius * r / spec.rings;
        for (int s = 0; s < spec.spokes; ++s) {
            double th = 2.0 * M_PI * s / spec.spokes + 0.5 * M_PI * (r % 2) / spec.spokes;
            push(cdouble(rr * std::cos(th), rr * std::sin(th)));
        }
    }
    return grid;
}

void finish_trace(RescalingTrace& trace, const GridSpec& spec, int k_max) {
    for (size_t k = 0; k < trace.steps.size(); ++k)
        trace.steps[k].grid = sample_grid(trace, k, spec, k_max);
    bool decreasing = true;
    for (size_t k = 0; k + 1 < trace.steps.size(); ++k)
        if (!(trace.steps[k + 1].rho < trace.steps[k].rho)) decreasing = false;
    bool shrinking = !trace.steps.empty() &&
                     trace.steps.back().rho <= trace.steps.front().rho / 4.0;
    trace.conclusive = decreasing && shrinking && trace.steps.size() >= 2;
}

} // namespace

RescalingTrace zalcman_extract(const FunctionHandle& h, cdouble z0,
                               const std::vector<double>& schedule, const GridSpec& grid,
                               int k_max, long budget_per_step, uint64_t seed) {
    if (k_max < 1 || k_max > 5) throw std::invalid_argument("zalcman_extract: k_max must be 1..5");
    RescalingTrace trace;
    trace.translate_mode = true;
    trace.base = h;
    trace.center = z0;
    trace.description = h.source();
    trace.xi_radius = grid.xi_radius;
    trace.k_max = k_max;
    int idx = 0;
    for (double R : schedule) {
        SupResult s = sup_weighted_on_disk(h, z0, R, budget_per_step,
                                           seed + static_cast<uint64_t>(idx));
        TraceStep st;
        st.index = idx++;
        st.search_radius = R;
        st.z_n = s.argmax;
        st.weighted_max = s.sup;
        st.rho = s.sph_at_argmax > 0.0 ? 1.0 / s.sph_at_argmax : 1.0;
        trace.steps.push_back(st);
    }
    finish_trace(trace, grid, k_max);
    return trace;
}

RescalingTrace zalcman_extract_sequence(const std::vector<FunctionHandle>& members, cdouble center,
                                        double region_radius, const GridSpec& grid, int k_max,
                                        long budget_per_step, uint64_t seed) {
    if (k_max < 1 || k_max > 5) throw std::invalid_argument("zalcman_extract: k_max must be 1..5");
    RescalingTrace trace;
    trace.translate_mode = false;
    trace.members = members;
    trace.center = center;
    trace.description = members.empty() ? "" : members.front().source();
    trace.xi_radius = grid.xi_radius;
    trace.k_max = k_max;
    for (size_t k = 0; k < members.size(); ++k) {
        SupResult s = sup_weighted_on_disk(members[k], center, region_radius, budget_per_step,
                                           seed + static_cast<uint64_t>(k));
        TraceStep st;
        st.index = static_cast<int>(k);
        st.search_radius = region_radius;
        st.z_n = s.argmax;
        st.weighted_max = s.sup;
        st.rho = s.sph_at_argmax > 0.0 ? 1.0 / s.sph_at_argmax : 1.0;
        trace.steps.push_back(st);
    }
    finish_trace(trace, grid, k_max);
    return trace;
}

bool check_bounded_blowup(const RescalingTrace& trace, double xi_cap, double slack,
                          double* measured) {
    if (trace.steps.empty()) return false;
    const TraceStep& st = trace.steps.back();
    double sup = 0.0;
    for (const GridPoint& gp : st.grid) {
        if (gp.failed || std::abs(gp.xi) > xi_cap) continue;
        sup = std::max(sup, gp.jet.spherical());
    }
    if (measured) *measured = sup;
    return trace.conclusive && sup <= 1.0 + slack;
}

bool check_inherited_omission(const RescalingTrace& trace, const ExtendedComplex& a, double delta,
                              double* worst) {
    if (trace.steps.size() < 2) return false;
    double min_dist = 1.0;
    for (size_t k = trace.steps.size() - 2; k < trace.steps.size(); ++k)
        for (const GridPoint& gp : trace.steps[k].grid) {
            if (gp.failed) continue;
            min_dist = std::min(min_dist, chordal(gp.jet.extended_value(), a));
        }
    if (worst) *worst = min_dist;
    return min_dist >= delta;
}

// --------------------------------------------------- level-point Newton ----

namespace {

// Multiplicity-robust Newton on u = h - c (u = 1/h for infinite c):
// iterate on u/u', whose zeros are simple.
std::optional<cdouble> newton_level(const FunctionHandle& h, const ExtendedComplex& c,
                                    cdouble start, double bound) {
    cdouble z = start;
    double scale = c.is_inf() ? 1.0 : 1.0 + std::abs(c.value());
    for (int it = 0; it < 80; ++it) {
        Jet j;
        try {
            j = eval_jet(h, z, 2);
        } catch (const eval_error&) {
            return std::nullopt;
        }
        Jet u;
        if (c.is_inf())
            u = j.pole ? j : jet_div(Jet::constant(1.0, 2), j);
        else if (j.pole)
            return std::nullopt;  // wandered onto a pole while chasing a finite value
        else
            u = jet_sub(j, Jet::constant(c.value(), 2));
        if (u.pole) return std::nullopt;
        cdouble u0 = u.c(0), u1 = u.c(1), u2 = 2.0 * u.c(2);
        cdouble den = u1 * u1 - u0 * u2;
        if (std::abs(den) == 0.0) return std::nullopt;
        cdouble step = u0 * u1 / den;
        z -= step;
        if (std::abs(z - start) > bound) return std::nullopt;
        if (std::abs(step) <= 1e-12 * (1.0 + std::abs(z))) {
            // converged: accept only a genuine level point
            Jet chk;
            try {
                chk = eval_jet(h, z, 1);
            } catch (const eval_error&) {
                return std::nullopt;
            }
            double dist = chordal(chk.extended_value(), c);
            if (dist <= 1e-8 * scale) return z;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void dedupe(std::vector<cdouble>& pts) {
    std::vector<cdouble> out;
    for (cdouble p : pts) {
        bool dup = false;
        for (cdouble q : out)
            if (std::abs(p - q) <= 1e-7 * (1.0 + std::abs(q))) dup = true;
        if (!dup) out.push_back(p);
    }
    pts = std::move(out);
}

} // namespace

std::optional<cdouble> refine_level_point(const FunctionHandle& h, const ExtendedComplex& c,
                                          cdouble seed_point, double region_bound) {
    return newton_level(h, c, seed_point, region_bound);
}

bool check_inherited_B(const RescalingTrace& trace, cdouble b, double delta,
                       std::vector<BCheckPoint>* witness) {
    if (trace.steps.size() < 2) return false;
    bool ok = true;
    ExtendedComplex target(b);
    for (size_t k = trace.steps.size() - 2; k < trace.steps.size(); ++k) {
        const TraceStep& st = trace.steps[k];
        // seeds: grid samples near the level set of b
        std::vector<cdouble> roots;
        for (const GridPoint& gp : st.grid) {
            if (gp.failed) continue;
            if (chordal(gp.jet.extended_value(), target) > 0.2) continue;
            // refine in the xi plane through the rescaled map
            const FunctionHandle& f = trace.member(k);
            auto root_w = newton_level(f, target, st.z_n + st.rho * gp.xi,
                                       4.0 * st.rho * trace.xi_radius + 4.0 * st.rho);
            if (root_w) roots.push_back((*root_w - st.z_n) / st.rho);
        }
        dedupe(roots);
        for (cdouble xi : roots) {
            if (std::abs(xi) > trace.xi_radius) continue;
            Jet g = trace.eval_g(k, xi, 1);
            if (g.pole) continue;
            cdouble gp1 = g.c(1);
            double err = std::abs(gp1 - st.rho * b);
            bool comply = err <= delta * (1.0 + std::abs(b));
            if (!comply) ok = false;
            if (witness) witness->push_back({xi, gp1, err, comply});
        }
    }
    return ok;
}

bool check_inherited_C(const RescalingTrace& trace, const ExtendedComplex& c, int m, double M,
                       double delta, double* worst) {
    if (m < 2) throw std::invalid_argument("check_inherited_C: m must be >= 2");
    if (m - 1 > trace.k_max)
        throw std::invalid_argument("check_inherited_C: trace k_max too small for m");
    if (trace.steps.size() < 2) return false;
    bool ok = true;
    double worst_excess = 0.0;
    for (size_t k = trace.steps.size() - 2; k < trace.steps.size(); ++k) {
        const TraceStep& st = trace.steps[k];
        std::vector<cdouble> roots;
        for (const GridPoint& gp : st.grid) {
            if (gp.failed) continue;
            if (chordal(gp.jet.extended_value(), c) > 0.2) continue;
            const FunctionHandle& f = trace.member(k);
            auto root_w = newton_level(f, c, st.z_n + st.rho * gp.xi,
                                       4.0 * st.rho * trace.xi_radius + 4.0 * st.rho);
            if (root_w) roots.push_back((*root_w - st.z_n) / st.rho);
        }
        dedupe(roots);
        for (cdouble xi : roots) {
            if (std::abs(xi) > trace.xi_radius) continue;
            Jet g = trace.eval_g(k, xi, std::min(m - 1, trace.k_max));
            // for c = infinity the bound applies on the reciprocal jet
            if (c.is_inf()) {
                if (!g.pole) continue;  // refinement landed elsewhere
            } else if (g.pole) {
                continue;
            }
            double rho_pow = 1.0;
            for (int kk = 1; kk <= m - 1 && kk <= trace.k_max; ++kk) {
                rho_pow *= st.rho;
                double dv = std::abs(g.derivative(kk));
                double cap = rho_pow * M + delta;
                worst_excess = std::max(worst_excess, dv - cap);
                if (dv > cap) ok = false;
            }
        }
    }
    if (worst) *worst = worst_excess;
    return ok;
}

// -------------------------------------------------------------- probes -----

namespace {

struct Sampler {
    cdouble center;
    double radius;
    long count;

    template <typename Fn>
    void each(Fn&& fn) const {
        constexpr double golden = 2.399963229728653;
        for (long k = 0; k < count; ++k) {
            double rr = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(count));
            double th = static_cast<double>(k) * golden;
            fn(center + cdouble(rr * std::cos(th), rr * std::sin(th)));
        }
    }
};

struct LevelScan {
    std::vector<cdouble> roots;
    int unresolved = 0;
};

LevelScan scan_level_points(const FunctionHandle& h, const ExtendedComplex& c,
                            const Sampler& sampler, double seed_delta, double bound) {
    LevelScan out;
    std::vector<cdouble> seeds;
    sampler.each([&](cdouble z) {
        try {
            Jet j = eval_jet(h, z, 0);
            if (chordal(j.extended_value(), c) <= seed_delta) seeds.push_back(z);
        } catch (const eval_error&) {
        }
    });
    if (seeds.size() > 400) {  // keep the Newton workload bounded
        std::vector<cdouble> thin;
        for (size_t k = 0; k < seeds.size(); k += seeds.size() / 400 + 1) thin.push_back(seeds[k]);
        seeds = std::move(thin);
    }
    for (cdouble s : seeds) {
        auto r = newton_level(h, c, s, bound);
        if (r)
            out.roots.push_back(*r);
        else
            ++out.unresolved;
    }
    dedupe(out.roots);
    return out;
}

} // namespace

ProbeReport hypothesis_probe(const FunctionHandle& h, const ConditionProfile& profile,
                             cdouble center, double radius, long samples,
                             const ProbeOptions& opts) {
    ProbeReport rep;
    rep.samples = samples;
    Sampler sampler{center, radius, samples};
    double bound = 3.0 * radius;

    // (a) shared set: for a translate-type hypothesis the operative evidence
    // is omission; an actual a-point in the region breaks it.
    for (const auto& a : profile.A) {
        ConditionResult cr;
        cr.condition = "A shared/omitted: " + a.str();
        LevelScan scan = scan_level_points(h, a.to_extended(), sampler, opts.seed_delta, bound);
        cr.refined_points = static_cast<int>(scan.roots.size());
        cr.unresolved = scan.unresolved;
        for (cdouble z : scan.roots) {
            if (std::abs(z - center) > radius) continue;
            ++cr.violations;
            if (cr.violation_points.size() < 8) cr.violation_points.push_back(z);
        }
        cr.pass = cr.violations == 0;
        rep.conditions.push_back(cr);
    }

    // (b) partial sharing f = b => f' = b at refined b-points.
    for (const auto& bval : profile.B) {
        ConditionResult cr;
        cr.condition = "B partial sharing: " + bval.str();
        if (bval.is_inf()) {
            cr.pass = false;
            cr.condition += " (invalid: infinite b)";
            rep.conditions.push_back(cr);
            continue;
        }
        cdouble b = bval.value().to_complex();
        LevelScan scan = scan_level_points(h, ExtendedComplex(b), sampler, opts.seed_delta, bound);
        cr.refined_points = static_cast<int>(scan.roots.size());
        cr.unresolved = scan.unresolved;
        for (cdouble z : scan.roots) {
            Jet j = eval_jet(h, z, 1);
            if (j.pole) continue;
            double err = std::abs(j.c(1) - b);
            cr.worst = std::max(cr.worst, err);
            if (err > opts.tol) {
                ++cr.violations;
                if (cr.violation_points.size() < 8) cr.violation_points.push_back(z);
            }
        }
        cr.pass = cr.violations == 0;
        rep.conditions.push_back(cr);
    }

    // (c) ramified values: multiplicity and derivative bounds at refined points.
    for (const auto& e : profile.C) {
        ConditionResult cr;
        cr.condition = "C ramified (m=" + std::to_string(e.m) + "): " + e.value.str();
        ExtendedComplex c = e.value.to_extended();
        LevelScan scan = scan_level_points(h, c, sampler, opts.seed_delta, bound);
        cr.refined_points = static_cast<int>(scan.roots.size());
        cr.unresolved = scan.unresolved;
        int jet_order = std::min(e.m - 1, max_jet_order);
        for (cdouble z : scan.roots) {
            Jet j = eval_jet(h, z, jet_order);
            bool reciprocal = c.is_inf();
            if (reciprocal != j.pole) continue;  // refinement landed off the target chart
            bool viol = false;
            double local_scale = 0.0;
            for (int k = 0; k <= jet_order; ++k)
                local_scale = std::max(local_scale, std::abs(j.c(k)));
            for (int k = 1; k <= jet_order; ++k) {
                double dv = std::abs(j.derivative(k));
                if (reciprocal) {
                    // poles: multiplicity check only, coefficients below m vanish
                    if (std::abs(j.c(k)) > 1e-6 * (local_scale + 1e-30) && k < e.m) viol = true;
                } else {
                    double cap = e.M.value_or(0.0) + opts.tol;
                    cr.worst = std::max(cr.worst, dv);
                    if (dv > cap) viol = true;
                }
            }
            if (viol) {
                ++cr.violations;
                if (cr.violation_points.size() < 8) cr.violation_points.push_back(z);
            }
        }
        cr.pass = cr.violations == 0;
        rep.conditions.push_back(cr);
    }

    for (const auto& cr : rep.conditions) rep.pass = rep.pass && cr.pass;
    return rep;
}

ProbeReport set_sharing_probe(const FunctionHandle& h, const std::vector<cdouble>& S,
                              cdouble center, double radius, long samples,
                              const ProbeOptions& opts) {
    ProbeReport rep;
    rep.samples = samples;
    Sampler sampler{center, radius, samples};
    double bound = 3.0 * radius;
    for (cdouble s : S) {
        ConditionResult cr;
        cr.condition = "set sharing at " + ExtendedComplex(s).str();
        LevelScan scan = scan_level_points(h, ExtendedComplex(s), sampler, opts.seed_delta, bound);
        cr.refined_points = static_cast<int>(scan.roots.size());
        cr.unresolved = scan.unresolved;
        for (cdouble z : scan.roots) {
            Jet j = eval_jet(h, z, 1);
            if (j.pole) continue;
            double err = 1e300;
            for (cdouble t : S) err = std::min(err, std::abs(j.c(1) - t));
            cr.worst = std::max(cr.worst, err);
            if (err > opts.tol) {
                ++cr.violations;
                if (cr.violation_points.size() < 8) cr.violation_points.push_back(z);
            }
        }
        cr.pass = cr.violations == 0;
        rep.conditions.push_back(cr);
    }
    for (const auto& cr : rep.conditions) rep.pass = rep.pass && cr.pass;
    return rep;
}

} // namespace normalfam
