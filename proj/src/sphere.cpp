#include "normalfam/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace normalfam {

namespace {

struct SplitMix {
    uint64_t s;
    explicit SplitMix(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

constexpr double golden_angle = 2.399963229728653;

struct Search {
    const FunctionHandle& f;
    cdouble center;
    double radius;
    bool weighted;
    long evals = 0;
    long failures = 0;

    double weight(cdouble z) const {
        if (!weighted) return 1.0;
        double w = radius - std::abs(z - center);
        return w > 0.0 ? w : 0.0;
    }

    // Returns weighted f#, or -1 on evaluation failure / outside the disk.
    double probe(cdouble z, double* sph_out = nullptr) {
        if (std::abs(z - center) > radius) return -1.0;
        ++evals;
        try {
            double s = spherical_derivative(f, z);
            if (!std::isfinite(s)) {
                ++failures;
                return -1.0;
            }
            if (sph_out) *sph_out = s;
            return weight(z) * s;
        } catch (const eval_error&) {
            ++failures;
            return -1.0;
        }
    }
};

SupResult sup_search(const FunctionHandle& f, cdouble center, double radius, long budget,
                     uint64_t seed, bool weighted) {
    if (budget < 10) budget = 10;
    Search srch{f, center, radius, weighted};
    SplitMix rng(seed ^ 0x5be5e3d1u);

    SupResult best;
    best.argmax = center;
    auto consider = [&](cdouble z) {
        double sph = 0.0;
        double v = srch.probe(z, &sph);
        if (v > best.sup) {
            best.sup = v;
            best.argmax = z;
            best.sph_at_argmax = sph;
        }
    };

    // Phase 1: sunflower lattice (area-uniform, deterministic, seeded phase).
    long n1 = budget * 55 / 100;
    double phase = rng.uniform() * 2.0 * M_PI;
    for (long k = 0; k < n1; ++k) {
        double rr = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(n1));
        double th = static_cast<double>(k) * golden_angle + phase;
        consider(center + cdouble(rr * std::cos(th), rr * std::sin(th)));
    }
    consider(center);

    // Phase 2: dense ray sweeps through the incumbent maximum. Banded and
    // spoke-shaped fields (the usual shape for composed exponentials) are
    // cracked by 1-D sweeps where area sampling is hopeless.
    long n2 = budget * 25 / 100;
    int n_dirs = 8;
    long per_ray = std::max<long>(16, n2 / (2 * n_dirs));
    for (int rep = 0; rep < 2; ++rep) {
        cdouble origin = best.argmax;
        for (int d = 0; d < n_dirs; ++d) {
            double th = M_PI * d / n_dirs + (rep == 0 ? 0.0 : M_PI / (2 * n_dirs));
            cdouble dir(std::cos(th), std::sin(th));
            // span the full chord of the disk through origin
            for (long k = 0; k < per_ray; ++k) {
                double t = (2.0 * (static_cast<double>(k) + rng.uniform() * 0.5) /
                                static_cast<double>(per_ray) -
                            1.0) *
                           radius;
                consider(origin + t * dir);
            }
        }
    }

    // Phase 3: multi-scale coordinate polish around the incumbent.
    long n3 = budget - srch.evals;
    if (n3 > 40) {
        int rounds = 24;
        long per_round = n3 / rounds;
        double scale = radius * 0.25;
        for (int r = 0; r < rounds && scale > 1e-9 * radius; ++r) {
            cdouble o = best.argmax;
            double before = best.sup;
            long half = std::max<long>(4, per_round / 2);
            for (long k = 0; k < half; ++k) {
                double t = (2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(half) - 1.0);
                consider(o + cdouble(t * scale, 0.0));
                consider(o + cdouble(0.0, t * scale));
            }
            if (best.sup <= before * (1.0 + 1e-12)) scale *= 0.33;
        }
    }

    best.evals = srch.evals;
    best.failures = srch.failures;
    return best;
}

} // namespace

SupResult sup_sph_on_disk(const FunctionHandle& f, cdouble center, double radius, long budget,
                          uint64_t seed) {
    return sup_search(f, center, radius, budget, seed, false);
}

SupResult sup_weighted_on_disk(const FunctionHandle& f, cdouble center, double radius, long budget,
                               uint64_t seed) {
    return sup_search(f, center, radius, budget, seed, true);
}

// ------------------------------------------------------------ quadrature ---

namespace {

// integral over [t0,t1] of t ln(r/t) dt, exactly
double radial_weight(double t0, double t1, double r) {
    auto prim = [r](double t) {
        if (t <= 0.0) return 0.0;
        return 0.5 * t * t * std::log(r / t) + 0.25 * t * t;
    };
    return prim(t1) - prim(t0);
}

struct QCell {
    double t0, t1, a0, a1;  // radial and angular extents
    double est;             // F(mid) * weight
    int depth;
    long id;
};

struct QCellOrder {
    bool operator()(const QCell& x, const QCell& y) const {
        if (x.est != y.est) return x.est < y.est;  // largest contribution first
        return x.id > y.id;
    }
};

} // namespace

double ahlfors_shimizu_T(const FunctionHandle& f, double r, long budget, uint64_t seed,
                         bool* converged) {
    if (!(r > 0.0)) throw std::invalid_argument("ahlfors_shimizu_T: r must be positive");
    (void)seed;  // sampling pattern is deterministic; seed reserved for parity with the CLI
    long evals = 0;
    auto density = [&](cdouble z) -> double {
        ++evals;
        try {
            double s = spherical_derivative(f, z);
            return std::isfinite(s) ? s * s : 0.0;
        } catch (const eval_error&) {
            return 0.0;  // beyond representable magnitudes f# is numerically 0
        }
    };

    const int rings = 14;
    const int nth = 16;
    std::priority_queue<QCell, std::vector<QCell>, QCellOrder> heap;
    long next_id = 0;
    double total = 0.0;

    auto make_cell = [&](double t0, double t1, double a0, double a1, int depth) {
        double tm = 0.5 * (t0 + t1), am = 0.5 * (a0 + a1);
        double w = radial_weight(t0, t1, r) * (a1 - a0);
        double F = density(cdouble(tm * std::cos(am), tm * std::sin(am)));
        QCell c{t0, t1, a0, a1, F * w, depth, next_id++};
        total += c.est;
        return c;
    };

    double t_hi = r;
    for (int j = 0; j < rings; ++j) {
        double t_lo = j + 1 == rings ? 0.0 : r * std::pow(0.5, j + 1);
        // innermost ring keeps the weight finite: radial_weight handles t0=0
        for (int k = 0; k < nth; ++k) {
            double a0 = 2.0 * M_PI * k / nth, a1 = 2.0 * M_PI * (k + 1) / nth;
            heap.push(make_cell(t_lo == 0.0 ? 1e-9 * r : t_lo, t_hi, a0, a1, 0));
        }
        t_hi = t_lo == 0.0 ? 1e-9 * r : t_lo;
    }

    bool ok = true;
    while (evals + 4 <= budget && !heap.empty()) {
        QCell c = heap.top();
        if (c.est <= 1e-6 * std::abs(total) + 1e-300) break;  // refined enough
        heap.pop();
        if (c.depth >= 12) continue;  // integrable singularities: stop splitting
        total -= c.est;
        double tm = 0.5 * (c.t0 + c.t1), am = 0.5 * (c.a0 + c.a1);
        heap.push(make_cell(c.t0, tm, c.a0, am, c.depth + 1));
        heap.push(make_cell(c.t0, tm, am, c.a1, c.depth + 1));
        heap.push(make_cell(tm, c.t1, c.a0, am, c.depth + 1));
        heap.push(make_cell(tm, c.t1, am, c.a1, c.depth + 1));
    }
    if (!heap.empty() && heap.top().est > 5e-3 * std::abs(total)) ok = false;
    if (converged) *converged = ok;
    return total / M_PI;
}

GrowthReport order_estimate(const FunctionHandle& f, double r_min, double r_max, int steps,
                            long budget, uint64_t seed) {
    if (!(0.0 < r_min && r_min < r_max))
        throw std::invalid_argument("order_estimate: need 0 < r_min < r_max");
    if (steps < 4) throw std::invalid_argument("order_estimate: steps must be >= 4");
    GrowthReport rep;
    long per = budget / (2 * steps);
    for (int k = 0; k < steps; ++k) {
        double r = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (steps - 1));
        rep.radii.push_back(r);
        rep.T_values.push_back(ahlfors_shimizu_T(f, r, per, seed + static_cast<uint64_t>(k)));
        SupResult s = sup_sph_on_disk(f, cdouble(0.0, 0.0), r, per, seed + 1000 + static_cast<uint64_t>(k));
        rep.sup_values.push_back(s.sup);
        rep.budget_used += 2 * per;
    }
    // Least squares of log T against log r.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = 0; k < steps; ++k) {
        if (rep.T_values[static_cast<size_t>(k)] <= 0.0) continue;
        double x = std::log(rep.radii[static_cast<size_t>(k)]);
        double y = std::log(rep.T_values[static_cast<size_t>(k)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) rep.order_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (int k = 0; k + 1 < steps; ++k) {
        double t0 = rep.T_values[static_cast<size_t>(k)], t1 = rep.T_values[static_cast<size_t>(k) + 1];
        if (t0 <= 0.0 || t1 <= 0.0) continue;
        double dx = std::log(rep.radii[static_cast<size_t>(k) + 1] / rep.radii[static_cast<size_t>(k)]);
        rep.local_slopes.push_back(std::log(t1 / t0) / dx);
    }
    if (rep.local_slopes.size() >= 3) {
        bool monotone = true;
        for (size_t k = 0; k + 1 < rep.local_slopes.size(); ++k)
            if (rep.local_slopes[k + 1] < rep.local_slopes[k] - 0.05) monotone = false;
        double rise = rep.local_slopes.back() - rep.local_slopes.front();
        rep.superpolynomial = monotone && rise > 1.0;
    }
    return rep;
}

MartyReport marty_probe(const FunctionHandle& h, cdouble z0, const std::vector<double>& radii,
                        long budget, uint64_t seed) {
    if (radii.size() < 2) throw std::invalid_argument("marty_probe: need at least two radii");
    for (size_t k = 0; k + 1 < radii.size(); ++k)
        if (!(radii[k] < radii[k + 1]))
            throw std::invalid_argument("marty_probe: radii must increase");
    MartyReport rep;
    long per = budget / static_cast<long>(radii.size());
    for (size_t k = 0; k < radii.size(); ++k) {
        SupResult s = sup_sph_on_disk(h, z0, radii[k], per, seed + static_cast<uint64_t>(k));
        rep.radii.push_back(radii[k]);
        rep.sup_values.push_back(s.sup);
        rep.argmax.push_back(s.argmax);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t k = 0; k < rep.radii.size(); ++k) {
        if (rep.sup_values[k] <= 0.0) continue;
        double x = rep.radii[k], y = std::log(rep.sup_values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) rep.log_sup_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.evidence = rep.log_sup_slope >= 1.0;
    return rep;
}

std::vector<std::array<double, 3>> sph_samples(const FunctionHandle& f, cdouble center,
                                               double radius, long count, uint64_t seed) {
    std::vector<std::array<double, 3>> out;
    out.reserve(static_cast<size_t>(count));
    SplitMix rng(seed ^ 0xa5a5a5a5u);
    double phase = rng.uniform() * 2.0 * M_PI;
    for (long k = 0; k < count; ++k) {
        double rr = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(count));
        double th = static_cast<double>(k) * golden_angle + phase;
        cdouble z = center + cdouble(rr * std::cos(th), rr * std::sin(th));
        double s;
        try {
            s = spherical_derivative(f, z);
            if (!std::isfinite(s)) continue;
        } catch (const eval_error&) {
            continue;
        }
        out.push_back({z.real(), z.imag(), s});
    }
    return out;
}

} // namespace normalfam
