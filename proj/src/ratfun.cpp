#include "normalfam/ratfun.hpp"

#include <algorithm>
#include <cmath>

namespace normalfam {

RationalFunction RationalFunction::reduce(const GPolynomial& p, const GPolynomial& q) {
    if (q.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    GPolynomial g = poly_gcd(p, q);
    GPolynomial num = p, den = q;
    if (g.degree() > 0) {
        num = divmod(p, g).first;
        den = divmod(q, g).first;
    }
    // den monic, cancellation folded into num
    GaussRat lead = den.leading();
    den = den.monic();
    num = num.scaled(GaussRat(1) / lead);
    if (std::max(num.degree(), den.degree()) < 1)
        throw std::domain_error("RationalFunction: constant after cancellation");
    return RationalFunction(std::move(num), std::move(den));
}

int RationalFunction::degree() const { return std::max(num_.degree(), den_.degree()); }

ExactValue RationalFunction::value_at_infinity() const {
    int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) return ExactValue::infinity();
    if (dn < dd) return ExactValue(0);
    return ExactValue(num_.leading() / den_.leading());
}

ExtendedComplex RationalFunction::eval(cdouble z) const {
    cdouble n = num_.eval(z), d = den_.eval(z);
    if (std::abs(d) == 0.0) {
        if (std::abs(n) == 0.0) throw std::domain_error("eval: 0/0 (should not happen, coprime)");
        return ExtendedComplex::infinity();
    }
    return ExtendedComplex::from_value(n / d);
}

int PreimageProfile::distinct_finite_points() const {
    int c = 0;
    for (auto [m, k] : entries) c += k;
    return c;
}

int PreimageProfile::total_multiplicity(int) const {
    int c = infinity_multiplicity;
    for (auto [m, k] : entries) c += m * k;
    return c;
}

namespace {

// P_c = num - c * den, the finite-preimage polynomial of c (den for c = inf).
GPolynomial level_polynomial(const RationalFunction& f, const ExactValue& c) {
    if (c.is_inf()) return f.den();
    return f.num() - f.den().scaled(c.value());
}

} // namespace

PreimageProfile preimage_profile(const RationalFunction& f, const ExactValue& c) {
    PreimageProfile out;
    out.target = c;
    GPolynomial pc = level_polynomial(f, c);
    int d = f.degree();
    out.infinity_multiplicity = d - pc.degree();
    if (pc.degree() >= 1) {
        auto factors = squarefree_decomposition(pc);
        for (size_t i = 0; i < factors.size(); ++i)
            if (factors[i].degree() > 0)
                out.entries.push_back({static_cast<int>(i) + 1, factors[i].degree()});
    }
    return out;
}

std::vector<ExactValue> omitted_values(const RationalFunction& f) {
    // A value is omitted on the plane iff its level polynomial is a nonzero
    // constant; the only candidate is f(infinity).
    ExactValue cand = f.value_at_infinity();
    GPolynomial pc = level_polynomial(f, cand);
    if (pc.degree() == 0) return {cand};
    if (pc.is_zero()) throw std::logic_error("omitted_values: f is constant");
    return {};
}

std::optional<int> min_multiplicity(const RationalFunction& f, const ExactValue& c) {
    PreimageProfile p = preimage_profile(f, c);
    if (p.entries.empty()) return std::nullopt;  // no finite preimage: omitted in the plane
    int m = 0;
    for (auto [mult, count] : p.entries)
        if (count > 0) m = m == 0 ? mult : std::min(m, mult);
    if (p.infinity_multiplicity > 0) m = std::min(m, p.infinity_multiplicity);
    return m;
}

namespace {

ExtendedComplex map_critical_point(const RationalFunction& f, cdouble z) {
    cdouble n = f.num().eval(z), d = f.den().eval(z);
    double an = std::abs(n), ad = std::abs(d);
    if (ad == 0.0 || an > ad * pole_threshold) return ExtendedComplex::infinity();
    return ExtendedComplex::from_value(n / d);
}

std::optional<ExactValue> identify_exact(const RationalFunction& f, const ExtendedComplex& v,
                                         double tol) {
    if (v.is_inf()) return ExactValue::infinity();
    auto re = rationalize(v.value().real(), 100.0 * tol, 1u << 20);
    auto im = rationalize(v.value().imag(), 100.0 * tol, 1u << 20);
    if (!re || !im) return std::nullopt;
    ExactValue cand{GaussRat(*re, *im)};
    // Confirm: the candidate must genuinely be a critical value of f.
    PreimageProfile p = preimage_profile(f, cand);
    int ram = f.degree() - p.distinct_finite_points() - (p.infinity_multiplicity > 0 ? 1 : 0);
    if (ram <= 0) return std::nullopt;
    return cand;
}

} // namespace

std::vector<CriticalValue> critical_values_numeric(const RationalFunction& f, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("critical_values_numeric: tol must be positive");
    GPolynomial w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    std::vector<CriticalValue> out;
    if (w.degree() < 1) return out;
    std::vector<cdouble> pts = polynomial_roots(w);

    // Cluster the images in the chordal metric (complete linkage).
    std::vector<ExtendedComplex> images;
    images.reserve(pts.size());
    for (cdouble z : pts) images.push_back(map_critical_point(f, z));
    std::vector<int> cluster(images.size(), -1);
    int nclusters = 0;
    for (size_t i = 0; i < images.size(); ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = nclusters;
        for (size_t j = i + 1; j < images.size(); ++j) {
            if (cluster[j] >= 0) continue;
            if (chordal(images[i], images[j]) <= tol) cluster[j] = nclusters;
        }
        ++nclusters;
    }
    // Complete-linkage sanity: members of different clusters must stay apart.
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
            if (cluster[i] != cluster[j] && chordal(images[i], images[j]) <= tol)
                throw std::runtime_error(
                    "critical value clustering ambiguity: two distinct critical values within "
                    "tol; retry with a smaller tol or exact candidates");

    for (int k = 0; k < nclusters; ++k) {
        CriticalValue cv;
        int count = 0;
        cdouble acc = 0.0;
        bool inf = false;
        for (size_t i = 0; i < images.size(); ++i) {
            if (cluster[i] != k) continue;
            ++count;
            if (images[i].is_inf())
                inf = true;
            else
                acc += images[i].value();
        }
        cv.value = inf ? ExtendedComplex::infinity()
                       : ExtendedComplex(acc / static_cast<double>(count));
        cv.finite_ramification = count;  // each W-root contributes e_z - 1 = 1 numerically
        cv.exact = identify_exact(f, cv.value, tol);
        out.push_back(cv);
    }
    return out;
}

HurwitzCheck riemann_hurwitz_check(const RationalFunction& f, double tol) {
    HurwitzCheck hc;
    int d = f.degree();
    hc.expected = 2 * d - 2;
    hc.critical_values = critical_values_numeric(f, tol);
    int finite = 0;
    for (const auto& cv : hc.critical_values) finite += cv.finite_ramification;
    // Exact multiplicity of the point at infinity: e_inf - 1.
    ExactValue c_inf = f.value_at_infinity();
    GPolynomial pc = level_polynomial(f, c_inf);
    int e_inf = d - std::max(pc.degree(), 0);
    if (c_inf.is_inf()) e_inf = d - f.den().degree();
    hc.infinity_contribution = e_inf - 1;
    hc.total_ramification = finite + hc.infinity_contribution;
    hc.pass = hc.total_ramification == hc.expected;
    return hc;
}

DefectBound verify_defect_bound(const RationalFunction& f, DefectMode mode,
                                const std::optional<ExactValue>& a1,
                                const std::vector<ExactValue>& candidates, double tol) {
    DefectBound out;
    out.U = omitted_values(f);
    if (mode == DefectMode::c) {
        if (!a1.has_value())
            throw std::invalid_argument("defect mode c requires a value a1");
        PreimageProfile p = preimage_profile(f, *a1);
        if (p.distinct_finite_points() != 1)
            throw std::invalid_argument(
                "defect mode c precondition: a1 must have exactly one finite preimage point "
                "(found " +
                std::to_string(p.distinct_finite_points()) + ")");
        bool dup = false;
        for (const auto& u : out.U)
            if (u == *a1) dup = true;
        if (!dup) out.U.push_back(*a1);
    }

    // Candidates for the totally ramified set: caller-provided exact values
    // plus whatever the numeric critical-value sweep identifies exactly.
    std::vector<ExactValue> pool = candidates;
    for (const auto& cv : critical_values_numeric(f, tol))
        if (cv.exact.has_value()) pool.push_back(*cv.exact);

    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    for (const auto& c : pool) {
        bool in_u = false;
        for (const auto& u : out.U)
            if (u == c) in_u = true;
        if (in_u) continue;
        auto m = min_multiplicity(f, c);
        if (!m.has_value()) continue;  // omitted but not f(inf): cannot happen; skip
        if (*m >= 2) out.R.push_back({c, *m});
    }

    Rational bound(static_cast<long>(out.U.size()));
    for (const auto& e : out.R) {
        Rational t(e.m - 1, e.m);
        t.canonicalize();
        bound += t;
    }
    out.bound = bound;
    out.pass = cmp(bound, 2) <= 0;
    return out;
}

} // namespace normalfam
