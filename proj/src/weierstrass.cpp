#include "normalfam/weierstrass.hpp"

#include <cmath>
#include <vector>

namespace normalfam {

WeierstrassParams params_from_cubic(cdouble alpha, cdouble beta, cdouble gamma) {
    // 4(X-h)^3 + alpha(X-h)^2 + beta(X-h) + gamma = 4X^3 - g2 X - g3 at h = alpha/12.
    cdouble h = alpha / 12.0;
    WeierstrassParams p;
    p.g2 = alpha * alpha / 12.0 - beta;
    p.g3 = -alpha * alpha * alpha / 216.0 + alpha * beta / 12.0 - gamma;
    p.shift = h;
    if (std::abs(wp_discriminant(p.g2, p.g3)) == 0.0)
        throw std::invalid_argument("params_from_cubic: degenerate cubic (zero discriminant)");
    return p;
}

namespace {

// Laurent coefficients: wp(z) = z^-2 + sum_{k>=2} c_k z^(2k-2).
std::vector<cdouble> laurent_coeffs(cdouble g2, cdouble g3, int n) {
    std::vector<cdouble> c(static_cast<size_t>(n) + 1, cdouble(0.0));
    if (n >= 2) c[2] = g2 / 20.0;
    if (n >= 3) c[3] = g3 / 28.0;
    for (int k = 4; k <= n; ++k) {
        cdouble s = 0.0;
        for (int m = 2; m <= k - 2; ++m) s += c[static_cast<size_t>(m)] * c[static_cast<size_t>(k - m)];
        c[static_cast<size_t>(k)] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
    }
    return c;
}

struct PPair {
    cdouble p, dp;
};

PPair series_eval(const std::vector<cdouble>& c, cdouble z) {
    cdouble z2 = z * z;
    cdouble p = 1.0 / z2;
    cdouble dp = -2.0 / (z2 * z);
    cdouble zp = z2;  // z^(2k-2) for k = 2
    for (size_t k = 2; k < c.size(); ++k) {
        p += c[k] * zp;
        dp += (2.0 * static_cast<double>(k) - 2.0) * c[k] * zp / z;
        zp *= z2;
    }
    return {p, dp};
}

PPair duplicate(const PPair& w, cdouble g2) {
    cdouble p2 = 6.0 * w.p * w.p - g2 / 2.0;   // wp''
    cdouble p3 = 12.0 * w.p * w.dp;            // wp'''
    cdouble u = p2 / (2.0 * w.dp);
    cdouble pp = u * u - 2.0 * w.p;
    cdouble dpp = u * (p3 * w.dp - p2 * p2) / (2.0 * w.dp * w.dp) - w.dp;
    return {pp, dpp};
}

// Homogeneity scale so the series argument is measured against an O(1) lattice.
double invariant_scale(cdouble g2, cdouble g3) {
    double t = 1.0;
    t = std::max(t, std::pow(std::abs(g2), 0.25));
    t = std::max(t, std::pow(std::abs(g3), 1.0 / 6.0));
    return t;
}

} // namespace

std::pair<cdouble, cdouble> wp_normal(cdouble g2, cdouble g3, cdouble z, int series_order) {
    if (z == cdouble(0.0, 0.0)) throw std::invalid_argument("wp_normal: z = 0 is the pole");
    const double r0 = 0.5 / invariant_scale(g2, g3);
    int steps = 0;
    cdouble w = z;
    while (std::abs(w) > r0 && steps < 60) {
        w *= 0.5;
        ++steps;
    }
    PPair v = series_eval(laurent_coeffs(g2, g3, series_order), w);
    for (int i = 0; i < steps; ++i) v = duplicate(v, g2);
    return {v.p, v.dp};
}

std::pair<ExtendedComplex, ExtendedComplex> wp_pair(const WeierstrassParams& params, cdouble z) {
    auto inf_pair = [] {
        return std::make_pair(ExtendedComplex::infinity(), ExtendedComplex::infinity());
    };
    if (z == cdouble(0.0, 0.0)) return inf_pair();
    auto [p, dp] = wp_normal(params.g2, params.g3, z, params.series_order);
    if (!is_finite(p) || !is_finite(dp) || std::abs(p) > pole_threshold) return inf_pair();
    return {ExtendedComplex(p - params.shift), ExtendedComplex(dp)};
}

namespace {

// Taylor coefficients a_k of wp at a regular point from (wp, wp') via
// (k+1)(k+2) a_{k+2} = 6 sum_{i<=k} a_i a_{k-i} - [k=0] g2/2.
std::array<cdouble, max_jet_order + 2> wp_taylor(cdouble g2, cdouble g3, cdouble z, int n) {
    auto [p, dp] = wp_normal(g2, g3, z);
    std::array<cdouble, max_jet_order + 2> a{};
    a[0] = p;
    if (n >= 1) a[1] = dp;
    for (int k = 0; k + 2 <= n; ++k) {
        cdouble conv = 0.0;
        for (int i = 0; i <= k; ++i) conv += a[static_cast<size_t>(i)] * a[static_cast<size_t>(k - i)];
        cdouble rhs = 6.0 * conv;
        if (k == 0) rhs -= g2 / 2.0;
        a[static_cast<size_t>(k + 2)] = rhs / ((k + 1.0) * (k + 2.0));
    }
    return a;
}

} // namespace

Jet wp_jet(cdouble g2, cdouble g3, cdouble z, int order) {
    auto a = wp_taylor(g2, g3, z, order);
    detail::Coeffs c{};
    for (int k = 0; k <= order; ++k) c[static_cast<size_t>(k)] = a[static_cast<size_t>(k)];
    return detail::canonicalize(c, order);
}

Jet wp_prime_jet(cdouble g2, cdouble g3, cdouble z, int order) {
    auto a = wp_taylor(g2, g3, z, order + 1);
    detail::Coeffs c{};
    for (int k = 0; k <= order; ++k)
        c[static_cast<size_t>(k)] = static_cast<double>(k + 1) * a[static_cast<size_t>(k + 1)];
    return detail::canonicalize(c, order);
}

} // namespace normalfam
