#include "normalfam/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace normalfam {

void GPolynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GPolynomial GPolynomial::constant(GaussRat v) {
    GPolynomial p;
    if (!v.is_zero()) p.c_.push_back(std::move(v));
    return p;
}

GPolynomial GPolynomial::from_longs(std::initializer_list<long> coeffs) {
    std::vector<GaussRat> c;
    for (long v : coeffs) c.emplace_back(v, 0L);
    return GPolynomial(std::move(c));
}

const GaussRat& GPolynomial::leading() const {
    if (c_.empty()) throw std::logic_error("leading() of zero polynomial");
    return c_.back();
}

GaussRat GPolynomial::eval(const GaussRat& x) const {
    GaussRat r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

cdouble GPolynomial::eval(cdouble x) const {
    cdouble r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_complex();
    return r;
}

GPolynomial GPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussRat> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = c_[k] * GaussRat(static_cast<long>(k), 0L);
    return GPolynomial(std::move(d));
}

GPolynomial GPolynomial::monic() const {
    if (is_zero()) return {};
    return scaled(GaussRat(1) / leading());
}

GPolynomial operator+(const GPolynomial& a, const GPolynomial& b) {
    std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] = c[k] + a.c_[k];
        if (k < b.c_.size()) c[k] = c[k] + b.c_[k];
    }
    return GPolynomial(std::move(c));
}

GPolynomial operator-(const GPolynomial& a, const GPolynomial& b) {
    std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        if (k < a.c_.size()) c[k] = c[k] + a.c_[k];
        if (k < b.c_.size()) c[k] = c[k] - b.c_[k];
    }
    return GPolynomial(std::move(c));
}

GPolynomial operator*(const GPolynomial& a, const GPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRat> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return GPolynomial(std::move(c));
}

GPolynomial GPolynomial::scaled(const GaussRat& k) const {
    std::vector<GaussRat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * k;
    return GPolynomial(std::move(c));
}

std::string GPolynomial::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t k = c_.size(); k-- > 0;) {
        if (!s.empty()) s += " + ";
        s += "(" + ExactValue(c_[k]).str() + ")";
        if (k == 1) s += "*z";
        if (k >= 2) s += "*z^" + std::to_string(k);
    }
    return s;
}

std::pair<GPolynomial, GPolynomial> divmod(const GPolynomial& a, const GPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    std::vector<GaussRat> rem(a.coeffs());
    int db = b.degree();
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) return {{}, a};
    std::vector<GaussRat> quot(static_cast<size_t>(da - db) + 1);
    GaussRat inv_lead = GaussRat(1) / b.leading();
    for (int k = da; k >= db; --k) {
        GaussRat q = rem[static_cast<size_t>(k)] * inv_lead;
        if (q.is_zero()) continue;
        quot[static_cast<size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(k - db + j)] =
                rem[static_cast<size_t>(k - db + j)] - q * b[static_cast<size_t>(j)];
    }
    return {GPolynomial(std::move(quot)), GPolynomial(std::move(rem))};
}

GPolynomial poly_gcd(GPolynomial a, GPolynomial b) {
    // Monic normalization each round keeps coefficient growth in check.
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = r.is_zero() ? GPolynomial{} : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<GPolynomial> squarefree_decomposition(const GPolynomial& p) {
    std::vector<GPolynomial> out;
    if (p.degree() <= 0) return out;
    GPolynomial pm = p.monic();
    GPolynomial d = poly_gcd(pm, pm.derivative());
    GPolynomial b = divmod(pm, d).first;            // product of distinct factors
    GPolynomial c = divmod(pm.derivative(), d).first;
    GPolynomial w = c - b.derivative();
    while (b.degree() > 0) {
        GPolynomial a = poly_gcd(b, w);
        out.push_back(a);
        b = divmod(b, a).first;
        c = divmod(w, a).first;
        w = c - b.derivative();
    }
    return out;
}

namespace {

// Durand-Kerner simultaneous root iteration with Newton polish.
std::vector<cdouble> roots_monic(const std::vector<cdouble>& a) {
    const int n = static_cast<int>(a.size()) - 1;  // monic of degree n, a[n] = 1
    std::vector<cdouble> r(static_cast<size_t>(n));
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(a[static_cast<size_t>(k)]));
    radius = 1.0 + radius;
    for (int k = 0; k < n; ++k) {
        double phi = 2.0 * M_PI * k / n + 0.4;  // fixed offset avoids symmetry stalls
        r[static_cast<size_t>(k)] = radius * cdouble(std::cos(phi), std::sin(phi));
    }
    auto eval = [&](cdouble x) {
        cdouble v = 1.0;
        for (int k = n - 1; k >= 0; --k) v = v * x + a[static_cast<size_t>(k)];
        return v;
    };
    for (int iter = 0; iter < 600; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < n; ++k) {
            cdouble num = eval(r[static_cast<size_t>(k)]);
            cdouble den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) den *= r[static_cast<size_t>(k)] - r[static_cast<size_t>(j)];
            if (den == cdouble(0.0)) den = cdouble(1e-30, 0.0);
            cdouble step = num / den;
            r[static_cast<size_t>(k)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * radius) break;
    }
    return r;
}

} // namespace

std::vector<cdouble> polynomial_roots(const GPolynomial& p) {
    int n = p.degree();
    if (n <= 0) return {};
    // Normalize through the largest coefficient magnitude, then make monic.
    std::vector<cdouble> a(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a[static_cast<size_t>(k)] = p[static_cast<size_t>(k)].to_complex();
    cdouble lead = a[static_cast<size_t>(n)];
    for (auto& v : a) v /= lead;
    return roots_monic(a);
}

} // namespace normalfam
