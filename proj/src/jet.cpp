#include "normalfam/jet.hpp"

#include <algorithm>
#include <cmath>

namespace normalfam {

namespace detail {

void check_finite(const Coeffs& a, int order) {
    for (int k = 0; k <= order; ++k)
        if (!is_finite(a[static_cast<size_t>(k)]))
            throw eval_error("unrepresentable: magnitude outside double range");
}

Coeffs plain_mul(const Coeffs& a, const Coeffs& b, int order) {
    Coeffs r{};
    for (int k = 0; k <= order; ++k) {
        cdouble s = 0.0;
        for (int j = 0; j <= k; ++j) s += a[static_cast<size_t>(j)] * b[static_cast<size_t>(k - j)];
        r[static_cast<size_t>(k)] = s;
    }
    return r;
}

Coeffs plain_div(const Coeffs& a, const Coeffs& b, int order) {
    Coeffs r{};
    for (int k = 0; k <= order; ++k) {
        cdouble s = a[static_cast<size_t>(k)];
        for (int j = 1; j <= k; ++j) s -= b[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
        r[static_cast<size_t>(k)] = s / b[0];
    }
    return r;
}

namespace {

Coeffs ones_complement_shift(const Coeffs& a, int s, int order) {
    // Drop the first s coefficients; the lost top entries are zero-filled.
    Coeffs r{};
    for (int k = 0; k + s <= order; ++k) r[static_cast<size_t>(k)] = a[static_cast<size_t>(k + s)];
    return r;
}

int leading_index(const Coeffs& a, int order) {
    for (int k = 0; k <= order; ++k)
        if (a[static_cast<size_t>(k)] != cdouble(0.0, 0.0) &&
            std::abs(a[static_cast<size_t>(k)]) >= 4e-308)
            return k;
    return order + 1;
}

} // namespace

Jet canonicalize(Coeffs v, int order) {
    check_finite(v, order);
    if (std::abs(v[0]) > pole_threshold) {
        Coeffs one{};
        one[0] = 1.0;
        Coeffs rec = plain_div(one, v, order);
        check_finite(rec, order);
        Jet j;
        j.coeff = rec;
        j.order = order;
        j.pole = true;
        return j;
    }
    Jet j;
    j.coeff = v;
    j.order = order;
    j.pole = false;
    return j;
}

Jet divide_core(const Coeffs& num, const Coeffs& den, int order) {
    check_finite(num, order);
    check_finite(den, order);
    if (std::abs(den[0]) < 4e-308) {
        int vn = leading_index(num, order);
        int vd = leading_index(den, order);
        if (vn > order && vd > order)
            throw eval_error("indeterminate 0/0 jet division");
        if (vn == 0) {
            // Genuine pole: record the reciprocal chart den/num.
            Coeffs rec = plain_div(den, num, order);
            check_finite(rec, order);
            Jet j;
            j.coeff = rec;
            j.order = order;
            j.pole = true;
            return j;
        }
        // Removable or partially removable: strip common leading zeros.
        int s = std::min({vn, vd, order});
        return divide_core(ones_complement_shift(num, s, order),
                           ones_complement_shift(den, s, order), order);
    }
    Coeffs q = plain_div(num, den, order);
    check_finite(q, order);
    if (std::abs(q[0]) > pole_threshold) {
        if (std::abs(num[0]) < 4e-308) {
            Jet j;  // quotient huge yet numerator vanishing: treat as pole of unknown depth
            j.coeff = plain_div(den, num, order);
            j.order = order;
            j.pole = true;
            return j;
        }
        Coeffs rec = plain_div(den, num, order);
        check_finite(rec, order);
        Jet j;
        j.coeff = rec;
        j.order = order;
        j.pole = true;
        return j;
    }
    Jet j;
    j.coeff = q;
    j.order = order;
    j.pole = false;
    return j;
}

} // namespace detail

using detail::Coeffs;

cdouble Jet::derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return coeff[static_cast<size_t>(k)] * fact;
}

ExtendedComplex Jet::extended_value() const {
    if (!pole) return ExtendedComplex(coeff[0]);
    if (std::abs(coeff[0]) < 1.0 / pole_threshold) return ExtendedComplex::infinity();
    return ExtendedComplex(1.0 / coeff[0]);
}

double Jet::spherical() const {
    if (order < 1) throw std::logic_error("Jet::spherical needs order >= 1");
    return std::abs(coeff[1]) / (1.0 + std::norm(coeff[0]));
}

Jet Jet::constant(cdouble v, int order) {
    Coeffs c{};
    c[0] = v;
    return detail::canonicalize(c, order);
}

Jet Jet::variable(cdouble z, int order) {
    Coeffs c{};
    c[0] = z;
    if (order >= 1) c[1] = 1.0;
    Jet j;
    j.coeff = c;
    j.order = order;
    j.pole = false;
    return j;
}

namespace {

Coeffs add_arrays(const Coeffs& a, const Coeffs& b, int order) {
    Coeffs r{};
    for (int k = 0; k <= order; ++k)
        r[static_cast<size_t>(k)] = a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)];
    return r;
}

Coeffs const_array(cdouble v) {
    Coeffs r{};
    r[0] = v;
    return r;
}

} // namespace

Jet jet_add(const Jet& a, const Jet& b) {
    int order = std::max(a.order, b.order);
    if (!a.pole && !b.pole) return detail::canonicalize(add_arrays(a.coeff, b.coeff, order), order);
    if (a.pole && !b.pole) {
        // 1/alpha + b = (1 + alpha b) / alpha
        Coeffs t = detail::plain_mul(a.coeff, b.coeff, order);
        t[0] += 1.0;
        return detail::divide_core(t, a.coeff, order);
    }
    if (!a.pole && b.pole) return jet_add(b, a);
    // 1/alpha + 1/beta = (alpha + beta) / (alpha beta)
    Coeffs num = add_arrays(a.coeff, b.coeff, order);
    Coeffs den = detail::plain_mul(a.coeff, b.coeff, order);
    return detail::divide_core(num, den, order);
}

Jet jet_neg(const Jet& a) {
    Jet r = a;
    for (int k = 0; k <= a.order; ++k) r.coeff[static_cast<size_t>(k)] = -r.coeff[static_cast<size_t>(k)];
    return r;
}

Jet jet_sub(const Jet& a, const Jet& b) { return jet_add(a, jet_neg(b)); }

Jet jet_mul(const Jet& a, const Jet& b) {
    int order = std::max(a.order, b.order);
    if (!a.pole && !b.pole)
        return detail::canonicalize(detail::plain_mul(a.coeff, b.coeff, order), order);
    if (a.pole && !b.pole) return detail::divide_core(b.coeff, a.coeff, order);  // b / alpha
    if (!a.pole && b.pole) return detail::divide_core(a.coeff, b.coeff, order);
    // (1/alpha)(1/beta) = 1 / (alpha beta)
    Coeffs den = detail::plain_mul(a.coeff, b.coeff, order);
    return detail::divide_core(const_array(1.0), den, order);
}

Jet jet_div(const Jet& a, const Jet& b) {
    int order = std::max(a.order, b.order);
    if (!a.pole && !b.pole) return detail::divide_core(a.coeff, b.coeff, order);
    if (!a.pole && b.pole) {  // a * beta
        return detail::canonicalize(detail::plain_mul(a.coeff, b.coeff, order), order);
    }
    if (a.pole && !b.pole) {  // 1 / (alpha b)
        Coeffs den = detail::plain_mul(a.coeff, b.coeff, order);
        return detail::divide_core(const_array(1.0), den, order);
    }
    return detail::divide_core(b.coeff, a.coeff, order);  // beta / alpha
}

Jet jet_pow(const Jet& a, long n) {
    int order = a.order;
    if (n == 0) return Jet::constant(1.0, order);
    bool invert = n < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Jet base = a;
    Jet acc = Jet::constant(1.0, order);
    while (e > 0) {
        if (e & 1ul) acc = jet_mul(acc, base);
        e >>= 1;
        if (e > 0) base = jet_mul(base, base);
    }
    if (invert) return jet_div(Jet::constant(1.0, order), acc);
    return acc;
}

namespace {

// exp on the normal chart; canonical chart choice keeps values representable
// far beyond the naive overflow point by storing exp(-a) when Re a is large.
Coeffs plain_exp(const Coeffs& a, int order) {
    Coeffs r{};
    r[0] = std::exp(a[0]);
    for (int k = 1; k <= order; ++k) {
        cdouble s = 0.0;
        for (int j = 1; j <= k; ++j)
            s += static_cast<double>(j) * a[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
        r[static_cast<size_t>(k)] = s / static_cast<double>(k);
    }
    return r;
}

} // namespace

Jet jet_exp(const Jet& a) {
    if (a.pole && std::abs(a.coeff[0]) < 1.0 / pole_threshold)
        throw eval_error("unrepresentable: exp at a pole (essential singularity)");
    Coeffs arg = a.coeff;
    if (a.pole) arg = detail::plain_div(const_array(1.0), a.coeff, a.order);
    double x = arg[0].real();
    if (x > 709.0 || x < -709.0) {
        // Value or its reciprocal would overflow; the sphere point is still
        // representable on one chart as long as the other side fits.
        if (x > 1420.0 || x < -1420.0)
            throw eval_error("unrepresentable: exp magnitude beyond both charts");
    }
    const double log_thresh = std::log(pole_threshold);
    if (x > log_thresh) {
        Coeffs neg{};
        for (int k = 0; k <= a.order; ++k) neg[static_cast<size_t>(k)] = -arg[static_cast<size_t>(k)];
        Coeffs rec = plain_exp(neg, a.order);
        detail::check_finite(rec, a.order);
        Jet j;
        j.coeff = rec;
        j.order = a.order;
        j.pole = true;
        return j;
    }
    Coeffs r = plain_exp(arg, a.order);
    return detail::canonicalize(r, a.order);
}

namespace {

void plain_sincos(const Coeffs& a, int order, Coeffs& s, Coeffs& c) {
    s = Coeffs{};
    c = Coeffs{};
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= order; ++k) {
        cdouble ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            cdouble w = static_cast<double>(j) * a[static_cast<size_t>(j)];
            ss += w * c[static_cast<size_t>(k - j)];
            cc -= w * s[static_cast<size_t>(k - j)];
        }
        s[static_cast<size_t>(k)] = ss / static_cast<double>(k);
        c[static_cast<size_t>(k)] = cc / static_cast<double>(k);
    }
}

Coeffs sincos_argument(const Jet& a) {
    if (a.pole && std::abs(a.coeff[0]) < 1.0 / pole_threshold)
        throw eval_error("unrepresentable: sin/cos at a pole (essential singularity)");
    Coeffs arg = a.coeff;
    if (a.pole) arg = detail::plain_div(Coeffs{cdouble(1.0)}, a.coeff, a.order);
    if (std::abs(arg[0].imag()) > 700.0)
        throw eval_error("unrepresentable: sin/cos magnitude beyond double range");
    return arg;
}

} // namespace

Jet jet_sin(const Jet& a) {
    Coeffs arg = sincos_argument(a);
    Coeffs s, c;
    plain_sincos(arg, a.order, s, c);
    return detail::canonicalize(s, a.order);
}

Jet jet_cos(const Jet& a) {
    Coeffs arg = sincos_argument(a);
    Coeffs s, c;
    plain_sincos(arg, a.order, s, c);
    return detail::canonicalize(c, a.order);
}

Jet jet_mobius(const Jet& f, cdouble a, cdouble b, cdouble c, cdouble d) {
    if (a * d - b * c == cdouble(0.0, 0.0))
        throw std::invalid_argument("mobius: degenerate matrix (ad - bc = 0)");
    int order = f.order;
    Coeffs num{}, den{};
    if (!f.pole) {
        // (a f + b) / (c f + d)
        for (int k = 0; k <= order; ++k) {
            num[static_cast<size_t>(k)] = a * f.coeff[static_cast<size_t>(k)];
            den[static_cast<size_t>(k)] = c * f.coeff[static_cast<size_t>(k)];
        }
        num[0] += b;
        den[0] += d;
    } else {
        // f = 1/phi: (a + b phi) / (c + d phi)
        for (int k = 0; k <= order; ++k) {
            num[static_cast<size_t>(k)] = b * f.coeff[static_cast<size_t>(k)];
            den[static_cast<size_t>(k)] = d * f.coeff[static_cast<size_t>(k)];
        }
        num[0] += a;
        den[0] += c;
    }
    return detail::divide_core(num, den, order);
}

Jet jet_compose(const Jet& outer, const Jet& inner) {
    if (outer.pole) throw std::logic_error("jet_compose: outer jet must be on the normal chart");
    int order = inner.order;
    if (inner.pole)
        throw eval_error("unrepresentable: composition through a pole");
    Coeffs u = inner.coeff;  // u = inner - inner(z); constant term dropped
    u[0] = 0.0;
    Coeffs r = const_array(outer.coeff[static_cast<size_t>(outer.order)]);
    for (int k = outer.order - 1; k >= 0; --k) {
        r = detail::plain_mul(r, u, order);
        r[0] += outer.coeff[static_cast<size_t>(k)];
    }
    return detail::canonicalize(r, order);
}

Jet jet_affine_pullback(const Jet& f_at_point, cdouble a) {
    Jet r = f_at_point;
    cdouble p = 1.0;
    for (int k = 1; k <= r.order; ++k) {
        p *= a;
        r.coeff[static_cast<size_t>(k)] *= p;
    }
    return r;
}

} // namespace normalfam
