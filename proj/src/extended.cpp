#include "normalfam/extended.hpp"

#include <algorithm>
#include <cstdio>

namespace normalfam {

std::string ExtendedComplex::str() const {
    if (inf_) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", value_.real(), value_.imag());
    return buf;
}

namespace {

// Projective coordinates (a : b) with w = a/b, scaled so max(|a|,|b|) = 1.
struct Proj {
    cdouble a, b;
};

Proj to_proj(const ExtendedComplex& w) {
    if (w.is_inf()) return {cdouble(1.0, 0.0), cdouble(0.0, 0.0)};
    cdouble v = w.value();
    double m = std::max(std::abs(v.real()), std::abs(v.imag()));
    if (m <= 1.0) return {v, cdouble(1.0, 0.0)};
    return {v / m, cdouble(1.0 / m, 0.0)};
}

} // namespace

double chordal(const ExtendedComplex& x, const ExtendedComplex& y) {
    Proj p = to_proj(x), q = to_proj(y);
    double num = std::abs(p.a * q.b - q.a * p.b);
    double den = std::sqrt((std::norm(p.a) + std::norm(p.b)) * (std::norm(q.a) + std::norm(q.b)));
    return num / den;
}

} // namespace normalfam
