#ifndef NORMALFAM_EXACT_HPP
#define NORMALFAM_EXACT_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "normalfam/extended.hpp"

namespace normalfam {

/// Exact rational. mpq_class is kept canonical (reduced, denominator > 0)
/// by every helper in this module.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Gaussian rational: complex number with exact rational real and imaginary parts.
struct GaussRat {
    Rational re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long r, long i = 0) : re(r), im(i) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    cdouble to_complex() const { return {re.get_d(), im.get_d()}; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw std::domain_error("GaussRat: division by zero");
        Rational n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    // Total order (lexicographic); used only to canonicalize value sets.
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }
};

/// A value of the extended plane in exact form: a Gaussian rational or infinity.
class ExactValue {
public:
    ExactValue() : v_(), inf_(false) {}
    explicit ExactValue(GaussRat v) : v_(std::move(v)), inf_(false) {}
    explicit ExactValue(long re, long im = 0) : v_(re, im), inf_(false) {}

    static ExactValue infinity() {
        ExactValue e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    const GaussRat& value() const {
        if (inf_) throw std::logic_error("ExactValue: value() on infinity");
        return v_;
    }

    ExtendedComplex to_extended() const {
        return inf_ ? ExtendedComplex::infinity() : ExtendedComplex(v_.to_complex());
    }

    friend bool operator==(const ExactValue& a, const ExactValue& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator<(const ExactValue& a, const ExactValue& b) {
        if (a.inf_ != b.inf_) return b.inf_;  // finite values sort before inf
        if (a.inf_) return false;
        return a.v_ < b.v_;
    }

    std::string str() const;

private:
    GaussRat v_;
    bool inf_;
};

/// Parses the exact interchange grammar: "inf" or "p/q+r/si" with optional
/// parts ("3", "-1/2", "2i", "1-2/3i"). Integers must fit in 64 bits before
/// reduction; anything larger is rejected.
ExactValue parse_exact_value(const std::string& text);

/// Canonical form accepted back by parse_exact_value. Throws if a component
/// no longer fits the 64-bit interchange bound.
std::string format_exact_value(const ExactValue& v);

std::string format_rational(const Rational& r);  // "p/q" or "p"

/// Fits-in-int64 check for interchange enforcement.
bool fits_interchange(const Rational& r);

/// Round a double to a nearby rational with small denominator (continued
/// fractions). Returns nothing if no denominator <= max_den approximates
/// within tol.
std::optional<Rational> rationalize(double x, double tol, unsigned long max_den = 1000000);

} // namespace normalfam

#endif
