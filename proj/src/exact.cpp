#include "normalfam/exact.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace normalfam {

bool fits_interchange(const Rational& r) {
    return r.get_num().fits_slong_p() && r.get_den().fits_slong_p();
}

std::string format_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("exact value '" + s + "': " + msg + " at position " +
                                    std::to_string(pos));
    }
};

// [sign] digits [ "/" digits ]; enforces the 64-bit interchange bound.
Rational parse_fraction(Cursor& c) {
    size_t start = c.pos;
    if (c.peek() == '+' || c.peek() == '-') ++c.pos;
    size_t digits_begin = c.pos;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
    if (c.pos == digits_begin) c.fail("expected digits");
    mpz_class num(c.s.substr(start, c.pos - start));
    if (!num.fits_slong_p()) c.fail("numerator exceeds 64-bit bound");
    mpz_class den(1);
    if (c.peek() == '/') {
        ++c.pos;
        size_t den_begin = c.pos;
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        if (c.pos == den_begin) c.fail("expected digits after '/'");
        den = mpz_class(c.s.substr(den_begin, c.pos - den_begin));
        if (!den.fits_slong_p()) c.fail("denominator exceeds 64-bit bound");
        if (den == 0) c.fail("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

ExactValue parse_exact_value(const std::string& text) {
    if (text == "inf") return ExactValue::infinity();
    Cursor c{text};
    if (c.done()) c.fail("empty");

    Rational first = parse_fraction(c);
    if (c.peek() == 'i') {
        ++c.pos;
        if (!c.done()) c.fail("trailing characters");
        return ExactValue(GaussRat(Rational(0), first));
    }
    if (c.done()) return ExactValue(GaussRat(first, Rational(0)));
    if (c.peek() != '+' && c.peek() != '-') c.fail("expected '+', '-' or 'i'");
    Rational second = parse_fraction(c);
    if (c.peek() != 'i') c.fail("expected 'i'");
    ++c.pos;
    if (!c.done()) c.fail("trailing characters");
    return ExactValue(GaussRat(first, second));
}

std::string ExactValue::str() const { return format_exact_value(*this); }

std::string format_exact_value(const ExactValue& v) {
    if (v.is_inf()) return "inf";
    const GaussRat& g = v.value();
    if (!fits_interchange(g.re) || !fits_interchange(g.im))
        throw std::overflow_error("exact value exceeds 64-bit interchange bound");
    if (sgn(g.im) == 0) return format_rational(g.re);
    std::string im = format_rational(g.im) + "i";
    if (sgn(g.re) == 0) return im;
    if (sgn(g.im) > 0) return format_rational(g.re) + "+" + im;
    return format_rational(g.re) + im;  // '-' carried by the numerator
}

std::optional<Rational> rationalize(double x, double tol, unsigned long max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    // Continued-fraction convergents.
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(v);
        if (fa > 9e17 || fa < -9e17) break;
        long long a = static_cast<long long>(fa);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 < 0 || static_cast<unsigned long long>(q2) > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= tol) {
            Rational r(static_cast<long>(p1), static_cast<long>(q1));
            r.canonicalize();
            return r;
        }
        double frac = v - fa;
        if (frac < 1e-18) break;
        v = 1.0 / frac;
    }
    return std::nullopt;
}

} // namespace normalfam
