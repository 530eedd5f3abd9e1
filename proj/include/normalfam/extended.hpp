#ifndef NORMALFAM_EXTENDED_HPP
#define NORMALFAM_EXTENDED_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace normalfam {

using cdouble = std::complex<double>;

// Values with |f| above this threshold are booked as the point at infinity;
// the evaluator switches to the reciprocal chart there.
inline constexpr double pole_threshold = 1e8;

inline bool is_finite(cdouble v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// A point of the Riemann sphere: a finite complex value or infinity.
/// The finite variant never holds NaN or +-inf components.
class ExtendedComplex {
public:
    ExtendedComplex() : value_(0.0, 0.0), inf_(false) {}

    explicit ExtendedComplex(cdouble v) : value_(v), inf_(false) {
        if (!is_finite(v)) throw std::invalid_argument("ExtendedComplex: non-finite components");
    }

    static ExtendedComplex infinity() {
        ExtendedComplex e;
        e.inf_ = true;
        return e;
    }

    // Maps overflowing magnitudes to infinity instead of throwing.
    static ExtendedComplex from_value(cdouble v) {
        if (std::isnan(v.real()) || std::isnan(v.imag()))
            throw std::invalid_argument("ExtendedComplex: NaN value");
        if (!is_finite(v)) return infinity();
        return ExtendedComplex(v);
    }

    bool is_inf() const { return inf_; }

    cdouble value() const {
        if (inf_) throw std::logic_error("ExtendedComplex: value() on infinity");
        return value_;
    }

    // Exact component equality on the finite variant.
    friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.value_ == b.value_;
    }

    std::string str() const;

private:
    cdouble value_;
    bool inf_;
};

/// Chordal distance on the Riemann sphere, normalized to [0, 1]:
/// |w1 - w2| / sqrt((1+|w1|^2)(1+|w2|^2)), with chordal(w, inf) = 1/sqrt(1+|w|^2).
/// Computed projectively so huge magnitudes do not overflow.
double chordal(const ExtendedComplex& a, const ExtendedComplex& b);

inline double chordal(cdouble a, cdouble b) {
    return chordal(ExtendedComplex::from_value(a), ExtendedComplex::from_value(b));
}

inline double chordal_to_inf(cdouble a) {
    return chordal(ExtendedComplex::from_value(a), ExtendedComplex::infinity());
}

} // namespace normalfam

#endif
