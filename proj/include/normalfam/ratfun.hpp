#ifndef NORMALFAM_RATFUN_HPP
#define NORMALFAM_RATFUN_HPP

#include <optional>
#include <vector>

#include "normalfam/polynomial.hpp"

namespace normalfam {

/// Coprime numerator/denominator over the Gaussian rationals, denominator
/// monic, degree d = max(deg num, deg den) >= 1.
class RationalFunction {
public:
    static RationalFunction reduce(const GPolynomial& p, const GPolynomial& q);

    const GPolynomial& num() const { return num_; }
    const GPolynomial& den() const { return den_; }
    int degree() const;

    /// Exact value at infinity (0, infinity, or the leading ratio).
    ExactValue value_at_infinity() const;

    ExtendedComplex eval(cdouble z) const;

private:
    RationalFunction(GPolynomial n, GPolynomial d) : num_(std::move(n)), den_(std::move(d)) {}
    GPolynomial num_, den_;
};

/// Multiplicity layout of f^-1(target): how many distinct finite points carry
/// each exact multiplicity, plus the multiplicity at infinity. Derived purely
/// from squarefree-decomposition degrees; multiplicities always sum to d.
struct PreimageProfile {
    ExactValue target;
    std::vector<std::pair<int, int>> entries;  // (multiplicity, count of finite points)
    int infinity_multiplicity = 0;

    int distinct_finite_points() const;
    int total_multiplicity(int degree_check = -1) const;
};

PreimageProfile preimage_profile(const RationalFunction& f, const ExactValue& c);

/// Values with no preimage in the finite plane; at most one element, and when
/// present it equals f(infinity).
std::vector<ExactValue> omitted_values(const RationalFunction& f);

/// Minimum multiplicity over all sphere preimages of c, or nothing when c has
/// no finite preimage (omitted in the plane sense).
std::optional<int> min_multiplicity(const RationalFunction& f, const ExactValue& c);

struct CriticalValue {
    ExtendedComplex value;                  // clustered numeric critical value
    std::optional<ExactValue> exact;        // confirmed Gaussian-rational identification
    int finite_ramification = 0;            // sum of (e_z - 1) over finite points above it
};

/// Critical values from the numeric roots of W = num' den - num den',
/// clustered in the chordal metric. Throws on clustering ambiguity.
std::vector<CriticalValue> critical_values_numeric(const RationalFunction& f, double tol = 1e-8);

struct HurwitzCheck {
    int total_ramification = 0;
    int expected = 0;       // 2d - 2
    bool pass = false;
    int infinity_contribution = 0;
    std::vector<CriticalValue> critical_values;
};

/// Verifies sum over the sphere of (d - #f^-1(w)) = 2d - 2: numeric critical
/// values plus the exact contribution of the point at infinity.
HurwitzCheck riemann_hurwitz_check(const RationalFunction& f, double tol = 1e-8);

enum class DefectMode { b, c };

struct DefectEntry {
    ExactValue value;
    int m;
};

struct DefectBound {
    std::vector<ExactValue> U;          // omitted values (plus a1 in mode c)
    std::vector<DefectEntry> R;         // totally ramified values not in U
    Rational bound;                     // |U| + sum(1 - 1/m_j), exact
    bool pass = false;                  // bound <= 2
};

/// The modified defect bound |U| + sum(1 - 1/m_j) <= 2.
/// Mode c requires a1 to have exactly one finite preimage point; throws
/// std::invalid_argument otherwise. Candidate values are tested for total
/// ramification exactly; numerically discovered critical values that identify
/// as Gaussian rationals are included as well.
DefectBound verify_defect_bound(const RationalFunction& f, DefectMode mode,
                                const std::optional<ExactValue>& a1,
                                const std::vector<ExactValue>& candidates, double tol = 1e-8);

} // namespace normalfam

#endif
