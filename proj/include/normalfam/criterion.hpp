#ifndef NORMALFAM_CRITERION_HPP
#define NORMALFAM_CRITERION_HPP

#include <optional>
#include <string>
#include <vector>

#include "normalfam/exact.hpp"
#include "normalfam/expr.hpp"

namespace normalfam {

/// One entry of the set C: a value all of whose preimages must have
/// multiplicity >= m, with derivative bound M (absent only for infinity).
struct CEntry {
    ExactValue value;
    int m = 2;
    std::optional<double> M;
};

/// The hypothesis triple (A, B, C): shared set A, partial-sharing values B,
/// ramified values C with multiplicities and derivative bounds.
struct ConditionProfile {
    std::vector<ExactValue> A;
    std::vector<ExactValue> B;
    std::vector<CEntry> C;
};

/// Empty when the profile satisfies every structural invariant.
std::vector<std::string> validate_profile(const ConditionProfile& p);

/// n + s + sum_j (1 - 1/m_j), exactly. Throws std::invalid_argument on an
/// invalid profile.
Rational criterion_sum(const ConditionProfile& p);

enum class WitnessBase { SIN, EXP3, WP, WP2, WPP, WPP2, LAHIRI42, RECIP43 };

std::string witness_base_name(WitnessBase b);

/// Exact Moebius matrix, normalized so the first nonzero entry is 1.
struct ExactMobius {
    GaussRat a, b, c, d;

    bool is_identity() const;
    /// Image of an exact sphere point.
    ExactValue apply(const ExactValue& v) const;
    ExactValue apply_inverse(const ExactValue& v) const;
};

/// How one profile value is realized by the instantiated witness function.
struct SlotAssignment {
    enum class Slot { shared_A, partial_B, ramified_C };
    enum class Guarantee { omitted, multiplicity };

    Slot slot;
    ExactValue profile_value;
    int required_m = 0;           // ramified_C only
    ExactValue base_point;        // distinguished sphere point of the base family
    Guarantee guarantee;
    int base_multiplicity = 0;    // Guarantee::multiplicity only
};

/// A non-normal family certifying that a profile with sum <= 2 cannot force
/// normality: base family, exact Moebius moving its distinguished points onto
/// the profile values, and the per-slot guarantees.
struct WitnessSpec {
    WitnessBase base;
    ExactMobius mobius;
    std::vector<SlotAssignment> slots;
    std::optional<GaussRat> wp_free_root;  // WP only: third finite root of the cubic
};

struct CriterionVerdict {
    Rational sum;
    bool normal = false;
    std::optional<WitnessSpec> witness;
};

/// Verdict from the exact inequality: normal iff sum > 2. On the inconclusive
/// side attaches a witness when the registry covers the configuration.
CriterionVerdict decide(const ConditionProfile& p);

/// Witness construction for profiles with sum <= 2. Slots that the base
/// cannot realize genuinely are satisfied vacuously by omitted values
/// (assigned omission-first: A, then B, then the largest m). Returns nothing
/// (NotCovered) when no base dominates.
std::optional<WitnessSpec> witness_for_gap(const ConditionProfile& p);

/// Builds the concrete function realizing a witness.
FunctionHandle instantiate_witness(const WitnessSpec& w);

} // namespace normalfam

#endif
