#include "normalfam/criterion.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace normalfam {

std::vector<std::string> validate_profile(const ConditionProfile& p) {
    std::vector<std::string> out;
    std::vector<ExactValue> all;
    auto collect = [&](const ExactValue& v, const char* where) {
        for (const auto& w : all)
            if (w == v) {
                out.push_back(std::string("value ") + v.str() + " appears twice (" + where +
                              "); A, B, C must be pairwise disjoint");
                return;
            }
        all.push_back(v);
    };
    for (const auto& v : p.A) collect(v, "A");
    for (const auto& v : p.B) {
        if (v.is_inf())
            out.push_back("B must exclude infinity");
        else if (v.value().is_zero())
            out.push_back("B must exclude 0");
        collect(v, "B");
    }
    for (const auto& e : p.C) {
        collect(e.value, "C");
        if (e.m < 2)
            out.push_back("C entry " + e.value.str() + ": multiplicity must be >= 2");
        if (e.M.has_value() && !(*e.M >= 0.0))
            out.push_back("C entry " + e.value.str() + ": M must be nonnegative");
        if (!e.value.is_inf() && !e.M.has_value())
            out.push_back("C entry " + e.value.str() + ": finite values need a derivative bound M");
    }
    return out;
}

Rational criterion_sum(const ConditionProfile& p) {
    auto violations = validate_profile(p);
    if (!violations.empty())
        throw std::invalid_argument("criterion_sum: invalid profile: " + violations.front());
    Rational sum(static_cast<long>(p.A.size() + p.B.size()));
    for (const auto& e : p.C) {
        Rational term(e.m - 1, e.m);
        term.canonicalize();
        sum += term;
    }
    return sum;
}

std::string witness_base_name(WitnessBase b) {
    switch (b) {
        case WitnessBase::SIN: return "SIN";
        case WitnessBase::EXP3: return "EXP3";
        case WitnessBase::WP: return "WP";
        case WitnessBase::WP2: return "WP2";
        case WitnessBase::WPP: return "WPP";
        case WitnessBase::WPP2: return "WPP2";
        case WitnessBase::LAHIRI42: return "LAHIRI42";
        case WitnessBase::RECIP43: return "RECIP43";
    }
    return "?";
}

// ------------------------------------------------------- exact Moebius -----

namespace {

// Projective point on the sphere over the Gaussian rationals.
struct ProjPt {
    GaussRat p, q;  // value p/q, infinity = (1, 0)
};

ProjPt to_proj(const ExactValue& v) {
    if (v.is_inf()) return {GaussRat(1), GaussRat(0)};
    return {v.value(), GaussRat(1)};
}

ExactValue from_proj(const ProjPt& pt) {
    if (pt.q.is_zero()) {
        if (pt.p.is_zero()) throw std::logic_error("from_proj: (0:0)");
        return ExactValue::infinity();
    }
    return ExactValue(pt.p / pt.q);
}

GaussRat cross(const ProjPt& x, const ProjPt& y) { return x.p * y.q - x.q * y.p; }

struct Mat {
    GaussRat a, b, c, d;  // row-major [[a, b], [c, d]]

    GaussRat det() const { return a * d - b * c; }
    ProjPt apply(const ProjPt& pt) const { return {a * pt.p + b * pt.q, c * pt.p + d * pt.q}; }
    Mat adjugate() const { return {d, -b, -c, a}; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
};

// The Moebius map sending (P1, P2, P3) to (0, 1, infinity).
Mat to_standard_triple(const ProjPt& p1, const ProjPt& p2, const ProjPt& p3) {
    GaussRat k23 = cross(p2, p3);
    GaussRat k12 = cross(p1, p2);
    return {k23 * p1.q, -(k23 * p1.p), -(k12 * p3.q), k12 * p3.p};
}

Mat normalize(Mat m) {
    const GaussRat* lead = nullptr;
    for (const GaussRat* g : {&m.a, &m.b, &m.c, &m.d})
        if (!g->is_zero()) {
            lead = g;
            break;
        }
    if (!lead) throw std::logic_error("normalize: zero matrix");
    GaussRat inv = GaussRat(1) / *lead;
    return {m.a * inv, m.b * inv, m.c * inv, m.d * inv};
}

Mat three_point_map(const std::array<ProjPt, 3>& src, const std::array<ProjPt, 3>& dst) {
    Mat ms = to_standard_triple(src[0], src[1], src[2]);
    Mat md = to_standard_triple(dst[0], dst[1], dst[2]);
    Mat t = md.adjugate() * ms;
    if (t.det().is_zero()) throw std::logic_error("three_point_map: degenerate data");
    return normalize(t);
}

} // namespace

bool ExactMobius::is_identity() const {
    return b.is_zero() && c.is_zero() && a == d && !a.is_zero();
}

ExactValue ExactMobius::apply(const ExactValue& v) const {
    Mat m{a, b, c, d};
    return from_proj(m.apply(to_proj(v)));
}

ExactValue ExactMobius::apply_inverse(const ExactValue& v) const {
    Mat m{a, b, c, d};
    return from_proj(m.adjugate().apply(to_proj(v)));
}

// ------------------------------------------------------ witness registry ---

namespace {

struct BasePointInfo {
    ExactValue point;
    int mult;
    bool free_root = false;  // WP only: point solved from the Moebius at the end
};

struct BaseInfo {
    WitnessBase id;
    std::vector<ExactValue> omitted;     // values the base never takes on C
    std::vector<BasePointInfo> genuine;  // totally ramified sphere points
};

const std::vector<BaseInfo>& base_registry() {
    static const std::vector<BaseInfo> reg = [] {
        std::vector<BaseInfo> r;
        // sin(e^z): omits infinity; +-1 points all have multiplicity 2.
        r.push_back({WitnessBase::SIN,
                     {ExactValue::infinity()},
                     {{ExactValue(1), 2}, {ExactValue(-1), 2}}});
        // exp(z^3): omits 0 and infinity.
        r.push_back({WitnessBase::EXP3, {ExactValue(0), ExactValue::infinity()}, {}});
        // wp(e^z) with (wp')^2 = 4 wp (wp - 1)(wp - b): poles, 0-, 1-, b-points double.
        r.push_back({WitnessBase::WP,
                     {},
                     {{ExactValue::infinity(), 2},
                      {ExactValue(0), 2},
                      {ExactValue(1), 2},
                      {ExactValue(), 2, true}}});
        // wp'(e^z) with (wp')^2 = 4 wp^3 + 1: poles and +-1 points triple.
        r.push_back({WitnessBase::WPP,
                     {},
                     {{ExactValue::infinity(), 3}, {ExactValue(1), 3}, {ExactValue(-1), 3}}});
        // (wp(e^z))^2 with roots +-1: poles and zeros quadruple, 1-points double.
        r.push_back({WitnessBase::WP2,
                     {},
                     {{ExactValue::infinity(), 4}, {ExactValue(0), 4}, {ExactValue(1), 2}}});
        // (wp'(e^z))^2: poles of order 6, zeros double, 1-points triple.
        r.push_back({WitnessBase::WPP2,
                     {},
                     {{ExactValue::infinity(), 6}, {ExactValue(0), 2}, {ExactValue(1), 3}}});
        return r;
    }();
    return reg;
}

// Completion values for under-determined Moebius data; (t -> t) pairs keep
// identity maps identical.
ExactValue pick_unused(const std::vector<ExactValue>& used) {
    for (long k : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
        ExactValue cand(k);
        bool clash = false;
        for (const auto& u : used)
            if (u == cand) clash = true;
        if (!clash) return cand;
    }
    throw std::logic_error("pick_unused: exhausted candidates");
}

struct PendingSlot {
    SlotAssignment::Slot slot;
    ExactValue value;
    int m;  // 0 for A/B slots
};

} // namespace

std::optional<WitnessSpec> witness_for_gap(const ConditionProfile& p) {
    {
        auto violations = validate_profile(p);
        if (!violations.empty())
            throw std::invalid_argument("witness_for_gap: invalid profile: " + violations.front());
        if (cmp(criterion_sum(p), 2) > 0)
            throw std::invalid_argument("witness_for_gap: profile sum exceeds 2");
    }

    const size_t ns = p.A.size() + p.B.size();
    std::vector<PendingSlot> ab_slots;
    for (const auto& v : p.A) ab_slots.push_back({SlotAssignment::Slot::shared_A, v, 0});
    for (const auto& v : p.B) ab_slots.push_back({SlotAssignment::Slot::partial_B, v, 0});

    std::vector<PendingSlot> c_slots;
    for (const auto& e : p.C) c_slots.push_back({SlotAssignment::Slot::ramified_C, e.value, e.m});
    std::stable_sort(c_slots.begin(), c_slots.end(),
                     [](const PendingSlot& x, const PendingSlot& y) { return x.m > y.m; });

    for (const BaseInfo& base : base_registry()) {
        if (ns > base.omitted.size()) continue;
        size_t omit_c = std::min(base.omitted.size() - ns, c_slots.size());
        size_t genuine_needed = c_slots.size() - omit_c;
        if (genuine_needed > base.genuine.size()) continue;

        // Hardest slots (largest m) take the omitted values; the rest must be
        // dominated by the genuine multiplicities, largest against largest.
        std::vector<BasePointInfo> genuine = base.genuine;
        std::stable_sort(
            genuine.begin(), genuine.end(),
            [](const BasePointInfo& x, const BasePointInfo& y) { return x.mult > y.mult; });
        bool ok = true;
        for (size_t i = 0; i < genuine_needed; ++i)
            if (genuine[i].mult < c_slots[omit_c + i].m) {
                ok = false;
                break;
            }
        if (!ok) continue;

        // Omission assignments, literal value matches first.
        std::vector<PendingSlot> omitted_slots = ab_slots;
        for (size_t i = 0; i < omit_c; ++i) omitted_slots.push_back(c_slots[i]);
        std::vector<bool> omit_used(base.omitted.size(), false);
        std::vector<SlotAssignment> slots;
        for (size_t round = 0; round < 2; ++round) {
            for (const auto& ps : omitted_slots) {
                bool already = false;
                for (const auto& sl : slots)
                    if (sl.profile_value == ps.value) already = true;
                if (already) continue;
                size_t pick = base.omitted.size();
                for (size_t j = 0; j < base.omitted.size(); ++j) {
                    if (omit_used[j]) continue;
                    if (round == 0 && !(base.omitted[j] == ps.value)) continue;
                    pick = j;
                    break;
                }
                if (pick == base.omitted.size()) continue;
                omit_used[pick] = true;
                slots.push_back({ps.slot, ps.value, ps.m, base.omitted[pick],
                                 SlotAssignment::Guarantee::omitted, 0});
            }
        }

        // Genuine assignments: tightest sufficient multiplicity; literal value
        // match breaks ties within a multiplicity tier.
        std::vector<bool> gen_used(genuine.size(), false);
        std::optional<size_t> free_slot_index;
        for (size_t i = 0; i < genuine_needed && ok; ++i) {
            const PendingSlot& ps = c_slots[omit_c + i];
            size_t pick = genuine.size();
            for (size_t j = 0; j < genuine.size(); ++j) {
                if (gen_used[j] || genuine[j].mult < ps.m) continue;
                if (pick == genuine.size()) {
                    pick = j;
                    continue;
                }
                bool tighter = genuine[j].mult < genuine[pick].mult;
                bool same = genuine[j].mult == genuine[pick].mult;
                bool literal = !genuine[j].free_root && genuine[j].point == ps.value;
                bool pick_literal = !genuine[pick].free_root && genuine[pick].point == ps.value;
                // A fixed point beats the free root at equal multiplicity.
                bool fixity = genuine[pick].free_root && !genuine[j].free_root;
                if (tighter || (same && ((literal && !pick_literal) || (fixity && !pick_literal))))
                    pick = j;
            }
            if (pick == genuine.size()) {
                ok = false;
                break;
            }
            gen_used[pick] = true;
            slots.push_back({ps.slot, ps.value, ps.m, genuine[pick].point,
                             SlotAssignment::Guarantee::multiplicity, genuine[pick].mult});
            if (genuine[pick].free_root) free_slot_index = slots.size() - 1;
        }
        if (!ok) continue;

        // Exact Moebius from the fixed (base point -> value) pairs.
        std::vector<ExactValue> src_pts, dst_pts;
        for (size_t i = 0; i < slots.size(); ++i) {
            if (free_slot_index && i == *free_slot_index) continue;
            src_pts.push_back(slots[i].base_point);
            dst_pts.push_back(slots[i].profile_value);
        }
        if (src_pts.size() > 3) throw std::logic_error("witness_for_gap: too many fixed pairs");
        while (src_pts.size() < 3) {
            ExactValue t_src = pick_unused(src_pts);
            ExactValue t_dst = t_src;
            bool clash = false;
            for (const auto& u : dst_pts)
                if (u == t_dst) clash = true;
            if (clash) {
                std::vector<ExactValue> both = dst_pts;
                both.push_back(t_src);
                t_dst = pick_unused(both);
            }
            src_pts.push_back(t_src);
            dst_pts.push_back(t_dst);
        }
        Mat t = three_point_map({to_proj(src_pts[0]), to_proj(src_pts[1]), to_proj(src_pts[2])},
                                {to_proj(dst_pts[0]), to_proj(dst_pts[1]), to_proj(dst_pts[2])});

        WitnessSpec spec;
        spec.base = base.id;
        spec.mobius = ExactMobius{t.a, t.b, t.c, t.d};
        spec.slots = slots;

        if (free_slot_index) {
            // Remaining cubic root: solve T(b) = value of the free slot.
            ExactValue target = slots[*free_slot_index].profile_value;
            ExactValue b = spec.mobius.apply_inverse(target);
            if (b.is_inf()) continue;
            const GaussRat root = b.value();
            if (root.is_zero() || root == GaussRat(1)) continue;  // roots must stay distinct
            spec.wp_free_root = root;
            spec.slots[*free_slot_index].base_point = b;
        }
        return spec;
    }
    return std::nullopt;
}

CriterionVerdict decide(const ConditionProfile& p) {
    CriterionVerdict v;
    v.sum = criterion_sum(p);
    v.normal = cmp(v.sum, 2) > 0;
    if (!v.normal) v.witness = witness_for_gap(p);
    return v;
}

FunctionHandle instantiate_witness(const WitnessSpec& w) {
    std::string expr;
    switch (w.base) {
        case WitnessBase::SIN: expr = "sin(exp(z))"; break;
        case WitnessBase::EXP3: expr = "exp(z^3)"; break;
        case WitnessBase::WPP: expr = "wpp(exp(z),0,-1)"; break;
        case WitnessBase::WP2: expr = "wp(exp(z),4,0)^2"; break;
        case WitnessBase::WPP2: expr = "wpp(exp(z),0,-1)^2"; break;
        case WitnessBase::WP: {
            // Roots 0, 1, b: cubic 4x(x-1)(x-b) reduced to normal form, shift undone.
            if (!w.wp_free_root) throw std::invalid_argument("WP witness needs its free root");
            cdouble b = w.wp_free_root->to_complex();
            cdouble one(1.0, 0.0);
            cdouble alpha = -4.0 * (one + b);
            cdouble beta = 4.0 * b;
            cdouble g2 = alpha * alpha / 12.0 - beta;
            cdouble g3 = -alpha * alpha * alpha / 216.0 + alpha * beta / 12.0;
            cdouble shift = alpha / 12.0;
            char buf[320];
            std::snprintf(buf, sizeof(buf),
                          "wp(exp(z),%.17g%+.17gi,%.17g%+.17gi)-(%.17g%+.17gi)", g2.real(),
                          g2.imag(), g3.real(), g3.imag(), shift.real(), shift.imag());
            expr = buf;
            break;
        }
        case WitnessBase::LAHIRI42:
        case WitnessBase::RECIP43:
            throw std::invalid_argument("sequence families are not gap witnesses");
    }
    FunctionHandle h = parse(expr);
    if (!w.mobius.is_identity())
        h = mobius_post(h, w.mobius.a.to_complex(), w.mobius.b.to_complex(),
                        w.mobius.c.to_complex(), w.mobius.d.to_complex());
    return h;
}

} // namespace normalfam
