#include "normalfam/verify.hpp"

#include "normalfam/weierstrass.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <thread>

namespace normalfam {

FunctionHandle exp_pair_member(int n) {
    char buf[160];
    double p = (n + 1.0) / (2.0 * n), q = (n - 1.0) / (2.0 * n);
    std::snprintf(buf, sizeof(buf), "%.17g*exp(%d*z)+%.17g*exp(-%d*z)", p, n, q, n);
    return parse(buf);
}

FunctionHandle recip_exp_pair_member(int n) {
    char buf[176];
    double p = (n + 1.0) / (2.0 * n), q = (n - 1.0) / (2.0 * n);
    std::snprintf(buf, sizeof(buf), "1/(%.17g*exp(%d*z)+%.17g*exp(-%d*z))", p, n, q, n);
    return parse(buf);
}

namespace {

double uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

cdouble ubox(std::mt19937_64& rng, double lo, double hi) {
    return {lo + (hi - lo) * uniform(rng), lo + (hi - lo) * uniform(rng)};
}

CEntry centry(long re, int m, double M = 1.0) {
    return CEntry{ExactValue(re), m, M};
}

std::string rat_str(const Rational& r) { return format_rational(r); }

// ---- individual registry checks -------------------------------------------

using Job = std::function<CheckRecord()>;

CheckRecord profile_check(std::string id, std::string family, const ConditionProfile& p,
                          const std::string& want_sum, bool want_normal,
                          const char* want_witness /* nullptr = don't care */) {
    CheckRecord rec;
    rec.id = std::move(id);
    rec.family = std::move(family);
    rec.params = profile_to_json(p);
    CriterionVerdict v = decide(p);
    rec.measured = verdict_to_json(v);
    rec.threshold = "sum == " + want_sum + (want_normal ? ", Normal" : ", Inconclusive");
    rec.pass = rat_str(v.sum) == want_sum && v.normal == want_normal;
    if (want_witness) {
        rec.threshold += std::string(", witness ") + want_witness;
        rec.pass = rec.pass && v.witness && witness_base_name(v.witness->base) == want_witness;
    }
    return rec;
}

CheckRecord budget_short(std::string id, std::string family, long budget, long need) {
    CheckRecord rec;
    rec.id = std::move(id);
    rec.family = std::move(family);
    rec.params = ojson{{"budget", budget}, {"required", need}};
    rec.measured = "inconclusive (budget)";
    rec.threshold = "budget >= " + std::to_string(need);
    rec.pass = false;
    return rec;
}

} // namespace

VerificationReport verify_examples(long budget, uint64_t seed, int threads) {
    VerificationReport rep;
    rep.version = tool_version;
    rep.seed = seed;
    rep.budget = budget;

    const long min_numeric_budget = 4000;
    std::vector<Job> jobs;

    // --- exact criterion profiles -------------------------------------------
    jobs.push_back([] {
        ConditionProfile p;
        p.B = {ExactValue(1), ExactValue(2)};
        p.C = {centry(0, 2)};
        return profile_check("three_values_shared_with_derivative", "f=a_i => f'=a_i, i=1..3", p,
                             "5/2", true, nullptr);
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.B = {ExactValue(1)};
        p.C = {CEntry{ExactValue::infinity(), 3, std::nullopt}, centry(0, 2)};
        return profile_check("triple_poles_bounded_zero_derivatives", "B={1}, C={inf(3), 0(2)}", p,
                             "13/6", true, nullptr);
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.A = {ExactValue::infinity()};
        p.C = {centry(1, 2), centry(-1, 2)};
        return profile_check("sin_exp_profile", "sin(e^z)", p, "2", false, "SIN");
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.B = {ExactValue(2)};
        p.C = {centry(1, 2), centry(3, 2)};
        CheckRecord rec = profile_check("sin_exp_moved_profile", "2 - 1/sin(e^z)", p, "2", false,
                                        "SIN");
        // the exact Moebius must send (inf, 1, -1) to (2, 1, 3)
        CriterionVerdict v = decide(p);
        bool mob_ok = false;
        if (v.witness) {
            const ExactMobius& m = v.witness->mobius;
            mob_ok = m.apply(ExactValue::infinity()) == ExactValue(2) &&
                     m.apply(ExactValue(1)) == ExactValue(1) &&
                     m.apply(ExactValue(-1)) == ExactValue(3);
        }
        rec.threshold += ", mobius maps (inf,1,-1) -> (2,1,3)";
        rec.pass = rec.pass && mob_ok;
        return rec;
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.A = {ExactValue::infinity(), ExactValue(0)};
        return profile_check("exp_cubic_profile", "exp(z^3)", p, "2", false, "EXP3");
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.C = {centry(-1, 2), centry(-2, 2), centry(-3, 2), centry(-4, 2)};
        return profile_check("four_double_values_profile", "wp(e^z)", p, "2", false, "WP");
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.C = {centry(2, 4), centry(5, 4), centry(7, 2)};
        return profile_check("two_quadruple_one_double_profile", "wp(e^z)^2", p, "2", false,
                             "WP2");
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.C = {centry(2, 3), centry(5, 3), centry(7, 3)};
        return profile_check("three_triple_values_profile", "wp'(e^z)", p, "2", false, "WPP");
    });
    jobs.push_back([] {
        ConditionProfile p;
        p.C = {centry(2, 6), centry(5, 2), centry(7, 3)};
        return profile_check("sextuple_double_triple_profile", "wp'(e^z)^2", p, "2", false,
                             "WPP2");
    });
    jobs.push_back([] {
        // 0 in B is structurally rejected; the weaker f=0 => f'=0 condition
        // must not be bookable there.
        CheckRecord rec;
        rec.id = "zero_in_B_rejected";
        rec.family = "(c/2)(sin(e^z)+1)";
        ConditionProfile p;
        p.B = {ExactValue(0)};
        auto viol = validate_profile(p);
        rec.measured = viol;
        rec.threshold = "validation reports 'B must exclude 0'";
        rec.pass = !viol.empty() && viol.front().find("B must exclude 0") != std::string::npos;
        return rec;
    });

    // --- probes and growth for the counterexample families ------------------
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("sin_exp_marty_growth", "sin(e^z)", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "sin_exp_marty_growth";
        rec.family = "sin(e^z)";
        MartyReport m = marty_probe(parse("sin(exp(z))"), 0.0, {2, 3, 4, 5, 6, 7}, budget, seed);
        rec.params = ojson{{"radii", m.radii}, {"budget", budget}};
        rec.measured = marty_to_json(m);
        rec.threshold = "evidence of non-normality (log-sup slope >= 1)";
        rec.pass = m.evidence;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("exp_cubic_marty_growth", "exp(z^3)", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "exp_cubic_marty_growth";
        rec.family = "exp(z^3)";
        MartyReport m = marty_probe(parse("exp(z^3)"), 0.0, {1.0, 1.5, 2.0, 2.5, 3.0}, budget,
                                    seed + 1);
        rec.params = ojson{{"radii", m.radii}, {"budget", budget}};
        rec.measured = marty_to_json(m);
        rec.threshold = "evidence of non-normality (log-sup slope >= 1)";
        rec.pass = m.evidence;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("mobius_control_no_evidence", "(z+1)/(z-2)", budget,
                                min_numeric_budget);
        CheckRecord rec;
        rec.id = "mobius_control_no_evidence";
        rec.family = "(z+1)/(z-2)";
        MartyReport m = marty_probe(parse("(z+1)/(z-2)"), 0.0, {1, 2, 3, 4, 5}, budget, seed + 2);
        rec.measured = marty_to_json(m);
        rec.threshold = "no evidence for a Moebius function";
        rec.pass = !m.evidence;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("scaled_sin_partial_sharing_at_zero", "(c/2)(sin(e^z)+1)", budget,
                                min_numeric_budget);
        CheckRecord rec;
        rec.id = "scaled_sin_partial_sharing_at_zero";
        rec.family = "(c/2)(sin(e^z)+1), c=3";
        FunctionHandle h = parse("(3/2)*(sin(exp(z))+1)");
        ConditionProfile raw;
        raw.B = {ExactValue(0)};  // raw condition check, deliberately unvalidated
        ProbeReport probe = hypothesis_probe(h, raw, 0.0, 3.0, budget / 8);
        MartyReport m = marty_probe(h, 0.0, {2, 3, 4, 5, 6}, budget / 2, seed + 3);
        rec.measured = ojson{{"partial_sharing_probe", probe_to_json(probe)},
                             {"marty", marty_to_json(m)}};
        rec.threshold = "f=0 => f'=0 probe passes AND the family is still non-normal";
        rec.pass = probe.pass && m.evidence;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("exp_cubic_moved_omissions", "(2e^{z^3}+5)/(e^{z^3}+1)", budget,
                                min_numeric_budget);
        CheckRecord rec;
        rec.id = "exp_cubic_moved_omissions";
        rec.family = "(2 e^(z^3) + 5)/(e^(z^3) + 1)";
        FunctionHandle h = parse("(2*exp(z^3)+5)/(exp(z^3)+1)");
        ConditionProfile p;
        p.C = {centry(2, 5), centry(5, 4)};
        ProbeReport probe = hypothesis_probe(h, p, 0.0, 2.0, budget / 8);
        CriterionVerdict v = decide(p);
        rec.measured = ojson{{"probe", probe_to_json(probe)}, {"verdict", verdict_to_json(v)}};
        rec.threshold = "omission satisfies both C entries vacuously; witness EXP3";
        rec.pass = probe.pass && !v.normal && v.witness &&
                   v.witness->base == WitnessBase::EXP3;
        return rec;
    });

    // --- rescaling runs ------------------------------------------------------
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("sin_exp_rescaling", "sin(e^z)", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "sin_exp_rescaling";
        rec.family = "sin(e^z)";
        GridSpec grid;
        grid.xi_radius = 2.0;
        RescalingTrace t = zalcman_extract(parse("sin(exp(z))"), 0.0, {2, 3, 4, 5, 6, 7}, grid, 2,
                                           budget / 6, seed + 10);
        double sup = 0.0, worst_omission = 0.0, worst_c = 0.0;
        bool blowup = check_bounded_blowup(t, 1.0, 0.2, &sup);
        bool omission = check_inherited_omission(t, ExtendedComplex::infinity(), 0.05,
                                                 &worst_omission);
        bool c_plus = check_inherited_C(t, ExtendedComplex(cdouble(1.0, 0.0)), 2, 0.0, 1e-2,
                                        &worst_c);
        bool c_minus = check_inherited_C(t, ExtendedComplex(cdouble(-1.0, 0.0)), 2, 0.0, 1e-2);
        double norm0 = t.steps.empty() ? 0.0 : t.steps.back().grid.front().jet.spherical();
        rec.measured = ojson{{"trace", trace_to_json(t)},
                             {"sup_xi1", sup},
                             {"g_sharp_at_0", norm0},
                             {"min_chordal_to_inf", worst_omission}};
        rec.threshold =
            "conclusive, g#(0)=1+-1e-9, sup(|xi|<=1) <= 1.2, omits inf (delta 0.05), C-checks at "
            "+-1 (m=2, tol 1e-2)";
        rec.pass = t.conclusive && std::abs(norm0 - 1.0) <= 1e-9 && blowup && omission && c_plus &&
                   c_minus;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("exp_cubic_rescaling", "exp(z^3)", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "exp_cubic_rescaling";
        rec.family = "exp(z^3)";
        GridSpec grid;
        grid.xi_radius = 1.0;
        RescalingTrace t = zalcman_extract(parse("exp(z^3)"), 0.0, {1.5, 2.0, 2.5, 3.0, 3.5, 4.0},
                                           grid, 2, budget / 6, seed + 11);
        double sup = 0.0;
        bool blowup = check_bounded_blowup(t, 1.0, 0.2, &sup);
        bool o_inf = check_inherited_omission(t, ExtendedComplex::infinity(), 0.05);
        bool o_zero = check_inherited_omission(t, ExtendedComplex(cdouble(0.0, 0.0)), 0.05);
        double norm0 = t.steps.empty() ? 0.0 : t.steps.back().grid.front().jet.spherical();
        rec.measured = ojson{{"trace", trace_to_json(t)}, {"sup_xi1", sup}, {"g_sharp_at_0", norm0}};
        rec.threshold = "conclusive, g#(0)=1+-1e-9, sup(|xi|<=1) <= 1.2, omits 0 and inf";
        rec.pass = t.conclusive && std::abs(norm0 - 1.0) <= 1e-9 && blowup && o_inf && o_zero;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("translate_control_inconclusive", "z", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "translate_control_inconclusive";
        rec.family = "z";
        GridSpec grid;
        RescalingTrace t = zalcman_extract(parse("z"), 0.0, {1, 2, 3, 4}, grid, 2, budget / 8,
                                           seed + 12);
        rec.measured = trace_to_json(t);
        rec.threshold = "translates of z never rescale (rho bounded away from 0)";
        rec.pass = !t.conclusive;
        return rec;
    });

    // --- Weierstrass ---------------------------------------------------------
    jobs.push_back([seed]() -> CheckRecord {
        CheckRecord rec;
        rec.id = "wp_ode_residual";
        rec.family = "wp(z; g2, g3)";
        std::mt19937_64 rng(seed ^ 0x77aa11ull);
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            cdouble g2, g3;
            do {
                g2 = ubox(rng, -1.5, 1.5);
                g3 = ubox(rng, -1.5, 1.5);
            } while (std::abs(wp_discriminant(g2, g3)) < 0.05);
            for (int j = 0; j < 100; ++j) {
                double r = 0.05 + 1.45 * uniform(rng);
                double th = 2.0 * M_PI * uniform(rng);
                cdouble z(r * std::cos(th), r * std::sin(th));
                auto [P, DP] = wp_normal(g2, g3, z);
                double res = std::abs(DP * DP - (4.0 * P * P * P - g2 * P - g3)) /
                             (1.0 + std::pow(std::abs(P), 3.0));
                worst = std::max(worst, res);
            }
        }
        rec.measured = ojson{{"worst_residual", worst}};
        rec.threshold = "normalized ODE residual <= 1e-8 on 10 x 100 samples";
        rec.pass = worst <= 1e-8;
        return rec;
    });
    jobs.push_back([]() -> CheckRecord {
        CheckRecord rec;
        rec.id = "wpp_triple_points";
        rec.family = "(wp')^2 = 4 wp^3 + 1";
        // Points with wp ~ 0 carry wp'' = 6 wp^2 ~ 0 and wp''' = 12 wp wp' ~ 0:
        // the +-sqrt(c) points of wp' are triple.
        FunctionHandle wph = parse("wp(z,0,-1)");
        double worst_val = 1.0, worst_d2 = 1.0, worst_d3 = 1.0;
        bool found = false;
        for (int k = 0; k < 200 && !found; ++k) {
            double th = 2.0 * M_PI * k / 200.0;
            cdouble z0 = cdouble(0.9 * std::cos(th), 0.9 * std::sin(th));
            auto root = refine_level_point(wph, ExtendedComplex(cdouble(0.0, 0.0)), z0, 4.0);
            if (!root) continue;
            found = true;
            auto [P, DP] = wp_normal(0.0, -1.0, *root);
            worst_val = std::abs(P);
            worst_d2 = std::abs(6.0 * P * P);
            worst_d3 = std::abs(12.0 * P * DP);
            // independent finite-difference cross-check of wp'' and wp'''
            double h = 3e-4;
            auto [Pp, DPp] = wp_normal(0.0, -1.0, *root + h);
            auto [Pm, DPm] = wp_normal(0.0, -1.0, *root - h);
            double fd2 = std::abs((DPp - DPm) / (2.0 * h));
            double fd3 = std::abs((DPp - 2.0 * DP + DPm) / (h * h));
            worst_d2 = std::max(worst_d2, fd2);
            worst_d3 = std::max(worst_d3, fd3);
        }
        rec.measured = ojson{{"wp_at_point", worst_val},
                             {"second_derivative", worst_d2},
                             {"third_derivative", worst_d3}};
        rec.threshold = "|wp''|, |wp'''| <= 1e-6 where wp ~ 0 (triple +-sqrt(c) points)";
        rec.pass = found && worst_d2 <= 1e-6 && worst_d3 <= 1e-6;
        return rec;
    });

    // --- rational functions --------------------------------------------------
    jobs.push_back([]() -> CheckRecord {
        CheckRecord rec;
        rec.id = "quadratic_over_quadratic_closing_example";
        rec.family = "(z-1)^2/(z^2+1)";
        RationalFunction f = RationalFunction::reduce(
            GPolynomial::from_longs({1, -2, 1}), GPolynomial::from_longs({1, 0, 1}));
        auto p0 = preimage_profile(f, ExactValue(0));
        auto p1 = preimage_profile(f, ExactValue(1));
        auto p2 = preimage_profile(f, ExactValue(2));
        DefectBound db = verify_defect_bound(f, DefectMode::c, ExactValue(1),
                                             {ExactValue(0), ExactValue(2)});
        // Booking all three one-point values as U overshoots the bound: 3 > 2.
        Rational three(3);
        rec.measured = ojson{{"preimage_0", preimage_profile_to_json(p0)},
                             {"preimage_1", preimage_profile_to_json(p1)},
                             {"preimage_2", preimage_profile_to_json(p2)},
                             {"mode_c", defect_to_json(db)},
                             {"all_three_as_U", format_rational(three)}};
        rec.threshold =
            "each of 0,1,2 hit at exactly one finite point; mode-c bound exactly 2; {0,1,2} as U "
            "violates (3 > 2)";
        rec.pass = p0.distinct_finite_points() == 1 && p1.distinct_finite_points() == 1 &&
                   p2.distinct_finite_points() == 1 && db.pass &&
                   format_rational(db.bound) == "2" && cmp(three, 2) > 0;
        return rec;
    });
    jobs.push_back([seed]() -> CheckRecord {
        CheckRecord rec;
        rec.id = "rational_random_suite";
        rec.family = "random coprime rational functions, deg <= 6";
        std::mt19937_64 rng(seed ^ 0x5150ull);
        int n_ok = 0, n_total = 0, fails = 0;
        std::string first_fail;
        for (int iter = 0; iter < 60; ++iter) {
            auto rnd_poly = [&](int deg) {
                std::vector<GaussRat> c;
                for (int k = 0; k <= deg; ++k)
                    c.emplace_back(GaussRat(Rational(static_cast<long>(rng() % 7) - 3),
                                            Rational(static_cast<long>(rng() % 7) - 3)));
                return GPolynomial(std::move(c));
            };
            int dn = 1 + static_cast<int>(rng() % 6), dd = static_cast<int>(rng() % 6);
            RationalFunction f = [&] {
                for (;;) {
                    try {
                        return RationalFunction::reduce(rnd_poly(dn), rnd_poly(dd));
                    } catch (const std::domain_error&) {
                    }
                }
            }();
            ++n_total;
            bool ok = true;
            // degree conservation at a few exact targets
            for (long c : {0L, 1L, -2L})
                if (preimage_profile(f, ExactValue(c)).total_multiplicity() != f.degree())
                    ok = false;
            auto om = omitted_values(f);
            if (om.size() > 1) ok = false;
            if (om.size() == 1 && !(om.front() == f.value_at_infinity())) ok = false;
            try {
                if (!riemann_hurwitz_check(f).pass) ok = false;
                DefectBound db = verify_defect_bound(f, DefectMode::b, std::nullopt,
                                                     {ExactValue(0), ExactValue(1)});
                if (!db.pass) ok = false;
            } catch (const std::exception& e) {
                ok = false;
                if (first_fail.empty()) first_fail = e.what();
            }
            if (ok)
                ++n_ok;
            else
                ++fails;
        }
        rec.measured = ojson{{"total", n_total}, {"ok", n_ok}, {"first_failure", first_fail}};
        rec.threshold = "all random functions pass degree/omission/Hurwitz/defect checks";
        rec.pass = fails == 0;
        return rec;
    });

    // --- the set-sharing families -------------------------------------------
    jobs.push_back([]() -> CheckRecord {
        CheckRecord rec;
        rec.id = "exp_pair_identity";
        rec.family = "f_n = ((n+1)/2n) e^(nz) + ((n-1)/2n) e^(-nz)";
        double worst = 0.0;
        std::mt19937_64 rng(0x42);
        for (int n : {2, 5, 10}) {
            FunctionHandle f = exp_pair_member(n);
            for (int k = 0; k < 100; ++k) {
                cdouble z = ubox(rng, -0.9, 0.9);
                Jet j = eval_jet(f, z, 1);
                if (j.pole) continue;
                cdouble fv = j.c(0), fp = j.c(1);
                cdouble lhs = static_cast<double>(n) * static_cast<double>(n) * (fv * fv - 1.0);
                cdouble rhs = fp * fp - 1.0;
                double rel = std::abs(lhs - rhs) /
                             (1.0 + std::norm(fv) * static_cast<double>(n) * static_cast<double>(n));
                worst = std::max(worst, rel);
            }
        }
        rec.measured = ojson{{"worst_relative_residual", worst}};
        rec.threshold = "n^2 (f^2 - 1) = (f')^2 - 1 to 1e-10 for n in {2, 5, 10}";
        rec.pass = worst <= 1e-10;
        return rec;
    });
    jobs.push_back([budget, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("set_sharing_versus_single_value", "f_5 and 1/f_5", budget,
                                min_numeric_budget);
        CheckRecord rec;
        rec.id = "set_sharing_versus_single_value";
        rec.family = "f_5 shares {1,-1} with f_5'; 1/f_5 only partially";
        FunctionHandle f = exp_pair_member(5);
        FunctionHandle h = recip_exp_pair_member(5);
        long n = std::max(2000L, budget / 16);
        ProbeReport set_f = set_sharing_probe(f, {cdouble(1, 0), cdouble(-1, 0)}, 0.0, 0.9, n);
        ProbeReport set_h = set_sharing_probe(h, {cdouble(1, 0), cdouble(-1, 0)}, 0.0, 0.9, n);
        ConditionProfile single;
        single.B = {ExactValue(1)};
        ProbeReport single_h = hypothesis_probe(h, single, 0.0, 0.9, n);
        rec.measured = ojson{{"set_probe_f", probe_to_json(set_f)},
                             {"set_probe_recip", probe_to_json(set_h)},
                             {"single_value_probe_recip", probe_to_json(single_h)}};
        rec.threshold = "set probes pass; single-value b=1 probe fails (derivative lands on -1)";
        rec.pass = set_f.pass && set_h.pass && !single_h.pass;
        return rec;
    });
    jobs.push_back([budget, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("recip_family_no_zeros", "1/f_n", budget, min_numeric_budget);
        CheckRecord rec;
        rec.id = "recip_family_no_zeros";
        rec.family = "1/f_5";
        FunctionHandle h = recip_exp_pair_member(5);
        ConditionProfile p;
        p.A = {ExactValue(0)};  // zeros are all multiple: there are none at all
        ProbeReport probe = hypothesis_probe(h, p, 0.0, 0.9, std::max(2000L, budget / 16));
        rec.measured = probe_to_json(probe);
        rec.threshold = "no zeros found (omission)";
        rec.pass = probe.pass;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < min_numeric_budget)
            return budget_short("recip_family_rescaled_single_value_fails", "1/f_n", budget,
                                min_numeric_budget);
        CheckRecord rec;
        rec.id = "recip_family_rescaled_single_value_fails";
        rec.family = "1/f_n, n = 4, 8, 16, 32";
        std::vector<FunctionHandle> members;
        for (int n : {4, 8, 16, 32}) members.push_back(recip_exp_pair_member(n));
        GridSpec grid;
        grid.xi_radius = 2.5;
        RescalingTrace t = zalcman_extract_sequence(members, 0.0, 0.6, grid, 2, budget / 8,
                                                    seed + 20);
        std::vector<BCheckPoint> pts;
        bool single_ok = check_inherited_B(t, cdouble(1.0, 0.0), 1e-4, &pts);
        rec.measured = ojson{{"trace", trace_to_json(t)},
                             {"b_points_checked", pts.size()},
                             {"single_value_check_pass", single_ok}};
        rec.threshold =
            "the b=1 single-value check fails on the rescaled family (the derivative value "
            "depends on the branch)";
        rec.pass = t.conclusive && !single_ok && !pts.empty();
        return rec;
    });

    // --- growth orders -------------------------------------------------------
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < 10 * min_numeric_budget)
            return budget_short("exp_order_control", "exp(z)", budget, 10 * min_numeric_budget);
        CheckRecord rec;
        rec.id = "exp_order_control";
        rec.family = "exp(z)";
        GrowthReport g = order_estimate(parse("exp(z)"), 4.0, 8.0, 6, budget, seed + 30);
        rec.measured = growth_to_json(g);
        rec.threshold = "order estimate within 1.0 +- 0.3, no superpolynomial flag";
        rec.pass = std::abs(g.order_estimate - 1.0) <= 0.3 && !g.superpolynomial;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < 10 * min_numeric_budget)
            return budget_short("exp_cubic_order", "exp(z^3)", budget, 10 * min_numeric_budget);
        CheckRecord rec;
        rec.id = "exp_cubic_order";
        rec.family = "exp(z^3)";
        GrowthReport g = order_estimate(parse("exp(z^3)"), 1.0, 2.0, 6, budget, seed + 31);
        rec.measured = growth_to_json(g);
        rec.threshold = "order estimate within 3.0 +- 0.5";
        rec.pass = std::abs(g.order_estimate - 3.0) <= 0.5;
        return rec;
    });
    jobs.push_back([budget, seed, min_numeric_budget]() -> CheckRecord {
        if (budget < 10 * min_numeric_budget)
            return budget_short("sin_exp_superpolynomial", "sin(e^z)", budget,
                                10 * min_numeric_budget);
        CheckRecord rec;
        rec.id = "sin_exp_superpolynomial";
        rec.family = "sin(e^z)";
        GrowthReport g = order_estimate(parse("sin(exp(z))"), 1.0, 3.5, 7, budget, seed + 32);
        rec.measured = growth_to_json(g);
        rec.threshold = "superpolynomial flag (local slopes rise monotonically by > 1)";
        rec.pass = g.superpolynomial;
        return rec;
    });

    // --- run the jobs ---------------------------------------------------------
    rep.records.resize(jobs.size());
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        for (size_t k = 0; k < jobs.size(); ++k) rep.records[k] = jobs[k]();
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    size_t k = next.fetch_add(1);
                    if (k >= jobs.size()) return;
                    rep.records[k] = jobs[k]();
                }
            });
        for (auto& th : pool) th.join();
    }
    rep.overall = true;
    for (const auto& r : rep.records) rep.overall = rep.overall && r.pass;
    return rep;
}

ojson report_to_json(const VerificationReport& r) {
    ojson j;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["budget"] = r.budget;
    j["overall"] = r.overall ? "pass" : "fail";
    j["records"] = ojson::array();
    for (const auto& rec : r.records) {
        ojson e;
        e["id"] = rec.id;
        e["family"] = rec.family;
        e["params"] = rec.params;
        e["measured"] = rec.measured;
        e["threshold"] = rec.threshold;
        e["pass"] = rec.pass;
        j["records"].push_back(e);
    }
    return j;
}

} // namespace normalfam
