#include "normalfam/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace normalfam {

namespace {

ExactValue value_from_json(const ojson& j) {
    if (!j.is_string())
        throw std::invalid_argument("exact values must be strings like \"inf\" or \"p/q+r/si\"");
    return parse_exact_value(j.get<std::string>());
}

} // namespace

ConditionProfile profile_from_json(const ojson& j) {
    ConditionProfile p;
    if (!j.is_object()) throw std::invalid_argument("profile: expected a JSON object");
    if (j.contains("A"))
        for (const auto& v : j.at("A")) p.A.push_back(value_from_json(v));
    if (j.contains("B"))
        for (const auto& v : j.at("B")) p.B.push_back(value_from_json(v));
    if (j.contains("C"))
        for (const auto& e : j.at("C")) {
            CEntry ce;
            ce.value = value_from_json(e.at("value"));
            if (!e.at("m").is_number_integer())
                throw std::invalid_argument("profile: C entry m must be an integer");
            ce.m = e.at("m").get<int>();
            if (e.contains("M")) ce.M = e.at("M").get<double>();
            p.C.push_back(ce);
        }
    return p;
}

ojson profile_to_json(const ConditionProfile& p) {
    ojson j;
    j["A"] = ojson::array();
    for (const auto& v : p.A) j["A"].push_back(v.str());
    j["B"] = ojson::array();
    for (const auto& v : p.B) j["B"].push_back(v.str());
    j["C"] = ojson::array();
    for (const auto& e : p.C) {
        ojson je;
        je["value"] = e.value.str();
        je["m"] = e.m;
        if (e.M) je["M"] = *e.M;
        j["C"].push_back(je);
    }
    return j;
}

RationalFunction ratfun_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("rational function: expected {\"num\": [...], \"den\": [...]}");
    auto poly = [](const ojson& arr) {
        std::vector<GaussRat> c;
        for (const auto& v : arr) {
            ExactValue e = value_from_json(v);
            if (e.is_inf()) throw std::invalid_argument("coefficients must be finite");
            c.push_back(e.value());
        }
        return GPolynomial(std::move(c));
    };
    return RationalFunction::reduce(poly(j.at("num")), poly(j.at("den")));
}

ojson ratfun_to_json(const RationalFunction& f) {
    ojson j;
    j["num"] = ojson::array();
    for (const auto& c : f.num().coeffs()) j["num"].push_back(ExactValue(c).str());
    j["den"] = ojson::array();
    for (const auto& c : f.den().coeffs()) j["den"].push_back(ExactValue(c).str());
    return j;
}

ojson witness_to_json(const WitnessSpec& w) {
    ojson j;
    j["base"] = witness_base_name(w.base);
    j["mobius"] = ojson::array();
    for (const GaussRat* g : {&w.mobius.a, &w.mobius.b, &w.mobius.c, &w.mobius.d})
        j["mobius"].push_back(ExactValue(*g).str());
    j["slots"] = ojson::array();
    for (const auto& s : w.slots) {
        ojson js;
        js["slot"] = s.slot == SlotAssignment::Slot::shared_A
                         ? "A"
                         : (s.slot == SlotAssignment::Slot::partial_B ? "B" : "C");
        js["value"] = s.profile_value.str();
        if (s.slot == SlotAssignment::Slot::ramified_C) js["m"] = s.required_m;
        js["base_point"] = s.base_point.str();
        js["guarantee"] = s.guarantee == SlotAssignment::Guarantee::omitted ? "omitted" : "multiplicity";
        if (s.guarantee == SlotAssignment::Guarantee::multiplicity)
            js["base_multiplicity"] = s.base_multiplicity;
        j["slots"].push_back(js);
    }
    if (w.wp_free_root) j["wp_free_root"] = ExactValue(*w.wp_free_root).str();
    return j;
}

ojson verdict_to_json(const CriterionVerdict& v) {
    ojson j;
    j["sum"] = format_rational(v.sum);
    j["verdict"] = v.normal ? "Normal" : "Inconclusive";
    if (v.witness) {
        j["witness"] = witness_base_name(v.witness->base);
        j["witness_spec"] = witness_to_json(*v.witness);
    } else if (!v.normal) {
        j["witness"] = "NotCovered";
    }
    return j;
}

ojson preimage_profile_to_json(const PreimageProfile& p) {
    ojson j;
    j["target"] = p.target.str();
    j["entries"] = ojson::array();
    for (auto [m, count] : p.entries) {
        ojson e;
        e["multiplicity"] = m;
        e["count"] = count;
        j["entries"].push_back(e);
    }
    j["infinity_multiplicity"] = p.infinity_multiplicity;
    j["distinct_finite_points"] = p.distinct_finite_points();
    return j;
}

ojson defect_to_json(const DefectBound& d) {
    ojson j;
    j["U"] = ojson::array();
    for (const auto& u : d.U) j["U"].push_back(u.str());
    j["R"] = ojson::array();
    for (const auto& e : d.R) {
        ojson je;
        je["value"] = e.value.str();
        je["m"] = e.m;
        j["R"].push_back(je);
    }
    j["bound"] = format_rational(d.bound);
    j["pass"] = d.pass;
    return j;
}

ojson hurwitz_to_json(const HurwitzCheck& h) {
    ojson j;
    j["total_ramification"] = h.total_ramification;
    j["expected"] = h.expected;
    j["pass"] = h.pass;
    j["infinity_contribution"] = h.infinity_contribution;
    j["critical_values"] = ojson::array();
    for (const auto& cv : h.critical_values) {
        ojson e;
        e["value"] = cv.value.is_inf() ? "inf" : cv.value.str();
        if (cv.exact) e["exact"] = cv.exact->str();
        e["finite_ramification"] = cv.finite_ramification;
        j["critical_values"].push_back(e);
    }
    return j;
}

ojson growth_to_json(const GrowthReport& r) {
    ojson j;
    j["radii"] = r.radii;
    j["sup_values"] = r.sup_values;
    j["T_values"] = r.T_values;
    j["local_slopes"] = r.local_slopes;
    j["order_estimate"] = r.order_estimate;
    j["superpolynomial"] = r.superpolynomial;
    j["budget_used"] = r.budget_used;
    return j;
}

ojson marty_to_json(const MartyReport& r) {
    ojson j;
    j["radii"] = r.radii;
    j["sup_values"] = r.sup_values;
    ojson am = ojson::array();
    for (cdouble z : r.argmax) am.push_back({z.real(), z.imag()});
    j["argmax"] = am;
    j["log_sup_slope"] = r.log_sup_slope;
    j["evidence"] = r.evidence;
    return j;
}

ojson probe_to_json(const ProbeReport& r) {
    ojson j;
    j["pass"] = r.pass;
    j["samples"] = r.samples;
    j["conditions"] = ojson::array();
    for (const auto& c : r.conditions) {
        ojson e;
        e["condition"] = c.condition;
        e["pass"] = c.pass;
        e["refined_points"] = c.refined_points;
        e["violations"] = c.violations;
        e["unresolved"] = c.unresolved;
        e["worst"] = c.worst;
        ojson vp = ojson::array();
        for (cdouble z : c.violation_points) vp.push_back({z.real(), z.imag()});
        e["violation_points"] = vp;
        j["conditions"].push_back(e);
    }
    return j;
}

ojson trace_to_json(const RescalingTrace& t) {
    ojson j;
    j["family"] = t.description;
    j["translate_mode"] = t.translate_mode;
    j["xi_radius"] = t.xi_radius;
    j["k_max"] = t.k_max;
    j["conclusive"] = t.conclusive;
    j["steps"] = ojson::array();
    for (const auto& st : t.steps) {
        ojson e;
        e["index"] = st.index;
        e["search_radius"] = st.search_radius;
        e["z_n"] = {st.z_n.real(), st.z_n.imag()};
        e["weighted_max"] = st.weighted_max;
        e["rho"] = st.rho;
        e["grid_points"] = st.grid.size();
        j["steps"].push_back(e);
    }
    return j;
}

std::string trace_step_csv(const RescalingTrace& t, size_t step) {
    const TraceStep& st = t.steps.at(step);
    std::string out = "xi_re,xi_im,g_re,g_im,sph";
    for (int k = 1; k <= t.k_max; ++k)
        out += ",g" + std::to_string(k) + "_re,g" + std::to_string(k) + "_im";
    out += "\n";
    char buf[64];
    auto add = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
    };
    for (const GridPoint& gp : st.grid) {
        if (gp.failed) continue;
        add(gp.xi.real());
        out += ",";
        add(gp.xi.imag());
        Jet j = gp.jet;
        if (j.pole && std::abs(j.c(0)) >= 1.0 / pole_threshold)
            j = jet_div(Jet::constant(1.0, j.order), j);
        if (j.pole) {
            out += ",inf,inf,";
            add(j.spherical());
            for (int k = 1; k <= t.k_max; ++k) out += ",inf,inf";
        } else {
            out += ",";
            add(j.c(0).real());
            out += ",";
            add(j.c(0).imag());
            out += ",";
            add(j.spherical());
            for (int k = 1; k <= t.k_max; ++k) {
                cdouble d = j.derivative(k);
                out += ",";
                add(d.real());
                out += ",";
                add(d.imag());
            }
        }
        out += "\n";
    }
    return out;
}

std::string samples_csv(const std::vector<std::array<double, 3>>& samples) {
    std::string out = "re,im,sph_deriv\n";
    char buf[80];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s[0], s[1], s[2]);
        out += buf;
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace normalfam
