// Command-line front end: criterion decisions, rational-function analysis,
// growth probes, rescaling runs, and the example verification suite.
//
// Exit codes: 0 pass, 1 check failure, 2 usage/parse error, 3 profile
// violation, 4 precondition violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "normalfam/verify.hpp"

using namespace normalfam;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_profile_violation = 3;
constexpr int exit_precondition = 4;

ojson read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    ojson j;
    f >> j;
    return j;
}

int threads_from_env() {
    const char* v = std::getenv("NL_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

std::vector<double> parse_radii(const std::string& text) {
    // "2:7" (unit steps), "1:3:5" (count), or "2,3,4.5"
    std::vector<double> out;
    if (text.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos < text.size()) {
            size_t next = text.find(',', pos);
            if (next == std::string::npos) next = text.size();
            out.push_back(std::stod(text.substr(pos, next - pos)));
            pos = next + 1;
        }
        return out;
    }
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(text));
        return out;
    }
    double lo = std::stod(text.substr(0, c1));
    size_t c2 = text.find(':', c1 + 1);
    double hi = c2 == std::string::npos ? std::stod(text.substr(c1 + 1))
                                        : std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    int n = c2 == std::string::npos ? static_cast<int>(hi - lo) + 1
                                    : std::stoi(text.substr(c2 + 1));
    if (n < 2) n = 2;
    for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
    return out;
}

void emit(const ojson& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"normal-family criterion toolkit"};
    app.require_subcommand(1);

    // ---- criterion ----------------------------------------------------------
    std::string profile_path;
    auto* cmd_criterion = app.add_subcommand("criterion", "decide the normality criterion");
    cmd_criterion->add_option("profile", profile_path, "profile JSON file")->required();

    // ---- ratfun -------------------------------------------------------------
    std::string fn_path, mode_str = "b", a1_str;
    std::vector<std::string> candidate_strs;
    double rf_tol = 1e-8;
    auto* cmd_ratfun = app.add_subcommand("ratfun", "value distribution of a rational function");
    cmd_ratfun->add_option("function", fn_path, "rational function JSON file")->required();
    cmd_ratfun->add_option("--mode", mode_str, "defect mode: b or c")->check(CLI::IsMember({"b", "c"}));
    cmd_ratfun->add_option("--a1", a1_str, "mode c: value with one finite preimage");
    cmd_ratfun->add_option("--candidates", candidate_strs, "candidate ramified values");
    cmd_ratfun->add_option("--tol", rf_tol, "clustering tolerance");

    // ---- probe / order / zalcman --------------------------------------------
    std::string expr_text, radii_text = "2:7", out_path, csv_path;
    double center_re = 0.0, center_im = 0.0;
    long budget = 100000;
    uint64_t seed = 0xC0FFEE;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--expr", expr_text, "expression")->required();
        c->add_option("--budget", budget, "evaluation budget");
        c->add_option("--seed", seed, "RNG seed");
        c->add_option("--out", out_path, "output JSON file (default stdout)");
        c->add_option("--center-re", center_re, "region center, real part");
        c->add_option("--center-im", center_im, "region center, imaginary part");
    };
    auto* cmd_probe = app.add_subcommand("probe", "Marty growth probe for translates");
    add_common(cmd_probe);
    cmd_probe->add_option("--radii", radii_text, "radii schedule, e.g. 2:7 or 1,2,3");
    cmd_probe->add_option("--csv", csv_path, "also dump f# samples as CSV");

    double r_min = 1.0, r_max = 4.0;
    int steps = 6;
    auto* cmd_order = app.add_subcommand("order", "order-of-growth estimate");
    add_common(cmd_order);
    cmd_order->add_option("--rmin", r_min, "smallest radius");
    cmd_order->add_option("--rmax", r_max, "largest radius");
    cmd_order->add_option("--steps", steps, "number of radii");

    int z_steps = 6, z_kmax = 2;
    double z_xi = 2.0;
    std::string z_csv_dir;
    auto* cmd_zalcman = app.add_subcommand("zalcman", "rescaling run for translates");
    add_common(cmd_zalcman);
    cmd_zalcman->add_option("--radii", radii_text, "search radii schedule");
    cmd_zalcman->add_option("--steps", z_steps, "number of steps (overrides schedule length)");
    cmd_zalcman->add_option("--xi", z_xi, "rescaled grid radius");
    cmd_zalcman->add_option("--kmax", z_kmax, "jet order stored on the grid (1..5)");
    cmd_zalcman->add_option("--csv-dir", z_csv_dir, "directory for per-step grid CSVs");

    // ---- verify-examples ----------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify-examples", "run the example registry");
    cmd_verify->add_option("--out", out_path, "report JSON file (default stdout)");
    cmd_verify->add_option("--budget", budget, "evaluation budget");
    cmd_verify->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (cmd_criterion->parsed()) {
            ojson j;
            ConditionProfile p;
            try {
                j = read_json_file(profile_path);
                p = profile_from_json(j);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return exit_usage;
            }
            auto violations = validate_profile(p);
            if (!violations.empty()) {
                ojson out;
                out["violations"] = violations;
                emit(out, "");
                return exit_profile_violation;
            }
            emit(verdict_to_json(decide(p)), "");
            return exit_ok;
        }

        if (cmd_ratfun->parsed()) {
            RationalFunction f = [&] {
                try {
                    return ratfun_from_json(read_json_file(fn_path));
                } catch (const std::exception& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    std::exit(exit_usage);
                }
            }();
            std::vector<ExactValue> candidates;
            std::optional<ExactValue> a1;
            try {
                for (const auto& s : candidate_strs) candidates.push_back(parse_exact_value(s));
                if (!a1_str.empty()) a1 = parse_exact_value(a1_str);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return exit_usage;
            }
            if (candidates.empty())
                candidates = {ExactValue(0), ExactValue(1), ExactValue(-1), ExactValue(2),
                              f.value_at_infinity()};
            ojson out;
            out["degree"] = f.degree();
            out["function"] = ratfun_to_json(f);
            out["omitted"] = ojson::array();
            for (const auto& v : omitted_values(f)) out["omitted"].push_back(v.str());
            out["preimages"] = ojson::array();
            for (const auto& c : candidates)
                out["preimages"].push_back(preimage_profile_to_json(preimage_profile(f, c)));
            out["riemann_hurwitz"] = hurwitz_to_json(riemann_hurwitz_check(f, rf_tol));
            DefectMode mode = mode_str == "c" ? DefectMode::c : DefectMode::b;
            try {
                out["defect"] = defect_to_json(verify_defect_bound(f, mode, a1, candidates, rf_tol));
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return exit_precondition;
            }
            emit(out, out_path);
            return exit_ok;
        }

        auto parse_expr_or_exit = [&](const std::string& text) {
            try {
                return parse(text);
            } catch (const parse_error& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                std::exit(exit_usage);
            }
        };

        if (cmd_probe->parsed()) {
            FunctionHandle h = parse_expr_or_exit(expr_text);
            cdouble center(center_re, center_im);
            MartyReport m = marty_probe(h, center, parse_radii(radii_text), budget, seed);
            ojson out = marty_to_json(m);
            out["expr"] = h.source();
            out["seed"] = seed;
            out["budget"] = budget;
            if (!csv_path.empty()) {
                auto samples = sph_samples(h, center, m.radii.back(), std::min(budget, 20000L), seed);
                write_file_atomic(csv_path, samples_csv(samples));
            }
            emit(out, out_path);
            return exit_ok;
        }

        if (cmd_order->parsed()) {
            FunctionHandle h = parse_expr_or_exit(expr_text);
            GrowthReport g = order_estimate(h, r_min, r_max, steps, budget, seed);
            ojson out = growth_to_json(g);
            out["expr"] = h.source();
            out["seed"] = seed;
            emit(out, out_path);
            return exit_ok;
        }

        if (cmd_zalcman->parsed()) {
            FunctionHandle h = parse_expr_or_exit(expr_text);
            std::vector<double> radii = parse_radii(radii_text);
            if (static_cast<int>(radii.size()) != z_steps && z_steps >= 2) {
                double lo = radii.front(), hi = radii.back();
                radii.clear();
                for (int k = 0; k < z_steps; ++k)
                    radii.push_back(lo + (hi - lo) * k / (z_steps - 1));
            }
            GridSpec grid;
            grid.xi_radius = z_xi;
            if (z_kmax < 1 || z_kmax > 5) {
                std::cerr << "error: --kmax must be within 1..5\n";
                return exit_usage;
            }
            RescalingTrace t = zalcman_extract(h, cdouble(center_re, center_im), radii, grid,
                                               z_kmax, budget / static_cast<long>(radii.size()),
                                               seed);
            double sup = 0.0;
            bool blowup = check_bounded_blowup(t, std::min(1.0, z_xi), 0.2, &sup);
            ojson out = trace_to_json(t);
            out["bounded_blowup"] = blowup;
            out["sup_unit_disk"] = sup;
            out["seed"] = seed;
            if (!z_csv_dir.empty()) {
                for (size_t k = 0; k < t.steps.size(); ++k)
                    write_file_atomic(z_csv_dir + "/step" + std::to_string(k) + ".csv",
                                      trace_step_csv(t, k));
            }
            emit(out, out_path);
            return t.conclusive ? exit_ok : exit_check_failure;
        }

        if (cmd_verify->parsed()) {
            VerificationReport rep = verify_examples(budget, seed, threads_from_env());
            emit(report_to_json(rep), out_path);
            return rep.overall ? exit_ok : exit_check_failure;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failure;
    }
    return exit_usage;
}
