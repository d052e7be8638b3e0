// gfn: G-function toolkit for the simple elliptic singularities.
//
// Subcommands expose the deformed Jacobi ring (table), the flat coordinate
// map (invert), the G-function routes (g), the named verification suites
// (verify), the Coxeter and folded-system coefficient tables (coxeter, fold),
// the Getzler residual scanner (getzler, d4-getzler) and the Halphen
// transport check (halphen). All numeric arguments accept exact rational
// strings ("3/4") as well as decimals ("0.75").

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gfn/suites.hpp"

using namespace gfn;

namespace {

ModelId model_arg(std::string name) {
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string key;
    for (char c : name)
        if (c != '~' && c != '-' && c != '_') key.push_back(c);
    if (key == "e6" || key == "e7" || key == "e8") key.push_back('t');
    return model_from_name(key);
}

int jet_arg(const SingularityModel& m, const std::string& jet) {
    if (jet.empty()) return -1;
    std::string digits = jet;
    if (digits[0] == 's' || digits[0] == 'S') digits.erase(0, 1);
    long k = 0;
    size_t used = 0;
    try {
        k = std::stol(digits, &used);
    } catch (...) {
        throw UsageError("bad --jet value '" + jet + "' (expected s2 or 2)");
    }
    if (used != digits.size()) throw UsageError("bad --jet value '" + jet + "'");
    if (k < 1 || static_cast<size_t>(k) > m.n)
        throw UsageError("--jet index out of range 1.." + std::to_string(m.n));
    return static_cast<int>(k - 1);
}

Json complex_json(const BigComplex& z, long digits) {
    return Json{{"re", z.re.to_string(digits)}, {"im", z.im.to_string(digits)}};
}

Json state_json(const HalphenState& st, long digits) {
    Json j;
    j["tau"] = complex_json(st.tau, digits);
    j["u"] = complex_json(st.u, digits);
    j["v"] = complex_json(st.v, digits);
    j["w"] = complex_json(st.w, digits);
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius manifold G-functions for the simple elliptic singularities"};
    app.require_subcommand(1);

    long precision = 0;
    app.add_option("--precision", precision,
                   "working precision in decimal digits (>= 32, else GFN_PRECISION or 64)");

    auto* table_cmd =
        app.add_subcommand("table", "structure constants of the deformed Jacobi ring");
    std::string table_model = "e6t", table_s = "1", table_jet;
    table_cmd->add_option("--model", table_model, "e6t, e7t or e8t");
    table_cmd->add_option("--s", table_s, "marginal coordinate");
    table_cmd->add_option("--jet", table_jet, "first-order jet direction, e.g. s2");

    auto* invert_cmd =
        app.add_subcommand("invert", "invert the flat coordinate map: s as a function of t");
    std::string invert_model = "e6t", invert_t;
    invert_cmd->add_option("--model", invert_model, "e6t, e7t or e8t");
    invert_cmd->add_option("--t", invert_t, "flat marginal coordinate")->required();

    auto* g_cmd = app.add_subcommand("g", "G-function and its marginal derivative");
    std::string g_model = "e6t", g_s, g_t, g_route = "closed", g_lin;
    g_cmd->add_option("--model", g_model, "e6t, e7t or e8t");
    g_cmd->add_option("--s", g_s, "marginal coordinate");
    g_cmd->add_option("--t", g_t, "flat marginal coordinate");
    g_cmd->add_option("--route", g_route, "closed or ring");
    g_cmd->add_option("--linearization", g_lin, "linearization schema file for the ring route");

    auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
    std::string verify_suite, verify_tol;
    long verify_points = -1;
    unsigned long verify_seed = 1;
    bool verify_json = false, verify_csv = false;
    verify_cmd->add_option("--suite", verify_suite, "suite name, or 'all'")->required();
    verify_cmd->add_option("--tol", verify_tol, "tolerance override (rational or decimal)");
    verify_cmd->add_option("--points", verify_points, "sample count for scanning suites");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed for scanning suites");
    verify_cmd->add_flag("--json", verify_json, "emit the report as JSON");
    verify_cmd->add_flag("--csv", verify_csv, "emit the report as CSV");

    auto* coxeter_cmd =
        app.add_subcommand("coxeter", "caustic data and G coefficients for a Coxeter group");
    std::string coxeter_group;
    coxeter_cmd->add_option("--group", coxeter_group, "e.g. B4, H3, I2(7)")->required();

    auto* fold_cmd =
        app.add_subcommand("fold", "G-function decomposition of a folded elliptic system");
    std::string fold_system;
    fold_cmd->add_option("--system", fold_system, "e.g. B3^(1,1), G2^(3,1), D4^(1,1)")
        ->required();

    auto* getzler_cmd =
        app.add_subcommand("getzler", "scan the Getzler residual of a polynomial prepotential");
    std::string getzler_file, getzler_g = "zero";
    long getzler_points = 5;
    unsigned long getzler_seed = 1;
    getzler_cmd->add_option("--prepotential", getzler_file, "prepotential JSON file")
        ->required();
    getzler_cmd->add_option("--g", getzler_g, "candidate G-function (only 'zero')");
    getzler_cmd->add_option("--points", getzler_points, "number of sample points");
    getzler_cmd->add_option("--seed", getzler_seed, "RNG seed");

    auto* halphen_cmd =
        app.add_subcommand("halphen", "transport the Halphen system between two moduli");
    std::string halphen_tau = "2i", halphen_to = "5/2i";
    halphen_cmd->add_option("--tau", halphen_tau, "starting modulus, e.g. 2i or 1/3+3/2i");
    halphen_cmd->add_option("--to", halphen_to, "target modulus");

    auto* d4_cmd =
        app.add_subcommand("d4-getzler", "scan the Getzler residual of the D4 elliptic family");
    long d4_points = 3;
    unsigned long d4_seed = 1;
    d4_cmd->add_option("--points", d4_points, "number of sample points");
    d4_cmd->add_option("--seed", d4_seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (precision != 0) {
            if (precision < 32) throw UsageError("--precision must be at least 32");
            setenv("GFN_PRECISION", std::to_string(precision).c_str(), 1);
        }
        const long digits = 24;

        if (table_cmd->parsed()) {
            SingularityModel m = build_model(model_arg(table_model));
            RingPoint pt = marginal_point(m, parse_rational(table_s), jet_arg(m, table_jet));
            emit(ring_table_to_json(multiplication_table(m, pt)));
            return 0;
        }

        if (invert_cmd->parsed()) {
            ModelId id = model_arg(invert_model);
            FlatMap fm(id);
            auto inv = fm.s_of_t(BigFloat(parse_rational(invert_t)));
            Json j;
            j["model"] = model_name(id);
            j["t"] = invert_t;
            j["value"] = inv.s.to_string();
            j["precision_digits"] = BigFloat::default_digits();
            j["route"] = inv.iterations >= 100 ? "bisection" : "newton";
            j["iterations"] = inv.iterations;
            emit(j);
            return 0;
        }

        if (g_cmd->parsed()) {
            if (g_s.empty() == g_t.empty())
                throw UsageError("g: give exactly one of --s and --t");
            if (g_route != "closed" && g_route != "ring")
                throw UsageError("g: --route must be closed or ring");
            if (g_route == "closed" && !g_lin.empty())
                throw UsageError("g: --linearization applies to the ring route");
            ModelId id = model_arg(g_model);
            SingularityModel m = build_model(id);
            FlatMap fm(id);
            Json j;
            j["model"] = model_name(id);
            j["route"] = g_route;
            j["precision_digits"] = BigFloat::default_digits();
            Rat s_exact;
            BigFloat s_val, t_val;
            bool s_is_exact = false;
            if (!g_s.empty()) {
                s_exact = parse_rational(g_s);
                s_is_exact = true;
                s_val = BigFloat(s_exact);
                t_val = fm.t_of_s(s_val);
            } else {
                t_val = BigFloat(parse_rational(g_t));
                s_val = fm.s_of_t(t_val).s;
            }
            j["s"] = s_val.to_string();
            j["t"] = t_val.to_string();
            if (g_route == "closed") {
                j["g"] = g_closed_at_s(id, s_val).to_string();
                j["dg_dt"] = dg_dt_closed_at_s(id, s_val).to_string();
            } else {
                LinSchema schema;
                const LinSchema* sp = nullptr;
                if (!g_lin.empty()) {
                    schema = load_lin_schema(g_lin);
                    if (schema.model != id)
                        throw UsageError("g: linearization file is for " +
                                         model_name(schema.model));
                    sp = &schema;
                }
                BigFloat dg = s_is_exact ? dg_dt_ring_at_s(m, s_exact, 2, sp)
                                         : dg_dt_ring_at_t(m, t_val, 2, sp);
                j["g"] = nullptr;
                j["dg_dt"] = dg.to_string();
            }
            emit(j);
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (verify_json && verify_csv)
                throw UsageError("verify: pick one of --json and --csv");
            SuiteConfig cfg;
            if (verify_points > 0) cfg.points = verify_points;
            cfg.seed = verify_seed;
            if (!verify_tol.empty()) cfg.tol = BigFloat(parse_rational(verify_tol));
            std::vector<std::string> names;
            if (verify_suite == "all")
                names = suite_names();
            else
                names.push_back(verify_suite);
            std::vector<SuiteReport> reports;
            bool all_pass = true;
            for (const auto& name : names) {
                reports.push_back(run_suite(name, cfg));
                all_pass = all_pass && reports.back().pass;
            }
            if (verify_json) {
                Json j;
                j["pass"] = all_pass;
                j["suites"] = Json::array();
                for (const auto& rep : reports) j["suites"].push_back(suite_report_to_json(rep));
                emit(j);
            } else if (verify_csv) {
                bool header = true;
                for (const auto& rep : reports) {
                    std::cout << suite_report_to_csv(rep, header);
                    header = false;
                }
            } else {
                for (const auto& rep : reports)
                    for (const auto& c : rep.checks)
                        std::cout << (c.pass ? "PASS " : "FAIL ") << c.suite << " :: " << c.check
                                  << " (err " << c.abs_err << ", tol " << c.tol << ")\n";
                std::cout << (all_pass ? "all checks passed" : "FAILURES present") << "\n";
            }
            return all_pass ? 0 : 1;
        }

        if (coxeter_cmd->parsed()) {
            CausticDatum cd = caustic_data(coxeter_group);
            Json j;
            j["group"] = cd.group;
            j["caustic_count"] = cd.caustic_count;
            j["N_values"] = cd.N_values;
            j["g_coefficients"] = Json::array();
            for (const auto& [N, coeff] : coxeter_g_coefficient(coxeter_group))
                j["g_coefficients"].push_back({{"N", N}, {"coefficient", coeff.to_string()}});
            emit(j);
            return 0;
        }

        if (fold_cmd->parsed()) {
            FoldingG fg = folding_g(fold_system);
            Json j;
            j["system"] = fold_system;
            j["gamma"] = fg.gamma.to_string();
            j["kappa_coefficient"] = fg.kappa_coefficient.to_string();
            j["eta_coefficient"] = fg.eta_coefficient.to_string();
            j["lambda_coefficient"] = fg.lambda_coefficient.to_string();
            for (const FoldingDatum& row : folding_table())
                if (row.system == fold_system) {
                    j["deg_kappa"] = row.deg_kappa.to_string();
                    j["sigma"] = row.sigma;
                }
            emit(j);
            return 0;
        }

        if (getzler_cmd->parsed()) {
            if (getzler_g != "zero")
                throw UsageError("getzler: only --g zero is implemented");
            auto oracle = oracle_from_file<BigFloat>(load_prepotential(getzler_file));
            auto rep = getzler_scan(oracle, zero_g_oracle<BigFloat>(),
                                    static_cast<size_t>(getzler_points), getzler_seed);
            Json j = scan_report_to_json(rep, digits);
            j["prepotential"] = getzler_file;
            j["seed"] = getzler_seed;
            emit(j);
            return 0;
        }

        if (halphen_cmd->parsed()) {
            BigComplex tau0 = parse_complex(halphen_tau);
            BigComplex tau1 = parse_complex(halphen_to);
            HalphenState start = theta_candidate(tau0);
            HalphenState moved = halphen_integrate(start, tau1);
            HalphenState ref = theta_candidate(tau1);
            BigFloat gap = (moved.u - ref.u).abs();
            if ((moved.v - ref.v).abs() > gap) gap = (moved.v - ref.v).abs();
            if ((moved.w - ref.w).abs() > gap) gap = (moved.w - ref.w).abs();
            Json j;
            j["start"] = state_json(start, digits);
            j["integrated"] = state_json(moved, digits);
            j["theta"] = state_json(ref, digits);
            j["gap"] = gap.to_string(6);
            emit(j);
            return 0;
        }

        if (d4_cmd->parsed()) {
            D4Oracles d4 = d4_oracles();
            auto rep = getzler_scan(d4.f, d4.g, static_cast<size_t>(d4_points), d4_seed);
            Json j = scan_report_to_json(rep, digits);
            j["family"] = "D4^(1,1)";
            j["seed"] = d4_seed;
            emit(j);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
