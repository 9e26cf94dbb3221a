#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tribrep/certificate.hpp"
#include "tribrep/constants.hpp"
#include "tribrep/equation.hpp"
#include "tribrep/errors.hpp"
#include "tribrep/matveev.hpp"
#include "tribrep/reduction.hpp"
#include "tribrep/search.hpp"
#include "tribrep/two_adic.hpp"

using nlohmann::json;
using namespace tribrep;

namespace {

struct Options {
    std::string equation;
    unsigned precision = 200;
    unsigned jobs = 1;
    std::string out_dir = "certificates";
    unsigned long nmax_override = 0;
    bool have_nmax_override = false;
    bool as_json = false;
};

EquationId parse_equation(const std::string& s) {
    if (s == "1" || s == "eq1") return EquationId::Eq1;
    if (s == "2" || s == "eq2") return EquationId::Eq2;
    if (s == "3" || s == "eq3") return EquationId::Eq3;
    if (s == "4" || s == "eq4") return EquationId::Eq4;
    if (s == "bgl") return EquationId::Bgl;
    throw std::invalid_argument("unknown equation '" + s +
                                "'; use 1, 2, 3, 4 or bgl");
}

EquationId required_equation(const Options& o) {
    if (o.equation.empty())
        throw std::invalid_argument("this command needs --equation");
    return parse_equation(o.equation);
}

PipelineConfig to_config(const Options& o) {
    PipelineConfig cfg;
    cfg.precision = o.precision;
    cfg.jobs = o.jobs;
    cfg.out_dir = o.out_dir;
    if (o.have_nmax_override) cfg.nmax_override = o.nmax_override;
    return cfg;
}

std::string enc(const Interval& v, size_t digits = 50) {
    return v.midpoint_string(digits) + " (radius " + v.radius_string() + ")";
}

int cmd_constants(const Options& o) {
    TribConstants k = compute_constants(o.precision);
    if (o.as_json) {
        json j{
            {"precision_digits", k.digits},
            {"alpha", k.alpha.midpoint_string(50)},
            {"c_alpha", k.c_alpha.midpoint_string(50)},
            {"log_alpha", k.log_alpha.midpoint_string(50)},
            {"log_10", k.log_10.midpoint_string(50)},
            {"theta", k.theta.midpoint_string(50)},
        };
        if (o.precision >= 200) {
            MinPolyReport mp = minimal_poly_check_c_alpha(k);
            j["minimal_polynomial"] = mp.annihilating;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "precision  " << k.digits << " digits\n"
              << "alpha      " << enc(k.alpha) << "\n"
              << "c_alpha    " << enc(k.c_alpha) << "\n"
              << "log alpha  " << enc(k.log_alpha) << "\n"
              << "log 10     " << enc(k.log_10) << "\n"
              << "theta      " << enc(k.theta) << "\n";
    if (o.precision >= 200) {
        MinPolyReport mp = minimal_poly_check_c_alpha(k);
        std::cout << "c_alpha annihilated by " << mp.annihilating << "\n";
    }
    return 0;
}

int cmd_tables(const Options& o) {
    auto rows = verify_valuation_tables();
    bool all_ok = true;
    json jrows = json::array();
    for (const auto& r : rows) {
        all_ok = all_ok && r.consistent;
        if (o.as_json) {
            jrows.push_back({{"table", r.table},
                             {"block_length", r.block_length},
                             {"residue", r.residue},
                             {"scan_kind", r.kind == VerdictKind::Exact
                                               ? "exact" : "at_least"},
                             {"scan_value", r.value},
                             {"scan_max", r.scan_max},
                             {"published_kind",
                              r.published_kind == VerdictKind::Exact
                                  ? "exact" : "at_least"},
                             {"published_value", r.published_value},
                             {"consistent", r.consistent}});
        } else {
            std::cout << "table " << r.table << "  len " << r.block_length
                      << "  residue " << r.residue << "  scan "
                      << (r.kind == VerdictKind::Exact ? "=" : ">=")
                      << r.value << "  published "
                      << (r.published_kind == VerdictKind::Exact ? "=" : ">=")
                      << r.published_value
                      << (r.consistent ? "  [ok]" : "  [MISMATCH]") << "\n";
        }
    }
    if (o.as_json)
        std::cout << json{{"rows", jrows}, {"all_consistent", all_ok}}.dump(2)
                  << "\n";
    else
        std::cout << (all_ok ? "all rows consistent\n"
                             : "published tables contradicted\n");
    return all_ok ? 0 : 1;
}

int cmd_caps(const Options& o) {
    std::vector<EquationId> eqs;
    if (o.equation.empty())
        eqs = {EquationId::Eq1, EquationId::Eq2, EquationId::Eq3,
               EquationId::Eq4};
    else
        eqs = {required_equation(o)};
    bool all_ok = true;
    json out = json::array();
    for (EquationId eq : eqs) {
        CapCertification cc = max_block_lengths(eq);
        all_ok = all_ok && cc.certified;
        if (o.as_json) {
            json j{{"equation", equation_name(eq)},
                   {"k_max", cc.caps.k_max},
                   {"l_max", cc.caps.l_max},
                   {"certified", cc.certified},
                   {"scan_range_max", cc.range_max}};
            if (cc.plus_overcap_min != ~0UL) {
                j["plus_overcap_min"] = cc.plus_overcap_min;
                j["plus_atcap_min"] = cc.plus_atcap_min;
            }
            if (cc.minus_overcap_min != ~0UL) {
                j["minus_overcap_min"] = cc.minus_overcap_min;
                j["minus_atcap_min"] = cc.minus_atcap_min;
            }
            out.push_back(j);
        } else {
            std::cout << equation_name(eq) << ": k <= " << cc.caps.k_max
                      << ", l <= " << cc.caps.l_max
                      << (cc.certified ? "  [certified]" : "  [FAILED]")
                      << "\n";
        }
    }
    if (o.as_json) std::cout << out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int cmd_bound(const Options& o) {
    EquationId eq = required_equation(o);
    TribConstants k = compute_constants(o.precision);
    MatveevInstance mi = matveev_instance(eq, k);
    GammaBound gb = gamma_bound(eq, mi.f_cap, k);
    InitialBound ib = initial_bound(eq, k);
    if (o.as_json) {
        std::cout << json{{"equation", equation_name(eq)},
                          {"C", mi.C.midpoint_string(20)},
                          {"A1", mi.A1.get_str()},
                          {"A2", mi.A2.get_str()},
                          {"A3", mi.A3.get_str()},
                          {"B", {{"a", mi.B.a}, {"b", mi.B.b}}},
                          {"gamma_coefficient", gb.coefficient.get_str()},
                          {"initial_bound", ib.bound.get_str()},
                          {"iterations", ib.iterations}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << equation_name(eq) << "\n"
              << "C(3,3)        " << enc(mi.C, 20) << "\n"
              << "A1, A2, A3    " << mi.A1.get_str() << ", "
              << mi.A2.get_str() << ", " << mi.A3.get_str() << "\n"
              << "B(n)          " << mi.B.a << "n + " << mi.B.b << "\n"
              << "tail coeff    " << gb.coefficient.get_str() << "\n"
              << "initial bound n < " << ib.bound.get_str() << "  ("
              << ib.iterations << " iterations)\n";
    return 0;
}

int cmd_reduce(const Options& o) {
    EquationId eq = required_equation(o);
    TribConstants k = compute_constants(o.precision);
    InitialBound ib = initial_bound(eq, k);
    TwoStageReduction red = two_stage_reduce(eq, k, ib.bound, o.precision);
    if (o.as_json) {
        std::cout
            << json{{"equation", equation_name(eq)},
                    {"lambda_c", red.lambda_c.get_str()},
                    {"stage1",
                     {{"x0", red.stage1.x0.get_str()},
                      {"q", red.stage1.outcome.q.get_str()},
                      {"bound", red.stage1.outcome.bound.get_str()}}},
                    {"stage2",
                     {{"x0", red.stage2.x0.get_str()},
                      {"q", red.stage2.outcome.q.get_str()},
                      {"bound", red.stage2.outcome.bound.get_str()}}},
                    {"search_ceiling", red.search_ceiling.get_str()},
                    {"n_max", red.n_max}}
                   .dump(2)
            << "\n";
        return 0;
    }
    std::cout << equation_name(eq) << ": initial n < " << ib.bound.get_str()
              << "\n"
              << "c = " << red.lambda_c.get_str() << ", delta = 3/5\n"
              << "stage 1: X0 = " << red.stage1.x0.get_str() << ", q_"
              << red.stage1.outcome.convergent_index << " = "
              << red.stage1.outcome.q.get_str() << "  ->  n < "
              << red.stage1.outcome.bound.get_str() << "\n"
              << "stage 2: X0 = " << red.stage2.x0.get_str() << ", q_"
              << red.stage2.outcome.convergent_index << " = "
              << red.stage2.outcome.q.get_str() << "  ->  n < "
              << red.stage2.outcome.bound.get_str() << "\n"
              << "search range n <= " << red.n_max << "\n";
    return 0;
}

int cmd_search(const Options& o) {
    EquationId eq = required_equation(o);
    unsigned long n_max;
    if (eq == EquationId::Bgl) {
        n_max = 100;
    } else {
        TribConstants k = compute_constants(o.precision);
        InitialBound ib = initial_bound(eq, k);
        n_max = two_stage_reduce(eq, k, ib.bound, o.precision).n_max;
    }
    if (o.have_nmax_override && o.nmax_override > n_max)
        n_max = o.nmax_override;
    SearchSpace space = search_space(eq, n_max);
    SearchReport rep = exhaustive_search(space, o.jobs);
    bool expected =
        eq == EquationId::Bgl
            ? rep.solutions.size() == 1 && rep.solutions[0].n == 8 &&
                  rep.solutions[0].l == 1 && rep.solutions[0].digit == 4 &&
                  rep.solutions[0].length == 2
            : rep.solutions.empty();
    if (o.as_json) {
        json sols = json::array();
        for (const auto& s : rep.solutions)
            sols.push_back({{"n", s.n},
                            {"k", s.k},
                            {"l", s.l},
                            {"d", s.digit},
                            {"m", s.length},
                            {"value", s.value.get_str()}});
        std::cout << json{{"equation", equation_name(eq)},
                          {"n_max", space.n_max},
                          {"k_max", space.k_max},
                          {"l_max", space.l_max},
                          {"candidates_scanned", rep.candidates_scanned},
                          {"solutions", sols},
                          {"expected", expected}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << equation_name(eq) << ": n <= " << space.n_max << ", k <= "
                  << space.k_max << ", l <= " << space.l_max << ", scanned "
                  << rep.candidates_scanned << " candidates\n";
        for (const auto& s : rep.solutions)
            std::cout << "  solution n=" << s.n << " k=" << s.k << " l=" << s.l
                      << " m=" << s.length << " d=" << s.digit << " value "
                      << s.value.get_str() << "\n";
        std::cout << (expected ? "outcome as expected\n"
                               : "UNEXPECTED outcome\n");
    }
    return expected ? 0 : 1;
}

int cmd_verify(const Options& o) {
    EquationId eq = required_equation(o);
    PipelineResult r = run_pipeline(eq, to_config(o));
    if (o.as_json)
        std::cout << r.certificate_json;
    else
        std::cout << r.summary << "\n"
                  << "certificate: " << r.certificate_path << "\n";
    return r.expected_outcome ? 0 : 1;
}

int cmd_verify_all(const Options& o) {
    RunAllResult all = run_all(to_config(o));
    if (o.as_json) {
        json results = json::array();
        for (const auto& r : all.results)
            results.push_back({{"equation", equation_name(r.eq)},
                               {"outcome_confirmed", r.expected_outcome},
                               {"n_max", r.n_max},
                               {"certificate", r.certificate_path}});
        std::cout << json{{"results", results},
                          {"all_expected", all.all_expected}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << all.table;
    }
    return all.all_expected ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification pipeline for repdigit products of shifted "
                 "Tribonacci numbers"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a key=value file");

    Options o;
    app.add_option("--equation", o.equation, "equation: 1, 2, 3, 4 or bgl");
    app.add_option("--precision", o.precision,
                   "working precision in decimal digits (>= 50)")
        ->default_val(200);
    app.add_option("--jobs", o.jobs, "worker threads for the search")
        ->default_val(1);
    app.add_option("--out", o.out_dir, "certificate output directory")
        ->default_val("certificates");
    auto* nmax_opt = app.add_option("--nmax-override", o.nmax_override,
                                    "search at least this far in n");
    app.add_flag("--json", o.as_json, "emit JSON instead of text");

    auto* c_constants =
        app.add_subcommand("constants", "certified constants of the field");
    auto* c_tables =
        app.add_subcommand("tables", "re-derive the valuation tables");
    auto* c_caps =
        app.add_subcommand("caps", "certify the block-length caps");
    auto* c_bound =
        app.add_subcommand("bound", "initial bound from the log-form lemma");
    auto* c_reduce =
        app.add_subcommand("reduce", "two-stage reduction of the bound");
    auto* c_search =
        app.add_subcommand("search", "exhaustive search over the final range");
    auto* c_verify =
        app.add_subcommand("verify", "full pipeline, one certificate");
    auto* c_verify_all =
        app.add_subcommand("verify-all", "full pipeline for all equations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // config / usage failures
    }

    o.have_nmax_override = nmax_opt->count() > 0;

    try {
        if (c_constants->parsed()) return cmd_constants(o);
        if (c_tables->parsed()) return cmd_tables(o);
        if (c_caps->parsed()) return cmd_caps(o);
        if (c_bound->parsed()) return cmd_bound(o);
        if (c_reduce->parsed()) return cmd_reduce(o);
        if (c_search->parsed()) return cmd_search(o);
        if (c_verify->parsed()) return cmd_verify(o);
        if (c_verify_all->parsed()) return cmd_verify_all(o);
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 2;
    } catch (const UnexpectedOutcome& e) {
        std::cerr << "unexpected outcome: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // no subcommand (require_subcommand should prevent this)
}
