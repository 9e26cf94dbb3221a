// Acceptance gate: re-runs every stated check end to end and prints one
// PASS/FAIL line per criterion.  Exits nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "tribrep/certificate.hpp"
#include "tribrep/constants.hpp"
#include "tribrep/equation.hpp"
#include "tribrep/errors.hpp"
#include "tribrep/interval.hpp"
#include "tribrep/matveev.hpp"
#include "tribrep/reduction.hpp"
#include "tribrep/search.hpp"
#include "tribrep/sequence.hpp"
#include "tribrep/two_adic.hpp"

using namespace tribrep;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

// body returns "" on success, a short reason otherwise; exceptions fail
void criterion(int idx, const char* name, double limit_seconds,
               const std::function<std::string()>& body) {
    Clock::time_point start = Clock::now();
    std::string err;
    try {
        err = body();
    } catch (const std::exception& e) {
        err = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (err.empty() && limit_seconds > 0 && secs > limit_seconds)
        err = "time limit " + std::to_string(limit_seconds) + "s exceeded";
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n",
                err.empty() ? "PASS" : "FAIL", idx, name, secs,
                err.empty() ? "" : " -- ", err.c_str());
    std::fflush(stdout);
    if (!err.empty()) ++failures;
}

bool in_exact_range(const Interval& x, const mpz_class& lo,
                    const mpz_class& hi) {
    mpfr_prec_t bits = x.precision();
    return x.certainly_greater(Interval::exact_int(lo, bits)) &&
           x.certainly_less(Interval::exact_int(hi, bits));
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PipelineConfig memory_config(unsigned precision) {
    PipelineConfig cfg;
    cfg.precision = precision;
    cfg.write_file = false;
    return cfg;
}

// shared across criteria 7 and 8 so the 200-digit run happens once
RunAllResult shared_run;
bool have_shared_run = false;

} // namespace

int main() {
    criterion(
        1,
        "closed-form 2-adic valuations match direct computation for "
        "5 <= n <= 100000",
        10.0, []() -> std::string {
            if (nu2_shift_plus(61) != 15) return "nu2(T_61 + 1) != 15";
            mpz_class w0 = trib(2), w1 = trib(3), w2 = trib(4);
            for (unsigned long n = 5; n <= 100000; ++n) {
                mpz_class t = w0 + w1 + w2;  // T_n
                w0 = w1;
                w1 = w2;
                w2 = t;
                if (nu2_shift_plus(n) != nu2(t + 1))
                    return "plus form wrong at n = " + std::to_string(n);
                if (nu2_shift_minus(n) != nu2(t - 1))
                    return "minus form wrong at n = " + std::to_string(n);
            }
            return "";
        });

    criterion(
        2,
        "published valuation tables verify and the block-length caps are "
        "certified",
        30.0, []() -> std::string {
            auto rows = verify_valuation_tables();
            if (rows.size() != 72)
                return "expected 72 table rows, got " +
                       std::to_string(rows.size());
            for (const auto& r : rows) {
                std::string where = "table " + std::to_string(r.table) +
                                    ", length " + std::to_string(r.block_length) +
                                    ", residue " + std::to_string(r.residue);
                if (r.published_kind == VerdictKind::Exact &&
                    !(r.kind == VerdictKind::Exact &&
                      r.value == r.published_value))
                    return "'=' entry not reproduced exactly: " + where;
                if (r.published_kind == VerdictKind::AtLeast &&
                    r.value < r.published_value)
                    return "'>=' entry not confirmed: " + where;
                if (!r.consistent) return "inconsistent row: " + where;
            }
            struct {
                EquationId eq;
                unsigned k, l;
            } want[] = {{EquationId::Eq1, 0, 7},
                        {EquationId::Eq2, 0, 6},
                        {EquationId::Eq3, 6, 7},
                        {EquationId::Eq4, 7, 6}};
            for (const auto& w : want) {
                CapCertification c = max_block_lengths(w.eq);
                if (!c.certified)
                    return equation_name(w.eq) + ": caps not certified";
                if (c.caps.k_max != w.k || c.caps.l_max != w.l)
                    return equation_name(w.eq) + ": unexpected caps";
            }
            return "";
        });

    criterion(
        3,
        "constants audit at 200 digits; the annihilating polynomial is "
        "certified within 1e-140 and recorded in the certificate",
        0.0, []() -> std::string {
            TribConstants k = compute_constants(200);
            if (!in_exact_range(k.alpha.mul_z(mpz_class(100)), 183, 184))
                return "alpha not certified inside (1.83, 1.84)";
            if (!in_exact_range(k.c_alpha.mul_z(mpz_class(100)), 18, 19))
                return "c_alpha not certified inside (0.18, 0.19)";
            if (!binet_error_check(1000)) return "Binet error bound violated";
            MinPolyReport rep = minimal_poly_check_c_alpha(k);
            mpz_class p140;
            mpz_ui_pow_ui(p140.get_mpz_t(), 10, 140);
            Interval tiny = Interval::exact_ratio(
                mpq_class(mpz_class(1), p140), rep.plus_value.precision());
            if (!rep.plus_value.abs().certainly_less(tiny))
                return "annihilating value not certified below 1e-140";
            if (rep.minus_value.contains_zero())
                return "both polynomial signs vanish";
            PipelineResult res =
                run_pipeline(EquationId::Eq1, memory_config(200));
            json cert = json::parse(res.certificate_json);
            const json& mp = cert["constants"]["minimal_polynomial_check"];
            if (mp["annihilating"] != rep.annihilating)
                return "certificate records a different annihilating sign";
            if (mp["plus_vanishes"] != rep.plus_vanishes)
                return "certificate vanishing flags disagree";
            return "";
        });

    criterion(
        4,
        "linear-form constants and initial bounds hit the stated "
        "magnitudes",
        1.0, []() -> std::string {
            TribConstants k = compute_constants(60);
            Interval C = matveev_constant(3, 3);
            mpfr_prec_t bits = C.precision();
            Interval x1 = C * Interval::exact_int(196L, bits);
            Interval x2 = C * Interval::exact_ratio(7644, 25, bits);
            // within 0.5 percent of 5.31e14 and 8.27e14
            if (!in_exact_range(x1, mpz_class("528345000000000"),
                                mpz_class("533655000000000")))
                return "C * 40 * 0.7 * 7 off target";
            if (!in_exact_range(x2, mpz_class("822865000000000"),
                                mpz_class("831135000000000")))
                return "C * 62.4 * 0.7 * 7 off target";
            InitialBound b1 = initial_bound(EquationId::Eq1, k);
            InitialBound b2 = initial_bound(EquationId::Eq2, k);
            InitialBound b3 = initial_bound(EquationId::Eq3, k);
            InitialBound b4 = initial_bound(EquationId::Eq4, k);
            // <= 2.4e16 resp. 3.8e16, and within 5 percent from below
            if (b1.bound > mpz_class("24000000000000000") ||
                b1.bound < mpz_class("22800000000000000"))
                return "eq1 initial bound out of range: " + b1.bound.get_str();
            if (b2.bound > mpz_class("24000000000000000") ||
                b2.bound < mpz_class("22800000000000000"))
                return "eq2 initial bound out of range: " + b2.bound.get_str();
            if (b3.bound > mpz_class("38000000000000000") ||
                b3.bound < mpz_class("36100000000000000"))
                return "eq3 initial bound out of range: " + b3.bound.get_str();
            if (b4.bound != b3.bound)
                return "eq4 initial bound differs from eq3";
            if (!(b1.fixed_point_certified && b1.slope_certified &&
                  b3.fixed_point_certified && b3.slope_certified))
                return "fixed-point certification missing";
            return "";
        });

    criterion(
        5,
        "continued-fraction denominators are exact and the two-stage "
        "reduction lands on the published bounds",
        30.0, []() -> std::string {
            TribConstants k = compute_constants(200);
            ContinuedFraction cf = cf_expand(
                [](unsigned d) { return compute_constants(d).theta; }, 49,
                200);
            if (cf.convergents[42].second !=
                mpz_class("152414933276058910307"))
                return "q_42 mismatch";
            if (cf.convergents[12].second != 686323) return "q_12 mismatch";
            if (cf.convergents[43].second !=
                mpz_class("3468665590923027810230"))
                return "q_43 mismatch";
            if (cf.convergents[14].second != 9120227) return "q_14 mismatch";

            TwoStageReduction r1 = two_stage_reduce(
                EquationId::Eq1, k, initial_bound(EquationId::Eq1, k).bound);
            if (r1.stage1.outcome.bound > 104 || r1.stage2.outcome.bound > 49)
                return "eq1 stages exceed 104 / 49";
            TwoStageReduction r2 = two_stage_reduce(
                EquationId::Eq2, k, initial_bound(EquationId::Eq2, k).bound);
            if (r2.stage1.outcome.bound > 102 || r2.stage2.outcome.bound > 47)
                return "eq2 stages exceed 102 / 47";
            TwoStageReduction r3 = two_stage_reduce(
                EquationId::Eq3, k, initial_bound(EquationId::Eq3, k).bound);
            if (abs(r3.stage1.outcome.bound - 123) > 2 ||
                abs(r3.stage2.outcome.bound - 67) > 2)
                return "eq3 stages stray from 123 / 67 by more than 2";
            return "";
        });

    criterion(
        6,
        "exhaustive searches: four families empty, the unshifted search "
        "finds exactly T_8 = 44",
        120.0, []() -> std::string {
            struct {
                EquationId eq;
                unsigned long n_max;
            } ranges[] = {{EquationId::Eq1, 48},
                          {EquationId::Eq2, 46},
                          {EquationId::Eq3, 68},
                          {EquationId::Eq4, 68}};
            for (const auto& r : ranges) {
                SearchReport rep = exhaustive_search(search_space(r.eq, r.n_max));
                if (!rep.solutions.empty())
                    return equation_name(r.eq) + ": unexpected solution";
            }
            SearchReport bgl =
                exhaustive_search(search_space(EquationId::Bgl, 100));
            if (bgl.solutions.size() != 1) return "bgl: wrong solution count";
            const Solution& s = bgl.solutions[0];
            if (!(s.n == 8 && s.l == 1 && s.length == 2 && s.digit == 4 &&
                  s.value == 44))
                return "bgl: wrong solution";
            if (!verify_solution(EquationId::Bgl, 8, 0, 1, 2, 4))
                return "bgl: re-verification failed";
            return "";
        });

    criterion(
        7,
        "two full verification runs produce byte-identical certificates",
        0.0, []() -> std::string {
            namespace fs = std::filesystem;
            fs::path base = fs::temp_directory_path() / "tribrep_acceptance";
            fs::remove_all(base);
            PipelineConfig cfg_a;
            cfg_a.out_dir = (base / "a").string();
            PipelineConfig cfg_b;
            cfg_b.out_dir = (base / "b").string();

            RunAllResult a = run_all(cfg_a);
            RunAllResult b = run_all(cfg_b);
            if (!a.all_expected || !b.all_expected)
                return "a run deviated from the expected outcomes";
            for (size_t i = 0; i < a.results.size(); ++i) {
                std::string fa = read_file(a.results[i].certificate_path);
                std::string fb = read_file(b.results[i].certificate_path);
                if (fa.empty() || fa != fb)
                    return equation_name(a.results[i].eq) +
                           ": certificates differ between runs";
                if (fa != a.results[i].certificate_json)
                    return equation_name(a.results[i].eq) +
                           ": file does not match the in-memory certificate";
            }
            shared_run = std::move(a);
            have_shared_run = true;
            fs::remove_all(base);
            return "";
        });

    criterion(
        8,
        "integer outputs agree between 200-digit and 400-digit runs",
        0.0, []() -> std::string {
            if (!have_shared_run) shared_run = run_all(memory_config(200));
            PipelineConfig hi = memory_config(400);
            const char* keys_red[] = {"partial_quotients", "convergents",
                                      "search_ceiling"};
            for (const PipelineResult& lo : shared_run.results) {
                PipelineResult hi_res = run_pipeline(lo.eq, hi);
                json a = json::parse(lo.certificate_json);
                json b = json::parse(hi_res.certificate_json);
                std::string name = equation_name(lo.eq);
                if (a["search"]["solutions"] != b["search"]["solutions"])
                    return name + ": solution lists differ";
                if (a["search"]["n_max"] != b["search"]["n_max"])
                    return name + ": search ranges differ";
                if (lo.eq == EquationId::Bgl) continue;
                if (a["matveev"]["initial_bound"] !=
                    b["matveev"]["initial_bound"])
                    return name + ": initial bounds differ";
                if (a["gamma"]["lambda_c"] != b["gamma"]["lambda_c"])
                    return name + ": conversion constants differ";
                for (const char* key : keys_red)
                    if (a["reduction"][key] != b["reduction"][key])
                        return name + ": reduction output '" + key +
                               "' differs";
                for (const char* st : {"stage1", "stage2"})
                    for (const char* f : {"bound", "q", "x0"})
                        if (a["reduction"][st][f] != b["reduction"][st][f])
                            return name + ": " + st + " field '" + f +
                                   "' differs";
            }
            return "";
        });

    std::printf("%s: %d/8 criteria passed\n",
                failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                8 - failures);
    return failures == 0 ? 0 : 1;
}
