#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tribrep/certificate.hpp"
#include "tribrep/errors.hpp"

using namespace tribrep;
using nlohmann::json;

namespace {

PipelineConfig memory_only() {
    PipelineConfig cfg;
    cfg.write_file = false;
    return cfg;
}

} // namespace

TEST_CASE("the unshifted pipeline certificate") {
    PipelineResult res = run_pipeline(EquationId::Bgl, memory_only());
    CHECK(res.expected_outcome);
    CHECK(res.n_max == 100);
    CHECK(res.certificate_path.empty());

    json cert = json::parse(res.certificate_json);
    CHECK(cert["schema_version"] == 1);
    CHECK(cert["equation"] == "bgl");
    CHECK(cert["outcome_confirmed"] == true);
    CHECK(cert["paper_discrepancies"].empty());
    CHECK(cert["search"]["n_max"] == 100);
    CHECK(cert["search"]["l_max"] == 8);
    CHECK(cert["search"]["m_min"] == 2);
    CHECK(cert["search"]["solutions_verified"] == true);
    REQUIRE(cert["search"]["solutions"].size() == 1);
    const json& s = cert["search"]["solutions"][0];
    CHECK(s["n"] == 8);
    CHECK(s["l"] == 1);
    CHECK(s["d"] == 4);
    CHECK(s["m"] == 2);
    CHECK(s["value"] == "44");
    // no shifted-product stages for the sanity search
    CHECK_FALSE(cert.contains("matveev"));
    CHECK_FALSE(cert.contains("reduction"));
}

TEST_CASE("a full shifted-product certificate is self-consistent") {
    PipelineResult res = run_pipeline(EquationId::Eq1, memory_only());
    CHECK(res.expected_outcome);
    CHECK(res.n_max == 48);

    json cert = json::parse(res.certificate_json);
    CHECK(cert["equation"] == "eq1");
    CHECK(cert["outcome_confirmed"] == true);

    CHECK(cert["constants"]["precision_digits"] == 200);
    CHECK(cert["constants"]["minimal_polynomial_check"]["annihilating"] ==
          "44x^3+4x-1");
    CHECK(cert["constants"]["minimal_polynomial_check"]["plus_vanishes"] ==
          true);

    CHECK(cert["caps"]["k_max"] == 0);
    CHECK(cert["caps"]["l_max"] == 7);
    CHECK(cert["caps"]["certified"] == true);
    CHECK(cert["caps"]["table_rows_checked"] == 72);
    CHECK(cert["caps"]["table_rows_consistent"] == true);

    CHECK(cert["matveev"]["initial_bound"] == "23569888478981809");
    CHECK(cert["matveev"]["admissible"] == true);
    CHECK(cert["matveev"]["B"]["a"] == 7);
    CHECK(cert["matveev"]["published_B"]["a"] == 8);

    CHECK(cert["gamma"]["coefficient"] == "11964");
    CHECK(cert["gamma"]["lambda_c"] == "12086");

    const json& red = cert["reduction"];
    CHECK(red["delta"] == "3/5");
    CHECK(red["stage1"]["input_bound"] == "23569888478981809");
    CHECK(red["stage1"]["x0"] == "164989219352872684");
    CHECK(red["stage1"]["bound"] == "104");
    CHECK(red["stage1"]["q"] == "152414933276058910307");
    // the stages chain: stage 2 starts from the stage 1 bound
    CHECK(red["stage2"]["input_bound"] == red["stage1"]["bound"]);
    CHECK(red["stage2"]["x0"] == "749");
    CHECK(red["stage2"]["bound"] == "49");
    CHECK(red["search_ceiling"] == "48");
    CHECK(red["partial_quotients"].size() == 50);
    CHECK(red["partial_quotients"][0] == "0");
    CHECK(red["partial_quotients"][6] == "14");
    CHECK(red["convergents"][12]["q"] == "686323");

    CHECK(cert["search"]["n_max"] == 48);
    CHECK(cert["search"]["candidates_scanned"] == 48 * 7);
    CHECK(cert["search"]["solutions"].empty());
    CHECK(cert["search"]["m_bound"] == "364");

    const json& disc = cert["paper_discrepancies"];
    CHECK(disc.size() >= 3);
    for (const json& d : disc) {
        CHECK(d.contains("location"));
        CHECK(d.contains("paper_value"));
        CHECK(d.contains("recomputed_value"));
    }

    CHECK(cert["toolchain"]["version"] == "1.0.0");
    CHECK(cert["toolchain"]["precision"] == 200);
}

TEST_CASE("reruns serialize byte-identically") {
    PipelineResult a = run_pipeline(EquationId::Eq2, memory_only());
    PipelineResult b = run_pipeline(EquationId::Eq2, memory_only());
    CHECK(a.certificate_json == b.certificate_json);
    CHECK(a.expected_outcome);
    CHECK(a.n_max == 46);

    json cert = json::parse(a.certificate_json);
    CHECK(cert["reduction"]["stage1"]["bound"] == "102");
    CHECK(cert["reduction"]["stage2"]["bound"] == "47");
    CHECK(cert["gamma"]["lambda_c"] == "3999");
}

TEST_CASE("the search range override only widens") {
    PipelineConfig cfg = memory_only();
    cfg.nmax_override = 100;
    PipelineResult res = run_pipeline(EquationId::Eq1, cfg);
    CHECK(res.expected_outcome);  // still no solutions
    CHECK(res.n_max == 100);
    json cert = json::parse(res.certificate_json);
    CHECK(cert["search"]["n_max"] == 100);
    CHECK(cert["search"]["n_max_override"] == 100);
    CHECK(cert["search"]["candidates_scanned"] == 100 * 7);
    // overriding below the certified range changes nothing
    cfg.nmax_override = 10;
    CHECK(run_pipeline(EquationId::Bgl, cfg).n_max == 100);
}

TEST_CASE("insufficient precision fails loudly") {
    PipelineConfig cfg = memory_only();
    cfg.precision = 50;  // constants fine, reduction must refuse
    CHECK_THROWS_AS(run_pipeline(EquationId::Eq1, cfg), PrecisionError);
    cfg.precision = 49;
    CHECK_THROWS_AS(run_pipeline(EquationId::Bgl, cfg), PrecisionError);
}

TEST_CASE("certificates are written where requested") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "tribrep_cert_test";
    fs::remove_all(dir);

    PipelineConfig cfg;
    cfg.out_dir = dir.string();
    PipelineResult res = run_pipeline(EquationId::Bgl, cfg);
    REQUIRE(fs::exists(res.certificate_path));
    CHECK(fs::path(res.certificate_path).filename() == "cert_bgl.json");

    std::ifstream in(res.certificate_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == res.certificate_json);
    fs::remove_all(dir);
}

TEST_CASE("the run table covers every equation") {
    RunAllResult all = run_all(memory_only());
    CHECK(all.all_expected);
    REQUIRE(all.results.size() == 5);
    CHECK(all.results[0].eq == EquationId::Eq1);
    CHECK(all.results[4].eq == EquationId::Bgl);
    CHECK(all.table.find("eq1: n < 104 -> n < 49, searched n <= 48") !=
          std::string::npos);
    CHECK(all.table.find("eq3: n < 123 -> n < 67, searched n <= 68") !=
          std::string::npos);
    CHECK(all.table.find("bgl: searched n <= 100") != std::string::npos);
    CHECK(all.table.find("all outcomes as expected") != std::string::npos);
    for (const auto& r : all.results) CHECK(r.expected_outcome);
}
