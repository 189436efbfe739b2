#include <doctest.h>

#include "splitk/acceptance.hpp"
#include "splitk/json_io.hpp"

using namespace splitk;

TEST_SUITE("cli") {

TEST_CASE("config validation") {
    RunConfig good;
    CHECK_NOTHROW(validate_config(good));

    RunConfig bad_ell;
    bad_ell.ells = {9};
    CHECK_THROWS_AS(validate_config(bad_ell), std::invalid_argument);

    RunConfig bad_ell2;
    bad_ell2.ells = {3};
    CHECK_THROWS_AS(validate_config(bad_ell2), std::invalid_argument);

    RunConfig bad_budget;
    bad_budget.dim_budget = 0;
    CHECK_THROWS_AS(validate_config(bad_budget), std::invalid_argument);

    RunConfig bad_q;
    bad_q.hilb_cases = {{2, 4}};
    CHECK_THROWS_AS(validate_config(bad_q), std::invalid_argument);
}

TEST_CASE("ring element JSON round trip with big and opaque coefficients") {
    RingElement a(5);
    a.add_term(box_std(1, 1), Int(1));
    a.add_term(box_std(0, 0), Int::from_string("123456789012345678901234567890"));
    a.add_term(BoxLabel{HLabel::big_w(), HLabel::std_module(3)}, Int(-2));
    a.add_term(BoxLabel{HLabel::opaque(2, 6), HLabel::std_module(0)}, Int(7));
    Json j = ring_element_to_json(a);
    CHECK(j["ell"] == 5);
    CHECK(ring_element_from_json(j) == a);
    // Terms arrive sorted by label order: V0#V0 first, opaque last.
    CHECK(j["terms"][0]["left"] == "V0");
    CHECK(j["terms"].back()["left"] == "O2");
    CHECK(j["terms"].back()["left_dim"] == 6);
    // The big coefficient is emitted as a decimal string.
    CHECK(j["terms"][0]["coeff"].is_string());
    CHECK(j["terms"][1]["coeff"].is_number_integer());
}

TEST_CASE("ring element JSON rejects malformed labels") {
    Json j = {{"ell", 5},
              {"terms", Json::array({Json{{"left", "X9"}, {"right", "V0"}, {"coeff", 1}}})}};
    CHECK_THROWS_AS(ring_element_from_json(j), std::invalid_argument);
    Json j2 = {{"ell", 5},
               {"terms", Json::array({Json{{"left", "V9"}, {"right", "V0"}, {"coeff", 1}}})}};
    CHECK_THROWS_AS(ring_element_from_json(j2), std::invalid_argument);
}

TEST_CASE("series serialization") {
    TruncatedSeries s(5, 2);
    s[0] = RingElement::one(5);
    s[2] = RingElement::monomial(5, box_std(2, 0), Int(3));
    Json j = series_to_json(s);
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[0]["terms"][0]["left"] == "V0");
    std::string csv = series_to_csv(s);
    CHECK(csv == "degree,label,coefficient\n0,V0#V0,1\n2,V2#V0,3\n");
}

TEST_CASE("witness report serialization") {
    WitnessReport r = run_witness(5);
    Json j = witness_report_to_json(r);
    CHECK(j["schema_version"] == 1);
    CHECK(j["ell"] == 5);
    CHECK(j["effective"] == false);
    CHECK(j["coeff_w_box_w"] == 1);
    CHECK(j["coeff_w_box_v"] == -1);
    CHECK(!j["assumptions"].empty());
    std::string csv = witness_report_to_csv(r);
    CHECK(csv.find("coeff_w_box_w,1") != std::string::npos);
    CHECK(csv.find("effective,false") != std::string::npos);
}

TEST_CASE("decomposition report serialization") {
    Oracle oracle(5);
    auto report = oracle.decompose(tensor(oracle.std_rep(1), oracle.std_rep(1)));
    Json j = decomposition_report_to_json(report);
    CHECK(j["group"] == "H");
    CHECK(j["input_dim"] == 4);
    CHECK(j["summands"].size() == 2);
    CHECK(j["summands"][0]["label"] == "V0");
    CHECK(j["summands"][1]["label"] == "V2");
}

TEST_CASE("cell report serialization") {
    CellReport report = verify_cell_decomposition(2, 2);
    Json j = cell_report_to_json(report);
    CHECK(j["total"] == 3);
    std::string csv = cell_report_to_csv(report);
    CHECK(csv.rfind("beta,lambda,parameter_count,ideal_count\n", 0) == 0);
    CHECK(csv.find("(2),(1,1),1,2") != std::string::npos);
    CHECK(csv.find("(1,1),(2),0,1") != std::string::npos);
}

TEST_CASE("report rendering is deterministic and excludes timing") {
    RunConfig cfg;
    std::vector<CheckResult> results = {{"1", "demo", "pass", "details", 1.23},
                                        {"2", "other", "fail", "boom", 4.56}};
    std::string a = render_report(cfg, results);
    results[0].seconds = 99.0;  // timing must not affect the canonical bytes
    std::string b = render_report(cfg, results);
    CHECK(a == b);
    CHECK(a.find("1.23") == std::string::npos);
    CHECK(a.find("all_pass") != std::string::npos);
}

}  // TEST_SUITE
