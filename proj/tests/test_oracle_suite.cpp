#include "doctest.h"

#include "helmholtz/oracle_suite.hpp"

using namespace helmholtz;

TEST_CASE("randomized instances are reproducible and pass") {
  for (Theorem t : {Theorem::sturm, Theorem::picone, Theorem::sonin}) {
    CAPTURE(to_string(t));
    const OracleOutcome a = run_oracle_instances(t, 12, 99);
    const OracleOutcome b = run_oracle_instances(t, 12, 99);
    CHECK(a.instances == 12);
    CHECK(a.passed == a.instances);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) CHECK(to_json(a.reports[i]).dump() == to_json(b.reports[i]).dump());
  }
  const OracleOutcome c = run_oracle_instances(Theorem::sonin, 4, 100);
  const OracleOutcome d = run_oracle_instances(Theorem::sonin, 4, 101);
  CHECK(to_json(c.reports[0]).dump() != to_json(d.reports[0]).dump());
}

TEST_CASE("each broken hypothesis is named") {
  const auto out = run_injected_violations();
  REQUIRE(out.size() == 6);
  for (const auto& i : out) {
    CAPTURE(i.expected);
    CHECK(i.raised == i.expected);
  }
  CHECK(parse_theorem("picone") == Theorem::picone);
  CHECK_THROWS(parse_theorem("rolle"));
}

TEST_CASE("bound report serialization") {
  const BoundReport r = make_le_report("demo", {{"m", 3.0}}, ScaledValue::from_log(1, -800.0),
                                       ScaledValue::from_double(2.0));
  const auto j = to_json(r);
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("lhs_log").get<double>() == doctest::Approx(-800.0));
  CHECK(j.at("params").at("m").get<double>() == 3.0);
  CHECK(j.at("margin").get<double>() == doctest::Approx(1.0));
  const BoundReport bad = make_le_report("demo", {}, ScaledValue::from_double(2.0), ScaledValue::from_double(1.0));
  CHECK_FALSE(bad.verdict);
  CHECK(to_json(bad).at("verdict") == "fail");
  CHECK(to_json(make_le_report("z", {}, ScaledValue{}, ScaledValue::from_double(1.0))).at("lhs_log").is_null());
}
