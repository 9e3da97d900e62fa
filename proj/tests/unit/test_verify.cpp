#include <doctest.h>

#include "cycletheta/verify.hpp"

using namespace cycletheta;

TEST_CASE("report bookkeeping") {
  VerificationReport empty{"x", {}};
  CHECK_FALSE(empty.all_passed());
  VerificationReport r{"x", {{"a", "1", "1", true}, {"b", "1", "2", false}}};
  CHECK(r.passed_count() == 1);
  CHECK(r.failed_count() == 1);
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("volume suite") {
  const auto r = suite_volume_formula(40);
  CHECK(r.suite == "volume");
  CHECK(r.cases.size() == 20);
  CHECK(r.all_passed());
  CHECK(r.cases.front().descriptor == "d=3");
  CHECK(r.cases.front().lhs == "1/3");
}

TEST_CASE("Siegel-Weil suite") {
  const auto r = suite_siegel_weil(4);
  CHECK(r.cases.size() == 10);
  CHECK(r.all_passed());
}

TEST_CASE("cup product suite on A2") {
  const auto r = suite_cup_product("A2", 3);
  CHECK(r.cases.size() == 16);
  CHECK(r.all_passed());
}

TEST_CASE("weilrep and orbit suites") {
  const auto w = suite_weilrep();
  CHECK(w.all_passed());
  std::size_t theta = 0;
  for (const auto& c : w.cases)
    if (c.descriptor.find(" theta ") != std::string::npos) {
      ++theta;
      CHECK(c.note.find("tail_bound=") == 0);
    }
  CHECK(theta == 12);
  const auto o = suite_orbit_cross_check();
  CHECK(o.cases.size() == 5);
  CHECK(o.all_passed());
}
