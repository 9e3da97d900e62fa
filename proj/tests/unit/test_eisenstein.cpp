#include <doctest.h>

#include <map>

#include "cycletheta/eisenstein.hpp"
#include "cycletheta/enumeration.hpp"
#include "cycletheta/error.hpp"

using namespace cycletheta;

namespace {

Rational pow_ratio(std::int64_t count, std::int64_t p, int e) {
  Integer den = 1;
  for (int i = 0; i < e; ++i) den *= p;
  Rational q(Integer(static_cast<long>(count)), den);
  q.canonicalize();
  return q;
}

Rational approximation(const LocalDensityReport& r, int k) {
  for (const auto& [level, v] : r.approximations)
    if (level == k) return v;
  FAIL("level missing");
  return 0;
}

}  // namespace

TEST_CASE("Hurwitz class numbers") {
  // brute-force table from tests/oracles/compute_oracles.py
  const std::map<std::int64_t, const char*> oracle{
      {0, "-1/12"}, {3, "1/3"}, {4, "1/2"}, {7, "1"},  {8, "1"},   {11, "1"}, {12, "4/3"}, {15, "2"},
      {16, "3/2"},  {19, "1"},  {20, "2"},  {23, "3"}, {24, "2"},  {27, "4/3"}, {28, "2"}, {31, "3"},
      {32, "3"},    {35, "2"},  {36, "5/2"}, {39, "4"}, {40, "2"}};
  for (std::int64_t d = 0; d <= 40; ++d) {
    CAPTURE(d);
    auto it = oracle.find(d);
    CHECK(hurwitz(d) == (it == oracle.end() ? Rational(0) : parse_rational(it->second)));
  }
  CHECK(hurwitz(-3) == 0);
  const HurwitzTable t = hurwitz_table(50);
  CHECK(t.values.size() == 51);
  for (const auto& [d, h] : t.values)
    if (d > 4 && h != 0) CHECK(6 % h.get_den() == 0);
  CHECK(hurwitz_series(5).to_text() == "-1/12 + (1/3)q^3 + (1/2)q^4");
}

TEST_CASE("Hurwitz-Kronecker relation") {
  for (std::int64_t n = 1; n <= 50; ++n) {
    Rational lhs = 0;
    for (std::int64_t s = -100; s <= 100; ++s)
      if (s * s <= 4 * n) lhs += hurwitz(4 * n - s * s);
    std::int64_t mins = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) mins += std::min(d, n / d);
    CAPTURE(n);
    CHECK(lhs == Rational(2 * sigma(1, n) - mins));
  }
}

TEST_CASE("class numbers") {
  CHECK(class_number(3) == 1);
  CHECK(class_number(4) == 1);
  CHECK(class_number(23) == 3);
  CHECK(class_number(47) == 5);
  CHECK(class_number(12) == 1);
  CHECK(class_number(163) == 1);
  CHECK(class_number(5) == 0);
}

TEST_CASE("Bernoulli numbers and E_k") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == make_rational(-1, 2));
  CHECK(bernoulli(4) == make_rational(-1, 30));
  CHECK(bernoulli(6) == make_rational(1, 42));
  CHECK(bernoulli(12) == make_rational(-691, 2730));
  CHECK(bernoulli(7) == 0);
  CHECK(eisenstein_k(4, 3).to_text() == "1 + 240q + 2160q^2");
  CHECK(eisenstein_k(6, 2).coefficients[1] == -504);
  CHECK(eisenstein_k(6, 3).to_text() == "1 - 504q - 16632q^2");
  const QSeries e4 = eisenstein_k(4, 11);
  const QSeries sq = e4 * e4;
  const QSeries e8 = eisenstein_k(8, 11);
  CHECK(sq.coefficients == e8.coefficients);
  CHECK(eisenstein_k(14, 2).coefficients[1] == -24);
  for (int k : {2, 3, 0, -4}) {
    CAPTURE(k);
    try {
      eisenstein_k(k, 3);
      FAIL("expected UnsupportedWeight");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedWeight);
    }
  }
}

TEST_CASE("Kronecker symbol and fundamental parts") {
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(8, 3) == -1);
  CHECK(kronecker(-23, 2) == 1);
  CHECK(kronecker(12, 3) == 0);
  CHECK(fundamental_part(-12) == std::pair<std::int64_t, std::int64_t>{-3, 2});
  CHECK(fundamental_part(-16) == std::pair<std::int64_t, std::int64_t>{-4, 2});
  CHECK(fundamental_part(9) == std::pair<std::int64_t, std::int64_t>{1, 3});
  CHECK(fundamental_part(8) == std::pair<std::int64_t, std::int64_t>{8, 1});
  CHECK_THROWS_AS(fundamental_part(6), Error);
  CHECK(generalized_bernoulli(1, -3) == make_rational(-1, 3));
  CHECK(generalized_bernoulli(1, -4) == make_rational(-1, 2));
}

TEST_CASE("Cohen numbers against the L-value oracle") {
  // mpmath Hurwitz-zeta L-values, rationalized (tests/oracles)
  const char* s1[] = {"-1/12", "0", "0", "1/3", "1/2", "0", "0", "1", "1", "0", "0",
                      "1", "4/3", "0", "0", "2", "3/2", "0", "0", "1", "2"};
  const char* s2[] = {"1/120", "-1/12", "0", "0", "-7/12", "-2/5", "0", "0", "-1", "-25/12", "0",
                      "0", "-2", "-2", "0", "0", "-55/12", "-4", "0", "0", "-22/5"};
  const char* s3[] = {"-1/252", "0", "0", "-2/9", "-1/2", "0", "0", "-16/7", "-3", "0", "0",
                      "-6", "-74/9", "0", "0", "-16", "-33/2", "0", "0", "-22", "-30"};
  for (std::int64_t n = 0; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(cohen_number(1, n) == parse_rational(s1[n]));
    CHECK(cohen_number(2, n) == parse_rational(s2[n]));
    CHECK(cohen_number(3, n) == parse_rational(s3[n]));
  }
  for (std::int64_t n = 0; n <= 60; ++n) CHECK(cohen_number(1, n) == hurwitz(n));
  CHECK(cohen_number(2, 0) == make_rational(1, 120));
  CHECK(cohen(2, 6).to_text() == "1/120 - (1/12)q - (7/12)q^4 - (2/5)q^5");
}

TEST_CASE("Cohen vanishing pattern") {
  for (int s = 1; s <= 5; ++s)
    for (std::int64_t n = 1; n <= 100; ++n) {
      const std::int64_t signed_n = s % 2 ? -n : n;
      const std::int64_t r = ((signed_n % 4) + 4) % 4;
      CAPTURE(s);
      CAPTURE(n);
      if (r == 2 || r == 3) CHECK(cohen_number(s, n) == 0);
      else CHECK(cohen_number(s, n) != 0);
    }
}

TEST_CASE("local densities against direct counts") {
  // numpy counts of x mod p^k with Q(x) ≡ m (tests/oracles)
  const Lattice e8 = named_lattice("E8");
  const auto r3 = local_density(e8, 3, 1, 4);
  CHECK(r3.k0 == 2);
  CHECK(approximation(r3, 1) == pow_ratio(2160, 3, 7));
  CHECK(approximation(r3, 2) == pow_ratio(4723920, 3, 14));
  CHECK(r3.value() == make_rational(80, 81));
  const auto r2 = local_density(e8, 2, 1, 5);
  CHECK(r2.k0 == 4);
  CHECK(approximation(r2, 1) == pow_ratio(120, 2, 7));
  CHECK(approximation(r2, 2) == pow_ratio(15360, 2, 14));
  CHECK(approximation(r2, 3) == pow_ratio(1966080, 2, 21));
  CHECK(r2.value() == make_rational(15, 16));

  const auto a1 = local_density(named_lattice("A1"), 2, 1, 7);
  const std::int64_t a1_counts[] = {1, 2, 4, 4, 4, 4, 4};
  for (int k = 1; k <= 7; ++k) CHECK(approximation(a1, k) == a1_counts[k - 1]);
  CHECK(a1.k0 == 6);
  CHECK(a1.value() == 4);

  const auto a2 = local_density(named_lattice("A2"), 3, 1, 5);
  const std::int64_t a2_counts[] = {6, 18, 54, 162, 486};
  for (int k = 1; k <= 5; ++k) CHECK(approximation(a2, k) == pow_ratio(a2_counts[k - 1], 3, k));

  const auto a2b = local_density(named_lattice("A2"), 2, 2, 7);
  CHECK(approximation(a2b, 1) == make_rational(1, 2));
  for (int k = 2; k <= 7; ++k) CHECK(approximation(a2b, k) == 0);

  const auto d4 = local_density(named_lattice("D4"), 2, 2, 4);
  const std::int64_t d4_counts[] = {4, 48, 384, 3072};
  for (int k = 1; k <= 4; ++k) CHECK(approximation(d4, k) == pow_ratio(d4_counts[k - 1], 2, 3 * k));
}

TEST_CASE("density stabilization rules") {
  const Lattice e8 = named_lattice("E8");
  const auto r = local_density(e8, 5, 1, 3);
  for (const auto& [k, v] : r.approximations) CHECK(v == r.approximations.front().second);
  try {
    local_density(named_lattice("A1"), 2, 1, 3).value();
    FAIL("expected NotStabilized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStabilized);
  }
  CHECK_THROWS_AS(local_density(e8, 4, 1), Error);
  CHECK_THROWS_AS(local_density(e8, 2, 0), Error);
  CHECK_THROWS_AS(local_density(named_lattice("U"), 2, 1), Error);
}

TEST_CASE("Siegel product for E8") {
  const Lattice e8 = named_lattice("E8");
  for (std::int64_t m = 1; m <= 10; ++m) {
    CAPTURE(m);
    CHECK(siegel_product(e8, m) == Rational(240 * sigma(3, m)));
  }
  CHECK(siegel_product(e8, 6, 2) == siegel_product(e8, 6, 7));
  try {
    siegel_product(named_lattice("A2"), 1);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}
