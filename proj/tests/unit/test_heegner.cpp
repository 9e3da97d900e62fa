#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cycletheta/eisenstein.hpp"
#include "cycletheta/error.hpp"
#include "cycletheta/heegner.hpp"

using namespace cycletheta;

namespace {

bool congruence(std::int64_t n, std::int64_t r, std::int64_t d) { return ((-d - r * r) % (4 * n) + 4 * n) % (4 * n) == 0; }

bool fundamental(std::int64_t d) {
  // −d fundamental
  if (d % 4 == 3) {
    for (std::int64_t p = 3; p * p <= d; p += 2)
      if (d % (p * p) == 0) return false;
    return true;
  }
  if (d % 4 != 0) return false;
  const std::int64_t m = d / 4;
  if (m % 4 != 1 && m % 4 != 2) return false;
  for (std::int64_t p = 3; p * p <= m; p += 2)
    if (m % (p * p) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("binary forms and the right action") {
  const BinaryForm f{2, 1, 3};
  CHECK(f.discriminant() == -23);
  CHECK(f.height() == 3);
  CHECK(f.to_string() == "[2,1,3]");
  CHECK(act(f, Mat2{0, -1, 1, 0}) == BinaryForm{3, -1, 2});
  CHECK(act(f, Mat2{1, 1, 0, 1}) == BinaryForm{2, 5, 6});
  const Mat2 g{2, 1, 5, 3}, h{1, 4, 0, 1};
  CHECK(act(act(f, g), h) == act(f, g * h));
  CHECK(g * g.inverse() == Mat2{});
  CHECK(BinaryForm{6, 1, 1}.satisfies_congruences(6, 1));
  CHECK_FALSE(BinaryForm{6, 1, 1}.satisfies_congruences(6, 11));
  const auto z = CMPoint{1, 1, 3}.approx();
  CHECK(z.real() == doctest::Approx(-0.5));
  CHECK(z.imag() == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("forms_with_disc") {
  const auto f = forms_with_disc(1, 0, 4, 4);
  CHECK(std::find(f.begin(), f.end(), BinaryForm{1, 0, 1}) != f.end());
  CHECK(std::is_sorted(f.begin(), f.end()));
  for (const auto& x : f) {
    CHECK(x.discriminant() == -4);
    CHECK(x.a > 0);
  }
  const auto g = forms_with_disc(1, 1, 3, 3);
  CHECK(std::find(g.begin(), g.end(), BinaryForm{1, 1, 1}) != g.end());
  CHECK(forms_with_disc(2, 1, 4, 50).empty());
}

TEST_CASE("gamma0 generators lie in the group") {
  for (std::int64_t n : {1, 2, 5, 6, 12}) {
    CAPTURE(n);
    const auto gens = gamma0_generators(n);
    CHECK_FALSE(gens.empty());
    for (const auto& g : gens) {
      CHECK(g.det() == 1);
      CHECK(g.in_gamma0(n));
    }
  }
}

TEST_CASE("level one classes") {
  const auto c4 = gamma0_classes(1, 0, 4);
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].representative == BinaryForm{1, 0, 1});
  CHECK(c4[0].stabilizer_order == 4);
  CHECK(c4[0].multiplicity() == make_rational(1, 2));

  const auto c3 = gamma0_classes(1, 1, 3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].representative == BinaryForm{1, 1, 1});
  CHECK(c3[0].stabilizer_order == 6);

  const auto c23 = gamma0_classes(1, 1, 23);
  CHECK(c23.size() == 3);
  for (const auto& c : c23) CHECK(c.stabilizer_order == 2);

  CHECK(heegner_cycle(1, 0, 4).degree == make_rational(1, 2));
  CHECK(heegner_cycle(1, 1, 3).degree == make_rational(1, 3));
  CHECK(heegner_cycle(1, 1, 23).degree == 3);
  CHECK(heegner_cycle(1, 1, 23).points.size() == 3);
}

TEST_CASE("higher level classes against the brute-force oracle") {
  // explicit search over Γ₀(N) matrices with entries <= 12 (tests/oracles)
  const auto c6 = gamma0_classes(6, 1, 23);
  REQUIRE(c6.size() == 3);
  for (const auto& c : c6) CHECK(c.stabilizer_order == 2);
  CHECK(gamma0_classes(6, 11, 23).size() == 3);
  CHECK(heegner_cycle(6, 1, 23).degree == 6);
  CHECK(heegner_cycle(2, 1, 7).degree == 2);
  CHECK(gamma0_classes(5, 1, 4).empty());
  CHECK(heegner_cycle(5, 2, 4).degree == 0);
  CHECK(heegner_cycle(5, 2, 4).points.empty());
}

TEST_CASE("degree dichotomy and r-symmetry") {
  for (std::int64_t n = 1; n <= 6; ++n)
    for (std::int64_t d = 1; d <= 30; ++d)
      for (std::int64_t r = 0; r < 2 * n; ++r) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(r);
        const HeegnerCycle z = heegner_cycle(n, r, d);
        CHECK((z.degree == 0) == !congruence(n, r, d));
        const HeegnerCycle w = heegner_cycle(n, 2 * n - r, d);
        CHECK(z.degree == w.degree);
        CHECK(z.points.size() == w.points.size());
        for (const auto& p : z.points) {
          const Rational m = p.multiplicity;
          CHECK((m == 1 || m == make_rational(1, 2) || m == make_rational(1, 3)));
          CHECK(p.representative.discriminant() == -d);
          CHECK(p.point.a == p.representative.a);
          // a z² + b z + c = 0 at z = (−b + i√d)/(2a)
          const auto zz = p.point.approx();
          const auto& f = p.representative;
          CHECK(std::abs(double(f.a) * zz * zz + double(f.b) * zz + double(f.c)) < 1e-9 * f.height());
          CHECK(zz.imag() > 0);
        }
      }
}

TEST_CASE("level one class count equals h(-d)") {
  for (std::int64_t d = 5; d <= 200; ++d) {
    if (!fundamental(d)) continue;
    CAPTURE(d);
    CHECK(static_cast<std::int64_t>(gamma0_classes(1, d % 2, d).size()) == class_number(d));
  }
}

TEST_CASE("orbit route agrees with the forms route") {
  const std::int64_t cases[][3] = {{1, 0, 4}, {1, 1, 3}, {1, 1, 23}, {6, 1, 23}, {5, 2, 4}, {2, 1, 7}, {3, 3, 27}, {4, 2, 12}};
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    CAPTURE(c[2]);
    const OrbitCrossCheck r = orbit_cross_check(c[0], c[1], c[2]);
    CHECK(r.match);
    CHECK(r.discrepancies.empty());
    CHECK_NOTHROW(r.throw_if_mismatch());
    CHECK(r.orbit_route.size() == r.forms_route.size());
  }
  CHECK(orbit_cross_check(5, 2, 4).orbit_route.empty());
  CHECK(orbit_cross_check(1, 1, 23).orbit_route.size() == 6);
}

TEST_CASE("orbit keys are Γ₀(N) invariants") {
  for (std::int64_t n : {1, 3, 6}) {
    const auto gens = gamma0_generators(n);
    for (const auto& f : forms_with_disc(n, 1, 23, 60)) {
      const OrbitKey k = orbit_key(f, n);
      CHECK(k.reduced.discriminant() == -23);
      for (const auto& g : gens) CHECK(orbit_key(act(f, g), n) == k);
    }
  }
  CHECK_THROWS_AS(orbit_key(BinaryForm{-1, 0, -1}, 1), Error);
}

TEST_CASE("stabilizer orders") {
  CHECK(stabilizer_order(BinaryForm{1, 0, 1}, 1) == 4);
  CHECK(stabilizer_order(BinaryForm{2, 0, 2}, 1) == 4);
  CHECK(stabilizer_order(BinaryForm{1, 1, 1}, 1) == 6);
  CHECK(stabilizer_order(BinaryForm{2, 1, 3}, 1) == 2);
  // (−1 + i)/2 is elliptic for Γ₀(2), i is not
  CHECK(stabilizer_order(BinaryForm{2, 2, 1}, 2) == 4);
  CHECK(stabilizer_order(BinaryForm{1, 0, 1}, 2) == 2);
  CHECK(stabilizer_order(BinaryForm{5, 4, 1}, 5) == 4);
  CHECK(stabilizer_order(BinaryForm{2, 0, 2}, 2) == 2);
  CHECK(reduced_forms(12).size() == 2);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(heegner_cycle(0, 0, 3), Error);
  CHECK_THROWS_AS(heegner_cycle(1, 0, 0), Error);
  CHECK_THROWS_AS(gamma0_generators(0), Error);
}
