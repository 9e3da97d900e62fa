#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cycletheta/cyclotomic.hpp"
#include "cycletheta/error.hpp"
#include "cycletheta/weilrep.hpp"

using namespace cycletheta;

TEST_CASE("cyclotomic arithmetic") {
  const Cyclotomic z = Cyclotomic::zeta_power(12, 1);
  Cyclotomic p(12, Rational(1));
  for (int i = 0; i < 12; ++i) p = p * z;
  CHECK(p == Cyclotomic(12, Rational(1)));
  CHECK((z * z.conj()) == Cyclotomic(12, Rational(1)));
  CHECK(Cyclotomic::root_of_unity(12, make_rational(1, 2)) == Cyclotomic(12, Rational(-1)));
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(12, make_rational(1, 5)), Error);
  for (std::int64_t n : {2, 3, 5, 6, 12, 20}) {
    CAPTURE(n);
    const Cyclotomic r = Cyclotomic::sqrt_integer(120, n);
    CHECK(r * r == Cyclotomic(120, Rational(n)));
    CHECK(r.to_complex().real() == doctest::Approx(std::sqrt(static_cast<double>(n))));
    CHECK(std::abs(r.to_complex().imag()) < 1e-12);
  }
  Rational scale;
  std::int64_t k = 0;
  REQUIRE((z * Rational(-3)).as_monomial(scale, k));
  CHECK(scale == -3);
  CHECK(k == 1);
  CHECK_FALSE((z + Cyclotomic(12, Rational(1))).as_monomial(scale, k));
}

TEST_CASE("relations over the corpus") {
  for (const char* name : {"A1", "A2", "A3", "D4", "E8", "U", "A1(-1)", "A1+A1", "A2+A1(-1)"}) {
    CAPTURE(name);
    const RelationReport r = verify_relations(DiscriminantForm(named_lattice(name)));
    CHECK(r.checks.size() == 4);
    CHECK(r.all_passed());
    CHECK_NOTHROW(r.throw_if_failed());
  }
}

TEST_CASE("matrices of A1") {
  const DiscriminantForm df(named_lattice("A1"));
  const WeilRepMatrix t = rho_T(df);
  CHECK(std::abs(t.value(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(t.value(1, 1) - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(t.value(0, 1)) < 1e-15);
  const WeilRepMatrix s = rho_S(df);
  // e(-1/8)/sqrt(2) · e(-b(λ, μ))
  const std::complex<double> c = std::exp(std::complex<double>(0, -std::numbers::pi / 4)) / std::sqrt(2.0);
  CHECK(std::abs(s.value(0, 0) - c) < 1e-14);
  CHECK(std::abs(s.value(1, 1) + c) < 1e-14);
  CHECK(s.sqrt_power == 1);
  CHECK(s.entry_text(0, 0) == "(-1)*zeta^3 / sqrt(2)");

  const WeilRepresentation rep(df);
  CHECK(rep.equal(rep.word("S S"), rep.multiply(s, s)));
  CHECK(rep.equal(rep.word("S S^-1"), rep.identity()));
  CHECK(rep.equal(rep.word("T T T T T T T T"), rep.identity()));
  CHECK(rep.equal(rep.word("ST"), rep.multiply(s, t)));
  CHECK(rep.equal(rep.dual(t), rep.conjugate_transpose(t)));
  CHECK_THROWS_AS(rep.word("SX"), Error);
}

TEST_CASE("hyperbolic plane is trivial") {
  const DiscriminantForm df(named_lattice("U"));
  CHECK(df.order() == 1);
  const WeilRepresentation rep(df);
  CHECK(rep.equal(rep.s(), rep.identity()));
  CHECK(rep.equal(rep.t(), rep.identity()));
}

TEST_CASE("theta transformation") {
  for (const char* name : {"A1+A1", "D4"}) {
    CAPTURE(name);
    const Lattice lat = named_lattice(name);
    for (Generator g : {Generator::S, Generator::T}) {
      const auto r = theta_transform_check(lat, g, {0.0, 1.0}, 10);
      CHECK(r.residual < 1e-9);
      CHECK(r.tail_bound < 1e-12);
    }
  }
  const auto odd = theta_transform_check(named_lattice("A1"), Generator::S, {0.3, 1.1}, 14);
  CHECK(odd.residual < 1e-9);
  try {
    theta_transform_check(named_lattice("E8"), Generator::S, {0.0, 1.0}, 1);
    FAIL("expected InsufficientTruncation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientTruncation);
  }
  CHECK(theta_tail_bound(named_lattice("A1"), 10, 1.0) < 1e-20);
}
