#include <doctest.h>

#include <cmath>

#include "cycletheta/error.hpp"
#include "cycletheta/quadlattice.hpp"

using namespace cycletheta;

namespace {

ErrorKind kind_of(const IntMatrix& g) {
  try {
    new_lattice(g);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("6/4") == make_rational(3, 2));
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK(frac(make_rational(-1, 3)) == make_rational(2, 3));
  CHECK(floor(make_rational(-1, 3)) == -1);
  CHECK(to_int64(Rational(12)) == 12);
  CHECK_THROWS(to_int64(make_rational(1, 2)));
}

TEST_CASE("new_lattice validates the Gram matrix") {
  const Lattice a1 = new_lattice({{2}});
  CHECK(a1.rank() == 1);
  CHECK(a1.signature() == Signature{1, 0});
  const Lattice u = new_lattice({{0, 1}, {1, 0}});
  CHECK(u.signature() == Signature{1, 1});
  CHECK(u.determinant() == -1);
  CHECK(kind_of({{2, 1}, {0, 2}}) == ErrorKind::NotSymmetric);
  CHECK(kind_of({{1}}) == ErrorKind::NotEven);
  CHECK(kind_of({{2, 2}, {2, 2}}) == ErrorKind::Degenerate);
  CHECK(kind_of({{2, 1}}) == ErrorKind::InvalidArgument);
  CHECK(exact_signature({{-2, 1}, {1, -2}}) == Signature{0, 2});
  CHECK(exact_signature({{0, 0, 1}, {0, 2, 0}, {1, 0, 0}}) == Signature{2, 1});
}

TEST_CASE("named lattices and sums") {
  CHECK(named_lattice("E8").determinant() == 1);
  CHECK(named_lattice("D4").determinant() == 4);
  CHECK(named_lattice("A3").determinant() == 4);
  CHECK(named_lattice("A1(-1)").signature() == Signature{0, 1});
  const Lattice s = named_lattice("A1+A2");
  CHECK(s.rank() == 3);
  CHECK(s.determinant() == 6);
  CHECK_THROWS_AS(named_lattice("B7"), Error);
}

TEST_CASE("discriminant form invariants over the corpus") {
  for (const char* name : {"A1", "A2", "A3", "D4", "E8", "U", "A1(-1)", "A1+A1", "A2+A1(-1)"}) {
    CAPTURE(name);
    const Lattice lat = named_lattice(name);
    const DiscriminantForm df(lat);
    CHECK(df.order() == abs(lat.determinant()));
    std::int64_t product = 1;
    for (const auto& g : df.generators()) product *= g.order;
    CHECK(product == df.order());
    CHECK(df.cosets().front().is_zero());
    for (std::size_t i = 0; i < df.cosets().size(); ++i) {
      CHECK(df.q(i) == df.q(df.negate(i)));
      CHECK(df.q(i) >= 0);
      CHECK(df.q(i) < 1);
      CHECK(df.add(i, df.negate(i)) == 0);
    }
    CHECK(std::is_sorted(df.cosets().begin(), df.cosets().end()));
    const Signature sig = lat.signature();
    CHECK(((sig.positive - sig.negative) % 8 + 8) % 8 == df.sig8());
    // Milgram: Σ e(q) = sqrt|D| e(sig/8)
    const auto lhs = gauss_sum(df);
    const auto rhs = std::sqrt(static_cast<double>(df.order())) * unit_phase(make_rational(df.sig8(), 8));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("small discriminant forms") {
  const DiscriminantForm a1(named_lattice("A1"));
  REQUIRE(a1.order() == 2);
  CHECK(a1.cosets()[1].label() == "(1/2)");
  CHECK(a1.q(1) == make_rational(1, 4));
  CHECK(a1.b(1, 1) == make_rational(1, 2));
  CHECK(a1.level() == 4);

  const DiscriminantForm a2(named_lattice("A2"));
  REQUIRE(a2.order() == 3);
  CHECK(a2.q(1) == make_rational(1, 3));
  CHECK(a2.q(2) == make_rational(1, 3));
  CHECK(a2.level() == 3);
  CHECK(a2.sig8() == 2);

  const DiscriminantForm d4(named_lattice("D4"));
  CHECK(d4.order() == 4);
  CHECK(d4.level() == 2);
  CHECK(d4.sig8() == 4);
  int halves = 0;
  for (std::size_t i = 1; i < 4; ++i) halves += d4.q(i) == make_rational(1, 2);
  CHECK(halves == 3);

  const DiscriminantForm e8(named_lattice("E8"));
  CHECK(e8.order() == 1);
  CHECK(e8.sig8() == 0);

  const DiscriminantForm m1(named_lattice("A1(-1)"));
  CHECK(m1.q(1) == make_rational(3, 4));
  CHECK(m1.sig8() == 7);
}

TEST_CASE("coset reduction and lookup") {
  const Coset c = reduce_coset({make_rational(-1, 2), make_rational(7, 3)});
  CHECK(c.label() == "(1/2,1/3)");
  const DiscriminantForm a1(named_lattice("A1"));
  CHECK(a1.index_of(reduce_coset({make_rational(3, 2)})) == 1);
  CHECK_THROWS_AS(a1.index_of(reduce_coset({make_rational(1, 3)})), Error);
}
