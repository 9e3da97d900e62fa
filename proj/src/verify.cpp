#include "cycletheta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "cycletheta/eisenstein.hpp"
#include "cycletheta/enumeration.hpp"
#include "cycletheta/error.hpp"
#include "cycletheta/heegner.hpp"
#include "cycletheta/quadlattice.hpp"
#include "cycletheta/weilrep.hpp"

namespace cycletheta {
namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string complex_text(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real(), z.imag());
  return buf;
}

Coset zero_coset(const Lattice& lat) { return Coset{std::vector<Rational>(lat.rank(), Rational(0))}; }

VerificationCase exact_case(std::string descriptor, const Rational& lhs, const Rational& rhs) {
  return {std::move(descriptor), to_string(lhs), to_string(rhs), lhs == rhs, "exact", ""};
}

// Truncation whose tail bound is comfortably small at both τ and γτ.
Rational theta_truncation(const Lattice& lat, double im_min, double im_tau) {
  const double weight = 1.0 + std::pow(std::abs(im_tau), lat.rank() / 2.0) * std::sqrt(static_cast<double>(Integer(abs(lat.determinant())).get_d()));
  Rational t = 2;
  while (theta_tail_bound(lat, t, im_min) * weight >= 1e-13) t += 2;
  return t;
}

}  // namespace

std::size_t VerificationReport::passed_count() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.passed; }));
}

std::size_t VerificationReport::failed_count() const { return cases.size() - passed_count(); }

bool VerificationReport::all_passed() const { return !cases.empty() && failed_count() == 0; }

VerificationReport suite_volume_formula(std::int64_t d_max) {
  if (d_max < 4) throw Error(ErrorKind::InvalidArgument, "D_max must be >= 4");
  VerificationReport report{"volume", {}};
  for (std::int64_t d = 1; d <= d_max; ++d) {
    if (d % 4 != 0 && d % 4 != 3) continue;
    const HeegnerCycle z = heegner_cycle(1, d % 2, d);
    report.cases.push_back(exact_case("d=" + std::to_string(d), z.degree, hurwitz(d)));
  }
  return report;
}

VerificationReport suite_siegel_weil(std::int64_t m_max) {
  VerificationReport report{"siegelweil", {}};
  const Lattice e8 = named_lattice("E8");
  const QSeries e4 = eisenstein_k(4, m_max + 1);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const Rational count(rep_number(e8, zero_coset(e8), Rational(static_cast<long>(m))));
    const Rational predicted = siegel_product(e8, m);
    const std::string tag = "E8 m=" + std::to_string(m);
    report.cases.push_back(exact_case(tag + " enumeration=siegel_product", count, predicted));
    report.cases.push_back(exact_case(tag + " siegel_product=240sigma3", predicted, e4.coefficients[m]));
  }
  return report;
}

VerificationReport suite_cup_product(const std::string& lattice_name, std::int64_t t_max) {
  VerificationReport report{"cup", {}};
  const Lattice lat = named_lattice(lattice_name);
  const Coset zero = zero_coset(lat);
  std::vector<Integer> r;
  for (std::int64_t t = 0; t <= t_max; ++t) r.push_back(rep_number(lat, zero, Rational(static_cast<long>(t))));
  for (std::int64_t t1 = 0; t1 <= t_max; ++t1)
    for (std::int64_t t2 = 0; t2 <= t_max; ++t2) {
      Integer sum = 0;
      for (const auto& c : genus2_coefficients(lat, zero, zero, Rational(static_cast<long>(t1)), Rational(static_cast<long>(t2))))
        sum += c.count;
      report.cases.push_back(exact_case(lattice_name + " t1=" + std::to_string(t1) + " t2=" + std::to_string(t2),
                                        Rational(r[t1] * r[t2]), Rational(sum)));
    }
  return report;
}

VerificationReport suite_cup_product() {
  VerificationReport report{"cup", {}};
  for (const char* name : {"A2", "E8"}) {
    auto part = suite_cup_product(name, 4);
    report.cases.insert(report.cases.end(), part.cases.begin(), part.cases.end());
  }
  return report;
}

VerificationReport suite_weilrep() {
  VerificationReport report{"weilrep", {}};
  for (const char* name : {"A1", "A2", "A3", "D4", "E8", "U", "A1(-1)"}) {
    const DiscriminantForm df(named_lattice(name));
    for (const RelationCheck& check : verify_relations(df).checks)
      report.cases.push_back({std::string(name) + " " + check.name, check.passed ? "holds" : "fails", "holds",
                              check.passed, "exact", ""});
    const std::complex<double> lhs = gauss_sum(df);
    const std::complex<double> rhs =
        std::sqrt(static_cast<double>(df.order())) * unit_phase(make_rational(df.sig8(), 8));
    report.cases.push_back({std::string(name) + " milgram", complex_text(lhs), complex_text(rhs),
                            std::abs(lhs - rhs) < 1e-10, "1e-10", ""});
  }
  for (const char* name : {"A1+A1", "D4", "E8"}) {
    const Lattice lat = named_lattice(name);
    for (double y : {1.0, 2.0}) {
      for (Generator g : {Generator::S, Generator::T}) {
        const std::complex<double> tau(0.0, y);
        const double im_image = g == Generator::S ? 1.0 / y : y;
        Rational trunc = theta_truncation(lat, std::min(y, im_image), y);
        ThetaTransformResult res;
        for (;;) {
          try {
            res = theta_transform_check(lat, g, tau, trunc);
            break;
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::InsufficientTruncation) throw;
            trunc += 2;
          }
        }
        const std::string gen = g == Generator::S ? "S" : "T";
        report.cases.push_back({std::string(name) + " theta " + gen + " tau=" + (y == 1.0 ? "i" : "2i"),
                                sci(res.residual), "0", res.residual < 1e-9, "1e-9",
                                "tail_bound=" + sci(res.tail_bound) + " truncation=" + to_string(trunc)});
      }
    }
  }
  return report;
}

VerificationReport suite_orbit_cross_check() {
  VerificationReport report{"orbits", {}};
  const std::int64_t cases[][3] = {{1, 0, 4}, {1, 1, 3}, {1, 1, 23}, {6, 1, 23}, {5, 2, 4}};
  for (const auto& c : cases) {
    const OrbitCrossCheck check = orbit_cross_check(c[0], c[1], c[2]);
    Rational orbit_total = 0, forms_total = 0;
    for (const auto& e : check.orbit_route) orbit_total += e.multiplicity;
    for (const auto& e : check.forms_route) forms_total += e.multiplicity;
    VerificationCase vc{"N=" + std::to_string(c[0]) + " r=" + std::to_string(c[1]) + " d=" + std::to_string(c[2]),
                        std::to_string(check.orbit_route.size()) + " orbits, weight " + to_string(orbit_total),
                        std::to_string(check.forms_route.size()) + " classes, weight " + to_string(forms_total),
                        check.match, "exact", check.discrepancies.empty() ? "" : check.discrepancies.front()};
    report.cases.push_back(std::move(vc));
  }
  return report;
}

std::vector<VerificationReport> suite_all() {
  return {suite_volume_formula(), suite_siegel_weil(), suite_cup_product(), suite_weilrep()};
}

}  // namespace cycletheta
