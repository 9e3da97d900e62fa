#include "cycletheta/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "cycletheta/error.hpp"
#include "fincke_pohst.hpp"

namespace cycletheta {
namespace {

// Target wᵀGw for Q(x) = m, or -1 when m·2den² is not an integer.
std::int64_t scaled_target(const Rational& m, std::int64_t den) {
  Rational t = m * 2 * den * den;
  if (t.get_den() != 1) return -1;
  return to_int64(t);
}

std::string format_exponent(const Rational& e) { return "q^(" + to_string(e) + ")"; }

}  // namespace

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < numerators.size(); ++i) os << (i ? "," : "") << cycletheta::to_string(coordinate(i));
  os << ')';
  return os.str();
}

std::vector<LatticeVector> vectors_with_norm(const Lattice& lattice, const Coset& coset, const Rational& m) {
  if (static_cast<int>(coset.coords.size()) != lattice.rank())
    throw Error(ErrorKind::InvalidArgument, "coset dimension does not match the lattice rank");
  detail::CosetEnumerator en(lattice, coset);
  std::vector<LatticeVector> out;
  if (m < 0) return out;
  const std::int64_t target = scaled_target(m, en.denominator());
  if (target < 0) return out;
  en.for_each(m.get_d(), [&](std::span<const std::int64_t> w, std::int64_t norm) {
    if (norm == target) out.push_back({std::vector<std::int64_t>(w.begin(), w.end()), en.denominator()});
  });
  std::sort(out.begin(), out.end());
  return out;
}

Integer rep_number(const Lattice& lattice, const Coset& coset, const Rational& m) {
  detail::CosetEnumerator en(lattice, coset);
  if (m < 0) return 0;
  const std::int64_t target = scaled_target(m, en.denominator());
  if (target < 0) return 0;
  std::int64_t count = 0;
  en.for_each(m.get_d(), [&](std::span<const std::int64_t>, std::int64_t norm) { count += (norm == target); });
  return Integer(static_cast<long>(count));
}

VectorValuedQSeries theta_qseries(const Lattice& lattice, const Rational& truncation) {
  if (!lattice.is_positive_definite())
    throw Error(ErrorKind::NotPositiveDefinite, "theta series needs a positive definite lattice");
  DiscriminantForm df(lattice);
  VectorValuedQSeries series;
  series.weight = make_rational(static_cast<std::int64_t>(lattice.rank()), 2);
  series.truncation = truncation;
  series.level_denominator = df.level();
  for (std::size_t i = 0; i < df.cosets().size(); ++i) {
    const Coset& coset = df.cosets()[i];
    QSeriesComponent comp{coset, {}};
    for (Rational e = df.q(i); e < truncation; e += 1) comp.coefficients[e] = 0;
    detail::CosetEnumerator en(lattice, coset);
    const std::int64_t scale = 2 * en.denominator() * en.denominator();
    std::unordered_map<std::int64_t, std::int64_t> counts;
    en.for_each(truncation.get_d(), [&](std::span<const std::int64_t>, std::int64_t norm) { ++counts[norm]; });
    for (auto [norm, count] : counts) {
      const Rational e = make_rational(norm, scale);
      if (e < truncation) comp.coefficients[e] += count;
    }
    series.components.push_back(std::move(comp));
  }
  return series;
}

std::string VectorValuedQSeries::to_text() const {
  std::ostringstream os;
  for (const auto& comp : components) {
    os << "coset=" << comp.coset.label() << ": ";
    bool first = true;
    for (const auto& [e, c] : comp.coefficients) {
      if (c == 0) continue;
      os << (first ? "" : " + ") << to_string(c) << '*' << format_exponent(e);
      first = false;
    }
    if (first) os << '0';
    os << '\n';
  }
  return os.str();
}

std::vector<std::complex<double>> VectorValuedQSeries::evaluate(std::complex<double> tau) const {
  std::vector<std::complex<double>> values;
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  for (const auto& comp : components) {
    std::complex<double> s = 0;
    for (const auto& [e, c] : comp.coefficients)
      if (c != 0) s += c.get_d() * std::exp(two_pi_i * e.get_d() * tau);
    values.push_back(s);
  }
  return values;
}

bool Matrix2::is_positive_semidefinite() const { return t11 >= 0 && t22 >= 0 && t11 * t22 - t12 * t12 >= 0; }

std::string Matrix2::to_string() const {
  return "[[" + cycletheta::to_string(t11) + "," + cycletheta::to_string(t12) + "],[" + cycletheta::to_string(t12) +
         "," + cycletheta::to_string(t22) + "]]";
}

namespace {

// Histogram of w1ᵀGw2 over all pairs with Q(x1) = t1, Q(x2) = t2.
struct PairHistogram {
  std::int64_t den1 = 1, den2 = 1;
  std::unordered_map<std::int64_t, std::int64_t> counts;
};

PairHistogram pair_histogram(const Lattice& lattice, const Coset& mu1, const Coset& mu2, const Rational& t1,
                             const Rational& t2, const std::int64_t* only_inner = nullptr) {
  PairHistogram h;
  const auto first = vectors_with_norm(lattice, mu1, t1);
  const auto second = vectors_with_norm(lattice, mu2, t2);
  const int n = lattice.rank();
  if (!first.empty()) h.den1 = first.front().denominator;
  if (!second.empty()) h.den2 = second.front().denominator;
  // Pre-multiply the second list by G so that each pair costs one dot product.
  std::vector<std::int64_t> g2(second.size() * n);
  for (std::size_t k = 0; k < second.size(); ++k)
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += lattice.gram()[i][j] * second[k].numerators[j];
      g2[k * n + i] = s;
    }
  // |w1ᵀGw2| <= sqrt(2t1·2t2)·den1·den2 by Cauchy–Schwarz.
  const auto reach = static_cast<std::int64_t>(
      std::ceil(2.0 * std::sqrt(t1.get_d() * t2.get_d()) * static_cast<double>(h.den1 * h.den2))) + 1;
  std::vector<std::int64_t> bins(static_cast<std::size_t>(2 * reach + 1), 0);
  std::vector<std::int64_t> w1(first.size() * n);
  for (std::size_t k = 0; k < first.size(); ++k)
    std::copy(first[k].numerators.begin(), first[k].numerators.end(), w1.begin() + static_cast<std::ptrdiff_t>(k * n));
  for (std::size_t a = 0; a < first.size(); ++a) {
    const std::int64_t* x = &w1[a * n];
    for (std::size_t k = 0; k < second.size(); ++k) {
      const std::int64_t* y = &g2[k * n];
      std::int64_t s = 0;
      for (int i = 0; i < n; ++i) s += x[i] * y[i];
      ++bins[static_cast<std::size_t>(s + reach)];
    }
  }
  for (std::int64_t s = -reach; s <= reach; ++s) {
    const std::int64_t c = bins[static_cast<std::size_t>(s + reach)];
    if (c != 0 && (only_inner == nullptr || s == *only_inner)) h.counts[s] = c;
  }
  return h;
}

}  // namespace

Integer rep_number_genus2(const Lattice& lattice, const Coset& mu1, const Coset& mu2, const Matrix2& t) {
  if (!lattice.is_positive_definite())
    throw Error(ErrorKind::NotPositiveDefinite, "genus-2 counting needs a positive definite lattice");
  if (!t.is_positive_semidefinite()) return 0;
  detail::CosetEnumerator e1(lattice, mu1), e2(lattice, mu2);
  Rational scaled = t.t12 * 2 * e1.denominator() * e2.denominator();
  if (scaled.get_den() != 1) return 0;
  const std::int64_t wanted = to_int64(scaled);
  PairHistogram h = pair_histogram(lattice, mu1, mu2, t.t11, t.t22, &wanted);
  auto it = h.counts.find(wanted);
  return it == h.counts.end() ? Integer(0) : Integer(static_cast<long>(it->second));
}

std::vector<Genus2Coefficient> genus2_coefficients(const Lattice& lattice, const Coset& mu1, const Coset& mu2,
                                                   const Rational& t1, const Rational& t2) {
  if (!lattice.is_positive_definite())
    throw Error(ErrorKind::NotPositiveDefinite, "genus-2 counting needs a positive definite lattice");
  PairHistogram h = pair_histogram(lattice, mu1, mu2, t1, t2);
  std::vector<Genus2Coefficient> out;
  for (auto [inner, count] : h.counts) {
    const Rational b = make_rational(inner, 2 * h.den1 * h.den2);
    out.push_back({Matrix2{t1, b, t2}, Integer(static_cast<long>(count))});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t.t12 < b.t.t12; });
  return out;
}

}  // namespace cycletheta
