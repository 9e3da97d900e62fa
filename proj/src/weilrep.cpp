#include "cycletheta/weilrep.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "cycletheta/error.hpp"
#include "fincke_pohst.hpp"

namespace cycletheta {

std::complex<double> WeilRepMatrix::value(std::size_t i, std::size_t j) const {
  std::complex<double> v = entries[i][j].to_complex();
  if (sqrt_power == 1) v /= std::sqrt(static_cast<double>(discriminant));
  return v;
}

std::string WeilRepMatrix::entry_text(std::size_t i, std::size_t j) const {
  std::string scale = sqrt_power == 1 ? " / sqrt(" + std::to_string(discriminant) + ")" : "";
  Rational r;
  std::int64_t k;
  if (entries[i][j].as_monomial(r, k)) {
    if (r == 0) return "0";
    return "(" + to_string(r) + ")*zeta^" + std::to_string(k) + scale;
  }
  return "(" + entries[i][j].to_string() + ")" + scale;
}

bool RelationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void RelationReport::throw_if_failed() const {
  for (const auto& c : checks)
    if (!c.passed) throw Error(ErrorKind::RelationViolated, c.name);
}

namespace {

std::int64_t field_order_for(const DiscriminantForm& df) {
  return std::lcm(std::lcm<std::int64_t>(8, df.level()), 4 * df.order());
}

}  // namespace

WeilRepresentation::WeilRepresentation(DiscriminantForm df)
    : df_(std::move(df)),
      field_order_(field_order_for(df_)),
      sqrt_disc_(Cyclotomic::sqrt_integer(field_order_, df_.order())) {}

WeilRepMatrix WeilRepresentation::blank(std::string word, int sqrt_power) const {
  const auto n = static_cast<std::size_t>(df_.order());
  WeilRepMatrix m;
  m.generator_word = std::move(word);
  m.field_order = field_order_;
  m.discriminant = df_.order();
  m.sqrt_power = sqrt_power;
  m.entries.assign(n, std::vector<Cyclotomic>(n, zero()));
  return m;
}

WeilRepMatrix WeilRepresentation::identity() const {
  WeilRepMatrix m = blank("", 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.entries[i][i] = Cyclotomic(field_order_, Rational(1));
  return m;
}

WeilRepMatrix WeilRepresentation::t() const {
  WeilRepMatrix m = blank("T", 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.entries[i][i] = Cyclotomic::root_of_unity(field_order_, df_.q(i));
  return m;
}

WeilRepMatrix WeilRepresentation::s() const {
  WeilRepMatrix m = blank("S", 1);
  const Rational phase = make_rational(-df_.sig8(), 8);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      m.entries[i][j] = Cyclotomic::root_of_unity(field_order_, phase - df_.b(i, j));
  return m;
}

WeilRepMatrix WeilRepresentation::multiply(const WeilRepMatrix& a, const WeilRepMatrix& b) const {
  WeilRepMatrix m = blank(a.generator_word + b.generator_word, a.sqrt_power + b.sqrt_power);
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a.entries[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b.entries[k][j].is_zero()) m.entries[i][j] += a.entries[i][k] * b.entries[k][j];
    }
  if (m.sqrt_power == 2) {
    const Rational inv = make_rational(1, df_.order());
    for (auto& row : m.entries)
      for (auto& e : row) e = e * inv;
    m.sqrt_power = 0;
  }
  return m;
}

WeilRepMatrix WeilRepresentation::conjugate_transpose(const WeilRepMatrix& a) const {
  WeilRepMatrix m = blank(a.generator_word + "^H", a.sqrt_power);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m.entries[i][j] = a.entries[j][i].conj();
  return m;
}

WeilRepMatrix WeilRepresentation::dual(const WeilRepMatrix& a) const {
  WeilRepMatrix m = blank(a.generator_word + "^dual", a.sqrt_power);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m.entries[i][j] = a.entries[i][j].conj();
  return m;
}

WeilRepMatrix WeilRepresentation::scaled_negation(const Cyclotomic& c) const {
  WeilRepMatrix m = blank("P", 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.entries[df_.negate(i)][i] = c;
  return m;
}

bool WeilRepresentation::equal(const WeilRepMatrix& a, const WeilRepMatrix& b) const {
  if (a.size() != b.size()) return false;
  if (a.sqrt_power == b.sqrt_power) return a.entries == b.entries;
  // Rewrite the 1/sqrt|D| side as sqrt|D|/|D| inside the field.
  const WeilRepMatrix& odd = a.sqrt_power == 1 ? a : b;
  const WeilRepMatrix& even = a.sqrt_power == 1 ? b : a;
  const Rational inv = make_rational(1, df_.order());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(odd.entries[i][j] * sqrt_disc_ * inv == even.entries[i][j])) return false;
  return true;
}

WeilRepMatrix WeilRepresentation::word(std::string_view w) const {
  WeilRepMatrix acc = identity();
  const WeilRepMatrix s_mat = s(), t_mat = t();
  const WeilRepMatrix s_inv = conjugate_transpose(s_mat), t_inv = conjugate_transpose(t_mat);
  std::string canonical;
  std::size_t i = 0;
  auto starts = [&](std::string_view tok) { return w.substr(i, tok.size()) == tok; };
  while (i < w.size()) {
    const WeilRepMatrix* next = nullptr;
    std::string letter;
    std::size_t step = 1;
    if (w[i] == ' ') {
      ++i;
      continue;
    }
    if (w[i] == 'S' || w[i] == 'T') {
      const bool is_s = w[i] == 'S';
      if (starts(is_s ? "S^-1" : "T^-1")) step = 4;
      else if (starts(is_s ? "S⁻¹" : "T⁻¹")) step = 1 + std::string_view("⁻¹").size();
      const bool inverse = step > 1;
      next = is_s ? (inverse ? &s_inv : &s_mat) : (inverse ? &t_inv : &t_mat);
      letter = std::string(1, w[i]) + (inverse ? "^-1" : "");
    } else if (w[i] == 's' || w[i] == 't') {
      next = w[i] == 's' ? &s_inv : &t_inv;
      letter = std::string(1, static_cast<char>(w[i] - 'a' + 'A')) + "^-1";
    } else {
      throw Error(ErrorKind::InvalidArgument, "word letter at offset " + std::to_string(i) + " is not S, T, S^-1 or T^-1");
    }
    acc = multiply(acc, *next);
    canonical += letter;
    i += step;
  }
  acc.generator_word = canonical;
  return acc;
}

RelationReport WeilRepresentation::verify_relations() const {
  RelationReport report;
  const WeilRepMatrix s_mat = s(), t_mat = t(), id = identity();
  report.checks.push_back({"rho(S) unitary", equal(multiply(s_mat, conjugate_transpose(s_mat)), id)});
  report.checks.push_back({"rho(T) unitary", equal(multiply(t_mat, conjugate_transpose(t_mat)), id)});
  const WeilRepMatrix st = multiply(s_mat, t_mat);
  const WeilRepMatrix s2 = multiply(s_mat, s_mat);
  report.checks.push_back({"(rho(S)rho(T))^3 = rho(S)^2", equal(multiply(multiply(st, st), st), s2)});
  const Cyclotomic phase = Cyclotomic::root_of_unity(field_order_, make_rational(-df_.sig8(), 4));
  report.checks.push_back({"rho(S)^2 = e(-sig/4) P", equal(s2, scaled_negation(phase))});
  return report;
}

WeilRepMatrix rho_T(const DiscriminantForm& df) { return WeilRepresentation(df).t(); }
WeilRepMatrix rho_S(const DiscriminantForm& df) { return WeilRepresentation(df).s(); }
WeilRepMatrix rho_word(const DiscriminantForm& df, std::string_view word) { return WeilRepresentation(df).word(word); }
RelationReport verify_relations(const DiscriminantForm& df) { return WeilRepresentation(df).verify_relations(); }

double theta_tail_bound(const Lattice& lattice, const Rational& truncation, double im_tau) {
  if (im_tau <= 0) throw Error(ErrorKind::InvalidArgument, "Im(tau) must be positive");
  DiscriminantForm df(lattice);
  double worst = 0.0;
  for (std::size_t c = 0; c < df.cosets().size(); ++c) {
    detail::CosetEnumerator en(lattice, df.cosets()[c]);
    // First exponent of q(λ) + Z that is >= truncation.
    Rational m = df.q(c);
    if (m < truncation) m += Rational(floor(truncation - m)) + ((frac(truncation - m) == 0) ? 0 : 1);
    double sum = 0.0, prev = 0.0;
    for (int j = 0;; ++j) {
      const double mj = m.get_d() + j;
      const double term = en.count_bound(mj) * std::exp(-2.0 * std::numbers::pi * mj * im_tau);
      sum += term;
      if (j > 0 && term < prev && term < 1e-40 * std::max(sum, 1e-300)) {
        const double ratio = term / prev;
        sum += term * ratio / (1.0 - ratio);
        break;
      }
      if (j > 100000) return INFINITY;
      prev = term;
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

ThetaTransformResult theta_transform_check(const Lattice& lattice, Generator generator, std::complex<double> tau,
                                           const Rational& truncation) {
  if (tau.imag() <= 0) throw Error(ErrorKind::InvalidArgument, "Im(tau) must be positive");
  const VectorValuedQSeries theta = theta_qseries(lattice, truncation);
  WeilRepresentation rep{DiscriminantForm(lattice)};
  const WeilRepMatrix rho = generator == Generator::S ? rep.s() : rep.t();
  std::complex<double> gamma_tau, j_rank;
  if (generator == Generator::S) {
    gamma_tau = -1.0 / tau;
    j_rank = std::pow(tau, lattice.rank() / 2.0);
  } else {
    gamma_tau = tau + 1.0;
    j_rank = 1.0;
  }
  double row_norm = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) r += std::abs(rho.value(i, j));
    row_norm = std::max(row_norm, r);
  }
  ThetaTransformResult result;
  result.tail_bound = theta_tail_bound(lattice, truncation, gamma_tau.imag()) +
                      std::abs(j_rank) * row_norm * theta_tail_bound(lattice, truncation, tau.imag());
  if (!(result.tail_bound < 1e-12))
    throw Error(ErrorKind::InsufficientTruncation,
                "tail bound " + std::to_string(result.tail_bound) + " at truncation " + to_string(truncation));
  const auto lhs = theta.evaluate(gamma_tau);
  const auto base = theta.evaluate(tau);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    std::complex<double> rhs = 0;
    for (std::size_t j = 0; j < base.size(); ++j) rhs += rho.value(i, j) * base[j];
    result.residual = std::max(result.residual, std::abs(lhs[i] - j_rank * rhs));
  }
  return result;
}

}  // namespace cycletheta
