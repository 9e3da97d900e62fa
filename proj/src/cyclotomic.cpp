#include "cycletheta/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cycletheta/error.hpp"

namespace cycletheta {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Polynomial long division of integer polynomials by a monic divisor.
std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  std::int64_t r = 1, base = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t order) {
  static std::recursive_mutex lock;
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  std::lock_guard guard(lock);
  if (auto it = cache.find(order); it != cache.end()) return it->second;
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
  // Φ_N = (x^N - 1) / Π_{d | N, d < N} Φ_d
  std::vector<std::int64_t> poly(order + 1, 0);
  poly[0] = -1;
  poly[order] = 1;
  for (std::int64_t d = 1; d < order; ++d) {
    if (order % d) continue;
    poly = divide_exact(poly, cyclotomic_polynomial(d));
  }
  return cache.emplace(order, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic(std::int64_t order) : order_(order) {
  coeffs_.assign(cyclotomic_polynomial(order).size() - 1, Rational(0));
}

Cyclotomic::Cyclotomic(std::int64_t order, const Rational& value) : Cyclotomic(order) { coeffs_[0] = value; }

Cyclotomic::Cyclotomic(std::int64_t order, std::vector<Rational> coeffs) : order_(order) {
  reduce_from(std::move(coeffs));
}

void Cyclotomic::reduce_from(std::vector<Rational> full) {
  const auto& phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    if (full[i] == 0) continue;
    const Rational c = full[i];
    for (std::size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0) full[i - deg + j] -= c * static_cast<long>(phi[j]);
  }
  full.resize(deg, Rational(0));
  coeffs_ = std::move(full);
}

Cyclotomic Cyclotomic::zeta_power(std::int64_t order, std::int64_t k) {
  std::vector<Rational> full(order, Rational(0));
  full[mod(k, order)] = 1;
  return Cyclotomic(order, std::move(full));
}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t order, const Rational& x) {
  Rational scaled = x * order;
  if (scaled.get_den() != 1)
    throw Error(ErrorKind::InvalidArgument, "e(" + cycletheta::to_string(x) + ") is not in Q(zeta_" + std::to_string(order) + ")");
  return zeta_power(order, mod(to_int64(scaled), order));
}

Cyclotomic Cyclotomic::sqrt_integer(std::int64_t order, std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "sqrt_integer needs a positive integer");
  Cyclotomic result(order, Rational(1));
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest || rest > 1; ++p) {
    if (p * p > rest) p = rest;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) result = result * Rational(p);
    if (e % 2 == 0) continue;
    if (order % 8 != 0) throw Error(ErrorKind::InvalidArgument, "sqrt needs zeta_8 in the field");
    if (p == 2) {
      // √2 = ζ_8 + ζ_8^{-1}
      result = result * (zeta_power(order, order / 8) + zeta_power(order, -order / 8));
      continue;
    }
    if (order % (4 * p) != 0)
      throw Error(ErrorKind::InvalidArgument, "sqrt(" + std::to_string(p) + ") needs zeta_" + std::to_string(4 * p));
    // Quadratic Gauss sum g = Σ (a/p) ζ_p^a equals √p or i√p.
    Cyclotomic g(order);
    for (std::int64_t a = 1; a < p; ++a) g = g + zeta_power(order, a * (order / p)) * Rational(legendre(a, p));
    if (p % 4 == 3) g = g * zeta_power(order, -order / 4);
    result = result * g;
  }
  return result;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

namespace {
void check_same(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::InvalidArgument, "cyclotomic orders differ");
}
}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  Cyclotomic r = *this;
  r += o;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same(*this, o);
  std::vector<Rational> full(coeffs_.size() + o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      if (o.coeffs_[j] != 0) full[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Cyclotomic(order_, std::move(full));
}

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c *= r;
  return out;
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> full(order_, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) full[mod(-static_cast<std::int64_t>(i), order_)] += coeffs_[i];
  return Cyclotomic(order_, std::move(full));
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
    s += coeffs_[i].get_d() * std::complex<double>(std::cos(t), std::sin(t));
  }
  return s;
}

bool Cyclotomic::as_monomial(Rational& scale, std::int64_t& k) const {
  if (is_zero()) {
    scale = 0;
    k = 0;
    return true;
  }
  for (std::int64_t j = 0; j < order_; ++j) {
    // r = this · ζ^{-j} must be rational.
    Cyclotomic r = *this * zeta_power(order_, -j);
    bool rational = true;
    for (std::size_t i = 1; i < r.coeffs_.size(); ++i)
      if (r.coeffs_[i] != 0) rational = false;
    if (rational) {
      scale = r.coeffs_[0];
      k = j;
      return true;
    }
  }
  return false;
}

std::string Cyclotomic::to_string() const {
  Rational scale;
  std::int64_t k;
  if (as_monomial(scale, k)) {
    if (scale == 0) return "0";
    return "(" + cycletheta::to_string(scale) + ")*zeta" + std::to_string(order_) + "^" + std::to_string(k);
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    os << (first ? "" : " + ") << "(" << cycletheta::to_string(coeffs_[i]) << ")*zeta" << order_ << "^" << i;
    first = false;
  }
  return os.str();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.order_ == b.order_ && a.coeffs_ == b.coeffs_; }

}  // namespace cycletheta
