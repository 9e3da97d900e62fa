#include "cycletheta/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "cycletheta/error.hpp"

namespace cycletheta {
namespace {

using u128 = unsigned __int128;

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

int moebius(std::int64_t n) {
  int result = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

Integer power(std::int64_t base, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

Integer from_u128(u128 v) {
  Integer out;
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return out;
}

Rational binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
  Rational out = 0, xp = 1;
  // Σ_j C(n, j) B_{n−j} x^j
  for (unsigned j = 0; j <= n; ++j) {
    out += binomial(n, j) * bernoulli(n - j) * xp;
    xp *= x;
  }
  return out;
}

int jacobi(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a = mod(a, n);
  }
  return n == 1 ? result : 0;
}

// p-adic valuation of a p-integral rational; −1 stands for +∞.
int valuation(const Rational& x, std::int64_t p) {
  if (x == 0) return -1;
  Integer num = abs(x.get_num());
  int v = 0;
  while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
    num /= p;
    ++v;
  }
  return v;
}

int valuation(Integer x, std::int64_t p) { return valuation(Rational(x), p); }

std::uint64_t reduce_mod(const Rational& x, std::uint64_t modulus) {
  Integer den_inv;
  const Integer m(static_cast<unsigned long>(modulus));
  mpz_invert(den_inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t());
  Integer r = x.get_num() * den_inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r.get_ui();
}

// Q restricted to a Jordan constituent: a x² (+ b xy + c y²).
struct Block {
  int size = 1;
  Rational a, b, c;
};

std::vector<Block> jordan_blocks(const Lattice& lattice, std::int64_t p) {
  const int n = lattice.rank();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = Rational(static_cast<long>(lattice.gram()[i][j]));
  std::vector<int> rest(n);
  std::iota(rest.begin(), rest.end(), 0);
  std::vector<Block> blocks;

  auto eliminate = [&](const std::vector<int>& pivots) {
    std::vector<int> others;
    for (int k : rest)
      if (std::find(pivots.begin(), pivots.end(), k) == pivots.end()) others.push_back(k);
    if (pivots.size() == 1) {
      const int i = pivots[0];
      for (int k : others)
        for (int l : others) g[k][l] -= g[k][i] * g[i][l] / g[i][i];
    } else {
      const int i = pivots[0], j = pivots[1];
      const Rational det = g[i][i] * g[j][j] - g[i][j] * g[i][j];
      for (int k : others)
        for (int l : others)
          g[k][l] -= (g[k][i] * (g[j][j] * g[i][l] - g[i][j] * g[j][l]) +
                      g[k][j] * (g[i][i] * g[j][l] - g[i][j] * g[i][l])) /
                     det;
    }
    rest = others;
  };

  while (!rest.empty()) {
    int vd = -1, vo = -1, di = -1, oi = -1, oj = -1;
    for (int i : rest) {
      const int v = valuation(g[i][i], p);
      if (v >= 0 && (vd < 0 || v < vd)) vd = v, di = i;
      for (int j : rest) {
        if (j <= i) continue;
        const int w = valuation(g[i][j], p);
        if (w >= 0 && (vo < 0 || w < vo)) vo = w, oi = i, oj = j;
      }
    }
    if (vd < 0 && vo < 0) {
      for (std::size_t k = 0; k < rest.size(); ++k) blocks.push_back({1, 0, 0, 0});
      break;
    }
    if (vd >= 0 && (vo < 0 || vd <= vo)) {
      blocks.push_back({1, g[di][di] / 2, 0, 0});
      eliminate({di});
    } else if (p != 2) {
      // x_i ← x_i + x_j makes the diagonal entry as small as the off-diagonal one.
      for (int l : rest) g[oi][l] += g[oj][l];
      for (int l : rest) g[l][oi] = g[oi][l];
      g[oi][oi] = g[oi][oi] + g[oj][oi];
      blocks.push_back({1, g[oi][oi] / 2, 0, 0});
      eliminate({oi});
    } else {
      blocks.push_back({2, g[oi][oi] / 2, g[oi][oj], g[oj][oj] / 2});
      eliminate({oi, oj});
    }
  }
  return blocks;
}

std::vector<u128> block_distribution(const Block& blk, std::uint64_t modulus) {
  std::vector<u128> dist(modulus, 0);
  const u128 a = reduce_mod(blk.a, modulus);
  if (blk.size == 1) {
    for (std::uint64_t x = 0; x < modulus; ++x) ++dist[static_cast<std::size_t>(a * x % modulus * x % modulus)];
    return dist;
  }
  const u128 b = reduce_mod(blk.b, modulus), c = reduce_mod(blk.c, modulus);
  for (std::uint64_t x = 0; x < modulus; ++x) {
    const u128 ax2 = a * x % modulus * x % modulus;
    const u128 bx = b * x % modulus;
    for (std::uint64_t y = 0; y < modulus; ++y)
      ++dist[static_cast<std::size_t>((ax2 + (bx + c * y) % modulus * y) % modulus)];
  }
  return dist;
}

std::vector<u128> convolve(const std::vector<u128>& u, const std::vector<u128>& v) {
  const std::size_t n = u.size();
  std::vector<u128> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= n) k -= n;
      out[k] += u[i] * v[j];
    }
  }
  return out;
}

}  // namespace

std::string QSeries::to_text() const {
  std::string out;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    const Rational& c = coefficients[n];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (n == 0) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")";
    out += "q";
    if (n > 1) out += "^" + std::to_string(n);
  }
  return out.empty() ? "0" : out;
}

QSeries QSeries::operator*(const QSeries& other) const {
  const std::size_t n = std::min(coefficients.size(), other.coefficients.size());
  QSeries out{std::vector<Rational>(n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) out.coefficients[i + j] += coefficients[i] * other.coefficients[j];
  return out;
}

Rational hurwitz(std::int64_t d) {
  if (d == 0) return make_rational(-1, 12);
  if (d < 0 || (d % 4 != 0 && d % 4 != 3)) return 0;
  Rational total = 0;
  for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + d) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b + d) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (b == 0 && a == c)
        total += make_rational(1, 2);
      else if (b == a && a == c)
        total += make_rational(1, 3);
      else
        total += 1;
    }
  }
  return total;
}

HurwitzTable hurwitz_table(std::int64_t d_max) {
  HurwitzTable table;
  table.d_max = d_max;
  for (std::int64_t d = 0; d <= d_max; ++d) table.values[d] = hurwitz(d);
  return table;
}

QSeries hurwitz_series(std::int64_t max_terms) {
  QSeries out;
  for (std::int64_t n = 0; n < max_terms; ++n) out.coefficients.push_back(hurwitz(n));
  return out;
}

std::int64_t class_number(std::int64_t d) {
  if (d <= 0 || (d % 4 != 0 && d % 4 != 3)) return 0;
  std::int64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + d) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b + d) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) == 1) ++count;
    }
  }
  return count;
}

std::int64_t sigma(std::int64_t k, std::int64_t n) { return to_int64(sigma_big(static_cast<unsigned>(k), n)); }

Integer sigma_big(unsigned k, std::int64_t n) {
  Integer total = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) total += power(d, k);
  return total;
}

Rational bernoulli(unsigned n) {
  static std::mutex lock;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard guard(lock);
  while (cache.size() <= n) {
    const unsigned m = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned j = 0; j < m; ++j) s += binomial(m + 1, j) * cache[j];
    cache.push_back(-s / Rational(m + 1));
  }
  return cache[n];
}

QSeries eisenstein_k(int k, std::int64_t max_terms) {
  if (k < 4 || k % 2 != 0)
    throw Error(ErrorKind::UnsupportedWeight,
                "E_" + std::to_string(k) + " is not a holomorphic level-one Eisenstein series");
  if (max_terms < 1) throw Error(ErrorKind::InvalidArgument, "need at least one coefficient");
  const Rational factor = -Rational(2 * k) / bernoulli(static_cast<unsigned>(k));
  QSeries out{{Rational(1)}};
  for (std::int64_t n = 1; n < max_terms; ++n)
    out.coefficients.push_back(factor * Rational(sigma_big(static_cast<unsigned>(k - 1), n)));
  return out;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    if (v % 2 == 1 && (mod(a, 8) == 3 || mod(a, 8) == 5)) result = -result;
  }
  return n == 1 ? result : result * jacobi(a, n);
}

std::pair<std::int64_t, std::int64_t> fundamental_part(std::int64_t n) {
  if (n == 0 || (mod(n, 4) != 0 && mod(n, 4) != 1))
    throw Error(ErrorKind::InvalidArgument, std::to_string(n) + " is not a discriminant");
  std::int64_t rest = std::abs(n), core = 1, square = 1;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) core *= p;
  }
  core *= rest;
  const std::int64_t d0 = n < 0 ? -core : core;
  if (mod(d0, 4) == 1) return {d0, square};
  return {4 * d0, square / 2};
}

Rational generalized_bernoulli(unsigned n, std::int64_t disc) {
  const std::int64_t f = std::abs(disc);
  Rational total = 0;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int chi = kronecker(disc, a);
    if (chi != 0) total += chi * bernoulli_polynomial(n, make_rational(a, f));
  }
  return total * Rational(power(f, n - 1));
}

Rational cohen_number(int s, std::int64_t n) {
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "Cohen numbers need s >= 1");
  if (n < 0) return 0;
  if (n == 0) return -bernoulli(static_cast<unsigned>(2 * s)) / (2 * s);
  const std::int64_t signed_n = s % 2 ? -n : n;
  if (mod(signed_n, 4) == 2 || mod(signed_n, 4) == 3) return 0;
  const auto [disc, f] = fundamental_part(signed_n);
  const Rational l_value = -generalized_bernoulli(static_cast<unsigned>(s), disc) / s;
  Rational sum = 0;
  for (std::int64_t d = 1; d <= f; ++d) {
    if (f % d) continue;
    const int mu = moebius(d);
    const int chi = kronecker(disc, d);
    if (mu == 0 || chi == 0) continue;
    sum += Rational(mu * chi) * Rational(power(d, static_cast<unsigned>(s - 1))) *
           Rational(sigma_big(static_cast<unsigned>(2 * s - 1), f / d));
  }
  return l_value * sum;
}

QSeries cohen(int s, std::int64_t max_terms) {
  QSeries out;
  for (std::int64_t n = 0; n < max_terms; ++n) out.coefficients.push_back(cohen_number(s, n));
  return out;
}

const Rational& LocalDensityReport::value() const {
  if (!stabilized)
    throw Error(ErrorKind::NotStabilized, "local density at p=" + std::to_string(p) + ", m=" + to_string(m) +
                                              " not stabilized by level " +
                                              std::to_string(approximations.empty() ? 0 : approximations.back().first) +
                                              " (threshold " + std::to_string(k0) + ")");
  return *stabilized;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

LocalDensityReport local_density(const Lattice& lattice, std::int64_t p, std::int64_t m, int max_level) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  if (!lattice.is_positive_definite()) throw Error(ErrorKind::NotPositiveDefinite, "local density needs a definite lattice");
  const int n = lattice.rank();
  LocalDensityReport report;
  report.p = p;
  report.m = m;
  report.k0 = 2 * valuation(Integer(Integer(static_cast<long>(2 * m)) * abs(lattice.determinant())), p) + 2;
  const int levels = max_level > 0 ? max_level : report.k0 + 1;

  const double bits = levels * n * std::log2(static_cast<double>(p));
  Integer modulus_big = power(p, static_cast<unsigned>(levels));
  if (bits >= 126 || modulus_big > Integer(1u << 24))
    throw Error(ErrorKind::Unsupported, "counting modulo " + std::to_string(p) + "^" + std::to_string(levels) +
                                            " in rank " + std::to_string(n) + " is too large");
  const auto modulus = static_cast<std::uint64_t>(modulus_big.get_ui());
  const std::vector<Block> blocks = jordan_blocks(lattice, p);
  for (const Block& b : blocks)
    if (b.size == 2 && modulus > (1u << 12))
      throw Error(ErrorKind::Unsupported, "2-adic block too large to count");

  std::vector<u128> dist(modulus, 0);
  dist[0] = 1;
  for (const Block& b : blocks) dist = convolve(dist, block_distribution(b, modulus));

  for (int k = 1; k <= levels; ++k) {
    const auto pk = static_cast<std::uint64_t>(power(p, static_cast<unsigned>(k)).get_ui());
    u128 count = 0;
    for (std::uint64_t v = static_cast<std::uint64_t>(mod(m, static_cast<std::int64_t>(pk))); v < modulus; v += pk)
      count += dist[v];
    Integer exact = from_u128(count);
    exact /= power(p, static_cast<unsigned>((levels - k) * n));
    report.approximations.emplace_back(k, Rational(exact) / Rational(power(p, static_cast<unsigned>(k * (n - 1)))));
  }
  for (std::size_t i = 0; i + 1 < report.approximations.size(); ++i) {
    if (report.approximations[i].first < report.k0) continue;
    if (report.approximations[i].second != report.approximations[i + 1].second) continue;
    const bool later_agree = std::all_of(report.approximations.begin() + static_cast<std::ptrdiff_t>(i),
                                         report.approximations.end(),
                                         [&](const auto& e) { return e.second == report.approximations[i].second; });
    if (later_agree) report.stabilized = report.approximations[i].second;
    break;
  }
  return report;
}

Rational siegel_product(const Lattice& lattice, std::int64_t m, std::int64_t prime_cutoff) {
  if (!lattice.is_positive_definite() || lattice.determinant() != 1)
    throw Error(ErrorKind::Unsupported, "the Euler tail is folded only for even unimodular definite lattices");
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 0");
  if (prime_cutoff < 2) throw Error(ErrorKind::InvalidArgument, "prime cutoff must be >= 2");
  if (m == 0) return 1;
  const int k = lattice.rank() / 2;
  const Rational bk = bernoulli(static_cast<unsigned>(k));
  const Rational sign = (k / 2 + 1) % 2 == 0 ? 1 : -1;
  Rational result = Rational(2 * k) * Rational(power(m, static_cast<unsigned>(k - 1))) / (sign * bk);
  for (std::int64_t p = 2; p <= std::max(prime_cutoff, m); ++p) {
    if (!is_prime(p)) continue;
    if (p <= prime_cutoff) {
      const Rational unramified = 1 - Rational(1) / Rational(power(p, static_cast<unsigned>(k)));
      result *= local_density(lattice, p, m).value() / unramified;
    } else if (m % p == 0) {
      Rational local = 0;
      const int v = valuation(Integer(static_cast<long>(m)), p);
      for (int j = 0; j <= v; ++j) local += Rational(1) / Rational(power(p, static_cast<unsigned>(j * (k - 1))));
      result *= local;
    }
  }
  return result;
}

}  // namespace cycletheta
