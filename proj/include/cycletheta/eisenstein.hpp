#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycletheta/quadlattice.hpp"
#include "cycletheta/rational.hpp"

namespace cycletheta {

/// Scalar q-expansion Σ_{n < size} c_n qⁿ.
struct QSeries {
  std::vector<Rational> coefficients;

  /// "1 + 240q + 2160q^2"; zero terms are skipped.
  std::string to_text() const;
  /// Product truncated to the shorter length.
  QSeries operator*(const QSeries& other) const;
};

struct HurwitzTable {
  std::map<std::int64_t, Rational> values;
  std::int64_t d_max = 0;
};

/// H(d) from SL₂(Z)-reduced forms of discriminant −d, weights ½ for [a,0,a],
/// ⅓ for [a,a,a]. H(0) = −1/12, and 0 when d ≢ 0, 3 mod 4 or d < 0.
Rational hurwitz(std::int64_t d);
HurwitzTable hurwitz_table(std::int64_t d_max);
QSeries hurwitz_series(std::int64_t max_terms);

/// h(−d): number of primitive reduced forms of discriminant −d.
std::int64_t class_number(std::int64_t d);

std::int64_t sigma(std::int64_t k, std::int64_t n);
Integer sigma_big(unsigned k, std::int64_t n);

/// Bernoulli number B_n with B_1 = −1/2.
Rational bernoulli(unsigned n);

/// E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ for n < max_terms. Throws
/// UnsupportedWeight unless k is even and >= 4.
QSeries eisenstein_k(int k, std::int64_t max_terms);

/// Kronecker symbol (a/n).
int kronecker(std::int64_t a, std::int64_t n);

/// n = D f² with D a fundamental discriminant (D = 1 for squares). n must be
/// nonzero and ≡ 0, 1 mod 4.
std::pair<std::int64_t, std::int64_t> fundamental_part(std::int64_t n);

/// B_{n,χ_D} = f^{n−1} Σ_{a=1}^{f} χ_D(a) B_n(a/f), f = |D|.
Rational generalized_bernoulli(unsigned n, std::int64_t disc);

/// Cohen's H(s, N): for (−1)^s N = D f²,
///   L(1−s, χ_D) Σ_{d | f} μ(d) χ_D(d) d^{s−1} σ_{2s−1}(f/d),
/// with L(1−s, χ_D) = −B_{s,χ_D}/s; H(s, 0) = ζ(1−2s). H(1, N) = H(N).
Rational cohen_number(int s, std::int64_t n);
QSeries cohen(int s, std::int64_t max_terms);

struct LocalDensityReport {
  std::int64_t p = 2;
  Rational m;
  /// 2·ord_p(2m·det) + 2.
  int k0 = 2;
  std::vector<std::pair<int, Rational>> approximations;
  std::optional<Rational> stabilized;

  /// Throws NotStabilized when no stabilized value was found.
  const Rational& value() const;
};

/// α_p at the levels k = 1..max_level from exact counts of x mod p^k with
/// Q(x) ≡ m. max_level 0 means k0 + 1.
LocalDensityReport local_density(const Lattice& lattice, std::int64_t p, std::int64_t m, int max_level = 0);

/// Siegel product for an even unimodular positive definite lattice of rank
/// 2k: densities are counted for p <= prime_cutoff and folded with ζ(k) into
/// 2k m^{k−1} / ((−1)^{k/2+1} B_k); unramified primes above the cutoff use
/// their closed local factor. Throws Unsupported for any other lattice.
Rational siegel_product(const Lattice& lattice, std::int64_t m, std::int64_t prime_cutoff = 5);

bool is_prime(std::int64_t n);

}  // namespace cycletheta
