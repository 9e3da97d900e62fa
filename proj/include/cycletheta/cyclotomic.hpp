#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cycletheta/rational.hpp"

namespace cycletheta {

/// Element of Q(ζ_N), ζ_N = e(1/N), stored in the power basis
/// 1, ζ, ..., ζ^{φ(N)-1} (reduced modulo the N-th cyclotomic polynomial), so
/// equality is exact coefficient comparison.
class Cyclotomic {
 public:
  explicit Cyclotomic(std::int64_t order);
  Cyclotomic(std::int64_t order, const Rational& value);

  /// ζ_N^k.
  static Cyclotomic zeta_power(std::int64_t order, std::int64_t k);
  /// e(x) for a rational x whose denominator divides the order.
  static Cyclotomic root_of_unity(std::int64_t order, const Rational& x);
  /// Positive real square root of a positive integer; the order must be a
  /// multiple of 8 and of 4·(odd part of the squarefree kernel).
  static Cyclotomic sqrt_integer(std::int64_t order, std::int64_t n);

  std::int64_t order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& r) const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  /// Complex conjugation ζ ↦ ζ^{-1}.
  Cyclotomic conj() const;

  std::complex<double> to_complex() const;
  /// If the element is r·ζ^k, returns true and sets (r, k) with 0 <= k < N
  /// chosen minimal.
  bool as_monomial(Rational& scale, std::int64_t& k) const;
  std::string to_string() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  Cyclotomic(std::int64_t order, std::vector<Rational> coeffs);
  void reduce_from(std::vector<Rational> full);

  std::int64_t order_;
  std::vector<Rational> coeffs_;
};

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t order);

}  // namespace cycletheta
