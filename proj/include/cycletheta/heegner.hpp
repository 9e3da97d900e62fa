#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cycletheta/rational.hpp"

namespace cycletheta {

/// Integral binary quadratic form [a, b, c] = a x² + b xy + c y².
struct BinaryForm {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t height() const;
  /// Membership in Q_{N,r,d}: a ≡ 0 mod N and b ≡ r mod 2N.
  bool satisfies_congruences(std::int64_t level, std::int64_t residue) const;
  std::string to_string() const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

/// 2×2 integer matrix [[p, q], [s, t]].
struct Mat2 {
  std::int64_t p = 1, q = 0, s = 0, t = 1;

  Mat2 operator*(const Mat2& o) const;
  /// Inverse of a determinant-one matrix.
  Mat2 inverse() const;
  std::int64_t det() const { return p * t - q * s; }
  bool in_gamma0(std::int64_t level) const;

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Right action f·g = ᵗg f g on the symmetric matrix of f.
BinaryForm act(const BinaryForm& f, const Mat2& g);

/// Root z = (−b + i√d)/(2a) of a z² + b z + c for a > 0, kept exactly as
/// (a, b, d).
struct CMPoint {
  std::int64_t a = 0, b = 0, d = 0;

  std::complex<double> approx() const;
};

struct FormClass {
  BinaryForm representative;
  /// Order of the stabilizer in Γ₀(N), ±1 included; this is 2·e_x.
  int stabilizer_order = 2;

  Rational multiplicity() const { return make_rational(2, stabilizer_order); }
};

struct HeegnerPoint {
  CMPoint point;
  Rational multiplicity;
  BinaryForm representative;
  int stabilizer_order = 2;
  /// Residue class mod 2N of the representative's b.
  std::int64_t residue = 0;
};

/// Weighted 0-cycle Z(d, φ_{N,r}) on X₀(N).
struct HeegnerCycle {
  std::int64_t level = 1, residue = 0, disc = 0;
  std::vector<HeegnerPoint> points;
  Rational degree;
};

/// Q⁺_{N,r,d} restricted to forms with max(|a|, |b|, |c|) <= height_bound,
/// sorted by (a, b, c).
std::vector<BinaryForm> forms_with_disc(std::int64_t level, std::int64_t residue, std::int64_t disc,
                                        std::int64_t height_bound);

/// Generators of Γ₀(N) obtained from S and T by the Schreier construction on
/// the cosets SL₂(Z)/Γ₀(N).
std::vector<Mat2> gamma0_generators(std::int64_t level);

/// Order of the stabilizer of f in Γ₀(N) from the automorphs
/// ((t − bu)/2, −cu; au, (t + bu)/2) with t² + |disc'|u² = 4.
int stabilizer_order(const BinaryForm& f, std::int64_t level);

/// One representative per Γ₀(N)-class of Q⁺_{N,r,d}, by union-find over
/// bounded-height forms under gamma0_generators with the bound doubled until
/// the class count is unchanged over two doublings. Empty when
/// −d ≢ r² mod 4N. Throws BoundNotStabilized.
std::vector<FormClass> gamma0_classes(std::int64_t level, std::int64_t residue, std::int64_t disc);

/// Z(d, φ_{N,r}) = P_{−d,r} + P_{−d,−r} if −d ≡ r² mod 4N, else 0. When
/// r ≡ −r mod 2N the two sets coincide and are counted once.
HeegnerCycle heegner_cycle(std::int64_t level, std::int64_t residue, std::int64_t disc);

/// Γ₀(N)-orbit invariant of a positive definite form: its SL₂(Z)-reduced
/// form and the double coset Aut·k·Γ₀(N) of the reducing matrix, written as
/// a normalized point of P¹(Z/N).
struct OrbitKey {
  BinaryForm reduced;
  std::int64_t column_top = 0, column_bottom = 0;

  std::string to_string() const;
  friend bool operator==(const OrbitKey&, const OrbitKey&) = default;
  friend auto operator<=>(const OrbitKey&, const OrbitKey&) = default;
};

OrbitKey orbit_key(const BinaryForm& positive_form, std::int64_t level);

struct OrbitEntry {
  std::int64_t residue = 0;
  OrbitKey key;
  Rational multiplicity;

  friend bool operator==(const OrbitEntry&, const OrbitEntry&) = default;
};

struct OrbitCrossCheck {
  std::int64_t level = 1, residue = 0, disc = 0;
  /// x ∈ L∨ ∩ Ω_d(Q) ∩ supp φ_{N,r} modulo Γ, from reduction theory.
  std::vector<OrbitEntry> orbit_route;
  /// P_{−d,r} ⊎ P_{−d,−r} from gamma0_classes.
  std::vector<OrbitEntry> forms_route;
  bool match = false;
  std::vector<std::string> discrepancies;

  /// Throws MismatchDetected with the first differing class.
  void throw_if_mismatch() const;
};

OrbitCrossCheck orbit_cross_check(std::int64_t level, std::int64_t residue, std::int64_t disc);

/// SL₂(Z)-reduced positive definite forms of discriminant −disc, primitive
/// or not: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
std::vector<BinaryForm> reduced_forms(std::int64_t disc);

}  // namespace cycletheta
