#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycletheta/rational.hpp"

namespace cycletheta {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct Signature {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Integral even quadratic lattice Z^n with bilinear form given by `gram`
/// and Q(x) = (x, x) / 2.
class Lattice {
 public:
  /// Validates the Gram matrix. Throws Error with kind NotSymmetric,
  /// NotEven or Degenerate, or InvalidArgument for a non-square input.
  static Lattice from_gram(IntMatrix gram);

  int rank() const { return static_cast<int>(gram_.size()); }
  const IntMatrix& gram() const { return gram_; }
  Signature signature() const { return signature_; }
  const Integer& determinant() const { return det_; }
  bool is_positive_definite() const { return signature_.positive == rank(); }

  std::int64_t inner(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;

 private:
  Lattice(IntMatrix gram, Signature sig, Integer det)
      : gram_(std::move(gram)), signature_(sig), det_(std::move(det)) {}

  IntMatrix gram_;
  Signature signature_;
  Integer det_;
};

Lattice new_lattice(IntMatrix gram);

/// Built-ins "A1", "A2", "A3", "D4", "E8", "U", "A1(-1)"; names joined with
/// '+' give orthogonal sums, e.g. "A1+A1".
Lattice named_lattice(std::string_view name);
const std::vector<std::string>& builtin_lattice_names();

Lattice direct_sum(const Lattice& a, const Lattice& b);

/// Exact inertia of a symmetric integer matrix by congruence
/// diagonalization over Q.
Signature exact_signature(const IntMatrix& gram);

/// Element of L∨/L, written in the basis of L with every coordinate in [0, 1).
struct Coset {
  std::vector<Rational> coords;

  bool is_zero() const;
  /// "(c1,c2,...)" with reduced fractions.
  std::string label() const;

  friend bool operator==(const Coset& a, const Coset& b) { return a.coords == b.coords; }
  friend bool operator<(const Coset& a, const Coset& b);
};

/// Reduces arbitrary rational coordinates modulo Z^n.
Coset reduce_coset(std::vector<Rational> coords);

struct CosetGenerator {
  Coset coset;
  std::int64_t order = 1;
};

/// The finite quadratic module L∨/L. Cosets are kept in ascending
/// lexicographic order of their canonical coordinates, so index 0 is the
/// zero coset.
class DiscriminantForm {
 public:
  explicit DiscriminantForm(const Lattice& lattice);

  std::int64_t order() const { return static_cast<std::int64_t>(cosets_.size()); }
  const std::vector<CosetGenerator>& generators() const { return generators_; }
  const std::vector<Coset>& cosets() const { return cosets_; }
  const IntMatrix& gram() const { return gram_; }
  int sig8() const { return sig8_; }
  /// Smallest N > 0 with N * q(λ) ∈ Z for every coset.
  std::int64_t level() const { return level_; }

  /// Throws InvalidArgument if `c` is not an element of L∨/L.
  std::size_t index_of(const Coset& c) const;
  const Rational& q(std::size_t i) const { return q_table_[i]; }
  const std::vector<Rational>& q_table() const { return q_table_; }
  std::size_t negate(std::size_t i) const { return negation_[i]; }
  std::size_t add(std::size_t i, std::size_t j) const;
  /// b(λ, μ) = Q(λ + μ) − Q(λ) − Q(μ) mod 1.
  Rational b(std::size_t i, std::size_t j) const;

 private:
  IntMatrix gram_;
  int sig8_ = 0;
  std::int64_t level_ = 1;
  std::vector<CosetGenerator> generators_;
  std::vector<Coset> cosets_;
  std::vector<Rational> q_table_;
  std::vector<std::size_t> negation_;
};

DiscriminantForm discriminant_form(const Lattice& lattice);

/// Quadratic value ½ xᵀGx of a rational vector, not reduced.
Rational quadratic_value(const IntMatrix& gram, std::span<const Rational> x);

Rational disc_b(const DiscriminantForm& df, const Coset& a, const Coset& b);

/// Σ_λ e(q(λ)).
std::complex<double> gauss_sum(const DiscriminantForm& df);

/// e(x) = exp(2πi x).
std::complex<double> unit_phase(const Rational& x);

}  // namespace cycletheta
