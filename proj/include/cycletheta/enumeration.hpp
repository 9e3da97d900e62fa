#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cycletheta/quadlattice.hpp"
#include "cycletheta/rational.hpp"

namespace cycletheta {

/// A vector of μ + L written as numerators / denominator in the basis of L.
/// All vectors of one coset share the same denominator.
struct LatticeVector {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  Rational coordinate(std::size_t i) const { return make_rational(numerators[i], denominator); }
  std::string to_string() const;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.numerators < b.numerators; }
};

/// All x ∈ μ + L with Q(x) = m, sorted lexicographically. Throws
/// NotPositiveDefinite for indefinite or negative lattices.
std::vector<LatticeVector> vectors_with_norm(const Lattice& lattice, const Coset& coset, const Rational& m);

Integer rep_number(const Lattice& lattice, const Coset& coset, const Rational& m);

struct QSeriesComponent {
  Coset coset;
  /// exponent -> coefficient; every exponent of the progression below the
  /// truncation is present, including zero coefficients.
  std::map<Rational, Rational> coefficients;
};

/// Exact Fourier expansion Σ_λ Σ_m c_λ(m) q^m e_λ, complete for m < truncation.
struct VectorValuedQSeries {
  Rational weight;
  std::int64_t level_denominator = 1;
  std::vector<QSeriesComponent> components;
  Rational truncation;

  /// One line per component: `coset=<label>: c0*q^(e0) + c1*q^(e1) + ...`.
  std::string to_text() const;
  /// Evaluates every component at τ from the stored coefficients.
  std::vector<std::complex<double>> evaluate(std::complex<double> tau) const;
};

/// Theta series of a positive definite lattice, one component per coset of
/// L∨/L in canonical order.
VectorValuedQSeries theta_qseries(const Lattice& lattice, const Rational& truncation);

/// Symmetric 2×2 matrix T = ((t11, t12), (t12, t22)) with rational entries.
struct Matrix2 {
  Rational t11, t12, t22;

  bool is_positive_semidefinite() const;
  std::string to_string() const;
};

struct Genus2Coefficient {
  Matrix2 t;
  Integer count;
};

/// Number of ordered pairs (x1, x2) ∈ (μ1 + L) × (μ2 + L) with
/// ½((x_i, x_j)) = T. Zero whenever T is not positive semidefinite.
Integer rep_number_genus2(const Lattice& lattice, const Coset& mu1, const Coset& mu2, const Matrix2& t);

/// For fixed diagonal (t1, t2), the counts for every off-diagonal value b
/// that occurs, gathered in a single pass over the pairs.
std::vector<Genus2Coefficient> genus2_coefficients(const Lattice& lattice, const Coset& mu1, const Coset& mu2,
                                                   const Rational& t1, const Rational& t2);

}  // namespace cycletheta
