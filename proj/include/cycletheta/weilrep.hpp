#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "cycletheta/cyclotomic.hpp"
#include "cycletheta/enumeration.hpp"
#include "cycletheta/quadlattice.hpp"

namespace cycletheta {

/// Matrix of ρ_L(γ) in the canonical coset ordering. The value is
/// entries / sqrt(discriminant)^sqrt_power with entries in Q(ζ_field_order)
/// and sqrt_power ∈ {0, 1}.
struct WeilRepMatrix {
  std::string generator_word;
  std::int64_t field_order = 1;
  std::int64_t discriminant = 1;
  int sqrt_power = 0;
  std::vector<std::vector<Cyclotomic>> entries;

  std::size_t size() const { return entries.size(); }
  std::complex<double> value(std::size_t i, std::size_t j) const;
  /// Entry rendered as `(a/b)*zeta^k / sqrt(D)` when it is a monomial.
  std::string entry_text(std::size_t i, std::size_t j) const;
};

struct RelationCheck {
  std::string name;
  bool passed = false;
};

struct RelationReport {
  std::vector<RelationCheck> checks;

  bool all_passed() const;
  /// Throws RelationViolated naming the first failed relation.
  void throw_if_failed() const;
};

/// Finite Weil representation on C[L∨/L]:
///   ρ(T) e_λ = e(q(λ)) e_λ,
///   ρ(S) e_λ = e(−sig/8) / sqrt|D| Σ_μ e(−b(λ, μ)) e_μ.
class WeilRepresentation {
 public:
  explicit WeilRepresentation(DiscriminantForm df);

  const DiscriminantForm& form() const { return df_; }
  std::int64_t field_order() const { return field_order_; }

  WeilRepMatrix identity() const;
  WeilRepMatrix t() const;
  WeilRepMatrix s() const;
  /// Word over {S, T, S^-1, T^-1}; inverses may also be written s, t or S⁻¹.
  /// Letters multiply left to right.
  WeilRepMatrix word(std::string_view word) const;

  WeilRepMatrix multiply(const WeilRepMatrix& a, const WeilRepMatrix& b) const;
  WeilRepMatrix conjugate_transpose(const WeilRepMatrix& a) const;
  /// Entrywise complex conjugate: the dual representation ρ∨.
  WeilRepMatrix dual(const WeilRepMatrix& a) const;
  /// c · P where P is the permutation e_λ ↦ e_{−λ}.
  WeilRepMatrix scaled_negation(const Cyclotomic& c) const;
  bool equal(const WeilRepMatrix& a, const WeilRepMatrix& b) const;

  /// Unitarity of ρ(S) and ρ(T), (ρ(S)ρ(T))³ = ρ(S)², ρ(S)² = e(−sig/4)·P.
  RelationReport verify_relations() const;

 private:
  WeilRepMatrix blank(std::string word, int sqrt_power) const;
  Cyclotomic zero() const { return Cyclotomic(field_order_); }

  DiscriminantForm df_;
  std::int64_t field_order_;
  Cyclotomic sqrt_disc_;
};

WeilRepMatrix rho_T(const DiscriminantForm& df);
WeilRepMatrix rho_S(const DiscriminantForm& df);
WeilRepMatrix rho_word(const DiscriminantForm& df, std::string_view word);
RelationReport verify_relations(const DiscriminantForm& df);

enum class Generator { S, T };

struct ThetaTransformResult {
  double residual = 0.0;
  /// Upper bound for the truncation error contained in the residual.
  double tail_bound = 0.0;
};

/// max_λ |θ_λ(γτ) − j(γ,τ)^rank (ρ_L(γ)θ)_λ(τ)| from the series truncated at
/// `truncation`, with j(γ,τ)² = cτ + d (principal branch for odd rank).
/// Throws InsufficientTruncation if the tail bound is not below 1e-12.
ThetaTransformResult theta_transform_check(const Lattice& lattice, Generator generator, std::complex<double> tau,
                                           const Rational& truncation);

/// Bound on Σ_{m >= truncation} r_λ(m) e^{-2π m y}, maximized over cosets, using
/// the ellipsoid point count of the Cholesky decomposition.
double theta_tail_bound(const Lattice& lattice, const Rational& truncation, double im_tau);

}  // namespace cycletheta
