#pragma once

// Short-vector enumeration in a coset μ + L of a positive definite lattice.
// Floating point only proposes candidates: every interval is widened by a
// safety margin and each emitted vector carries its exact integer norm, so
// callers filter exactly.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "cycletheta/error.hpp"
#include "cycletheta/quadlattice.hpp"

namespace cycletheta::detail {

class CosetEnumerator {
 public:
  CosetEnumerator(const Lattice& lattice, const Coset& coset) : gram_(lattice.gram()), n_(lattice.rank()) {
    if (!lattice.is_positive_definite())
      throw Error(ErrorKind::NotPositiveDefinite, "vector enumeration needs a positive definite lattice");
    Integer den = 1;
    for (const auto& c : coset.coords) {
      Integer d = c.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    den_ = to_int64(den);
    for (const auto& c : coset.coords) {
      shift_.push_back(c.get_d());
      offset_.push_back(to_int64(Rational(c * den_)));
    }
    // q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)^2 summed over i equals ½ xᵀGx.
    q_.assign(n_, std::vector<double>(n_, 0.0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) q_[i][j] = 0.5 * static_cast<double>(gram_[i][j]);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (int k = i + 1; k < n_; ++k)
        for (int l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
  }

  std::int64_t denominator() const { return den_; }

  /// Upper bound on the number of coset vectors with Q(x) <= m: each
  /// coordinate ranges over an interval of length 2·sqrt(m / q_ii).
  double count_bound(double m) const {
    double b = 1.0;
    for (int i = 0; i < n_; ++i) b *= 2.0 * std::sqrt(std::max(m, 0.0) / q_[i][i]) + 1.0;
    return b;
  }

  /// Exact value wᵀGw for scaled numerators w = den·x.
  std::int64_t scaled_norm(std::span<const std::int64_t> w) const {
    std::int64_t s = 0;
    for (int i = 0; i < n_; ++i) {
      std::int64_t row = 0;
      for (int j = 0; j < n_; ++j) row += gram_[i][j] * w[j];
      s += w[i] * row;
    }
    return s;
  }

  /// Calls f(w, wᵀGw) for every x in the coset with Q(x) <= bound, where
  /// w = den·x. Q(x) = wᵀGw / (2 den²).
  template <class F>
  void for_each(double bound, F&& f) const {
    if (bound < 0) return;
    std::vector<double> x(n_, 0.0);
    std::vector<std::int64_t> w(n_, 0);
    const double slack = 1e-9 * (1.0 + bound);
    recurse(n_ - 1, bound + slack, slack, x, w, f);
  }

 private:
  template <class F>
  void recurse(int i, double remaining, double slack, std::vector<double>& x, std::vector<std::int64_t>& w,
               F& f) const {
    double center = 0.0;
    for (int j = i + 1; j < n_; ++j) center -= q_[i][j] * x[j];
    const double width = std::sqrt(std::max(remaining, 0.0) / q_[i][i]);
    const double eps = 1e-7 * (1.0 + std::abs(center) + width);
    const auto lo = static_cast<std::int64_t>(std::ceil(center - width - shift_[i] - eps));
    const auto hi = static_cast<std::int64_t>(std::floor(center + width - shift_[i] + eps));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = static_cast<double>(v) + shift_[i];
      const double d = x[i] - center;
      const double used = q_[i][i] * d * d;
      if (used > remaining + slack) continue;
      w[i] = den_ * v + offset_[i];
      if (i == 0) {
        f(std::span<const std::int64_t>(w), scaled_norm(w));
      } else {
        recurse(i - 1, remaining - used, slack, x, w, f);
      }
    }
  }

  IntMatrix gram_;
  int n_;
  std::int64_t den_ = 1;
  std::vector<double> shift_;
  std::vector<std::int64_t> offset_;
  std::vector<std::vector<double>> q_;
};

}  // namespace cycletheta::detail
