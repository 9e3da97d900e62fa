#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cycletheta {

struct VerificationCase {
  std::string descriptor;
  std::string lhs;
  std::string rhs;
  bool passed = false;
  /// "exact" or the numeric tolerance.
  std::string tolerance = "exact";
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCase> cases;

  std::size_t passed_count() const;
  std::size_t failed_count() const;
  /// False for an empty report.
  bool all_passed() const;
};

/// heegner_cycle(1, d mod 2, d).degree against hurwitz(d) for 0 < d <= d_max.
VerificationReport suite_volume_formula(std::int64_t d_max = 200);

/// E8: enumeration, siegel_product and the E4 coefficient 240σ₃(m), 0 <= m <= m_max.
VerificationReport suite_siegel_weil(std::int64_t m_max = 10);

/// r(t1)r(t2) = Σ_b r₂([[t1,b],[b,t2]]) for 0 <= t1, t2 <= t_max.
VerificationReport suite_cup_product(const std::string& lattice_name, std::int64_t t_max);
/// A2 and E8 with t_max = 4.
VerificationReport suite_cup_product();

/// Relations and Milgram on A1, A2, A3, D4, E8, U, A1(-1); theta
/// transformation on A1+A1, D4, E8 at τ = i, 2i.
VerificationReport suite_weilrep();

/// (N, r, d) ∈ {(1,0,4), (1,1,3), (1,1,23), (6,1,23), (5,2,4)}.
VerificationReport suite_orbit_cross_check();

/// The suites run by `verify --suite all`, in that order.
std::vector<VerificationReport> suite_all();

}  // namespace cycletheta
