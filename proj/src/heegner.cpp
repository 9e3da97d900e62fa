#include "cycletheta/heegner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "cycletheta/error.hpp"

namespace cycletheta {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }
std::int64_t floor_div(std::int64_t a, std::int64_t n) { return (a - mod(a, n)) / n; }

const Mat2 kS{0, -1, 1, 0};
const Mat2 kT{1, 1, 0, 1};

void check_inputs(std::int64_t level, std::int64_t disc) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "level N must be >= 1");
  if (disc < 1) throw Error(ErrorKind::InvalidArgument, "d must be positive");
}

bool congruence_ok(std::int64_t level, std::int64_t residue, std::int64_t disc) {
  return mod(-disc - residue * residue, 4 * level) == 0;
}

// Normalized representative of (p : s) in P¹(Z/N): minimum over unit scalings.
std::pair<std::int64_t, std::int64_t> normalize_p1(std::int64_t p, std::int64_t s, std::int64_t level) {
  p = mod(p, level);
  s = mod(s, level);
  std::pair<std::int64_t, std::int64_t> best{p, s};
  for (std::int64_t u = 2; u < level; ++u) {
    if (std::gcd(u, level) != 1) continue;
    best = std::min(best, std::pair{(u * p) % level, (u * s) % level});
  }
  return best;
}

// Coset representatives R_j of SL₂(Z)/Γ₀(N) (first columns run over P¹(Z/N)),
// reached by left multiplication with S and T from the identity.
struct Transversal {
  std::vector<Mat2> reps;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;
};

Transversal build_transversal(std::int64_t level) {
  Transversal tr;
  auto key = [&](const Mat2& m) { return normalize_p1(m.p, m.s, level); };
  tr.reps.push_back(Mat2{});
  tr.index[key(Mat2{})] = 0;
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    const Mat2 cur = tr.reps[todo.front()];
    todo.pop();
    for (const Mat2& x : {kS, kT}) {
      const Mat2 next = x * cur;
      if (tr.index.emplace(key(next), tr.reps.size()).second) {
        tr.reps.push_back(next);
        todo.push(tr.reps.size() - 1);
      }
    }
  }
  return tr;
}

// Union-find over forms.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct FormHash {
  std::size_t operator()(const BinaryForm& f) const {
    std::size_t h = std::hash<std::int64_t>{}(f.a);
    h = h * 1000003u ^ std::hash<std::int64_t>{}(f.b);
    return h * 1000003u ^ std::hash<std::int64_t>{}(f.c);
  }
};

// (a, |b|, −sign(b), c): smaller is preferred as class representative.
auto representative_key(const BinaryForm& f) {
  const int sign = (f.b > 0) - (f.b < 0);
  return std::tuple{f.a, std::abs(f.b), -sign, f.c};
}

std::vector<Mat2> automorphs_small(const BinaryForm& f) {
  std::vector<Mat2> out;
  for (std::int64_t p = -1; p <= 1; ++p)
    for (std::int64_t q = -1; q <= 1; ++q)
      for (std::int64_t s = -1; s <= 1; ++s)
        for (std::int64_t t = -1; t <= 1; ++t) {
          const Mat2 m{p, q, s, t};
          if (m.det() == 1 && act(f, m) == f) out.push_back(m);
        }
  return out;
}

// g with f·g reduced, for positive definite f.
std::pair<BinaryForm, Mat2> reduce_with_matrix(BinaryForm f) {
  Mat2 g{};
  auto shift = [&](std::int64_t k) {
    const Mat2 tk{1, k, 0, 1};
    f = act(f, tk);
    g = g * tk;
  };
  auto swap = [&] {
    f = act(f, kS);
    g = g * kS;
  };
  while (true) {
    // Bring b into (−a, a].
    const std::int64_t k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) shift(k);
    if (f.c < f.a) {
      swap();
      continue;
    }
    if (f.c == f.a && f.b < 0) swap();
    return {f, g};
  }
}

std::vector<std::vector<BinaryForm>> classes_within(std::int64_t level, std::int64_t residue, std::int64_t disc,
                                                    std::int64_t bound, const std::vector<Mat2>& gens,
                                                    const Transversal& tr) {
  std::vector<BinaryForm> forms = forms_with_disc(level, residue, disc, bound);
  std::unordered_map<BinaryForm, std::size_t, FormHash> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(forms[i], i);
  auto node = [&](const BinaryForm& f) {
    auto [it, fresh] = index.emplace(f, forms.size());
    if (fresh) forms.push_back(f);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const std::size_t box = forms.size();
  for (std::size_t i = 0; i < box; ++i) {
    for (const Mat2& g : gens) {
      auto it = index.find(act(forms[i], g));
      if (it != index.end() && it->second < box) edges.emplace_back(i, it->second);
    }
  }
  if (level > 1) {
    // Paths inside a height box need not connect equivalent forms once
    // N >= 5, so every form is also joined to a seed y·R_j (y reduced) by
    // an explicit element of Γ₀(N), and seeds are joined through Aut(y).
    std::map<BinaryForm, std::vector<Mat2>> aut;
    for (std::size_t i = 0; i < box; ++i) {
      const BinaryForm f = forms[i];
      const auto [y, g] = reduce_with_matrix(f);
      const Mat2 k = g.inverse();
      const Mat2& rj = tr.reps[tr.index.at(normalize_p1(k.p, k.s, level))];
      const Mat2 gamma = rj.inverse() * k;
      const BinaryForm seed = act(y, rj);
      if (!gamma.in_gamma0(level) || act(seed, gamma) != f)
        throw Error(ErrorKind::MismatchDetected, "transport of " + f.to_string() + " failed");
      edges.emplace_back(i, node(seed));
      aut.try_emplace(y, automorphs_small(y));
    }
    for (const auto& [y, autos] : aut) {
      for (const Mat2& ri : tr.reps) {
        const BinaryForm from = act(y, ri);
        if (!from.satisfies_congruences(level, residue)) continue;
        for (const Mat2& a : autos) {
          const Mat2 ari = a * ri;
          const BinaryForm to = act(y, tr.reps[tr.index.at(normalize_p1(ari.p, ari.s, level))]);
          edges.emplace_back(node(from), node(to));
        }
      }
    }
  }
  DisjointSets sets(forms.size());
  for (auto [u, v] : edges) sets.unite(u, v);
  std::map<std::size_t, std::vector<BinaryForm>> groups;
  for (std::size_t i = 0; i < forms.size(); ++i) groups[sets.find(i)].push_back(forms[i]);
  std::vector<std::vector<BinaryForm>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

Mat2 lift_p1(std::int64_t p, std::int64_t s, std::int64_t level) {
  // Lift (p : s) to a matrix in SL₂(Z) with first column ≡ (p, s) mod N.
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t pp = p + k * level;
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1, a = pp, b = s;
    while (b != 0) {
      const std::int64_t qt = a / b;
      std::tie(a, b) = std::pair{b, a - qt * b};
      std::tie(x0, x1) = std::pair{x1, x0 - qt * x1};
      std::tie(y0, y1) = std::pair{y1, y0 - qt * y1};
    }
    if (a == 1 || a == -1) {
      // x0·pp + y0·s = a = ±1; the matrix [[pp, −y0·a], [s, x0·a]] has det 1.
      return Mat2{pp, -y0 * a, s, x0 * a};
    }
    if (pp == 0 && s == 0) return Mat2{};
  }
}

}  // namespace

std::int64_t BinaryForm::height() const { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }

bool BinaryForm::satisfies_congruences(std::int64_t level, std::int64_t residue) const {
  return mod(a, level) == 0 && mod(b - residue, 2 * level) == 0;
}

std::string BinaryForm::to_string() const {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {p * o.p + q * o.s, p * o.q + q * o.t, s * o.p + t * o.s, s * o.q + t * o.t};
}

Mat2 Mat2::inverse() const { return {t, -q, -s, p}; }

bool Mat2::in_gamma0(std::int64_t level) const { return mod(s, level) == 0; }

BinaryForm act(const BinaryForm& f, const Mat2& g) {
  auto value = [&](std::int64_t x, std::int64_t y) { return f.a * x * x + f.b * x * y + f.c * y * y; };
  return {value(g.p, g.s), 2 * f.a * g.p * g.q + f.b * (g.p * g.t + g.q * g.s) + 2 * f.c * g.s * g.t,
          value(g.q, g.t)};
}

std::complex<double> CMPoint::approx() const {
  const double re = -static_cast<double>(b) / (2.0 * static_cast<double>(a));
  const double im = std::sqrt(static_cast<double>(d)) / (2.0 * static_cast<double>(a));
  return {re, im};
}

std::vector<BinaryForm> forms_with_disc(std::int64_t level, std::int64_t residue, std::int64_t disc,
                                        std::int64_t height_bound) {
  check_inputs(level, disc);
  std::vector<BinaryForm> out;
  if (!congruence_ok(level, residue, disc)) return out;
  const std::int64_t r = mod(residue, 2 * level);
  for (std::int64_t a = level; a <= height_bound; a += level) {
    std::int64_t b = -height_bound + mod(r + height_bound, 2 * level);
    for (; b <= height_bound; b += 2 * level) {
      const std::int64_t num = b * b + disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c <= height_bound) out.push_back({a, b, c});
    }
  }
  return out;
}

std::vector<Mat2> gamma0_generators(std::int64_t level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "level N must be >= 1");
  const Transversal tr = build_transversal(level);
  std::vector<Mat2> gens;
  for (const Mat2& r : tr.reps) {
    for (const Mat2& x : {kS, kT}) {
      const Mat2 xr = x * r;
      const Mat2& rj = tr.reps[tr.index.at(normalize_p1(xr.p, xr.s, level))];
      const Mat2 g = rj.inverse() * xr;
      const bool trivial = (g == Mat2{}) || (g == Mat2{-1, 0, 0, -1});
      if (!trivial && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
  }
  return gens;
}

int stabilizer_order(const BinaryForm& f, std::int64_t level) {
  const std::int64_t g = std::gcd(std::gcd(std::abs(f.a), std::abs(f.b)), std::abs(f.c));
  const BinaryForm prim{f.a / g, f.b / g, f.c / g};
  const std::int64_t d = -prim.discriminant();
  int count = 0;
  for (std::int64_t u = -2; u <= 2; ++u) {
    const std::int64_t rest = 4 - d * u * u;
    if (rest < 0) continue;
    const auto t0 = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (t0 * t0 != rest) continue;
    const int solutions = t0 == 0 ? 1 : 2;
    // lower-left entry of the automorph is a·u
    if (mod(prim.a * u, level) == 0) count += solutions;
  }
  return count;
}

std::vector<BinaryForm> reduced_forms(std::int64_t disc) {
  std::vector<BinaryForm> out;
  for (std::int64_t a = 1; 3 * a * a <= disc; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

std::vector<FormClass> gamma0_classes(std::int64_t level, std::int64_t residue, std::int64_t disc) {
  check_inputs(level, disc);
  std::vector<FormClass> out;
  if (!congruence_ok(level, residue, disc)) return out;

  // Every class contains y·R_j for a reduced y and a coset representative R_j,
  // so this height already meets every class.
  const Transversal tr = build_transversal(level);
  std::int64_t bound = disc;
  for (const BinaryForm& y : reduced_forms(disc))
    for (const Mat2& r : tr.reps) {
      const BinaryForm f = act(y, r);
      if (f.satisfies_congruences(level, residue)) bound = std::max(bound, f.height());
    }

  const std::vector<Mat2> gens = gamma0_generators(level);
  constexpr int kMaxDoublings = 10;
  auto classes = classes_within(level, residue, disc, bound, gens, tr);
  int stable_rounds = 0;
  for (int round = 0; round < kMaxDoublings && stable_rounds < 2; ++round) {
    bound *= 2;
    auto next = classes_within(level, residue, disc, bound, gens, tr);
    stable_rounds = next.size() == classes.size() ? stable_rounds + 1 : 0;
    classes = std::move(next);
  }
  if (stable_rounds < 2)
    throw Error(ErrorKind::BoundNotStabilized, "class count for (N, r, d) = (" + std::to_string(level) + ", " +
                                                   std::to_string(residue) + ", " + std::to_string(disc) +
                                                   ") still changing at height " + std::to_string(bound));
  for (const auto& members : classes) {
    const BinaryForm rep = *std::min_element(members.begin(), members.end(), [](const auto& x, const auto& y) {
      return representative_key(x) < representative_key(y);
    });
    out.push_back({rep, stabilizer_order(rep, level)});
  }
  std::sort(out.begin(), out.end(), [](const FormClass& x, const FormClass& y) {
    return representative_key(x.representative) < representative_key(y.representative);
  });
  return out;
}

HeegnerCycle heegner_cycle(std::int64_t level, std::int64_t residue, std::int64_t disc) {
  check_inputs(level, disc);
  HeegnerCycle cycle{level, mod(residue, 2 * level), disc, {}, Rational(0)};
  if (!congruence_ok(level, residue, disc)) return cycle;
  std::vector<std::int64_t> residues{mod(residue, 2 * level)};
  if (mod(-residue, 2 * level) != residues.front()) residues.push_back(mod(-residue, 2 * level));
  for (std::int64_t r : residues) {
    for (const FormClass& cls : gamma0_classes(level, r, disc)) {
      const BinaryForm& f = cls.representative;
      cycle.points.push_back({CMPoint{f.a, f.b, disc}, cls.multiplicity(), f, cls.stabilizer_order, r});
      cycle.degree += cls.multiplicity();
    }
  }
  return cycle;
}

std::string OrbitKey::to_string() const {
  return reduced.to_string() + "@(" + std::to_string(column_top) + ":" + std::to_string(column_bottom) + ")";
}

OrbitKey orbit_key(const BinaryForm& positive_form, std::int64_t level) {
  if (positive_form.a <= 0 || positive_form.discriminant() >= 0)
    throw Error(ErrorKind::InvalidArgument, "orbit_key needs a positive definite form");
  auto [reduced, g] = reduce_with_matrix(positive_form);
  const Mat2 k = g.inverse();  // positive_form = reduced · k
  std::pair<std::int64_t, std::int64_t> best{level, level};
  for (const Mat2& s : automorphs_small(reduced)) {
    const Mat2 sk = s * k;
    best = std::min(best, normalize_p1(sk.p, sk.s, level));
  }
  return {reduced, best.first, best.second};
}

void OrbitCrossCheck::throw_if_mismatch() const {
  if (!match)
    throw Error(ErrorKind::MismatchDetected, discrepancies.empty() ? std::string("multisets differ") : discrepancies.front());
}

OrbitCrossCheck orbit_cross_check(std::int64_t level, std::int64_t residue, std::int64_t disc) {
  check_inputs(level, disc);
  OrbitCrossCheck report;
  report.level = level;
  report.residue = mod(residue, 2 * level);
  report.disc = disc;
  const std::int64_t r_plus = report.residue, r_minus = mod(-residue, 2 * level);

  // Orbit route. An orbit of x is determined by a reduced y, a sign and a
  // point of P¹(Z/N) up to Aut(y); x = [[b, 2c], [−2a, −b]] lies in
  // supp φ_{N,r} iff b ≡ r mod 2N, 2a ≡ 0 mod 2N and 2c ≡ 0 mod 2.
  std::vector<std::pair<std::int64_t, std::int64_t>> p1;
  for (std::int64_t p = 0; p < level; ++p)
    for (std::int64_t s = 0; s < level; ++s)
      if (std::gcd(std::gcd(p, s), level) == 1) {
        auto n = normalize_p1(p, s, level);
        if (std::find(p1.begin(), p1.end(), n) == p1.end()) p1.push_back(n);
      }
  if (level == 1) p1 = {{0, 0}};
  for (const BinaryForm& y : reduced_forms(disc)) {
    const auto aut = automorphs_small(y);
    std::vector<std::pair<std::int64_t, std::int64_t>> seen;
    for (auto [p, s] : p1) {
      const Mat2 k = lift_p1(p, s, level);
      std::pair<std::int64_t, std::int64_t> canon{level, level};
      for (const Mat2& a : aut) {
        const Mat2 ak = a * k;
        canon = std::min(canon, normalize_p1(ak.p, ak.s, level));
      }
      if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
      seen.push_back(canon);
      int stab = 0;
      for (const Mat2& a : aut)
        if ((k.inverse() * a * k).in_gamma0(level)) ++stab;
      const BinaryForm pos = act(y, k);
      for (int sign : {1, -1}) {
        const std::int64_t a = sign * pos.a, b = sign * pos.b, c = sign * pos.c;
        const std::int64_t alpha = 2 * a, beta = b, gamma = 2 * c;
        const bool in_support = mod(beta - r_plus, 2 * level) == 0 && mod(alpha, 2 * level) == 0 && mod(gamma, 2) == 0;
        if (!in_support) continue;
        // D_x^+ is the root of the positive form ±y; negative forms land in Q⁺_{N,−r}.
        report.orbit_route.push_back({sign == 1 ? r_plus : r_minus, OrbitKey{y, canon.first, canon.second},
                                      make_rational(2, stab)});
      }
    }
  }

  // Forms route.
  if (congruence_ok(level, residue, disc)) {
    for (std::int64_t r : {r_plus, r_minus})
      for (const FormClass& cls : gamma0_classes(level, r, disc))
        report.forms_route.push_back({r, orbit_key(cls.representative, level), cls.multiplicity()});
  }

  auto order = [](const OrbitEntry& x, const OrbitEntry& y) {
    return std::tie(x.residue, x.key) < std::tie(y.residue, y.key) ||
           (std::tie(x.residue, x.key) == std::tie(y.residue, y.key) && x.multiplicity < y.multiplicity);
  };
  std::sort(report.orbit_route.begin(), report.orbit_route.end(), order);
  std::sort(report.forms_route.begin(), report.forms_route.end(), order);
  report.match = report.orbit_route == report.forms_route;
  if (!report.match) {
    std::size_t i = 0;
    while (i < report.orbit_route.size() && i < report.forms_route.size() &&
           report.orbit_route[i] == report.forms_route[i])
      ++i;
    auto describe = [](const std::vector<OrbitEntry>& v, std::size_t j) {
      if (j >= v.size()) return std::string("<none>");
      return "r=" + std::to_string(v[j].residue) + " " + v[j].key.to_string() + " mult " + to_string(v[j].multiplicity);
    };
    report.discrepancies.push_back("orbit route " + describe(report.orbit_route, i) + " vs forms route " +
                                   describe(report.forms_route, i));
  }
  return report;
}

}  // namespace cycletheta
