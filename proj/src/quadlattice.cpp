#include "cycletheta/quadlattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cycletheta/error.hpp"

namespace cycletheta {
namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) r[i].emplace_back(static_cast<long>(v));
  return r;
}

Integer exact_determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto v : m[i]) a[i].emplace_back(static_cast<long>(v));
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Smith normal form U·G·V = diag(d); only V and d are needed.
struct SmithResult {
  std::vector<Integer> diagonal;
  std::vector<std::vector<Integer>> v;
};

SmithResult smith_normal_form(const IntMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  std::vector<std::vector<Integer>> v(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(g[i][j]);
    v[i][i] = 1;
  }
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a[i][c1], a[i][c2]);
      std::swap(v[i][c1], v[i][c2]);
    }
  };
  // col c2 -= f * col c1
  auto col_op = [&](std::size_t c2, std::size_t c1, const Integer& f) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i][c2] -= f * a[i][c1];
      v[i][c2] -= f * v[i][c1];
    }
  };
  auto row_op = [&](std::size_t r2, std::size_t r1, const Integer& f) {
    for (std::size_t j = 0; j < n; ++j) a[r2][j] -= f * a[r1][j];
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block moves to (t, t).
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == n) break;
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        Integer f = a[i][t] / a[t][t];
        if (f != 0) row_op(i, t, f);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer f = a[t][j] / a[t][t];
        if (f != 0) col_op(j, t, f);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility chain: fold an offending row into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_op(t, i, -1);
            divides = false;
          }
      if (divides) break;
    }
  }
  SmithResult out;
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(abs(a[i][i]));
  out.v = std::move(v);
  return out;
}

}  // namespace

Signature exact_signature(const IntMatrix& gram) {
  RationalMatrix a = to_rational(gram);
  const std::size_t n = a.size();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][p] == 0) ++p;
      if (p < n) {
        std::swap(a[k], a[p]);
        for (auto& row : a) std::swap(row[k], row[p]);
      } else {
        std::size_t q = k + 1;
        while (q < n && a[k][q] == 0) ++q;
        if (q == n) continue;  // zero row: degenerate direction
        // e_k <- e_k + e_q makes the pivot 2·a_kq ≠ 0.
        for (std::size_t j = 0; j < n; ++j) a[k][j] += a[q][j];
        for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][q];
      }
    }
    const Rational pivot = a[k][k];
    if (pivot > 0) ++sig.positive; else ++sig.negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / pivot;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
    }
  }
  return sig;
}

Lattice Lattice::from_gram(IntMatrix gram) {
  const std::size_t n = gram.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Gram matrix is empty");
  for (const auto& row : gram)
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i])
        throw Error(ErrorKind::NotSymmetric, "gram[" + std::to_string(i) + "][" + std::to_string(j) +
                                                 "] != gram[" + std::to_string(j) + "][" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i][i] % 2 != 0)
      throw Error(ErrorKind::NotEven, "diagonal entry gram[" + std::to_string(i) + "][" + std::to_string(i) +
                                          "] = " + std::to_string(gram[i][i]) + " is odd");
  Integer det = exact_determinant(gram);
  if (det == 0) throw Error(ErrorKind::Degenerate, "det(gram) = 0");
  Signature sig = exact_signature(gram);
  return Lattice(std::move(gram), sig, std::move(det));
}

Lattice new_lattice(IntMatrix gram) { return Lattice::from_gram(std::move(gram)); }

std::int64_t Lattice::inner(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
  std::int64_t s = 0;
  for (int i = 0; i < rank(); ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < rank(); ++j) row += gram_[i][j] * y[j];
    s += x[i] * row;
  }
  return s;
}

const std::vector<std::string>& builtin_lattice_names() {
  static const std::vector<std::string> names{"A1", "A2", "A3", "D4", "E8", "U", "A1(-1)"};
  return names;
}

namespace {

IntMatrix builtin_gram(std::string_view name) {
  if (name == "A1") return {{2}};
  if (name == "A1(-1)") return {{-2}};
  if (name == "A2") return {{2, -1}, {-1, 2}};
  if (name == "A3") return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (name == "D4") return {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
  if (name == "U") return {{0, 1}, {1, 0}};
  if (name == "E8")
    return {{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
            {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
            {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2}};
  throw Error(ErrorKind::InvalidArgument, "unknown lattice name '" + std::string(name) + "'");
}

}  // namespace

Lattice named_lattice(std::string_view name) {
  auto plus = name.find('+');
  if (plus == std::string_view::npos) return Lattice::from_gram(builtin_gram(name));
  return direct_sum(named_lattice(name.substr(0, plus)), named_lattice(name.substr(plus + 1)));
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, std::vector<std::int64_t>(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
  return Lattice::from_gram(std::move(g));
}

bool Coset::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
}

std::string Coset::label() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << to_string(coords[i]);
  os << ')';
  return os.str();
}

bool operator<(const Coset& a, const Coset& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

Coset reduce_coset(std::vector<Rational> coords) {
  for (auto& c : coords) c = frac(c);
  return Coset{std::move(coords)};
}

Rational quadratic_value(const IntMatrix& gram, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (gram[i][j] != 0) row += static_cast<long>(gram[i][j]) * x[j];
    s += x[i] * row;
  }
  return s / 2;
}

DiscriminantForm::DiscriminantForm(const Lattice& lattice) : gram_(lattice.gram()) {
  const auto sig = lattice.signature();
  sig8_ = ((sig.positive - sig.negative) % 8 + 8) % 8;
  const std::size_t n = gram_.size();

  // With U·G·V = D, L∨/L is generated by (column i of V) / d_i.
  SmithResult snf = smith_normal_form(gram_);
  for (std::size_t i = 0; i < n; ++i) {
    if (snf.diagonal[i] == 1) continue;
    std::vector<Rational> c(n);
    for (std::size_t r = 0; r < n; ++r) {
      c[r] = Rational(snf.v[r][i], snf.diagonal[i]);
      c[r].canonicalize();
    }
    generators_.push_back({reduce_coset(std::move(c)), to_int64(snf.diagonal[i])});
  }

  std::vector<Coset> all{Coset{std::vector<Rational>(n, Rational(0))}};
  for (const auto& g : generators_) {
    std::vector<Coset> next;
    next.reserve(all.size() * static_cast<std::size_t>(g.order));
    for (const auto& base : all) {
      std::vector<Rational> cur = base.coords;
      for (std::int64_t k = 0; k < g.order; ++k) {
        next.push_back(reduce_coset(cur));
        for (std::size_t r = 0; r < n; ++r) cur[r] += g.coset.coords[r];
      }
    }
    all = std::move(next);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  cosets_ = std::move(all);

  Integer lvl = 1;
  for (const auto& c : cosets_) {
    q_table_.push_back(frac(quadratic_value(gram_, c.coords)));
    Integer den = q_table_.back().get_den();
    mpz_lcm(lvl.get_mpz_t(), lvl.get_mpz_t(), den.get_mpz_t());
  }
  level_ = to_int64(lvl);
  for (const auto& c : cosets_) {
    std::vector<Rational> neg(c.coords.size());
    for (std::size_t r = 0; r < n; ++r) neg[r] = -c.coords[r];
    negation_.push_back(index_of(reduce_coset(std::move(neg))));
  }
}

std::size_t DiscriminantForm::index_of(const Coset& c) const {
  auto it = std::lower_bound(cosets_.begin(), cosets_.end(), c);
  if (it == cosets_.end() || !(*it == c))
    throw Error(ErrorKind::InvalidArgument, "coset " + c.label() + " is not in L∨/L");
  return static_cast<std::size_t>(it - cosets_.begin());
}

std::size_t DiscriminantForm::add(std::size_t i, std::size_t j) const {
  std::vector<Rational> s(cosets_[i].coords.size());
  for (std::size_t r = 0; r < s.size(); ++r) s[r] = cosets_[i].coords[r] + cosets_[j].coords[r];
  return index_of(reduce_coset(std::move(s)));
}

Rational DiscriminantForm::b(std::size_t i, std::size_t j) const {
  const auto& x = cosets_[i].coords;
  const auto& y = cosets_[j].coords;
  Rational s = 0;
  for (std::size_t r = 0; r < x.size(); ++r)
    for (std::size_t c = 0; c < y.size(); ++c)
      if (gram_[r][c] != 0) s += x[r] * static_cast<long>(gram_[r][c]) * y[c];
  return frac(s);
}

DiscriminantForm discriminant_form(const Lattice& lattice) { return DiscriminantForm(lattice); }

Rational disc_b(const DiscriminantForm& df, const Coset& a, const Coset& b) {
  return df.b(df.index_of(a), df.index_of(b));
}

std::complex<double> unit_phase(const Rational& x) {
  const double t = 2.0 * std::numbers::pi * frac(x).get_d();
  return {std::cos(t), std::sin(t)};
}

std::complex<double> gauss_sum(const DiscriminantForm& df) {
  std::complex<double> s = 0;
  for (const auto& q : df.q_table()) s += unit_phase(q);
  return s;
}

}  // namespace cycletheta
