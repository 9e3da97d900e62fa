#include "cycletheta/rational.hpp"

#include <limits>
#include <stdexcept>

#include "cycletheta/error.hpp"

namespace cycletheta {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not an integer or fraction p/q: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part) {
    if (!part.empty() && (part.front() == '-' || part.front() == '+')) part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den.front() == '-' || den.front() == '+') throw bad();
  if (num.front() == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

std::int64_t to_int64(const Rational& q) {
  if (q.get_den() != 1) throw std::overflow_error("not an integer: " + q.get_str());
  return to_int64(Integer(q.get_num()));
}

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::BoundNotStabilized: return "BoundNotStabilized";
    case ErrorKind::MismatchDetected: return "MismatchDetected";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace cycletheta
