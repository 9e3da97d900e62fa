// One line per acceptance criterion. argv[1] is the cycletheta executable.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "cycletheta/eisenstein.hpp"
#include "cycletheta/error.hpp"
#include "cycletheta/heegner.hpp"
#include "cycletheta/verify.hpp"

using namespace cycletheta;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_s <= 0 || secs < budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << t;
  if (budget_s > 0) std::cout << " / " << budget_s << "s";
  std::cout << ") " << o.detail << (in_time ? "" : " over time budget") << std::endl;
}

Outcome from_report(const VerificationReport& r) {
  std::string detail = std::to_string(r.passed_count()) + "/" + std::to_string(r.cases.size());
  for (const auto& c : r.cases)
    if (!c.passed) {
      detail += "; first failure " + c.descriptor + ": " + c.lhs + " vs " + c.rhs;
      break;
    }
  return {r.all_passed(), detail};
}

VerificationReport filter(const VerificationReport& r, bool theta) {
  VerificationReport out{r.suite, {}};
  for (const auto& c : r.cases)
    if ((c.descriptor.find(" theta ") != std::string::npos) == theta) out.cases.push_back(c);
  return out;
}

std::string capture(const std::string& cmd, int& status) {
  std::string text;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return text;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  status = ::pclose(pipe);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  criterion(1, "volume formula deg Z(d, phi_{1,r}) = H(d), d <= 200", 60,
            [] { return from_report(suite_volume_formula(200)); });

  criterion(2, "orbit route = forms route", 30, [] {
    auto r = suite_orbit_cross_check();
    auto o = from_report(r);
    const HeegnerCycle z = heegner_cycle(5, 2, 4);
    if (!z.points.empty() || z.degree != 0) {
      o.passed = false;
      o.detail += "; (5,2,4) is not the zero cycle";
    }
    return o;
  });

  criterion(3, "E8 Siegel-Weil: count = siegel_product = 240 sigma_3(m), m <= 10", 120, [] {
    VerificationReport r = suite_siegel_weil(10);
    r.cases.erase(r.cases.begin(), r.cases.begin() + 2);  // m = 0
    return from_report(r);
  });

  criterion(4, "cup product r(t1) r(t2) = sum_b r_2, A2 and E8, t <= 4", 120,
            [] { return from_report(suite_cup_product()); });

  criterion(5, "Weil representation relations exact, Milgram to 1e-10", 10,
            [] { return from_report(filter(suite_weilrep(), false)); });

  criterion(6, "theta S/T transformation residuals < 1e-9", 10, [] {
    const auto r = filter(suite_weilrep(), true);
    Outcome o = from_report(r);
    for (const auto& c : r.cases) o.detail += "\n       " + c.descriptor + " residual " + c.lhs + " " + c.note;
    return o;
  });

  criterion(7, "Hurwitz-Kronecker relation, n <= 50", 5, [] {
    for (std::int64_t n = 1; n <= 50; ++n) {
      Rational lhs = 0;
      for (std::int64_t s = 0; s * s <= 4 * n; ++s) lhs += (s == 0 ? 1 : 2) * hurwitz(4 * n - s * s);
      std::int64_t mins = 0;
      for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) mins += std::min(d, n / d);
      if (lhs != Rational(2 * sigma(1, n) - mins))
        return Outcome{false, "fails at n=" + std::to_string(n)};
    }
    return Outcome{true, "50/50"};
  });

  criterion(8, "verify --suite all --json is byte-identical across runs", 0, [&] {
    if (argc < 2) return Outcome{false, "no executable given"};
    const std::string cmd = std::string("'") + argv[1] + "' --json verify --suite all";
    int s1 = 0, s2 = 0;
    const std::string a = capture(cmd, s1);
    const std::string b = capture(cmd, s2);
    if (a.empty()) return Outcome{false, "empty output"};
    return Outcome{a == b && s1 == 0 && s2 == 0,
                   std::to_string(a.size()) + " bytes" + (a == b ? ", identical" : ", differ")};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
