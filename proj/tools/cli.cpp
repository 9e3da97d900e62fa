#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "cycletheta/eisenstein.hpp"
#include "cycletheta/enumeration.hpp"
#include "cycletheta/error.hpp"
#include "cycletheta/heegner.hpp"
#include "cycletheta/quadlattice.hpp"
#include "cycletheta/verify.hpp"
#include "cycletheta/weilrep.hpp"

namespace cycletheta::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_number(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": expected an integer or a fraction p/q, got '" + text + "'");
  }
}

std::int64_t parse_integer(const std::string& flag, const std::string& text) {
  const Rational q = parse_number(flag, text);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw UsageError(flag + ": expected an integer, got '" + text + "'");
  return q.get_num().get_si();
}

double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json approx(std::complex<double> z) { return {{"re", round12(z.real())}, {"im", round12(z.imag())}}; }

std::string gram_text(const IntMatrix& g) { return json(g).dump(); }

Lattice load_lattice(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    json doc;
    try {
      doc = json::parse(in);
      if (doc.is_object()) doc = doc.at("gram");
      return new_lattice(doc.get<IntMatrix>());
    } catch (const json::exception& e) {
      throw UsageError("--lattice: cannot read a Gram matrix from " + spec + ": " + e.what());
    }
  }
  try {
    return named_lattice(spec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw UsageError(std::string("--lattice: ") + e.what());
    throw;
  }
}

// Shared flags and state.
struct Context {
  bool as_json = false;
  std::string cache_dir;
  std::ostream* out = nullptr;

  ResultCache cache() const { return ResultCache(cache_directory(cache_dir)); }

  json cached(const std::string& op, const std::string& input, const std::function<json()>& compute) const {
    const ResultCache c = cache();
    if (auto hit = c.load(op, input)) return *hit;
    json payload = compute();
    c.store(op, input, payload);
    return payload;
  }
};

// --- lattice info -----------------------------------------------------------

json lattice_info_json(const std::string& name, const Lattice& lat) {
  json j = {{"lattice", name},
            {"rank", lat.rank()},
            {"gram", lat.gram()},
            {"signature", {lat.signature().positive, lat.signature().negative}},
            {"determinant", to_string(lat.determinant())}};
  const DiscriminantForm df(lat);
  json gens = json::array(), cosets = json::array();
  for (const auto& g : df.generators()) gens.push_back({{"coset", g.coset.label()}, {"order", g.order}});
  for (std::size_t i = 0; i < df.cosets().size(); ++i)
    cosets.push_back({{"coset", df.cosets()[i].label()}, {"q", to_string(df.q(i))}});
  j["discriminant_form"] = {{"order", df.order()}, {"sig8", df.sig8()}, {"level", df.level()},
                            {"generators", gens}, {"cosets", cosets}};
  return j;
}

void print_lattice_info(std::ostream& os, const json& j) {
  os << "lattice " << j["lattice"].get<std::string>() << "\n";
  os << "rank " << j["rank"] << "\n";
  os << "gram " << j["gram"].dump() << "\n";
  os << "signature (" << j["signature"][0] << "," << j["signature"][1] << ")\n";
  os << "determinant " << j["determinant"].get<std::string>() << "\n";
  const json& df = j["discriminant_form"];
  os << "discriminant form: order " << df["order"] << ", sig8 " << df["sig8"] << ", level " << df["level"] << "\n";
  for (const auto& g : df["generators"])
    os << "  generator " << g["coset"].get<std::string>() << " of order " << g["order"] << "\n";
  for (const auto& c : df["cosets"])
    os << "  q" << c["coset"].get<std::string>() << " = " << c["q"].get<std::string>() << "\n";
}

// --- theta --------------------------------------------------------------------

json theta_json(const std::string& name, const Lattice& lat, const Rational& truncation) {
  const VectorValuedQSeries s = theta_qseries(lat, truncation);
  json comps = json::array();
  for (const auto& c : s.components) {
    json coeffs = json::array();
    for (const auto& [e, v] : c.coefficients) coeffs.push_back({{"exponent", to_string(e)}, {"coefficient", to_string(v)}});
    comps.push_back({{"coset", c.coset.label()}, {"coefficients", coeffs}});
  }
  return {{"lattice", name},           {"weight", to_string(s.weight)}, {"level_denominator", s.level_denominator},
          {"truncation", to_string(s.truncation)}, {"components", comps},   {"text", s.to_text()}};
}

// --- weilrep ------------------------------------------------------------------

json matrix_json(const WeilRepMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.entry_text(i, j));
    rows.push_back(row);
  }
  return {{"word", m.generator_word}, {"field_order", m.field_order}, {"sqrt_power", m.sqrt_power}, {"entries", rows}};
}

json weilrep_json(const std::string& name, const Lattice& lat, const std::vector<std::string>& words) {
  const DiscriminantForm df(lat);
  const WeilRepresentation rep(df);
  json cosets = json::array(), mats = json::array(), rels = json::array();
  for (const auto& c : df.cosets()) cosets.push_back(c.label());
  for (const auto& w : words) mats.push_back(matrix_json(rep.word(w)));
  const RelationReport report = rep.verify_relations();
  for (const auto& c : report.checks) rels.push_back({{"name", c.name}, {"passed", c.passed}});
  const auto g = gauss_sum(df);
  const auto expected = std::sqrt(static_cast<double>(df.order())) * unit_phase(make_rational(df.sig8(), 8));
  return {{"lattice", name},
          {"discriminant", df.order()},
          {"sig8", df.sig8()},
          {"field_order", rep.field_order()},
          {"cosets", cosets},
          {"matrices", mats},
          {"relations", rels},
          {"milgram", {{"gauss_sum", {{"approx", approx(g)}}},
                       {"expected", {{"approx", approx(expected)}}},
                       {"passed", std::abs(g - expected) < 1e-10}}}};
}

void print_weilrep(std::ostream& os, const json& j) {
  os << "lattice " << j["lattice"].get<std::string>() << ", |D| = " << j["discriminant"] << ", sig8 = " << j["sig8"]
     << ", entries in Q(zeta_" << j["field_order"] << ")\n";
  os << "cosets:";
  for (const auto& c : j["cosets"]) os << " " << c.get<std::string>();
  os << "\n";
  for (const auto& m : j["matrices"]) {
    os << "rho(" << m["word"].get<std::string>() << "):\n";
    for (const auto& row : m["entries"]) {
      os << "  [";
      bool first = true;
      for (const auto& e : row) {
        os << (first ? "" : ", ") << e.get<std::string>();
        first = false;
      }
      os << "]\n";
    }
  }
  for (const auto& r : j["relations"]) os << (r["passed"].get<bool>() ? "holds: " : "FAILS: ") << r["name"].get<std::string>() << "\n";
  os << "milgram " << (j["milgram"]["passed"].get<bool>() ? "holds" : "FAILS") << "\n";
}

// --- heegner ------------------------------------------------------------------

json heegner_json(std::int64_t level, std::int64_t residue, std::int64_t disc, bool cross) {
  const HeegnerCycle z = heegner_cycle(level, residue, disc);
  json points = json::array();
  for (const auto& p : z.points)
    points.push_back({{"a", p.representative.a},
                      {"b", p.representative.b},
                      {"c", p.representative.c},
                      {"d", p.point.d},
                      {"residue", p.residue},
                      {"mult", to_string(p.multiplicity)},
                      {"stab", p.stabilizer_order},
                      {"approx", approx(p.point.approx())}});
  json j = {{"N", z.level}, {"r", z.residue}, {"d", z.disc}, {"degree", to_string(z.degree)}, {"points", points}};
  if (cross) {
    const OrbitCrossCheck c = orbit_cross_check(level, residue, disc);
    j["cross_check"] = {{"match", c.match},
                        {"orbit_route", c.orbit_route.size()},
                        {"forms_route", c.forms_route.size()},
                        {"discrepancies", c.discrepancies}};
  }
  return j;
}

void print_heegner(std::ostream& os, const json& j) {
  os << "Z(d=" << j["d"] << ", N=" << j["N"] << ", r=" << j["r"] << ") degree " << j["degree"].get<std::string>() << "\n";
  for (const auto& p : j["points"]) {
    const auto a = p["a"].get<std::int64_t>(), b = p["b"].get<std::int64_t>(), c = p["c"].get<std::int64_t>();
    os << "  [" << a << "," << b << "," << c << "] z = (" << -b << " + i*sqrt(" << p["d"] << "))/" << 2 * a
       << " ~ " << p["approx"]["re"].get<double>() << (p["approx"]["im"].get<double>() < 0 ? "" : "+")
       << p["approx"]["im"].get<double>() << "i  mult " << p["mult"].get<std::string>() << "  stab "
       << p["stab"] << "\n";
  }
  if (j.contains("cross_check")) {
    const auto& c = j["cross_check"];
    os << "orbit cross-check: " << (c["match"].get<bool>() ? "match" : "MISMATCH") << " (" << c["orbit_route"]
       << " orbits, " << c["forms_route"] << " classes)\n";
    for (const auto& d : c["discrepancies"]) os << "  " << d.get<std::string>() << "\n";
  }
}

// --- eisenstein -----------------------------------------------------------------

json eisenstein_json(const std::string& series, std::int64_t max_terms, int weight, int s) {
  QSeries q;
  json j = {{"series", series}, {"max", max_terms}};
  if (series == "hurwitz") {
    q = hurwitz_series(max_terms);
    j["metadata"] = {{"convention",
                      "H(0) = -1/12 (orbifold Euler volume of SL2(Z)\\H); holomorphic coefficients of the weight 3/2 "
                      "series only, non-holomorphic correction terms excluded"}};
  } else if (series == "ek") {
    q = eisenstein_k(weight, max_terms);
    j["weight"] = weight;
    j["metadata"] = {{"convention", "E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, B_1 = -1/2"}};
  } else {
    q = cohen(s, max_terms);
    j["s"] = s;
    j["metadata"] = {{"convention",
                      "H(s,N) = L(1-s,chi_D) sum_{d|f} mu(d) chi_D(d) d^(s-1) sigma_{2s-1}(f/d) with (-1)^s N = D f^2, "
                      "L(1-s,chi_D) = -B_{s,chi_D}/s; H(s,0) = zeta(1-2s)"}};
  }
  json coeffs = json::array();
  for (const auto& c : q.coefficients) coeffs.push_back(to_string(c));
  j["coefficients"] = coeffs;
  j["text"] = q.to_text();
  return j;
}

// --- density ------------------------------------------------------------------

json density_json(const std::string& name, const Lattice& lat, std::int64_t p, std::int64_t m, int max_level) {
  const LocalDensityReport r = local_density(lat, p, m, max_level);
  json approximations = json::array();
  for (const auto& [k, v] : r.approximations) approximations.push_back({{"k", k}, {"value", to_string(v)}});
  return {{"lattice", name},
          {"p", r.p},
          {"m", to_string(r.m)},
          {"k0", r.k0},
          {"approximations", approximations},
          {"stabilized", r.stabilized ? to_string(*r.stabilized) : std::string("not stabilized")}};
}

// --- verify -------------------------------------------------------------------

json report_json(const VerificationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"input", c.descriptor},
                     {"lhs", c.lhs},
                     {"rhs", c.rhs},
                     {"status", c.passed ? "pass" : "fail"},
                     {"tolerance", c.tolerance},
                     {"note", c.note}});
  return {{"suite", r.suite},
          {"passed", r.passed_count()},
          {"failed", r.failed_count()},
          {"all_passed", r.all_passed()},
          {"cases", cases}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special cycles, Weil representations, theta series and Eisenstein coefficients", "cycletheta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Context ctx;
  ctx.out = &out;
  app.add_flag("--json", ctx.as_json, "Write JSON instead of text")->configurable(false);
  app.add_option("--cache-dir", ctx.cache_dir, "Result cache directory (default $CYCLETHETA_CACHE)");

  std::string lattice_spec = "A1", max_text, level_text, residue_text, disc_text, prime_text, m_text,
              weight_text = "4", s_text = "2", series = "hurwitz", suite = "all", max_level_text = "0";
  std::vector<std::string> words;
  bool cross = false, verbose = false;

  auto* lattice_cmd = app.add_subcommand("lattice", "Lattice data")->fallthrough();
  lattice_cmd->require_subcommand(1);
  auto* info_cmd = lattice_cmd->add_subcommand("info", "Gram matrix, signature and discriminant form")->fallthrough();
  info_cmd->add_option("--lattice", lattice_spec, "Built-in name or path to a JSON Gram matrix")->required();

  auto* theta_cmd = app.add_subcommand("theta", "Vector-valued theta series")->fallthrough();
  theta_cmd->add_option("--lattice", lattice_spec, "Built-in name or path to a JSON Gram matrix")->required();
  theta_cmd->add_option("--max", max_text, "Truncation: exponents below this value")->required();

  auto* weil_cmd = app.add_subcommand("weilrep", "Weil representation matrices and relations")->fallthrough();
  weil_cmd->add_option("--lattice", lattice_spec, "Built-in name or path to a JSON Gram matrix")->required();
  weil_cmd->add_option("--word", words, "Words in S, T, S^-1, T^-1 (default: S and T)");

  auto* heeg_cmd = app.add_subcommand("heegner", "Heegner 0-cycle Z(d, phi_{N,r})")->fallthrough();
  heeg_cmd->add_option("--level", level_text, "Level N")->required();
  heeg_cmd->add_option("--residue", residue_text, "Residue r mod 2N")->required();
  heeg_cmd->add_option("--disc", disc_text, "d > 0, discriminant -d")->required();
  heeg_cmd->add_flag("--cross-check", cross, "Compare with the orbit route");

  auto* eis_cmd = app.add_subcommand("eisenstein", "Eisenstein series coefficients")->fallthrough();
  eis_cmd->add_option("--series", series, "Series")->check(CLI::IsMember({"hurwitz", "ek", "cohen"}))->required();
  eis_cmd->add_option("--max", max_text, "Number of coefficients")->required();
  eis_cmd->add_option("--weight", weight_text, "Weight k for ek");
  eis_cmd->add_option("--s", s_text, "Index s for cohen");

  auto* dens_cmd = app.add_subcommand("density", "Local density alpha_p(m)")->fallthrough();
  dens_cmd->add_option("--lattice", lattice_spec, "Built-in name or path to a JSON Gram matrix")->required();
  dens_cmd->add_option("--prime", prime_text, "Prime p")->required();
  dens_cmd->add_option("--m", m_text, "Represented value m >= 1")->required();
  dens_cmd->add_option("--max-level", max_level_text, "Highest level k (default: threshold + 1)");

  auto* verify_cmd = app.add_subcommand("verify", "Reproduction suites")->fallthrough();
  verify_cmd->add_option("--suite", suite, "Suite")
      ->check(CLI::IsMember({"volume", "siegelweil", "cup", "weilrep", "orbits", "all"}))
      ->required();
  verify_cmd->add_flag("--verbose", verbose, "List passing cases too");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ostream& os = out;
    if (info_cmd->parsed()) {
      const json j = lattice_info_json(lattice_spec, load_lattice(lattice_spec));
      if (ctx.as_json)
        os << j.dump(2) << "\n";
      else
        print_lattice_info(os, j);
    } else if (theta_cmd->parsed()) {
      const Lattice lat = load_lattice(lattice_spec);
      const Rational t = parse_number("--max", max_text);
      const std::string input = "theta gram=" + gram_text(lat.gram()) + " max=" + to_string(t);
      json j = ctx.cached("theta", input, [&] { return theta_json(lattice_spec, lat, t); });
      j["lattice"] = lattice_spec;
      if (ctx.as_json)
        os << j.dump(2) << "\n";
      else
        os << j["text"].get<std::string>();
    } else if (weil_cmd->parsed()) {
      if (words.empty()) words = {"S", "T"};
      const json j = weilrep_json(lattice_spec, load_lattice(lattice_spec), words);
      if (ctx.as_json)
        os << j.dump(2) << "\n";
      else
        print_weilrep(os, j);
      bool ok = j["milgram"]["passed"].get<bool>();
      for (const auto& r : j["relations"]) ok = ok && r["passed"].get<bool>();
      if (!ok) {
        err << "error: RelationViolated: see the relations listed above\n";
        return 1;
      }
    } else if (heeg_cmd->parsed()) {
      const std::int64_t level = parse_integer("--level", level_text);
      const std::int64_t disc = parse_integer("--disc", disc_text);
      std::int64_t residue = parse_integer("--residue", residue_text);
      if (level < 1) throw UsageError("--level: N must be >= 1");
      if (disc < 1) throw UsageError("--disc: d must be >= 1");
      residue = ((residue % (2 * level)) + 2 * level) % (2 * level);
      const std::string input = "heegner N=" + std::to_string(level) + " r=" + std::to_string(residue) +
                                " d=" + std::to_string(disc) + (cross ? " cross" : "");
      const json j = ctx.cached("heegner", input, [&] { return heegner_json(level, residue, disc, cross); });
      if (ctx.as_json)
        os << j.dump(2) << "\n";
      else
        print_heegner(os, j);
      if (cross && !j["cross_check"]["match"].get<bool>()) {
        err << "error: MismatchDetected: orbit and forms routes differ\n";
        return 1;
      }
    } else if (eis_cmd->parsed()) {
      const std::int64_t max_terms = parse_integer("--max", max_text);
      if (max_terms < 1) throw UsageError("--max must be >= 1");
      const auto weight = static_cast<int>(parse_integer("--weight", weight_text));
      const auto s = static_cast<int>(parse_integer("--s", s_text));
      const json j = eisenstein_json(series, max_terms, weight, s);
      if (ctx.as_json)
        os << j.dump(2) << "\n";
      else
        os << j["text"].get<std::string>() << "\n";
    } else if (dens_cmd->parsed()) {
      const Lattice lat = load_lattice(lattice_spec);
      const std::int64_t p = parse_integer("--prime", prime_text);
      const std::int64_t m = parse_integer("--m", m_text);
      const auto max_level = static_cast<int>(parse_integer("--max-level", max_level_text));
      const std::string input = "density gram=" + gram_text(lat.gram()) + " p=" + std::to_string(p) +
                                " m=" + std::to_string(m) + " levels=" + std::to_string(max_level);
      json j = ctx.cached("density", input, [&] { return density_json(lattice_spec, lat, p, m, max_level); });
      j["lattice"] = lattice_spec;
      if (ctx.as_json) {
        os << j.dump(2) << "\n";
      } else {
        os << "alpha_" << p << "(" << m << ") for " << lattice_spec << ", threshold k0 = " << j["k0"] << "\n";
        for (const auto& a : j["approximations"]) os << "  k=" << a["k"] << ": " << a["value"].get<std::string>() << "\n";
        os << "stabilized: " << j["stabilized"].get<std::string>() << "\n";
      }
      if (j["stabilized"] == "not stabilized") {
        err << "error: NotStabilized: rerun with a larger --max-level\n";
        return 1;
      }
    } else if (verify_cmd->parsed()) {
      std::vector<VerificationReport> reports;
      if (suite == "all") {
        reports = suite_all();
        reports.push_back(suite_orbit_cross_check());
      } else if (suite == "volume") {
        reports = {suite_volume_formula()};
      } else if (suite == "siegelweil") {
        reports = {suite_siegel_weil()};
      } else if (suite == "cup") {
        reports = {suite_cup_product()};
      } else if (suite == "weilrep") {
        reports = {suite_weilrep()};
      } else {
        reports = {suite_orbit_cross_check()};
      }
      bool ok = true;
      json suites = json::array();
      for (const auto& r : reports) {
        ok = ok && r.all_passed();
        suites.push_back(report_json(r));
      }
      if (ctx.as_json) {
        os << json({{"all_passed", ok}, {"suites", suites}}).dump(2) << "\n";
      } else {
        for (const auto& r : reports) {
          os << "suite " << r.suite << ": " << r.passed_count() << "/" << r.cases.size() << " passed\n";
          for (const auto& c : r.cases)
            if (verbose || !c.passed)
              os << "  " << (c.passed ? "pass " : "FAIL ") << c.descriptor << ": " << c.lhs << " vs " << c.rhs
                 << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
        }
        os << (ok ? "all suites passed" : "some suites FAILED") << "\n";
      }
      return ok ? 0 : 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cycletheta::cli
