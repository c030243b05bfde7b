#include "tzcl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <regex>
#include <sstream>

#include "tzcl/cohomology.hpp"
#include "tzcl/killing.hpp"
#include "tzcl/random_poly.hpp"
#include "tzcl/serialize.hpp"

namespace tzcl {

namespace {

/// Bad user input: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unexpected nonzero residual or non-exact form: exit 3.
struct MathFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string alpha = "-1";
  bool json = false;
  int max_exp_window = 4;
  int weight = 0;
  std::string seed = "u0";
  std::string seed_file;
  int steps = 1;
  bool trace = false;
  std::string what;
  int cases = 100;
  unsigned long rng_seed = 7;
  std::string gen;
  std::string gen_file;
  std::string samples;
  std::string gens;
};

Rational parse_alpha(const std::string& text) {
  static const std::regex re(R"(\s*-?\d+(/\d+)?\s*)");
  if (!std::regex_match(text, re)) throw UsageError("--alpha expects a rational such as -1 or 1/2");
  Rational a(text);
  if (sgn(a.get_den()) == 0) throw UsageError("--alpha: zero denominator");
  a.canonicalize();
  if (sgn(a) == 0) throw UsageError("--alpha must be nonzero");
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DiffPoly named_or_parsed(const std::string& text) {
  if (text == "u0") return DiffPoly::u(0);
  if (text == "v5") return v5_generator();
  return parse_poly(text);
}

std::vector<DiffPoly> polys_from_text(const std::string& text) {
  std::vector<DiffPoly> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    out.push_back(named_or_parsed(line));
  }
  return out;
}

IntegrationOptions integration(const Config& c) {
  IntegrationOptions o;
  o.exp_window = c.max_exp_window;
  return o;
}

const SystemParams& tzitzeica_only(const Config& c, const char* what) {
  if (parse_alpha(c.alpha) != Rational(-1)) throw UsageError(std::string(what) + " requires --alpha -1");
  return tzitzeica();
}

std::string weight_text(const DiffPoly& p) {
  auto w = weight_of(p);
  return w ? std::to_string(*w) : std::string("none");
}

// ---------------------------------------------------------------------------

int cmd_kernel(const Config& c, std::ostream& out) {
  const Rational alpha = parse_alpha(c.alpha);
  if (c.weight == 0 || c.weight % 2 == 0)
    throw UsageError("--weight must be odd (even weights carry no generating functions)");
  const SystemParams sp(alpha);
  const auto basis = kernel_basis(sp, c.weight);
  if (c.json) {
    nlohmann::json j;
    j["weight"] = c.weight;
    j["alpha"] = alpha.get_str();
    j["dimension"] = basis.size();
    j["basis"] = nlohmann::json::array();
    for (const auto& p : basis) j["basis"].push_back({{"text", format_poly(p)}, {"terms", to_json(p)}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "weight " << c.weight << ", alpha " << alpha.get_str() << ": dimension " << basis.size() << "\n";
  for (const auto& p : basis) out << format_poly(p) << "\n";
  return kExitOk;
}

int cmd_recur(const Config& c, std::ostream& out) {
  const SystemParams& sp = tzitzeica_only(c, "recur");
  if (c.steps < 0) throw UsageError("--steps must be nonnegative");
  DiffPoly seed;
  if (!c.seed_file.empty()) {
    auto ps = polys_from_text(read_file(c.seed_file));
    if (ps.size() != 1) throw UsageError("--seed-file must hold exactly one polynomial");
    seed = ps.front();
  } else if (c.seed == "u0" || c.seed == "v5") {
    seed = named_or_parsed(c.seed);
  } else {
    throw UsageError("--seed must be u0 or v5 (or use --seed-file)");
  }
  if (!E_lin(sp, seed).is_zero()) throw MathFailure("seed is not in the kernel of E");

  std::vector<DiffPoly> chain{seed};
  std::vector<RecursionTrace> traces;
  for (int k = 0; k < c.steps; ++k) {
    traces.push_back(P_step(sp, chain.back(), integration(c)));
    chain.push_back(traces.back().a_next);
    if (!E_lin(sp, chain.back()).is_zero()) throw MathFailure("E(P^" + std::to_string(k + 1) + "(seed)) != 0");
  }
  if (c.json) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t k = 0; k < chain.size(); ++k) {
      nlohmann::json e{{"index", k}, {"weight", weight_text(chain[k])}, {"E_lin_zero", true},
                       {"text", format_poly(chain[k])}, {"terms", to_json(chain[k])}};
      if (c.trace && k < traces.size()) {
        nlohmann::json st = nlohmann::json::array();
        for (const auto& [label, p] : traces[k].stages()) st.push_back({{"stage", label}, {"text", format_poly(p)}});
        e["trace"] = st;
      }
      j.push_back(e);
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t k = 0; k < chain.size(); ++k) {
    out << "[" << k << "] weight " << weight_text(chain[k]) << "  E = 0\n" << format_poly(chain[k]) << "\n";
    if (c.trace && k < traces.size())
      for (const auto& [label, p] : traces[k].stages()) out << "  " << label << ": " << format_poly(p) << "\n";
  }
  return kExitOk;
}

struct Report {
  std::vector<std::pair<std::string, std::string>> lines;  // name, residual text ("0" when zero)
  bool ok = true;
  void add(const std::string& name, const DiffPoly& r) {
    lines.emplace_back(name, format_poly(r));
    ok = ok && r.is_zero();
  }
};

int emit_report(const Config& c, const std::string& what, const Report& r, std::ostream& out) {
  std::size_t zero = 0;
  for (const auto& [n, v] : r.lines) zero += v == "0";
  if (c.json) {
    nlohmann::json j{{"what", what}, {"pass", r.ok}, {"zero", zero}, {"total", r.lines.size()}};
    j["residuals"] = nlohmann::json::array();
    for (const auto& [n, v] : r.lines) j["residuals"].push_back({{"name", n}, {"residual", v}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& [n, v] : r.lines) out << n << ": " << v << "\n";
    out << zero << "/" << r.lines.size() << " residuals zero\n" << (r.ok ? "PASS" : "FAIL") << "\n";
  }
  if (!r.ok) {
    for (const auto& [n, v] : r.lines)
      if (v != "0") throw MathFailure("first nonzero residual " + n + ": " + v);
  }
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  Report r;
  if (c.what == "flatness") {
    const SystemParams& sp = tzitzeica_only(c, "verify flatness");
    for (const auto& [k, m] : flatness_residual(sp))
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          r.add("lambda^" + std::to_string(k) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]", m(i, j));
  } else if (c.what == "killing") {
    const SystemParams& sp = tzitzeica_only(c, "verify killing");
    if (c.seed != "u0" && c.seed != "v5") throw UsageError("verify killing: --seed must be u0 or v5");
    for (const auto& [name, value] : chain_component_check(sp, named_or_parsed(c.seed))) r.add(name, value);
  } else if (c.what == "closed") {
    const SystemParams& sp = tzitzeica_only(c, "verify closed");
    if (c.seed != "u0" && c.seed != "v5") throw UsageError("verify closed: --seed must be u0 or v5");
    const auto chain = chain_generate(sp, named_or_parsed(c.seed), c.steps, integration(c));
    for (std::size_t k = 0; k < chain.size(); ++k) {
      r.add("phi~(q, P^" + std::to_string(k) + ")", closed_mod_ideal(sp, phi_tilde(sp, q_function(), chain[k])));
      r.add("phi~(P^" + std::to_string(k) + ", u0)", closed_mod_ideal(sp, phi_tilde(sp, chain[k], DiffPoly::u(0))));
    }
  } else if (c.what == "gauge") {
    const SystemParams& sp = tzitzeica_only(c, "verify gauge");
    const DiffPoly p = named_or_parsed(c.gen.empty() ? c.seed : c.gen);
    GaugeResult g;
    try {
      g = translation_gauge(sp, p, integration(c));
    } catch (const GaugeError& e) {
      throw MathFailure(e.what());
    }
    r.add("closed(phi^)", closed_mod_ideal(sp, g.phi_hat));
    const OneFormModI diff = phi_tilde(sp, p, q_function()) - g.phi_hat - OneFormModI::from_form(d_function(sp, g.G));
    r.add("phi~ - phi^ - dG (zeta)", diff.P);
    r.add("phi~ - phi^ - dG (zetabar)", diff.Q);
  } else if (c.what == "commutator") {
    if (c.cases <= 0) throw UsageError("--cases must be positive");
    const SystemParams sp(parse_alpha(c.alpha));
    std::mt19937_64 rng(c.rng_seed);
    DiffPoly worst;
    int failures = 0;
    for (int n = 0; n < c.cases; ++n) {
      const DiffPoly p = random_poly(rng);
      const DiffPoly res = e_minus1(sp, e_minus1bar(sp, p)) - e_minus1bar(sp, e_minus1(sp, p));
      if (!res.is_zero() && failures++ == 0) worst = res;
    }
    r.add("[e_-1, e_-1bar] on " + std::to_string(c.cases) + " cases (rng seed " + std::to_string(c.rng_seed) + ")", worst);
  } else {
    throw UsageError("--what must be one of flatness, killing, closed, gauge, commutator");
  }
  return emit_report(c, c.what, r, out);
}

int cmd_gauge(const Config& c, std::ostream& out) {
  const SystemParams& sp = tzitzeica_only(c, "gauge");
  DiffPoly p;
  if (!c.gen_file.empty()) {
    auto ps = polys_from_text(read_file(c.gen_file));
    if (ps.size() != 1) throw UsageError("--gen-file must hold exactly one polynomial");
    p = ps.front();
  } else if (!c.gen.empty()) {
    p = named_or_parsed(c.gen);
  } else {
    throw UsageError("gauge needs --gen or --gen-file");
  }
  if (!E_lin(sp, p).is_zero()) throw MathFailure("generator is not in the kernel of E");
  GaugeResult g;
  try {
    g = translation_gauge(sp, p, integration(c));
  } catch (const GaugeError& e) {
    throw MathFailure(e.what());
  }
  if (c.json) {
    nlohmann::json j{{"A", format_poly(g.A)},
                     {"B", format_poly(g.B)},
                     {"G", format_poly(g.G)},
                     {"phi_hat", format_form(g.phi_hat)},
                     {"phi_hat_zeta", to_json(g.phi_hat.P)},
                     {"phi_hat_zetabar", to_json(g.phi_hat.Q)}};
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "A = " << format_poly(g.A) << "\n"
      << "B = " << format_poly(g.B) << "\n"
      << "G = " << format_poly(g.G) << "\n"
      << "phi^ = " << format_form(g.phi_hat) << "\n";
  return kExitOk;
}

int cmd_rank(const Config& c, std::ostream& out) {
  if (c.samples.empty() || c.gens.empty()) throw UsageError("rank needs --samples and --gens");
  const SampleTable table = parse_sample_table(read_file(c.samples), c.samples);
  const std::vector<DiffPoly> gens = polys_from_text(read_file(c.gens));
  RankResult r;
  try {
    r = finite_type_rank(table, gens);
  } catch (const MissingAssignment& e) {
    throw UsageError(e.what());
  }
  auto cx = [](std::complex<double> z) {
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.real()) < 1e-12 * scale) z.real(0.0);
    if (std::abs(z.imag()) < 1e-12 * scale) z.imag(0.0);
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
  };
  if (c.json) {
    nlohmann::json j{{"rank", r.rank}, {"columns", r.columns}, {"singular_values", r.singular_values}};
    j["finite_type"] = r.finite_type ? nlohmann::json(*r.finite_type) : nlohmann::json(nullptr);
    j["dependency"] = nlohmann::json::array();
    for (const auto& d : r.dependency) j["dependency"].push_back({{"label", d.label}, {"coeff", cx(d.coeff)}});
    j["exact_verified"] = r.exact_verified ? nlohmann::json(*r.exact_verified) : nlohmann::json(nullptr);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "rank " << r.rank << " of " << r.columns << " columns\n";
  out.precision(6);
  out << "singular values:";
  for (double s : r.singular_values) out << " " << s;
  out << "\n";
  if (!r.finite_type) {
    out << "independent at this sample size\n";
    return kExitOk;
  }
  out << "finite type " << *r.finite_type << "\ndependency:";
  for (const auto& d : r.dependency) out << " (" << cx(d.coeff) << ")*" << d.label;
  out << " = 0\n";
  if (r.exact_verified) out << "exact check: " << (*r.exact_verified ? "verified" : "FAILED") << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Conservation laws and recursions for the Tzitzeica equation", "tzcl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--alpha", c.alpha, "potential parameter (rational), default -1");
  app.add_flag("--json", c.json, "structured output");
  app.add_option("--max-exp-window", c.max_exp_window, "exponent window |k| for e^{k alpha u / 2}")
      ->check(CLI::Range(0, 64));

  auto* kernel = app.add_subcommand("kernel", "basis of V_d (brute force)");
  kernel->add_option("--weight", c.weight, "odd nonzero weight")->required();

  auto* recur = app.add_subcommand("recur", "chain of generating functions under P");
  recur->add_option("--seed", c.seed, "u0 or v5");
  recur->add_option("--seed-file", c.seed_file, "file holding one polynomial");
  recur->add_option("--steps", c.steps, "number of P steps");
  recur->add_flag("--trace", c.trace, "print every stage");

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("--what", c.what, "flatness | killing | closed | gauge | commutator")->required();
  verify->add_option("--seed", c.seed, "u0 or v5");
  verify->add_option("--steps", c.steps, "chain length for 'closed'");
  verify->add_option("--gen", c.gen, "generator for 'gauge'");
  verify->add_option("--cases", c.cases, "random cases for 'commutator'");
  verify->add_option("--rng-seed", c.rng_seed, "seed for 'commutator'");

  auto* gauge = app.add_subcommand("gauge", "translation-invariant representative");
  gauge->add_option("--gen", c.gen, "u0, v5 or a polynomial");
  gauge->add_option("--gen-file", c.gen_file, "file holding one polynomial");

  auto* rank = app.add_subcommand("rank", "finite-type rank test on numeric samples");
  rank->add_option("--samples", c.samples, "sample table file");
  rank->add_option("--gens", c.gens, "generators file, one polynomial per line");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*kernel) return cmd_kernel(c, out);
    if (*recur) return cmd_recur(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*gauge) return cmd_gauge(c, out);
    return cmd_rank(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathFailure& e) {
    err << "failure: " << e.what() << "\n";
    return kExitMath;
  } catch (const IntegrationFailed& e) {
    err << "failure: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace tzcl
