#include "tzcl/cohomology.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace tzcl {

namespace {

const Scalar I = Scalar::i();
const Scalar HALF = Scalar::frac(1, 2);

bool has_z(const DiffPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (m.z_degree() || m.zb_degree()) return true;
  return false;
}

}  // namespace

DiffPoly q_function() { return DiffPoly::z() * DiffPoly::u(0) - DiffPoly::zb() * DiffPoly::ub(0); }

OneFormModI phi_tilde(const SystemParams& sp, const DiffPoly& P, const DiffPoly& Q) {
  return {Q * e_minus1(sp, P), P * e_minus1bar(sp, Q)};
}

OneFormModI phi_rep(const SystemParams& sp, const DiffPoly& P, int i) {
  if (P.is_zero()) return {};
  if (weight_of(P) != 2 * i - 1) throw std::invalid_argument("phi_rep: P must have weight 2i-1");
  const DiffPoly q = q_function();
  const Form w = P * d_function(sp, q) - q * d_function(sp, P);
  const Scalar c = I / Scalar(2 * (2 * i - 1));
  return c * OneFormModI::from_form(J_apply(w));
}

DiffPoly closed_mod_ideal(const SystemParams& sp, const OneFormModI& w) {
  return e_minus1(sp, w.Q) - e_minus1bar(sp, w.P);
}

TrivialityResult triviality_test(const SystemParams& sp, const OneFormModI& w, const IntegrationOptions& opts) {
  if (w.is_zero()) return {true, DiffPoly()};
  if (!closed_mod_ideal(sp, w).is_zero()) throw std::invalid_argument("triviality_test: form is not closed");
  auto g = integrate_oneform(sp, w, opts);
  if (!g) return {false, DiffPoly()};
  return {true, *g};
}

DiffPoly normal_form_B(const SystemParams& sp, const DiffPoly& A, int i, int j, int k) {
  DiffPoly out;
  for (int m = 0; m <= k - j - i + 1; ++m) {
    DiffPoly term = partial(A, Generator::u(m + j + i - 1));
    for (int n = 0; n < m; ++n) term = e_minus1(sp, term);
    const long sign = ((m - i + 1) % 2 == 0) ? 1 : -1;
    out += Scalar(sign * binomial(m + i - 1, i - 1)) * term;
  }
  return I * out;
}

Form normal_form_Phi(const SystemParams& sp, const DiffPoly& A, int k) {
  if (A.is_zero()) return Form(2);
  if (!partial(A, Generator::exp_u()).is_zero()) throw std::invalid_argument("normal_form_Phi: A_u != 0");
  for (int i = 0; i <= A.u_order(); ++i) {
    const DiffPoly ai = partial(A, Generator::u(i));
    for (int j = 0; j <= ai.ub_order(); ++j)
      if (!partial(ai, Generator::ub(j)).is_zero()) throw std::invalid_argument("normal_form_Phi: mixed u/ub terms");
  }
  if (!E_lin(sp, A).is_zero()) throw std::invalid_argument("normal_form_Phi: E(A) != 0");

  const auto eta = [](int i) { return CoframeSymbol::eta(i); };
  const auto etab = [](int i) { return CoframeSymbol::etabar(i); };

  Form rho(1);
  const Form jda = J_apply(d_function(sp, A));
  for (const auto& [w, c] : jda.terms())
    if (w.front() != eta(0)) rho.add_term(w, -HALF * c);

  Form psi = Form::wedge_of({CoframeSymbol::zeta(), eta(1)}) - Form::wedge_of({CoframeSymbol::zetabar(), etab(1)});
  psi = DiffPoly(-HALF * I) * psi;

  Form phi = wedge(Form::symbol(eta(0)), rho) + A * psi;
  const DiffPoly Abar = conjugate(A);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      phi += Form::wedge_of({eta(i), eta(j)}, normal_form_B(sp, A, i, j, k));
      phi += Form::wedge_of({etab(i), etab(j)}, conjugate(normal_form_B(sp, Abar, i, j, k)));
    }
  return phi;
}

GaugeResult translation_gauge(const SystemParams& sp, const DiffPoly& P, const IntegrationOptions& opts) {
  const DiffPoly u0 = DiffPoly::u(0), ub0 = DiffPoly::ub(0);
  const OneFormModI wa = phi_tilde(sp, P, u0);
  const OneFormModI wb = phi_tilde(sp, P, ub0);
  auto a = integrate_oneform(sp, wa, opts);
  if (!a) throw IntegrationFailed("A", wa);
  auto b = integrate_oneform(sp, wb, opts);
  if (!b) throw IntegrationFailed("B", wb);

  GaugeResult g;
  g.A = *a;
  g.B = *b;
  g.G = DiffPoly::z() * g.A - DiffPoly::zb() * g.B;
  g.phi_hat = {-g.A, g.B - ub0 * P};
  if (has_z(g.phi_hat.P) || has_z(g.phi_hat.Q)) throw GaugeError("gauge representative depends on z or zb");
  const OneFormModI diff = phi_tilde(sp, P, q_function()) - g.phi_hat;
  if (OneFormModI::from_form(d_function(sp, g.G)) != diff)
    throw GaugeError("gauge representative is not cohomologous to phi~_{P,q}");
  return g;
}

// ---------------------------------------------------------------------------
// Finite-type rank

namespace {

std::optional<Rational> exact_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string t = s;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  if (t.empty()) return std::nullopt;
  Rational out;
  try {
    if (auto slash = t.find('/'); slash != std::string::npos) {
      Rational num(t.substr(0, slash)), den(t.substr(slash + 1));
      if (sgn(den) == 0) return std::nullopt;
      out = num / den;
    } else if (auto dot = t.find('.'); dot != std::string::npos) {
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      out = Rational(mpz_class(digits), mpz_class("1" + std::string(t.size() - dot - 1, '0')));
    } else {
      if (t.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      out = Rational(mpz_class(t));
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

// Splits "re+imi" into its real and imaginary texts.
std::pair<std::string, std::string> split_complex(const std::string& s) {
  if (s.empty() || s.back() != 'i') return {s, "0"};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  std::string re = cut == std::string::npos ? "0" : body.substr(0, cut);
  std::string im = cut == std::string::npos ? body : body.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re, im};
}

double to_double(const std::string& s) {
  if (auto q = exact_real(s)) return q->get_d();
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

struct Layout {
  Assignment values;
  double u = 0;
};

Layout assignment_for(const std::vector<std::string>& names, const std::vector<std::complex<double>>& row) {
  Layout out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == "u") {
      if (row[c].imag() != 0) throw std::invalid_argument("u must be real");
      out.u = row[c].real();
      continue;
    }
    out.values[*Generator::from_name(names[c])] = row[c];
  }
  return out;
}

std::optional<Scalar> exact_eval(const DiffPoly& p, const std::vector<std::string>& names, const std::vector<Scalar>& row) {
  std::map<Generator, Scalar> values;
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] != "u") values[*Generator::from_name(names[c])] = row[c];
  Scalar sum;
  for (const auto& [m, coeff] : p.terms()) {
    if (!m.exp_u().is_zero()) return std::nullopt;
    Scalar t = coeff;
    bool missing = false;
    m.for_each_var([&](Generator g, unsigned e) {
      auto it = values.find(g);
      if (it == values.end()) {
        missing = true;
        return;
      }
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    });
    if (missing) throw MissingAssignment("sample table lacks a generator");
    sum += t;
  }
  return sum;
}

Rational rationalize(double x) {
  // Continued-fraction convergents until the error is below 1e-9.
  const double target = x;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(r);
    const mpz_class a(fl);
    mpz_class h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    Rational q(h0, k0);
    if (std::abs(q.get_d() - target) < 1e-9 || r - fl < 1e-12) {
      q.canonicalize();
      return q;
    }
    r = 1.0 / (r - fl);
  }
  Rational q(h0, k0);
  q.canonicalize();
  return q;
}

int numeric_rank(const Eigen::VectorXd& sv) {
  const int n = static_cast<int>(sv.size());
  if (n == 0 || sv(0) == 0.0) return 0;
  constexpr double floor_rel = 1e-8, sentinel = 1e-16;
  auto rel = [&](int k) { return k < n ? std::max(sv(k) / sv(0), sentinel) : sentinel; };
  int best = n;
  double best_gap = -1;
  for (int r = 1; r <= n; ++r) {
    if (r < n && sv(r) / sv(0) >= floor_rel) continue;
    const double gap = std::log10(rel(r - 1)) - std::log10(rel(r));
    if (gap > best_gap) {
      best_gap = gap;
      best = r;
    }
  }
  return best;
}

}  // namespace

SampleTable parse_sample_table(std::string_view text, std::string source) {
  SampleTable t;
  t.source = std::move(source);
  std::vector<std::vector<Scalar>> exact;
  bool all_exact = true;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> cells;
    for (std::string cell; fields >> cell;) cells.push_back(cell);
    if (cells.empty()) continue;
    if (t.names.empty()) {
      for (const auto& c : cells) {
        auto g = Generator::from_name(c);
        if (c != "u" && (!g || g->kind == GenKind::Exp))
          throw std::invalid_argument("sample table: unknown column '" + c + "'");
      }
      t.names = cells;
      continue;
    }
    if (cells.size() != t.names.size())
      throw std::invalid_argument("sample table: line " + std::to_string(lineno) + " has " +
                                  std::to_string(cells.size()) + " entries, expected " +
                                  std::to_string(t.names.size()));
    std::vector<std::complex<double>> row;
    std::vector<Scalar> xrow;
    for (const auto& c : cells) {
      auto [re, im] = split_complex(c);
      try {
        row.emplace_back(to_double(re), to_double(im));
      } catch (const std::exception&) {
        throw std::invalid_argument("sample table: bad entry '" + c + "' on line " + std::to_string(lineno));
      }
      auto qre = exact_real(re), qim = exact_real(im);
      if (qre && qim) {
        xrow.push_back(Scalar(*qre, *qim, 0, 0));
      } else {
        all_exact = false;
      }
    }
    t.rows.push_back(std::move(row));
    if (all_exact) exact.push_back(std::move(xrow));
  }
  if (t.names.empty()) throw std::invalid_argument("sample table: missing header");
  if (all_exact) t.exact = std::move(exact);
  return t;
}

RankResult finite_type_rank(const SampleTable& values, const std::vector<DiffPoly>& gens) {
  RankResult res;
  if (gens.empty()) return res;
  if (values.rows.size() < gens.size()) throw std::invalid_argument("finite_type_rank: fewer samples than generators");

  const int n = static_cast<int>(gens.size());
  std::vector<DiffPoly> cols;
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) {
    cols.push_back(gens[k]);
    cols.push_back(conjugate(gens[k]));
    labels.push_back("g" + std::to_string(k + 1));
    labels.push_back("conj(g" + std::to_string(k + 1) + ")");
  }
  const int rows = static_cast<int>(values.rows.size());
  Eigen::MatrixXcd m(rows, 2 * n);
  for (int r = 0; r < rows; ++r) {
    const Layout at = assignment_for(values.names, values.rows[r]);
    for (int c = 0; c < 2 * n; ++c) m(r, c) = eval_numeric(cols[c], at.values, at.u);
  }
  res.columns = 2 * n;

  auto rank_of = [&](int ncols) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.leftCols(ncols));
    return std::pair{numeric_rank(svd.singularValues()), Eigen::VectorXd(svd.singularValues())};
  };
  auto [full, sv] = rank_of(2 * n);
  res.rank = full;
  res.singular_values.assign(sv.data(), sv.data() + sv.size());

  for (int g = 1; g < n; ++g)
    if (rank_of(2 * g).first == full) {
      res.finite_type = g;
      break;
    }
  if (!res.finite_type) return res;

  // Certificate: express the first later generator through the first g pairs.
  const int g = *res.finite_type;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.leftCols(2 * g), Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-8);
  const Eigen::VectorXcd c = svd.solve(m.col(2 * g));
  for (int k = 0; k < 2 * g; ++k)
    if (std::abs(c(k)) > 1e-9) res.dependency.push_back({labels[k], c(k)});
  res.dependency.push_back({labels[2 * g], -1.0});

  if (values.exact) {
    std::vector<std::pair<int, Scalar>> coeffs;
    for (int k = 0; k < 2 * g; ++k)
      if (std::abs(c(k)) > 1e-9) coeffs.emplace_back(k, Scalar(rationalize(c(k).real()), rationalize(c(k).imag()), 0, 0));
    coeffs.emplace_back(2 * g, Scalar(-1));
    bool ok = true;
    for (const auto& row : *values.exact) {
      Scalar sum;
      for (const auto& [k, s] : coeffs) {
        auto v = exact_eval(cols[k], values.names, row);
        if (!v) return res;
        sum += s * *v;
      }
      ok = ok && sum.is_zero();
    }
    res.exact_verified = ok;
  }
  return res;
}

}  // namespace tzcl
