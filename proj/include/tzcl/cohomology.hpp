#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tzcl/recursion.hpp"

namespace tzcl {

/// q = z u0 - zb ub0, the weight-0 generating function.
DiffPoly q_function();

/// phi~_{P,Q} = Q dP + P dbar Q = (Q e_{-1}P) zeta + (P e_{-1bar}Q) zetabar.
OneFormModI phi_tilde(const SystemParams& sp, const DiffPoly& P, const DiffPoly& Q);

/// phi_i = i/(2(2i-1)) J(P dq - q dP) mod the ideal; P must have weight 2i-1.
OneFormModI phi_rep(const SystemParams& sp, const DiffPoly& P, int i);

/// e_{-1}(zetabar part) - e_{-1bar}(zeta part); zero iff closed mod the ideal.
DiffPoly closed_mod_ideal(const SystemParams& sp, const OneFormModI& w);

/// A closed one-form with where it came from.
struct CohomologyClassRep {
  OneFormModI form;
  std::optional<int> weight;
  std::string provenance;
};

struct TrivialityResult {
  bool trivial = false;
  DiffPoly potential;  ///< G with dG = form mod the ideal, when trivial
};

/// Decides exactness by integrate_oneform. Throws invalid_argument unless w is closed mod the ideal.
TrivialityResult triviality_test(const SystemParams& sp, const OneFormModI& w, const IntegrationOptions& opts = {});

/// B^{ij} of the normal form at level k.
DiffPoly normal_form_B(const SystemParams& sp, const DiffPoly& A, int i, int j, int k);

/// Phi = eta0^rho + A Psi + sum_{1<=i<j<=k} (B^{ij} eta_i^eta_j + Bbar^{ij} etabar_i^etabar_j)
/// with rho = -J dA / 2 (no eta0 part) and Psi = -(i/2)(zeta^eta1 - zetabar^etabar1).
/// Bbar^{ij}[A] := conj(B^{ij}[conj A]). Throws invalid_argument if A violates A_u = A_{u_i ub_j} = 0
/// or E(A) = 0.
Form normal_form_Phi(const SystemParams& sp, const DiffPoly& A, int k);

struct GaugeResult {
  DiffPoly A, B, G;
  OneFormModI phi_hat;
};

class GaugeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Translation-invariant representative phi^ = phi~_{P,q} - dG with G = zA - zb B, where
/// dA = phi~_{P,u0} and dB = phi~_{P,ub0} mod the ideal. Throws IntegrationFailed if A or B
/// do not integrate, GaugeError if phi^ depends on z, zb or differs from phi~_{P,q} by more than dG.
GaugeResult translation_gauge(const SystemParams& sp, const DiffPoly& P, const IntegrationOptions& opts = {});

/// Numeric samples: one column per jet coordinate ("u", "z", "zb", "u0", "ub0", ...).
struct SampleTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::complex<double>>> rows;
  /// Exact values when every entry is a rational (re+imi with decimal or p/q parts).
  std::optional<std::vector<std::vector<Scalar>>> exact;
  std::string source;
};

/// Whitespace or comma separated; first non-comment line is the header; '#' starts a comment.
SampleTable parse_sample_table(std::string_view text, std::string source = "");

struct DependencyTerm {
  std::string label;  ///< "g1", "conj(g1)", ...
  std::complex<double> coeff;
};

struct RankResult {
  int rank = 0;
  int columns = 0;
  std::vector<double> singular_values;
  /// Least g such that g_{g+1}, g_{g+2}, ... lie in the span of g_1..g_g and their conjugates;
  /// nullopt means independent at this sample size.
  std::optional<int> finite_type;
  /// sum coeff * label = 0 for the first dependent generator (empty when independent).
  std::vector<DependencyTerm> dependency;
  /// Exact re-check of the rationalized certificate; set only when the samples are rational
  /// and the generators have no exponentials.
  std::optional<bool> exact_verified;
};

/// Numerical rank of [g_1, conj g_1, g_2, conj g_2, ...] evaluated on the samples.
/// Threshold: largest gap in the singular values, ignoring values below 1e-8 relative.
/// Throws invalid_argument when there are fewer rows than generators.
RankResult finite_type_rank(const SampleTable& values, const std::vector<DiffPoly>& gens);

}  // namespace tzcl
