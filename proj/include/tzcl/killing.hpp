#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tzcl/recursion.hpp"

namespace tzcl {

/// 3x3 matrix with DiffPoly entries.
class Mat3 {
 public:
  Mat3() = default;
  static Mat3 scalar_matrix(std::array<Scalar, 9> entries);

  DiffPoly& operator()(int i, int j) { return e_[3 * i + j]; }
  const DiffPoly& operator()(int i, int j) const { return e_[3 * i + j]; }
  bool is_zero() const;

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Mat3 operator*(const DiffPoly& c, const Mat3& a);
  friend bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<DiffPoly, 9> e_{};
};

Mat3 bracket(const Mat3& a, const Mat3& b);
DiffPoly trace(const Mat3& m);
Mat3 e_minus1(const SystemParams& sp, const Mat3& m);
Mat3 e_minus1bar(const SystemParams& sp, const Mat3& m);
/// Row-major, one row per line, entries in the algebra grammar.
std::string format_mat(const Mat3& m);

// Eigenspaces of the order-6 automorphism tau(X) = R(-X^t)R^{-1}, with their parameters.
Mat3 g0(const DiffPoly& a);
Mat3 g1(const DiffPoly& b, const DiffPoly& c);
Mat3 g2(const DiffPoly& f);
Mat3 g3(const DiffPoly& r);
Mat3 g4(const DiffPoly& s);
Mat3 g5(const DiffPoly& t, const DiffPoly& v);

/// Parameters of the g_j component of m, in the order of the constructors above.
std::vector<DiffPoly> eigen_coordinates(const Mat3& m, int j);
/// Component of m in g_j (trace part discarded).
Mat3 eigenspace_project(const Mat3& m, int j);

/// Finite Laurent polynomial in lambda with Mat3 coefficients.
using LoopMatrix = std::map<int, Mat3>;

/// True when every lambda^k block lies in g_{k mod 6}.
bool is_twisted(const LoopMatrix& x);

/// psi_lambda = sum_k lambda^k (dz[k] zeta + dzb[k] zetabar).
struct Connection {
  LoopMatrix dz, dzb;
};

/// The su(3) family psi_lambda = lambda^{-1} psi_{-1} + psi_0 + lambda psi_1 (alpha = -1 only).
Connection build_connection(const SystemParams& sp);

/// zeta^zetabar coefficient of d psi + psi ^ psi mod the ideal, per power of lambda.
/// Computed with the exterior-form layer; throws if any other wedge term survives.
LoopMatrix flatness_residual(const SystemParams& sp);

/// One window (a, b, c, f, r, s, t, v, a') of Killing-field components.
struct KillingChain {
  DiffPoly a, b, c, f, r, s, t, v, a_next;
};

/// Killing components from a P_step trace: stage j is scaled by 3^{-ceil(j/2)}
/// (b, f by 1/3; r, s by 1/9; t, a' by 1/27), then c and v are read off the dz equations.
/// The whole window is multiplied by `scale`.
KillingChain killing_window(const SystemParams& sp, const RecursionTrace& tr, const Scalar& scale = Scalar(1));

/// The window preceding a = u0: t = i/sqrt2, v = -e^{-u}/2, all else zero, a' = u0.
KillingChain vacuum_window();

/// Blocks lambda^{6n}, ..., lambda^{6n+5} of X_lambda with the e^{ku} factors of the parametrization.
LoopMatrix assemble_killing_field(const KillingChain& w, int n);

/// dX + [psi, X] restricted to lambda^{6n} .. lambda^{6n+5}, using prev for lambda^{6n-1}
/// and cur.a_next for lambda^{6n+6}. First: zeta part, second: zetabar part.
std::pair<LoopMatrix, LoopMatrix> killing_equation_residual(const SystemParams& sp, const KillingChain& prev,
                                                            const KillingChain& cur);

struct NamedResidual {
  std::string name;
  DiffPoly value;
};

/// The 16 scalar component equations (8 dz, 8 dzbar) for window cur, with prev supplying
/// t^{n-1}, v^{n-1} to the first dzbar equation.
std::vector<NamedResidual> component_equations_check(const SystemParams& sp, const KillingChain& prev,
                                                     const KillingChain& cur);

/// Runs the 16 equations along the P-chain from seed: the window of seed, plus the first
/// dzbar equation at the next window when the seed has no vacuum predecessor.
std::vector<NamedResidual> chain_component_check(const SystemParams& sp, const DiffPoly& seed);

/// A_{-1} (zeta part of psi_{-1}) and A_1 (zetabar part of psi_1).
Mat3 A_minus1(const SystemParams& sp);
Mat3 A_plus1(const SystemParams& sp);

/// [A_{-1}, [A_1, P]].
Mat3 double_bracket(const SystemParams& sp, const Mat3& p);

/// D(P) = Delta P + 4[A_{-1},[A_1,P]] with Delta = -4 e_{-1bar} e_{-1}; P must lie in g0.
Mat3 D_operator(const SystemParams& sp, const Mat3& p);

/// kappa(X, Y) = trace(XY).
DiffPoly killing_form(const Mat3& x, const Mat3& y);

}  // namespace tzcl
