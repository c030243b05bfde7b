#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tzcl/form.hpp"

namespace tzcl {

/// Sparse linear system over Q(i, sqrt2): rows[r] . x = rhs[r].
struct LinearSystem {
  using Row = std::map<int, Scalar>;

  int columns = 0;
  std::vector<Row> rows;
  std::vector<Scalar> rhs;

  explicit LinearSystem(int cols = 0) : columns(cols) {}
  void add_row(Row row, Scalar b = Scalar());
};

/// x = particular + span(nullspace).
struct SolutionSpace {
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> nullspace;
  int rank = 0;
  std::vector<int> pivots;
};

/// Exact Gauss-Jordan elimination, pivoting on the first nonzero column.
/// nullopt when the system is inconsistent. Free variables are set to zero in the
/// particular solution; nullspace vectors are indexed by free column, in column order.
std::optional<SolutionSpace> linear_solve_exact(const LinearSystem& sys);

enum class AnsatzClass {
  PureU,   ///< polynomials in u_j
  PureUb,  ///< polynomials in ub_j
  ExpU,    ///< e^{qu} times polynomials in u_j
  ExpUb,   ///< e^{qu} times polynomials in ub_j
  General  ///< z, zb, u_j, ub_j and e^{qu}
};

const char* to_string(AnsatzClass c);

/// Bounds for the General class and the exponent lattice of the Exp classes.
struct AnsatzBounds {
  int max_u_order = -1;       ///< highest u_j allowed; -1 = none (pure classes ignore this)
  int max_ub_order = -1;
  unsigned max_degree = 0;    ///< total degree in jets (General only)
  unsigned max_z_degree = 0;  ///< General only
  unsigned max_zb_degree = 0;
  int exp_window = 4;         ///< exponents q = k alpha / 2 with |k| <= exp_window
  bool include_constant = true;
};

struct Ansatz {
  int weight = 0;
  AnsatzClass cls = AnsatzClass::PureU;
  std::vector<JetMonomial> monomials;

  DiffPoly combine(const std::vector<Scalar>& coeffs) const;
};

/// All monomials of weight d in the class, in canonical order.
std::vector<JetMonomial> enumerate_monomials(int d, AnsatzClass cls, const Rational& alpha = Rational(-1),
                                             const AnsatzBounds& bounds = {});

Ansatz make_ansatz(int d, AnsatzClass cls, const Rational& alpha, const AnsatzBounds& bounds = {});

/// Basis of {P : E(P) = 0} among weight-d pure polynomials (u_j for d > 0, ub_j for d < 0),
/// each normalized to leading coefficient 1. d = 0 is not supported (q involves z, zb).
std::vector<DiffPoly> kernel_basis(const SystemParams& sp, int d);

struct IntegrationOptions {
  std::optional<int> weight;         ///< default: weight of the form
  std::optional<AnsatzClass> cls;    ///< default: inferred from the form
  int exp_window = 4;
  bool widen = true;                 ///< retry once with a doubled exponent window
};

/// Solves e_{-1}G = P, e_{-1bar}G = Q for weighted-homogeneous G (dG = w mod the ideal).
/// nullopt means no solution exists in the ansatz ("not exact").
std::optional<DiffPoly> integrate_oneform(const SystemParams& sp, const OneFormModI& w,
                                          const IntegrationOptions& opts = {});

}  // namespace tzcl
