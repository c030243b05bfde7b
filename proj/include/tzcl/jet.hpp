#pragma once

#include <deque>
#include <memory>
#include <mutex>

#include "tzcl/diffpoly.hpp"

namespace tzcl {

/// Potential f = e^{-alpha u} - e^{2 alpha u} and the prolongation data derived from it.
///
/// alpha = -1 is the normalized Tzitzeica equation u_{z zb} = e^{-2u} - e^u.
class SystemParams {
 public:
  explicit SystemParams(Rational alpha = Rational(-1));

  const Rational& alpha() const { return alpha_; }
  const DiffPoly& f() const { return f_; }
  const DiffPoly& f_u() const { return f_u_; }
  const DiffPoly& f_uu() const { return f_uu_; }

  /// T^i; T^0 = f, T^{i+1} = sum_j C(i,j) u_{i-j} T^j_u. Memoized, thread-safe.
  const DiffPoly& T(int i) const;
  /// Conjugate of T^i.
  const DiffPoly& Tbar(int i) const;

 private:
  struct Memo {
    std::mutex lock;
    std::deque<DiffPoly> t, tbar;
  };

  Rational alpha_;
  DiffPoly f_, f_u_, f_uu_;
  std::shared_ptr<Memo> memo_;
};

/// The normalized Tzitzeica potential, alpha = -1.
const SystemParams& tzitzeica();

long binomial(int n, int k);

/// Total derivative e_{-1} = d/dz + u0 d/du + sum u_{i+1} d/du_i - sum Tbar^i d/dub_i.
DiffPoly e_minus1(const SystemParams& sp, const DiffPoly& p);
/// Conjugate total derivative e_{-1bar}.
DiffPoly e_minus1bar(const SystemParams& sp, const DiffPoly& p);
/// Linearization E(p) = e_{-1bar} e_{-1} p + f_u p.
DiffPoly E_lin(const SystemParams& sp, const DiffPoly& p);

}  // namespace tzcl
