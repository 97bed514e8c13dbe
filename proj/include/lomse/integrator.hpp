#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "lomse/error.hpp"

namespace lomse {

/// One accepted step of the Dormand–Prince 5(4) pair together with its
/// fourth-order continuous extension (Hairer–Nørsett–Wanner, `contd5`).
template <typename Scalar, int Dim>
struct DenseSegment {
  using State = Eigen::Matrix<Scalar, Dim, 1>;

  Scalar t0{};
  Scalar h{};
  // P(theta) = c0 + theta (c1 + (1-theta)(c2 + theta (c3 + (1-theta) c4)))
  Eigen::Matrix<Scalar, Dim, 5> coeff;

  Scalar t1() const { return t0 + h; }
  Scalar theta(Scalar t) const { return (t - t0) / h; }

  State eval(Scalar t) const {
    const Scalar th = theta(t);
    const Scalar th1 = Scalar(1) - th;
    return coeff.col(0) +
           th * (coeff.col(1) + th1 * (coeff.col(2) + th * (coeff.col(3) + th1 * coeff.col(4))));
  }

  /// d/dt of the interpolant.
  State derivative(Scalar t) const {
    const Scalar th = theta(t);
    const State c1 = coeff.col(1), c2 = coeff.col(2), c3 = coeff.col(3), c4 = coeff.col(4);
    const State a = c3 + c4;
    const State d = (c1 + c2) + Scalar(2) * (a - c2) * th - Scalar(3) * (c4 + a) * th * th +
                    Scalar(4) * c4 * th * th * th;
    return d / h;
  }
};

struct StepControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double min_step = 1e-14;
  double max_step = 0.5;
  double initial_step = 1e-3;
  // Error scale abs_tol + rel_tol*|y|_inf shared by all components instead of per component.
  bool norm_relative = false;
};

/// Adaptive explicit Runge–Kutta (Dormand–Prince 5(4), FSAL) for autonomous systems y' = f(y).
template <typename Scalar, int Dim>
class DormandPrince {
 public:
  using State = Eigen::Matrix<Scalar, Dim, 1>;
  using Segment = DenseSegment<Scalar, Dim>;

  explicit DormandPrince(StepControl control) : control_(control) {}

  /// Advances (t, y, dy) by one accepted step of signed size <= |h|, updating h to the
  /// proposal for the next step. `dy` must hold f(y) on entry (FSAL).
  template <typename Rhs>
  Segment step(Rhs&& f, Scalar& t, State& y, State& dy, Scalar& h) const {
    const Scalar dir = h < 0 ? Scalar(-1) : Scalar(1);
    Scalar fac_max = Scalar(10);
    bool last_nonfinite = false;
    for (;;) {
      if (std::abs(h) < Scalar(control_.min_step)) {
        throw Error(last_nonfinite ? ErrorCode::NonFiniteState : ErrorCode::StepSizeUnderflow,
                    "step size fell below the floor");
      }
      h = dir * std::min(std::abs(h), Scalar(control_.max_step));

      const State k1 = dy;
      const State k2 = f(State(y + h * (a21 * k1)));
      const State k3 = f(State(y + h * (a31 * k1 + a32 * k2)));
      const State k4 = f(State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
      const State k5 = f(State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
      const State k6 = f(State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
      const State y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      const State k7 = f(y1);
      const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      if (!y1.allFinite() || !k7.allFinite() || !err.allFinite()) {
        last_nonfinite = true;
        h *= Scalar(0.2);
        fac_max = Scalar(1);
        continue;
      }
      last_nonfinite = false;

      Scalar sum = 0;
      const Scalar scale_norm = std::max(y.cwiseAbs().maxCoeff(), y1.cwiseAbs().maxCoeff());
      for (int i = 0; i < Dim; ++i) {
        const Scalar mag = control_.norm_relative ? scale_norm : std::max(std::abs(y(i)), std::abs(y1(i)));
        const Scalar sk = Scalar(control_.abs_tol) + Scalar(control_.rel_tol) * mag;
        sum += (err(i) / sk) * (err(i) / sk);
      }
      const Scalar err_norm = std::sqrt(sum / Scalar(Dim));
      const Scalar fac = err_norm == 0
                             ? fac_max
                             : std::clamp(Scalar(0.9) * std::pow(err_norm, Scalar(-0.2)), Scalar(0.2), fac_max);
      if (err_norm > 1) {
        h *= fac;
        fac_max = Scalar(1);
        continue;
      }

      Segment seg;
      seg.t0 = t;
      seg.h = h;
      const State ydiff = y1 - y;
      const State bspl = h * k1 - ydiff;
      seg.coeff.col(0) = y;
      seg.coeff.col(1) = ydiff;
      seg.coeff.col(2) = bspl;
      seg.coeff.col(3) = ydiff - h * k7 - bspl;
      seg.coeff.col(4) = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      t += h;
      y = y1;
      dy = k7;
      h *= fac;
      return seg;
    }
  }

 private:
  StepControl control_;

  static constexpr Scalar a21 = Scalar(1) / 5;
  static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                          a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
  static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33, a63 = Scalar(46732) / 5247,
                          a64 = Scalar(49) / 176, a65 = Scalar(-5103) / 18656;
  static constexpr Scalar a71 = Scalar(35) / 384, a73 = Scalar(500) / 1113, a74 = Scalar(125) / 192,
                          a75 = Scalar(-2187) / 6784, a76 = Scalar(11) / 84;
  static constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695, e4 = Scalar(71) / 1920,
                          e5 = Scalar(-17253) / 339200, e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;
  static constexpr Scalar d1 = Scalar(-12715105075.0L) / Scalar(11282082432.0L),
                          d3 = Scalar(87487479700.0L) / Scalar(32700410799.0L),
                          d4 = Scalar(-10690763975.0L) / Scalar(1880347072.0L),
                          d5 = Scalar(701980252875.0L) / Scalar(199316789632.0L),
                          d6 = Scalar(-1453857185.0L) / Scalar(822651844.0L),
                          d7 = Scalar(69997945.0L) / Scalar(29380423.0L);
};

}  // namespace lomse
