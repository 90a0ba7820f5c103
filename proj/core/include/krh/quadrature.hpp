#pragma once

#include <functional>
#include <span>

namespace krh {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subintervals_used = 0;
  /// Analytic remainder beyond any truncation point; 0 when the domain was
  /// covered entirely.
  double tail_bound = 0.0;
  /// False when the subdivision limit was hit before the tolerance; the value
  /// and error estimate are still honest.
  bool tolerance_met = true;
};

inline QuadratureResult merge(const QuadratureResult& a, const QuadratureResult& b) {
  return {a.value + b.value, a.abs_error_estimate + b.abs_error_estimate,
          a.subintervals_used + b.subintervals_used, a.tail_bound + b.tail_bound,
          a.tolerance_met && b.tolerance_met};
}

/// Adaptive 15-point Gauss-Kronrod over the finite interval [a, b]. Panel
/// error is |K15 - G7|; the worst panel is bisected until the summed error
/// drops below rel_tol * |value| or max_subintervals panels exist. Interior
/// breakpoints seed the initial panel set so known kinks never sit inside a
/// panel.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol,
                                    std::span<const double> breakpoints = {},
                                    int max_subintervals = 10000);

}  // namespace krh
