#pragma once

// Adaptive Gauss-Kronrod (G7, K15) integration on finite intervals.

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "sympsig/errors.hpp"

namespace sympsig {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                                  0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
  double c = (a + b) / 2, h = (b - a) / 2;
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 8; ++i) {
    double x = kXgk[i];
    double fv;
    if (i == 7) {
      fv = f(c);
    } else {
      fv = f(c - h * x) + f(c + h * x);
    }
    k += kWgk[i] * fv;
    if (i % 2 == 1) g += kWg[i / 2] * fv;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = k * h;
  p.error = std::abs((k - g) * h);
  return p;
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance `tol`. Throws
// ConvergenceError when the error estimate stays above tolerance after the
// panel budget is exhausted.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double tol = 1e-8,
                     int max_panels = 4000) {
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk15(f, a, b));
  long evals = 15;
  double total_value = panels.top().value;
  double total_error = panels.top().error;
  int count = 1;
  while (total_error > tol && count < max_panels) {
    detail::Panel worst = panels.top();
    panels.pop();
    double mid = (worst.a + worst.b) / 2;
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted at machine precision
      panels.push(worst);
      break;
    }
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    evals += 30;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Recompute sums from the panels for a stable final answer.
  double value = 0.0, error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  if (error > std::max(tol * 10, 1e-12))
    throw ConvergenceError("quadrature did not reach the requested tolerance", error);
  return {value, error, evals};
}

}  // namespace sympsig
