#pragma once

// Reference quadrature used only by the oracles: Gauss-Kronrod 10/21, global
// adaptive bisection, and Fourier tails by zero splitting + Wynn epsilon.

#include "fermi/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

namespace fermi::oracle {

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kKronrodWeights{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980111557, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, ..., 9)
inline constexpr std::array<double, 5> kGaussWeights{0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                                     0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                                     0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

} // namespace detail

// Single Gauss-Kronrod 10/21 panel; error = |K - G|.
template <class T, class F>
QuadratureResult<T> gauss_kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T kron = detail::kKronrodWeights[10] * fc;
  T gauss{};
  for (int i = 0; i < 10; ++i) {
    const double dx = h * detail::kKronrodNodes[i];
    const T s = f(c - dx) + f(c + dx);
    kron += detail::kKronrodWeights[i] * s;
    if (i % 2 == 1)
      gauss += detail::kGaussWeights[i / 2] * s;
  }
  return {kron * h, detail::magnitude(T((kron - gauss) * h)), 21};
}

// Global adaptive bisection until the summed error estimate is below
// max(abs_tol, rel_tol |I|).
template <class T, class F>
QuadratureResult<T> adaptive(const F& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                             long max_evaluations = 2000000) {
  struct Piece {
    double a, b;
    QuadratureResult<T> r;
    bool operator<(const Piece& o) const { return r.error_estimate < o.r.error_estimate; }
  };
  std::priority_queue<Piece> queue;
  auto first = gauss_kronrod<T>(f, a, b);
  T total = first.value;
  double err = first.error_estimate;
  long evals = first.evaluations;
  queue.push({a, b, first});
  while (err > std::max(abs_tol, rel_tol * detail::magnitude(total))) {
    if (evals >= max_evaluations)
      throw ConvergenceError("adaptive quadrature: evaluation budget exhausted (error " + std::to_string(err) + ")");
    const Piece p = queue.top();
    queue.pop();
    const double m = 0.5 * (p.a + p.b);
    const auto left = gauss_kronrod<T>(f, p.a, m);
    const auto right = gauss_kronrod<T>(f, m, p.b);
    evals += 42;
    total += left.value + right.value - p.r.value;
    err += left.error_estimate + right.error_estimate - p.r.error_estimate;
    queue.push({p.a, m, left});
    queue.push({m, p.b, right});
    if (!(m > p.a && m < p.b))
      throw ConvergenceError("adaptive quadrature: interval underflow");
  }
  // re-sum to shed the drift of the running updates
  T clean{};
  double clean_err = 0.0;
  while (!queue.empty()) {
    clean += queue.top().r.value;
    clean_err += queue.top().r.error_estimate;
    queue.pop();
  }
  return {clean, clean_err, evals};
}

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the estimate
// and the difference to the previous one as an error proxy.
template <class T>
std::pair<T, double> wynn_epsilon(const std::vector<T>& sums) {
  const std::size_t n = sums.size();
  if (n < 3)
    return {sums.back(), n >= 2 ? detail::magnitude(T(sums[n - 1] - sums[n - 2])) : 1e300};
  // columns e_{-1} = 0, e_0 = S; only even columns are estimates
  std::vector<T> prev(n + 1, T{}), cur(sums.begin(), sums.end());
  T best = sums.back();
  double best_err = detail::magnitude(T(sums[n - 1] - sums[n - 2]));
  for (std::size_t k = 1; cur.size() >= 2; ++k) {
    std::vector<T> next(cur.size() - 1);
    bool ok = true;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const T d = cur[j + 1] - cur[j];
      if (detail::magnitude(d) == 0.0) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + T(1.0) / d;
    }
    if (!ok)
      break;
    if (k % 2 == 0 && next.size() >= 2) {
      const double e = detail::magnitude(T(next.back() - next[next.size() - 2]));
      best = next.back();
      best_err = e;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {best, best_err};
}

// int_a^inf g(s) e^{i omega s} ds for smooth g decaying at least like 1/s.
// omega != 0: split at spacing pi/|omega| and accelerate the partial sums.
// omega == 0: substitute s = a/t (needs g = O(1/s^2)).
template <class G>
QuadratureResult<std::complex<double>> fourier_tail(const G& g, double a, double omega, double tol,
                                                    int max_pieces = 5000) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  QuadratureResult<C> out;
  if (omega == 0.0) {
    auto mapped = [&](double t) -> C { return t == 0.0 ? C(0.0) : C(g(a / t)) * (a / (t * t)); };
    return adaptive<C>(mapped, 0.0, 1.0, tol * 0.1, 0.0);
  }
  const double half = std::numbers::pi / std::abs(omega);
  auto integrand = [&](double s) -> C { return C(g(s)) * std::exp(i * (omega * s)); };
  double lo = a;
  double hi = (std::floor(a / half) + 1.0) * half;
  std::vector<C> sums;
  C running{};
  double piece_err = 0.0;
  double last_err = 1e300;
  int stable = 0;
  for (int k = 0; k < max_pieces; ++k) {
    const auto r = adaptive<C>(integrand, lo, hi, tol * 1e-3, 1e-14);
    running += r.value;
    piece_err += r.error_estimate;
    out.evaluations += r.evaluations;
    sums.push_back(running);
    lo = hi;
    hi += half;
    if (sums.size() > 60)
      sums.erase(sums.begin());
    if (sums.size() >= 8) {
      const auto [est, err] = wynn_epsilon(sums);
      out.value = est;
      last_err = err;
      stable = err < tol ? stable + 1 : 0;
      if (stable >= 3) {
        out.error_estimate = err + piece_err;
        return out;
      }
    }
  }
  throw ConvergenceError("fourier_tail: no convergence (last difference " + std::to_string(last_err) + ")");
}

// int_a^b f split at the zeros of sin(omega s): pieces of length pi/|omega|.
template <class T, class F>
QuadratureResult<T> adaptive_split(const F& f, double a, double b, double omega, double abs_tol) {
  QuadratureResult<T> out;
  if (omega == 0.0)
    return adaptive<T>(f, a, b, abs_tol, 1e-15);
  const double half = std::numbers::pi / std::abs(omega);
  std::vector<double> cuts{a};
  for (double k = std::floor(a / half) + 1.0; k * half < b; k += 1.0)
    cuts.push_back(k * half);
  cuts.push_back(b);
  const double share = abs_tol / double(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k])
      continue;
    const auto r = adaptive<T>(f, cuts[k], cuts[k + 1], share, 1e-15);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
  }
  return out;
}

} // namespace fermi::oracle
