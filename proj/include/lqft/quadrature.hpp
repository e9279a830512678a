#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lqft/error.hpp"

namespace lqft {

// Adaptive Gauss-Kronrod (G7,K15) quadrature on finite intervals.
// Works for real and complex integrands; the error estimate follows the
// usual (200|K15-G7|)^{3/2} heuristic of QUADPACK.

namespace detail {

// Kronrod 15-point nodes and weights on [-1,1] (positive half), with the
// embedded 7-point Gauss weights on the shared nodes.
inline constexpr double kGK15Nodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};

inline constexpr double kK15Weights[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};

// Gauss-7 weights for nodes 0,2,4,6 of the table above.
inline constexpr double kG7Weights[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

template <typename T>
inline double vnorm(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>) {
    return std::abs(v);
  } else {
    return std::abs(static_cast<double>(v));
  }
}

template <typename F, typename T>
void gk15(const F& f, double a, double b, T& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  T fc = f(c);
  T k15 = fc * kK15Weights[0];
  T g7 = fc * kG7Weights[0];
  for (int i = 1; i < 8; ++i) {
    const double x = h * kGK15Nodes[i];
    T s = f(c + x) + f(c - x);
    k15 += s * kK15Weights[i];
    if (i % 2 == 0) g7 += s * kG7Weights[i / 2];
  }
  k15 *= h;
  g7 *= h;
  result = k15;
  double diff = vnorm<T>(k15 - g7);
  err = 200.0 * diff;
  err = err * std::sqrt(err);
  err = std::min(err, diff);
  if (err == 0.0) err = diff;
}

}  // namespace detail

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 4000;
  bool throw_on_failure = true;
};

template <typename T>
struct QuadResult {
  T value{};
  double error{0.0};
  bool converged{true};
};

// Integrate f over [a,b]. T is deduced from f's return type.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadOptions& opt = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;

  struct Interval {
    double a, b, err;
    T val;
  };

  QuadResult<T> out;
  if (a == b) return out;

  Interval first{a, b, 0.0, T{}};
  detail::gk15(f, a, b, first.val, first.err);

  std::vector<Interval> heap{first};
  T total = first.val;
  double total_err = first.err;

  auto tol = [&](void) {
    return std::max(opt.abs_tol, opt.rel_tol * detail::vnorm<T>(total));
  };

  while (total_err > tol() && heap.size() < opt.max_intervals) {
    // split the interval with the largest error
    std::size_t worst = 0;
    for (std::size_t i = 1; i < heap.size(); ++i)
      if (heap[i].err > heap[worst].err) worst = i;

    Interval cur = heap[worst];
    const double mid = 0.5 * (cur.a + cur.b);
    if (mid == cur.a || mid == cur.b) break;  // cannot refine further

    Interval left{cur.a, mid, 0.0, T{}}, right{mid, cur.b, 0.0, T{}};
    detail::gk15(f, left.a, left.b, left.val, left.err);
    detail::gk15(f, right.a, right.b, right.val, right.err);

    total += left.val + right.val - cur.val;
    total_err += left.err + right.err - cur.err;
    heap[worst] = left;
    heap.push_back(right);
  }

  // recompute the accumulated error to avoid drift from the incremental sums
  total = T{};
  total_err = 0.0;
  for (const auto& iv : heap) {
    total += iv.val;
    total_err += iv.err;
  }

  out.value = total;
  out.error = total_err;
  out.converged = total_err <= std::max(tol(), 4.0 * tol());
  if (!out.converged && opt.throw_on_failure)
    throw numerical_error("quadrature did not reach tolerance", total_err);
  return out;
}

// Integrate over [a,b] split at user-supplied interior breakpoints (useful
// when the integrand has a localized feature whose position is known).
template <typename F>
auto integrate_segments(const F& f, const std::vector<double>& pts,
                        const QuadOptions& opt = {})
    -> QuadResult<std::decay_t<decltype(f(pts.front()))>> {
  using T = std::decay_t<decltype(f(pts.front()))>;
  QuadResult<T> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto r = integrate(f, pts[i], pts[i + 1], opt);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
  }
  return out;
}

}  // namespace lqft
