#include "ambsc/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

namespace ambsc::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesLimit = 2.0;
constexpr int kMaxIter = 500;

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw std::domain_error(std::string(name) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

// Steed's continued fraction (Temme normalisation) for K0, K1 at x >= 2.
struct KPair {
  double k0;
  double k1;
};

KPair bessel_k_cf(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

// Power series around 0, valid for 0 < x <= 2.
double k0_series(double x) {
  const double y = 0.25 * x * x;
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double term = 1.0;  // y^k / (k!)^2
  double harmonic = 0.0;
  double sum = -lg;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= y / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double add = term * (harmonic - lg);
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return sum;
}

// 1 - x K1(x) as -2y * sum_k [L + gamma - (H_k + H_{k+1})/2] y^k / (k!(k+1)!).
double one_minus_xk1_series(double x) {
  const double y = 0.25 * x * x;
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double term = 1.0;  // y^k / (k!(k+1)!)
  double hk = 0.0;
  double hk1 = 1.0;
  double sum = lg - 0.5 * (hk + hk1);
  for (int k = 1; k < kMaxIter; ++k) {
    term *= y / (static_cast<double>(k) * (k + 1));
    hk = hk1;
    hk1 += 1.0 / (k + 1);
    const double add = term * (lg - 0.5 * (hk + hk1));
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return -2.0 * y * sum;
}

// E1(t) for 0 < t <= 1 by its convergent series.
double e1_series(double t) {
  double sum = 0.0;
  double term = 1.0;  // (-t)^k / k!
  for (int k = 1; k < kMaxIter; ++k) {
    term *= -t / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(t) - sum;
}

// e^t E1(t) for t > 1 by the modified Lentz continued fraction.
double e1_scaled_cf(double t) {
  constexpr double tiny = 1e-300;
  double b = t + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

// Ei(x) for x > 0.
double ei_positive(double x) {
  if (x <= 40.0) {
    double sum = 0.0;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k < kMaxIter; ++k) {
      term *= x / k;
      const double add = term / k;
      sum += add;
      if (add < kEps * sum) break;
    }
    return kEulerGamma + std::log(x) + sum;
  }
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < kMaxIter; ++k) {
    const double prev = term;
    term *= k / x;
    if (term >= prev) break;
    sum += term;
    if (term < kEps * sum) break;
  }
  return std::exp(x) / x * sum;
}

// 7-point Gauss / 15-point Kronrod abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  if (x <= kSeriesLimit) return k0_series(x);
  return bessel_k_cf(x).k0;
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  if (x <= kSeriesLimit) return (1.0 - one_minus_xk1_series(x)) / x;
  return bessel_k_cf(x).k1;
}

double one_minus_x_k1(double x) {
  if (x == 0.0) return 0.0;
  if (std::isinf(x) && x > 0.0) return 1.0;
  require_positive(x, "one_minus_x_k1");
  if (x <= kSeriesLimit) return one_minus_xk1_series(x);
  return 1.0 - x * bessel_k_cf(x).k1;
}

double expint_ei(double x) {
  if (!std::isfinite(x) || x == 0.0) {
    throw std::domain_error("expint_ei: argument must be finite and nonzero");
  }
  if (x > 0.0) return ei_positive(x);
  const double t = -x;
  if (t <= 1.0) return -e1_series(t);
  return -e1_scaled_cf(t) * std::exp(-t);
}

double expint_e1_scaled(double x) {
  require_positive(x, "expint_e1_scaled");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

std::vector<double> QuadratureRule::plain_weights() const {
  std::vector<double> w(nodes.size());
  const double scale = std::numbers::pi / order;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    w[i] = scale * std::sqrt(1.0 - nodes[i] * nodes[i]);
  }
  return w;
}

QuadratureRule chebyshev_nodes(int order) {
  if (order < 1) throw std::domain_error("chebyshev_nodes: order must be >= 1");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(static_cast<std::size_t>(order));
  for (int m = 1; m <= order; ++m) {
    rule.nodes[m - 1] = std::cos((2.0 * m - 1.0) * std::numbers::pi / (2.0 * order));
  }
  return rule;
}

IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                                     double hi, double tol, IntegrationOptions opts) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::domain_error("integrate_adaptive: need finite lo < hi");
  }
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: tol must be > 0");

  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, lo, hi, 0));
  double total = heap.top().value;
  double error = heap.top().error;
  std::vector<Segment> frozen;  // segments at max depth, cannot be split further
  double frozen_error = 0.0;

  while (error > tol && !heap.empty() &&
         static_cast<int>(heap.size() + frozen.size()) < opts.max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    if (worst.depth >= opts.max_depth) {
      frozen_error += worst.error;
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
    Segment right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  IntegrationResult result;
  result.value = 0.0;
  result.error = frozen_error;
  for (const auto& s : frozen) result.value += s.value;
  result.intervals = static_cast<int>(heap.size() + frozen.size());
  while (!heap.empty()) {
    result.value += heap.top().value;
    result.error += heap.top().error;
    heap.pop();
  }
  result.converged = result.error <= tol && std::isfinite(result.value);
  return result;
}

double adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                          double tol, IntegrationOptions opts) {
  const auto result = integrate_adaptive(f, lo, hi, tol, opts);
  if (!result.converged) {
    throw IntegrationError("adaptive_integrate: no convergence on [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "], achieved error " +
                               std::to_string(result.error),
                           result);
  }
  return result.value;
}

}  // namespace ambsc::specfun
