#include "crg/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace crg::quad {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 4> kLegendreNodes = {0.1834346424956498049394761, 0.5255324099163289858177390,
                                                  0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kLegendreWeights = {0.3626837833783619829651504, 0.3137066458778872873379622,
                                                    0.2223810344533744705443560, 0.1012285362903762591525314};

struct Panel {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const ComplexIntegrand& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex kronrod = kKronrodWeights[7] * f(mid);
  Complex gauss = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const Complex pair = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

AdaptiveResult gauss_kronrod(const ComplexIntegrand& f, double a, double b, double abs_tol,
                             int max_intervals) {
  std::priority_queue<Panel> heap;
  Panel first = kronrod_panel(f, a, b);
  Complex total = first.value;
  double total_error = first.error;
  heap.push(first);
  int intervals = 1;
  while (total_error > abs_tol && intervals < max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = kronrod_panel(f, worst.a, mid);
    Panel right = kronrod_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Recompute the sums from the panels to shed accumulated cancellation.
  Complex value{};
  double error = 0.0;
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
  }
  return {value, error, intervals, error <= abs_tol};
}

Complex gauss_legendre(const ComplexIntegrand& f, double a, double b, int panels) {
  panels = std::max(1, panels);
  const double width = (b - a) / panels;
  Complex total{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    Complex acc{};
    for (int i = 0; i < 4; ++i) {
      const double dx = half * kLegendreNodes[i];
      acc += kLegendreWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    total += half * acc;
  }
  return total;
}

}  // namespace crg::quad
