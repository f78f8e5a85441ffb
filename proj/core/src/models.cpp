#include "crg/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "crg/error.hpp"
#include "crg/quadrature.hpp"

namespace crg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double reduce_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

Complex horner(const std::vector<Complex>& poly, Complex z) {
  Complex acc{};
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& poly, Complex z) {
  Complex acc{};
  for (std::size_t d = poly.size(); d-- > 1;) acc = acc * z + static_cast<double>(d) * poly[d];
  return acc;
}

bool is_zero_poly(const std::vector<Complex>& poly) {
  return std::all_of(poly.begin(), poly.end(), [](Complex c) { return c == Complex{}; });
}

// Durand-Kerner iteration followed by Newton polishing.
std::vector<Complex> polynomial_roots(std::vector<Complex> poly) {
  while (!poly.empty() && poly.back() == Complex{}) poly.pop_back();
  if (poly.size() <= 1) return {};
  const std::size_t degree = poly.size() - 1;
  const Complex lead = poly.back();
  for (Complex& c : poly) c /= lead;

  double bound = 0.0;
  for (std::size_t i = 0; i < degree; ++i) bound = std::max(bound, std::abs(poly[i]));
  bound = 1.0 + bound;

  std::vector<Complex> roots(degree);
  const Complex seed = std::polar(1.0, 0.4);
  for (std::size_t i = 0; i < degree; ++i) roots[i] = bound * std::pow(seed, static_cast<double>(i));

  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      Complex denom{1.0, 0.0};
      for (std::size_t j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == Complex{}) denom = Complex{1e-300, 0.0};
      const Complex step = horner(poly, roots[i]) / denom;
      roots[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0, std::abs(roots[i])));
    }
    if (change < 1e-15) break;
  }
  for (Complex& r : roots) {
    for (int iter = 0; iter < 5; ++iter) {
      const Complex d = horner_derivative(poly, r);
      if (d == Complex{}) break;
      r -= horner(poly, r) / d;
    }
  }
  return roots;
}

// log(1 - u) with care for small |u|.
Complex log_one_minus(Complex u) {
  const double re = 1.0 - u.real();
  const double im = -u.imag();
  double log_abs;
  if (std::abs(u) < 0.5) {
    log_abs = 0.5 * std::log1p(-2.0 * u.real() + std::norm(u));
  } else {
    log_abs = std::log(std::hypot(re, im));
  }
  return {log_abs, std::atan2(im, re)};
}

// sum_{k >= n0} (n0 / k)^s for s > 1, by explicit terms plus Euler-Maclaurin.
double normalized_hurwitz(double s, std::size_t n0) {
  const double base = static_cast<double>(n0);
  const std::size_t explicit_terms = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * s)));
  double sum = 0.0;
  for (std::size_t i = 0; i < explicit_terms; ++i) sum += std::pow(base / (base + static_cast<double>(i)), s);
  const double big_n = base + static_cast<double>(explicit_terms);
  const double x = std::pow(base / big_n, s);
  if (x == 0.0) return sum;
  sum += x * big_n / (s - 1.0) + 0.5 * x;
  // B_{2m} / (2m)!
  constexpr double kBernoulli[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
                                   1.0 / 47900160.0, -691.0 / 1307674368000.0};
  double rising = s;  // s (s+1) ... (s+2m-2)
  double n_power = big_n;
  for (int m = 1; m <= 6; ++m) {
    sum += x * kBernoulli[m - 1] * rising / n_power;
    rising *= (s + 2.0 * m - 1.0) * (s + 2.0 * m);
    n_power *= big_n * big_n;
  }
  return sum;
}

}  // namespace

Complex LogEval::value() const {
  if (!valid) return {};
  return std::exp(Complex{log_abs, phase});
}

double zero_hit_log_threshold() noexcept { return std::log(std::numeric_limits<double>::min()) + 50.0; }

std::optional<std::vector<Complex>> FunctionModel::zeros_within(double) const { return std::nullopt; }

// ---------------------------------------------------------------------------
// ExponentialSum

ExponentialSum::ExponentialSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  require(!terms_.empty(), "exponential sum needs at least one term");
  bool any_nonzero = false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    require(!terms_[i].poly.empty(), "term polynomial must have at least one coefficient");
    for (const Complex& c : terms_[i].poly)
      require(std::isfinite(c.real()) && std::isfinite(c.imag()), "coefficients must be finite");
    require(std::isfinite(terms_[i].exponent.real()) && std::isfinite(terms_[i].exponent.imag()),
            "exponents must be finite");
    any_nonzero = any_nonzero || !is_zero_poly(terms_[i].poly);
    for (std::size_t j = 0; j < i; ++j)
      require(terms_[i].exponent != terms_[j].exponent, "duplicate exponent in exponential sum");
  }
  require(any_nonzero, "exponential sum needs a term with a nonzero polynomial");
}

ExponentialSum ExponentialSum::exponential() { return ExponentialSum({{{1.0}, 1.0}}); }

ExponentialSum ExponentialSum::sine() {
  // (e^{iz} - e^{-iz}) / 2i
  return ExponentialSum({{{Complex{0.0, -0.5}}, Complex{0.0, 1.0}}, {{Complex{0.0, 0.5}}, Complex{0.0, -1.0}}});
}

ExponentialSum ExponentialSum::hyperbolic_cosine() { return ExponentialSum({{{1.0}, 1.0}, {{1.0}, -1.0}}); }

ExponentialSum ExponentialSum::polynomial(std::vector<Complex> coefficients) {
  return ExponentialSum({{std::move(coefficients), 0.0}});
}

LogEval ExponentialSum::eval_log(Complex z) const {
  struct Part {
    double log_mag;
    Complex unit;  // p / |p|, kept exact so that symmetric terms cancel exactly
    double phase;
  };
  std::vector<Part> parts;
  parts.reserve(terms_.size());
  double top = -kInf;
  for (const ExpTerm& term : terms_) {
    const Complex p = horner(term.poly, z);
    if (p == Complex{}) continue;
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      fail(ErrorCode::OverflowUnrepresentable, "polynomial coefficient overflows");
    const Complex bz = term.exponent * z;
    const double abs_p = std::abs(p);
    const double log_mag = std::log(abs_p) + bz.real();
    if (std::isnan(log_mag) || (std::isinf(log_mag) && log_mag > 0))
      fail(ErrorCode::OverflowUnrepresentable, "log|f| exceeds the real range");
    parts.push_back({log_mag, p / abs_p, reduce_phase(bz.imag())});
    top = std::max(top, log_mag);
  }
  if (parts.empty() || top == -kInf) return {-kInf, 0.0, false};

  Complex sum{};
  for (const Part& part : parts) sum += part.unit * std::polar(std::exp(part.log_mag - top), part.phase);
  const double mag = std::abs(sum);
  if (mag == 0.0) return {-kInf, 0.0, false};
  const double log_abs = top + std::log(mag);
  if (log_abs < zero_hit_log_threshold()) return {-kInf, 0.0, false};
  return {log_abs, reduce_phase(std::arg(sum)), true};
}

Complex ExponentialSum::log_derivative(Complex z) const {
  struct Part {
    Complex p, q;
    Complex bz;
    double weight_log;
  };
  std::vector<Part> parts;
  parts.reserve(terms_.size());
  double shift = -kInf;
  for (const ExpTerm& term : terms_) {
    const Complex p = horner(term.poly, z);
    const Complex q = horner_derivative(term.poly, z) + term.exponent * p;
    const double scale = std::max(std::abs(p), std::abs(q));
    if (scale == 0.0) continue;
    const Complex bz = term.exponent * z;
    const double weight_log = bz.real() + std::log(scale);
    if (!std::isfinite(weight_log)) fail(ErrorCode::OverflowUnrepresentable, "term overflows in log derivative");
    parts.push_back({p, q, bz, weight_log});
    shift = std::max(shift, weight_log);
  }
  if (parts.empty()) fail(ErrorCode::NearZero, "all terms vanish");

  Complex s0{}, s1{};
  double magnitude = 0.0;
  for (const Part& part : parts) {
    const Complex e = std::exp(Complex{part.bz.real() - shift, reduce_phase(part.bz.imag())});
    s0 += part.p * e;
    s1 += part.q * e;
    magnitude += std::abs(part.p * e);
  }
  if (std::abs(s0) <= 64.0 * std::numeric_limits<double>::epsilon() * magnitude || std::abs(s0) == 0.0)
    fail(ErrorCode::NearZero, "f vanishes relative to its terms");
  return s1 / s0;
}

std::optional<std::vector<Complex>> ExponentialSum::zeros_within(double radius) const {
  if (terms_.size() != 1) return std::nullopt;
  std::vector<Complex> out;
  for (const Complex& root : polynomial_roots(terms_.front().poly))
    if (std::abs(root) <= radius) out.push_back(root);
  return out;
}

double ExponentialSum::order() const {
  for (const ExpTerm& t : terms_)
    if (t.exponent != Complex{} && !is_zero_poly(t.poly)) return 1.0;
  return 0.0;
}

std::string ExponentialSum::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "expsum";
  for (const ExpTerm& t : terms_) {
    out << " [";
    for (std::size_t i = 0; i < t.poly.size(); ++i) out << (i ? "," : "") << t.poly[i];
    out << "]exp" << t.exponent;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CanonicalProduct

Complex PowerZeroRule::zero(std::size_t k) const { return std::polar(modulus(k), angle); }

double PowerZeroRule::modulus(std::size_t k) const { return scale * std::pow(static_cast<double>(k), power); }

std::size_t PowerZeroRule::count_up_to(double r) const {
  if (!(r >= modulus(1))) return 0;
  auto k = static_cast<std::size_t>(std::floor(std::pow(r / scale, 1.0 / power)));
  while (k > 0 && modulus(k) > r) --k;
  while (modulus(k + 1) <= r) ++k;
  return k;
}

namespace {

// Bound on sum_{k > K} sum_{j >= q} |z/a_k|^j / j for |z| <= radius.
double tail_remainder_bound(const PowerZeroRule& rule, std::size_t cutoff, int q, double radius) {
  const double next = static_cast<double>(cutoff + 1);
  const double u_max = radius / rule.modulus(cutoff + 1);
  if (u_max >= 1.0) return kInf;
  const double eq = rule.power * q;
  // sum_{k>K} (radius / a_k)^q <= u_max^q (1 + (K+1)/(eq-1))
  const double moment = std::pow(u_max, q) * (1.0 + next / (eq - 1.0));
  return moment / (q * (1.0 - u_max));
}

CanonicalProduct::Tail build_tail(const PowerZeroRule& rule, int genus, double tolerance, double radius,
                                  int terms) {
  const int q = genus + terms + 1;
  std::size_t cutoff = std::max<std::size_t>(1, rule.count_up_to(2.0 * radius));
  while (tail_remainder_bound(rule, cutoff, q, radius) > tolerance) {
    if (cutoff > (std::size_t{1} << 40)) fail(ErrorCode::OutOfRange, "product cutoff grows without bound");
    cutoff *= 2;
  }
  // Shrink back towards the smallest admissible cutoff.
  std::size_t lo = std::max<std::size_t>(1, rule.count_up_to(2.0 * radius));
  std::size_t hi = cutoff;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail_remainder_bound(rule, mid, q, radius) <= tolerance)
      hi = mid;
    else
      lo = mid + 1;
  }
  cutoff = hi;

  CanonicalProduct::Tail tail;
  tail.cutoff = cutoff;
  tail.anchor = rule.modulus(cutoff + 1);
  tail.radius = radius;
  tail.bound = tail_remainder_bound(rule, cutoff, q, radius);
  tail.weights.reserve(terms);
  for (int j = genus + 1; j <= genus + terms; ++j) {
    const double sum = normalized_hurwitz(rule.power * j, cutoff + 1);
    tail.weights.push_back(std::polar(sum, -j * rule.angle));
  }
  return tail;
}

}  // namespace

CanonicalProduct::CanonicalProduct(PowerZeroRule rule, int genus, double tolerance, double certified_radius)
    : rule_(rule), genus_(genus), tolerance_(tolerance), certified_radius_(certified_radius) {
  require(rule_.power > 0.0 && std::isfinite(rule_.power), "zero power must be positive");
  require(rule_.scale > 0.0 && std::isfinite(rule_.scale), "zero scale must be positive");
  require(std::isfinite(rule_.angle), "zero angle must be finite");
  require(genus_ >= 0, "genus must be nonnegative");
  require(rule_.power * (genus_ + 1) > 1.0, "genus + 1 must exceed the convergence exponent");
  require(tolerance_ > 0.0, "tail tolerance must be positive");
  require(certified_radius_ > 0.0 && std::isfinite(certified_radius_), "certified radius must be positive");
  tail_ = build_tail(rule_, genus_, tolerance_, certified_radius_, kTailTerms);
}

std::size_t CanonicalProduct::counting_function(double r) const {
  require(r > 0.0, "counting function needs r > 0");
  return rule_.count_up_to(r);
}

const CanonicalProduct::Tail& CanonicalProduct::tail_for(double modulus, Tail& scratch) const {
  if (modulus <= certified_radius_) return tail_;
  if (!std::isfinite(modulus)) fail(ErrorCode::OutOfRange, "product evaluated at a non-finite point");
  const std::size_t needed = rule_.count_up_to(2.0 * modulus);
  if (needed > 50'000'000) fail(ErrorCode::OutOfRange, "product evaluation point too far out");
  scratch = build_tail(rule_, genus_, tolerance_, modulus, kTailTerms);
  return scratch;
}

LogEval CanonicalProduct::eval_log(Complex z) const {
  Tail scratch;
  const Tail& tail = tail_for(std::abs(z), scratch);
  double log_abs = 0.0;
  double phase = 0.0;
  for (std::size_t k = 1; k <= tail.cutoff; ++k) {
    const Complex u = z / rule_.zero(k);
    Complex term = log_one_minus(u);
    if (term.real() == -kInf) return {-kInf, 0.0, false};
    Complex power = u;
    for (int j = 1; j <= genus_; ++j) {
      term += power / static_cast<double>(j);
      power *= u;
    }
    log_abs += term.real();
    phase += term.imag();
  }
  const Complex w = z / tail.anchor;
  Complex correction{};
  Complex power = std::pow(w, genus_ + 1);
  for (std::size_t i = 0; i < tail.weights.size(); ++i) {
    correction -= power * tail.weights[i] / static_cast<double>(genus_ + 1 + static_cast<int>(i));
    power *= w;
  }
  log_abs += correction.real();
  phase += correction.imag();
  if (!std::isfinite(log_abs)) fail(ErrorCode::OverflowUnrepresentable, "log|f| is not finite");
  if (log_abs < zero_hit_log_threshold()) return {-kInf, 0.0, false};
  return {log_abs, reduce_phase(phase), true};
}

Complex CanonicalProduct::log_derivative(Complex z) const {
  Tail scratch;
  const Tail& tail = tail_for(std::abs(z), scratch);
  Complex sum{};
  for (std::size_t k = 1; k <= tail.cutoff; ++k) {
    const Complex a = rule_.zero(k);
    const Complex gap = z - a;
    if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(a))) fail(ErrorCode::NearZero, "point coincides with a zero");
    sum += 1.0 / gap;
    Complex ratio = 1.0 / a;
    for (int j = 0; j < genus_; ++j) {
      sum += ratio;
      ratio *= z / a;
    }
  }
  const Complex w = z / tail.anchor;
  Complex power = std::pow(w, genus_);
  Complex correction{};
  for (const Complex& weight : tail.weights) {
    correction += power * weight;
    power *= w;
  }
  return sum - correction / tail.anchor;
}

std::optional<std::vector<Complex>> CanonicalProduct::zeros_within(double radius) const {
  const std::size_t n = rule_.count_up_to(radius);
  if (n > 10'000'000) return std::nullopt;
  std::vector<Complex> zeros;
  zeros.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) zeros.push_back(rule_.zero(k));
  return zeros;
}

std::string CanonicalProduct::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "product zeros=" << rule_.scale << "*k^" << rule_.power << "*e^(i" << rule_.angle << ") genus=" << genus_
      << " K=" << tail_.cutoff << " tail_bound=" << tail_.bound;
  return out.str();
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

int round_residue(Complex winding) {
  const double nearest = std::round(winding.real());
  if (std::abs(winding - Complex{nearest, 0.0}) > 0.1) {
    std::ostringstream msg;
    msg << "contour integral " << winding << " is not within 0.1 of an integer";
    fail(ErrorCode::NonIntegerResidue, msg.str());
  }
  return static_cast<int>(nearest);
}

Complex contour_log_derivative(const FunctionModel& model, Complex z) {
  if (!model.eval_log(z).valid) fail(ErrorCode::ContourTooClose, "contour passes through a zero");
  try {
    return model.log_derivative(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NearZero) fail(ErrorCode::ContourTooClose, "contour passes too close to a zero");
    throw;
  }
}

}  // namespace

int count_zeros_argument_principle(const FunctionModel& model, const Rectangle& rect, int nodes_per_side) {
  require(rect.x1 > rect.x0 && rect.y1 > rect.y0, "rectangle must be nondegenerate");
  require(nodes_per_side >= 8, "need at least 8 nodes per side");
  const int panels = (nodes_per_side + 7) / 8;
  const Complex corners[4] = {{rect.x0, rect.y0}, {rect.x1, rect.y0}, {rect.x1, rect.y1}, {rect.x0, rect.y1}};
  Complex integral{};
  for (int side = 0; side < 4; ++side) {
    const Complex from = corners[side];
    const Complex to = corners[(side + 1) % 4];
    const Complex direction = to - from;
    integral += quad::gauss_legendre(
        [&](double s) { return contour_log_derivative(model, from + s * direction) * direction; }, 0.0, 1.0,
        panels);
  }
  return round_residue(integral / Complex{0.0, kTwoPi});
}

int count_zeros_on_circle(const FunctionModel& model, Complex center, double radius, int nodes) {
  require(radius > 0.0 && nodes >= 8, "circle needs positive radius and at least 8 nodes");
  Complex sum{};
  for (int m = 0; m < nodes; ++m) {
    const Complex e = std::polar(1.0, kTwoPi * m / nodes);
    sum += contour_log_derivative(model, center + radius * e) * e;
  }
  // (1/2 pi i) * integral of L(z) i t e^{i phi} dphi
  return round_residue(sum * radius / static_cast<double>(nodes));
}

}  // namespace crg
