#include "crg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crg/error.hpp"
#include "crg/parallel.hpp"

namespace crg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp() of anything below this is a finite double
constexpr double kRepresentableLog = 709.0;

void validate(const OrbitParams& params) {
  require(params.max_iter >= 1, "max_iter must be >= 1");
  require(params.r0 > 0.0 && std::isfinite(params.r0), "r0 must be positive");
  require(params.bailout_log > 0.0 && params.bailout_log <= 700.0, "bailout_log must lie in (0, 700]");
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Escaped: return "escaped";
    case Verdict::Survived: return "survived";
    case Verdict::ZeroHit: return "zero_hit";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

OrbitRecord classify_orbit(const FunctionModel& model, Complex z0, const GrowthMinorant& beta,
                           const OrbitParams& params) {
  validate(params);
  OrbitRecord rec;
  rec.start = z0;
  const double log_r0 = std::log(params.r0);
  rec.log_moduli.push_back(std::log(std::abs(z0)));
  rec.beta_track.push_back(log_r0);

  Complex z = z0;
  for (int k = 0;; ++k) {
    rec.step = k;
    const double log_mod = rec.log_moduli[k];
    if (!(log_mod > rec.beta_track[k])) {
      rec.verdict = Verdict::Survived;
      return rec;
    }
    if (log_mod >= params.bailout_log) {
      rec.verdict = Verdict::Escaped;
      return rec;
    }
    if (k == params.max_iter) {
      rec.verdict = Verdict::Survived;
      return rec;
    }

    LogEval e;
    try {
      e = model.eval_log(z);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::OverflowUnrepresentable) throw;
      rec.verdict = Verdict::Indeterminate;
      return rec;
    }
    const double prev_track = rec.beta_track[k];
    double next_track = prev_track == kInf ? kInf : beta.log_beta_at_log(prev_track);
    if (!(next_track <= 1e300)) next_track = kInf;
    rec.beta_track.push_back(next_track);
    if (!e.valid) {
      // |z_{k+1}| is below the zero-hit level; that only blocks a decision
      // when the track could still have held there
      rec.log_moduli.push_back(-kInf);
      rec.step = k + 1;
      rec.verdict = next_track < zero_hit_log_threshold() ? Verdict::ZeroHit : Verdict::Survived;
      return rec;
    }
    rec.log_moduli.push_back(e.log_abs);
    if (e.log_abs < kRepresentableLog) z = e.value();
  }
}

std::uint8_t verdict_code(const OrbitRecord& record) noexcept {
  switch (record.verdict) {
    case Verdict::Survived: return 0;
    case Verdict::Escaped: return static_cast<std::uint8_t>(std::clamp(record.step, 1, 254));
    default: return 255;
  }
}

EscapeMap escape_map(const FunctionModel& model, const Window& window, int width, int height,
                     const GrowthMinorant& beta, const OrbitParams& params) {
  validate(Region{window});
  require(width >= 1 && height >= 1, "raster dimensions must be positive");
  validate(params);
  EscapeMap map{window, width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
  const SamplePlan grid = GridPlan{width, height};
  parallel_for(map.codes.size(), [&](std::size_t i) {
    try {
      map.codes[i] = verdict_code(classify_orbit(model, sample_point(window, grid, i), beta, params));
    } catch (const Error&) {
      map.codes[i] = 255;
    }
  });
  return map;
}

MeasureReport measure_estimate(const FunctionModel& model, const Region& region, const SamplePlan& plan,
                               const GrowthMinorant& beta, const OrbitParams& params) {
  validate(region);
  validate(plan);
  validate(params);
  const std::uint64_t n = plan_size(plan);
  std::vector<std::uint8_t> verdicts(n);
  parallel_for(n, [&](std::size_t i) {
    try {
      verdicts[i] = static_cast<std::uint8_t>(classify_orbit(model, sample_point(region, plan, i), beta, params).verdict);
    } catch (const Error&) {
      verdicts[i] = static_cast<std::uint8_t>(Verdict::Indeterminate);
    }
  });
  MeasureReport out;
  for (std::uint8_t v : verdicts) {
    switch (static_cast<Verdict>(v)) {
      case Verdict::Escaped: ++out.escaped; break;
      case Verdict::Survived: ++out.survived; break;
      case Verdict::ZeroHit: ++out.zero_hits; break;
      case Verdict::Indeterminate: ++out.indeterminate; break;
    }
  }
  out.density = make_density_report(region, plan, out.escaped, n);
  out.fast_escaping = beta.dominates_exp_power();
  return out;
}

}  // namespace crg
