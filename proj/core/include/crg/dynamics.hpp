#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "crg/growth.hpp"
#include "crg/models.hpp"
#include "crg/sampling.hpp"

namespace crg {

enum class Verdict : std::uint8_t { Escaped, Survived, ZeroHit, Indeterminate };

std::string_view to_string(Verdict v) noexcept;

struct OrbitParams {
  double r0 = 1.0;
  int max_iter = 50;
  double bailout_log = 500.0;
};

struct OrbitRecord {
  Complex start;
  std::vector<double> log_moduli;  // log|f^k(z0)|
  std::vector<double> beta_track;  // log beta^k(r0), beta^0(r0) = r0
  Verdict verdict = Verdict::Survived;
  int step = 0;  // escape / failure step, or the last step examined
};

/// Escaped(k) iff log|z_k| >= bailout_log and log|z_j| > log beta^j(r0) for
/// every j <= k. Once the track fails the orbit can no longer be certified and
/// is reported as Survived. ZeroHit (an iterate below the zero-hit level)
/// and Indeterminate (log|f| itself overflowing) are only reported while the
/// track could still hold.
OrbitRecord classify_orbit(const FunctionModel& model, Complex z0, const GrowthMinorant& beta,
                           const OrbitParams& params);

/// Pixel codes: 0 survived, 1..254 escape step (clamped), 255 zero hit / indeterminate.
std::uint8_t verdict_code(const OrbitRecord& record) noexcept;

struct EscapeMap {
  Window window;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> codes;  // row-major, row 0 = largest imaginary part
};

/// classify_orbit at every pixel centre.
EscapeMap escape_map(const FunctionModel& model, const Window& window, int width, int height,
                     const GrowthMinorant& beta, const OrbitParams& params);

struct MeasureReport {
  DensityReport density;  // share of Escaped samples
  std::uint64_t escaped = 0;
  std::uint64_t survived = 0;
  std::uint64_t zero_hits = 0;
  std::uint64_t indeterminate = 0;
  /// beta grows at least like exp(r^mu): escaping points found are fast escaping.
  bool fast_escaping = false;
};

MeasureReport measure_estimate(const FunctionModel& model, const Region& region, const SamplePlan& plan,
                               const GrowthMinorant& beta, const OrbitParams& params);

}  // namespace crg
