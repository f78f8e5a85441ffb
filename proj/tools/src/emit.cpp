#include "crg/cli/emit.hpp"

#include <cstdio>

namespace crg::cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (std::string_view c : columns) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << fmt17(values[i]);
  }
  out << '\n';
}

void write_pgm(std::ostream& out, const EscapeMap& map) {
  out << "P5\n" << map.width << ' ' << map.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(map.codes.data()), static_cast<std::streamsize>(map.codes.size()));
}

Json to_json(const Region& region) {
  if (const auto* ann = std::get_if<AnnulusSpec>(&region))
    return Json{{"kind", "annulus"}, {"r", ann->r}, {"inner", ann->inner()}, {"outer", ann->outer()}};
  const Window& w = std::get<Window>(region);
  return Json{{"kind", "window"}, {"x0", w.x0}, {"x1", w.x1}, {"y0", w.y0}, {"y1", w.y1}};
}

Json to_json(const SamplePlan& plan) {
  if (const auto* grid = std::get_if<GridPlan>(&plan))
    return Json{{"kind", "grid"}, {"columns", grid->columns}, {"rows", grid->rows}};
  const MonteCarloPlan& mc = std::get<MonteCarloPlan>(plan);
  return Json{{"kind", "monte_carlo"}, {"samples", mc.samples}, {"seed", mc.seed}};
}

Json to_json(const DensityReport& report) {
  return Json{{"region", to_json(report.region)},
              {"plan", to_json(report.plan)},
              {"hits", report.hits},
              {"total", report.total},
              {"density", report.density},
              {"confidence_halfwidth", report.confidence_halfwidth}};
}

Json to_json(const DiskSet& disks) {
  return Json{{"count", disks.size()}, {"radius_sum", disks.radius_sum()},
              {"radius_square_sum", disks.radius_square_sum()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace crg::cli
