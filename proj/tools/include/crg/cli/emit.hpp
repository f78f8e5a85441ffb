#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "crg/covering.hpp"
#include "crg/dynamics.hpp"
#include "crg/sampling.hpp"

namespace crg::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// %.17g
std::string fmt17(double v);

void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> columns);
void write_csv_row(std::ostream& out, const std::vector<double>& values);

/// P5 header then W*H bytes, row 0 = largest imaginary part.
void write_pgm(std::ostream& out, const EscapeMap& map);

Json to_json(const Region& region);
Json to_json(const SamplePlan& plan);
Json to_json(const DensityReport& report);
Json to_json(const DiskSet& disks);

/// Two-space indented dump with a trailing LF.
std::string dump(const Json& j);

}  // namespace crg::cli
