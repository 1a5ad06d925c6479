#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sl0mca/decompose.hpp"

namespace sl0mca {

// Per-run diagnostics written by the CLI. Serialized as one CSV header line,
// one row per outer iteration, then "# key=value" trailer lines holding the
// run parameters and, when available, the PSNR over missing pixels.
struct RunReport {
  std::vector<IterationRecord> rows;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<double> psnr_missing;

  const std::string* param(std::string_view key) const;
};

inline constexpr std::string_view kReportHeader = "n,sigma,lambda,residual,f0_texture,f0_cartoon,tv_cartoon";

// Shortest decimal text that reads back to exactly the same double.
std::string format_double(double v);

std::string format_report(const RunReport& report);

// Throws ParseError on malformed input.
RunReport parse_report(std::string_view text);

}  // namespace sl0mca
