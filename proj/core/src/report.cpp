#include "sl0mca/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "sl0mca/errors.hpp"

namespace sl0mca {

const std::string* RunReport::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_report(const RunReport& report) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += std::to_string(r.n);
    for (const double v : {r.sigma, r.lambda, r.residual, r.l0_texture, r.l0_cartoon, r.tv_cartoon}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  for (const auto& [k, v] : report.params) out += "# " + k + "=" + v + "\n";
  if (report.psnr_missing) out += "# psnr_missing=" + format_double(*report.psnr_missing) + "\n";
  return out;
}

namespace {

double parse_number(std::string_view tok, std::size_t line) {
  if (tok == "inf") return INFINITY;
  if (tok == "-inf") return -INFINITY;
  if (tok == "nan") return NAN;
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("report: bad number '" + std::string(tok) + "' on line " + std::to_string(line), 0);
  }
  return v;
}

}  // namespace

RunReport parse_report(std::string_view text) {
  RunReport report;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t offset = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    offset = pos;
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kReportHeader) throw ParseError("report: unexpected header", 0);
      continue;
    }
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const std::string_view kv = line.substr(2);
      const std::size_t eq = kv.find('=');
      if (eq == std::string_view::npos) throw ParseError("report: malformed trailer line", offset);
      std::string key(kv.substr(0, eq));
      const std::string_view value = kv.substr(eq + 1);
      if (key == "psnr_missing") {
        report.psnr_missing = parse_number(value, line_no);
      } else {
        report.params.emplace_back(std::move(key), std::string(value));
      }
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 7) throw ParseError("report: expected 7 columns", offset);
    IterationRecord r;
    r.n = static_cast<int>(parse_number(fields[0], line_no));
    r.sigma = parse_number(fields[1], line_no);
    r.lambda = parse_number(fields[2], line_no);
    r.residual = parse_number(fields[3], line_no);
    r.l0_texture = parse_number(fields[4], line_no);
    r.l0_cartoon = parse_number(fields[5], line_no);
    r.tv_cartoon = parse_number(fields[6], line_no);
    report.rows.push_back(r);
  }
  if (line_no == 0) throw ParseError("report: empty", 0);
  return report;
}

}  // namespace sl0mca
