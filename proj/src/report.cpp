#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wpg/suite.hpp"

namespace wpg {
namespace {

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20)
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        else
          out += ch;
    }
  }
  return out + "\"";
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string report_json(const VerificationReport& r) {
  using S = CheckRecord::Status;
  std::string out = "{\n";
  out += fmt::format("  \"engine\": {},\n", json_string(fmt::format("wpg {}", kEngineVersion)));
  out += fmt::format("  \"manifest\": {},\n", json_string(r.manifest));
  out += fmt::format("  \"suite\": {},\n", json_string(to_string(r.suite)));
  out += fmt::format("  \"seed\": {},\n", r.seed);
  out += fmt::format("  \"points\": {},\n", r.points);
  out += fmt::format("  \"summary\": {{\"checks\": {}, \"passed\": {}, \"failed\": {}, \"info\": {}, \"pass\": {}}},\n",
                     r.records.size(), r.count(S::Pass), r.count(S::Fail), r.count(S::Info), r.pass());
  out += "  \"records\": [";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const CheckRecord& c = r.records[i];
    out += i == 0 ? "\n" : ",\n";
    out += fmt::format(
        "    {{\"id\": {}, \"label\": {}, \"samples\": {}, \"max_abs_error\": {}, \"max_scaled_error\": {}, "
        "\"tolerance\": {}, \"status\": {}, \"note\": {}}}",
        json_string(c.id), json_string(c.label), c.samples, json_number(c.max_abs), json_number(c.max_scaled),
        json_number(c.tolerance), json_string(to_string(c.status)), json_string(c.note));
  }
  out += r.records.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

std::string report_table(const VerificationReport& r) {
  std::size_t id_width = 5;
  for (const auto& c : r.records) id_width = std::max(id_width, c.id.size());
  std::string out = fmt::format("manifest {}  suite {}  seed {}  points {}\n", r.manifest, to_string(r.suite), r.seed,
                                r.points);
  out += fmt::format("{:<{}}  {:<6} {:>7} {:>10} {:>10} {:>10}  {}\n", "check", id_width, "status", "samples",
                     "abs err", "scaled", "tolerance", "identity");
  for (const auto& c : r.records)
    out += fmt::format("{:<{}}  {:<6} {:>7} {:>10} {:>10} {:>10}  {}\n", c.id, id_width, to_string(c.status),
                       c.samples, short_number(c.max_abs), short_number(c.max_scaled), short_number(c.tolerance),
                       c.label);
  using S = CheckRecord::Status;
  out += fmt::format("{} checks: {} passed, {} failed, {} informational\n", r.records.size(), r.count(S::Pass),
                     r.count(S::Fail), r.count(S::Info));
  return out;
}

}  // namespace wpg
