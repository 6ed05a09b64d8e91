#include "dendro/report.hpp"

#include <sstream>

namespace dendro {

void Report::add_check(const std::string& name, bool ok, const std::string& witness) {
  nlohmann::ordered_json row;
  row["name"] = name;
  row["pass"] = ok;
  if (!ok || !witness.empty()) row["witness"] = witness;
  checks.push_back(std::move(row));
}

void Report::add_timing(const std::string& name, long long count) {
  timings.emplace_back(name, count);
}

bool Report::all_checks_pass() const {
  for (const auto& row : checks) {
    if (!row.at("pass").get<bool>()) return false;
  }
  return true;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t hash = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["inputs"] = report.inputs_digest;
  doc["status"] = report.status;
  doc["checks"] = report.checks;
  doc["findings"] = report.findings;
  auto& timings = doc["timings"] = nlohmann::ordered_json::object();
  for (const auto& [name, count] : report.timings) timings[name] = count;
  return doc;
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  os << report.command << ": " << report.status << "\n";
  os << "inputs " << report.inputs_digest << "\n";
  for (const auto& row : report.checks) {
    os << "  [" << (row.at("pass").get<bool>() ? "ok" : "FAIL") << "] "
       << row.at("name").get<std::string>();
    if (row.contains("witness") && !row.at("witness").get<std::string>().empty()) {
      os << " — " << row.at("witness").get<std::string>();
    }
    os << "\n";
  }
  if (!report.findings.empty()) {
    os << "findings:\n";
    for (const auto& item : report.findings) os << "  " << item.dump() << "\n";
  }
  for (const auto& [name, count] : report.timings) {
    os << "count " << name << " = " << count << "\n";
  }
  return os.str();
}

}  // namespace dendro
