#ifndef DENDRO_REPORT_HPP
#define DENDRO_REPORT_HPP

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dendro {

/// Deterministic command result: same inputs and seed, same bytes.
/// Timings are work counters (checks run, candidates tried), never clocks.
struct Report {
  std::string command;
  std::string inputs_digest;
  std::string status;  // pass | fail | found | not-found
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  nlohmann::ordered_json findings = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, long long>> timings;

  void add_check(const std::string& name, bool ok, const std::string& witness = "");
  void add_timing(const std::string& name, long long count);
  bool all_checks_pass() const;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

nlohmann::ordered_json report_to_json(const Report& report);
std::string report_to_text(const Report& report);

}  // namespace dendro

#endif
