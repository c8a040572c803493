#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "drsys/entropy.hpp"
#include "drsys/system.hpp"
#include "drsys/wandering.hpp"

namespace drs {

inline constexpr const char* kToolVersion = "1.0.0";

// Embedded in every document the tool writes.
struct RunInfo {
  std::string command;
  std::string system;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
};

nlohmann::json entropy_report_json(const EntropyReport& rep, const RunInfo& info);
// One row per (n, eps) cell.
std::string entropy_table_csv(const EntropyReport& rep);

nlohmann::json partition_json(const PartialSystem& sys, const Partition& part, const WanderingPolicy& policy,
                              const RunInfo& info);
std::string partition_table_csv(const PartialSystem& sys, const Partition& part);

struct CheckRow {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

nlohmann::json verify_json(const std::vector<CheckRow>& rows, const RunInfo& info);
std::string verify_table_csv(const std::vector<CheckRow>& rows);

// Writes to a sibling temp file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace drs
