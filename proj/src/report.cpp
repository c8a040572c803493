#include "drsys/report.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace drs {

using nlohmann::json;

namespace {

json header(const RunInfo& info) {
  return {{"tool", "drsys"},
          {"version", kToolVersion},
          {"command", info.command},
          {"system", info.system},
          {"seed", info.seed},
          {"config", info.config}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json members(const PartialSystem& sys, const PointSet& S) {
  json out = json::array();
  for (auto i : S) out.push_back(sys.point(i).to_string());
  return out;
}

}  // namespace

json entropy_report_json(const EntropyReport& rep, const RunInfo& info) {
  json doc = header(info);
  json sched = json::array();
  for (auto [n, eps] : rep.schedule) sched.push_back({{"n", n}, {"eps", eps}});
  doc["schedule"] = sched;
  json cells = json::array();
  for (const auto& c : rep.cells)
    cells.push_back({{"n", c.n},
                     {"eps", c.eps},
                     {"population", c.population},
                     {"ssep", c.ssep},
                     {"ssep_provenance", c.exact ? "exact" : "greedy-lower-bound"},
                     {"sspan_upper", c.sspan_upper},
                     {"sgen_upper", c.sgen_upper},
                     {"sspan_lower", c.sspan_lower},
                     {"sgen_lower", c.sgen_lower},
                     {"span_gen_provenance", "sandwich-bound"},
                     {"saturated", c.saturated}});
  doc["cells"] = cells;
  json fits = json::array();
  for (const auto& f : rep.fits)
    fits.push_back({{"eps", f.eps},
                    {"slope", f.slope},
                    {"h", f.h},
                    {"n_used", f.n_used},
                    {"residuals", f.residuals},
                    {"saturation_ignored", f.saturation_ignored}});
  doc["fits"] = fits;
  doc["h_estimate"] = rep.h_estimate;
  doc["notes"] = rep.method_notes;
  return doc;
}

std::string entropy_table_csv(const EntropyReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "n,eps,population,ssep,exact,sspan_lower,sspan_upper,sgen_lower,sgen_upper,saturated\n";
  for (const auto& c : rep.cells)
    os << c.n << ',' << c.eps << ',' << c.population << ',' << c.ssep << ',' << (c.exact ? 1 : 0) << ','
       << c.sspan_lower << ',' << c.sspan_upper << ',' << c.sgen_lower << ',' << c.sgen_upper << ','
       << (c.saturated ? 1 : 0) << '\n';
  return os.str();
}

json partition_json(const PartialSystem& sys, const Partition& part, const WanderingPolicy& policy,
                    const RunInfo& info) {
  json doc = header(info);
  doc["policy"] = {{"radii", policy.radii},
                   {"n_max", policy.n_max},
                   {"k_max", policy.k_max},
                   {"merge_horizon", policy.merge_horizon}};
  doc["counts"] = {{"sample", sys.size()},
                   {"omega", part.omega.size()},
                   {"wandering", part.wandering.size()},
                   {"unknown", part.unknown.size()},
                   {"truncated", sys.truncated().size()}};
  json verdicts = json::array();
  for (const auto& v : part.verdicts) {
    json e{{"id", v.point},
           {"point", sys.point(v.point).to_string()},
           {"status", status_name(v.status)},
           {"reason", reason_name(v.reason)},
           {"n_max", v.n_max},
           {"k_max", v.k_max}};
    if (v.witness)
      e["witness"] = {{"U_size", v.witness->U.size()},
                      {"n", v.witness->n},
                      {"k", v.witness->k},
                      {"z", sys.point(v.witness->z).to_string()}};
    if (v.via) e["via"] = sys.point(*v.via).to_string();
    if (!v.neighbourhood.empty()) e["neighbourhood"] = members(sys, v.neighbourhood);
    verdicts.push_back(std::move(e));
  }
  doc["verdicts"] = verdicts;
  return doc;
}

std::string partition_table_csv(const PartialSystem& sys, const Partition& part) {
  std::ostringstream os;
  os << "id,point,status,reason\n";
  for (const auto& v : part.verdicts)
    os << v.point << ',' << csv_field(sys.point(v.point).to_string()) << ',' << status_name(v.status) << ','
       << reason_name(v.reason) << '\n';
  return os.str();
}

json verify_json(const std::vector<CheckRow>& rows, const RunInfo& info) {
  json doc = header(info);
  json checks = json::array();
  bool all = true;
  for (const auto& r : rows) {
    checks.push_back({{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  doc["checks"] = checks;
  doc["all_pass"] = all;
  return doc;
}

std::string verify_table_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "suite,name,pass,detail\n";
  for (const auto& r : rows)
    os << csv_field(r.suite) << ',' << csv_field(r.name) << ',' << (r.pass ? "PASS" : "FAIL") << ','
       << csv_field(r.detail) << '\n';
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw SystemError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw SystemError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw SystemError("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace drs
