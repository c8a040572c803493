#pragma once

#include <string>

#include "json.hpp"

#include "drsys/gallery.hpp"
#include "drsys/system.hpp"

namespace drs {

// One system per document. `parameters` depends on `kind`:
//   table:  {"points": [x...], "map": [j | null ...]}
//   otw:    a subshift block (see README) or {"gallery": id, "depth": d}
//   other:  {"gallery": id, "depth": d}
struct SystemDescription {
  std::string system_id;
  SpaceKind kind = SpaceKind::Table;
  bool dom_clopen = true;
  bool compact_space = true;
  nlohmann::json parameters = nlohmann::json::object();
};

SystemDescription parse_description(const nlohmann::json& doc);
SystemDescription load_description(const std::string& path);
nlohmann::json to_json(const SystemDescription& d);

SystemDescription describe_gallery(const GallerySystem& g);

// Gallery-backed descriptions keep their annotations; others come back with
// empty expectations, K = whole sample and no default schedule.
GallerySystem materialize(const SystemDescription& d);

}  // namespace drs
