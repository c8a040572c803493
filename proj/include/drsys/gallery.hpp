#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drsys/entropy.hpp"
#include "drsys/point.hpp"
#include "drsys/system.hpp"
#include "drsys/wandering.hpp"

namespace drs {

struct GallerySystem {
  std::string id;
  std::string summary;
  int depth = 0;  // resolution parameter actually used
  PartialSystem system;
  PointSet expected_omega;
  PointSet expected_wandering;
  std::optional<double> expected_entropy;
  double entropy_tolerance = 0.0;
  PointSet K;          // compact window for entropy runs
  Schedule schedule;   // default entropy schedule
  WanderingPolicy policy;
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  int default_depth;
  int min_depth;
  int max_depth;
};

const std::vector<CatalogEntry>& gallery_catalog();

// depth < 0 selects the documented default; out-of-range depths and unknown
// ids throw SystemError.
GallerySystem build_gallery(const std::string& id, int depth = -1);

}  // namespace drs
