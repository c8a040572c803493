#include "drsys/description.hpp"

#include <fstream>
#include <set>

#include "drsys/otw.hpp"

namespace drs {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& id, const std::string& what) {
  throw SystemError("description '" + id + "': " + what);
}

template <class T>
T field(const json& j, const char* key, const T& fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

otw::GeneratorRule parse_rule(const json& j) {
  const auto kind = j.at("rule").get<std::string>();
  const auto a = j.at("a").get<otw::Symbol>();
  const auto b = j.at("b").get<otw::Symbol>();
  if (kind == "affine") return otw::GeneratorRule::affine(a, b);
  if (kind == "sparse_ones") return otw::GeneratorRule::sparse_ones(a, b);
  throw std::invalid_argument("unknown generator rule '" + kind + "'");
}

otw::OtwElement parse_element(const json& j) {
  if (j.contains("finite")) return otw::OtwElement::finite(j.at("finite").get<otw::Word>());
  auto prefix = field<otw::Word>(j, "prefix", {});
  if (j.contains("period")) return otw::OtwElement::periodic(prefix, j.at("period").get<otw::Word>());
  if (j.contains("rule")) return otw::OtwElement::listed(prefix, parse_rule(j), field<std::size_t>(j, "offset", 0));
  throw std::invalid_argument("element needs one of finite, period, rule");
}

GallerySystem bare(const std::string& id, PartialSystem sys) {
  GallerySystem g{.id = id, .summary = "described system", .depth = 0, .system = std::move(sys),
                  .expected_omega = {}, .expected_wandering = {}, .expected_entropy = {},
                  .entropy_tolerance = 0.0, .K = {}, .schedule = {}, .policy = {}};
  g.K = g.system.all();
  return g;
}

GallerySystem build_table(const SystemDescription& d) {
  if (!d.dom_clopen || !d.compact_space) bad(d.system_id, "table systems are finite, both flags must be true");
  const auto& p = d.parameters;
  auto xs = p.at("points").get<std::vector<double>>();
  std::vector<std::optional<std::size_t>> map;
  for (const auto& e : p.at("map")) {
    if (e.is_null())
      map.emplace_back();
    else
      map.emplace_back(e.get<std::size_t>());
  }
  return bare(d.system_id, table_system(d.system_id, xs, map));
}

GallerySystem build_otw(const SystemDescription& d) {
  const auto& p = d.parameters;
  otw::OtwSubshift X;
  X.first_symbol = field<otw::Symbol>(p, "first_symbol", 1);
  X.alphabet_bound = field<otw::Symbol>(p, "alphabet_bound", 12);
  X.infinite_alphabet = field<bool>(p, "infinite_alphabet", true);
  X.cylinder_depth = field<std::size_t>(p, "cylinder_depth", 8);
  const auto metric = field<std::string>(p, "metric", "otw");
  if (metric != "otw" && metric != "prefix") bad(d.system_id, "metric must be otw or prefix");
  X.use_prefix_metric = metric == "prefix";
  X.forbidden = field<std::vector<otw::Word>>(p, "forbidden", {});
  for (const auto& w : X.forbidden)
    if (w.empty()) bad(d.system_id, "forbidden words must be nonempty");
  if (p.contains("catalog"))
    for (const auto& r : p.at("catalog")) X.catalog.push_back(parse_rule(r));
  if (X.alphabet_bound < X.first_symbol) bad(d.system_id, "alphabet_bound below first_symbol");

  std::set<otw::OtwElement> elems;
  std::shared_ptr<otw::OtwSubshift> shared;
  if (p.contains("labeled_graph")) {
    const auto& lg = p.at("labeled_graph");
    otw::LabeledGraph g;
    g.vertices = lg.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : lg.at("edges"))
      g.edges.push_back({e.at("src").get<std::string>(), e.at("dst").get<std::string>(), e.at("label").get<otw::Symbol>()});
    if (lg.contains("tails"))
      for (const auto& t : lg.at("tails")) g.tails.push_back({t.at("vertex").get<std::string>(), parse_rule(t)});
    g.infinite_alphabet = field<bool>(lg, "infinite_alphabet", X.infinite_alphabet);
    otw::GraphTruncation t;
    if (lg.contains("truncation")) {
      const auto& tj = lg.at("truncation");
      t.max_prefix = field<std::size_t>(tj, "max_prefix", t.max_prefix);
      t.max_cycle = field<std::size_t>(tj, "max_cycle", t.max_cycle);
      t.tail_offsets = field<std::size_t>(tj, "tail_offsets", t.tail_offsets);
    }
    auto loaded = otw::load_labeled_graph(g, t, X);
    shared = loaded.subshift;
    elems.insert(loaded.elements.begin(), loaded.elements.end());
  } else {
    shared = std::make_shared<otw::OtwSubshift>(X);
    otw::EnumerationBounds b;
    if (p.contains("enumeration")) {
      const auto& ej = p.at("enumeration");
      b.max_prefix = field<std::size_t>(ej, "max_prefix", b.max_prefix);
      b.max_period = field<std::size_t>(ej, "max_period", b.max_period);
      b.max_finite_length = field<std::size_t>(ej, "max_finite_length", b.max_finite_length);
    }
    auto e = otw::enumerate_subshift(X, b);
    elems.insert(e.begin(), e.end());
    for (const auto& r : X.catalog)
      for (std::size_t k = 0; k <= X.cylinder_depth; ++k) {
        auto x = otw::OtwElement::listed({}, r, k);
        if (X.allows(x)) elems.insert(x);
      }
  }
  if (p.contains("elements"))
    for (const auto& e : p.at("elements")) {
      auto x = parse_element(e);
      if (!shared->allows(x)) bad(d.system_id, "element " + x.to_string() + " contains a forbidden word");
      elems.insert(x);
    }
  if (elems.empty()) bad(d.system_id, "subshift sample is empty");
  return bare(d.system_id, otw::make_otw_system(d.system_id, shared, {elems.begin(), elems.end()}, d.dom_clopen,
                                                d.compact_space));
}

}  // namespace

SystemDescription parse_description(const json& doc) {
  SystemDescription d;
  try {
    d.system_id = doc.at("system_id").get<std::string>();
    d.kind = kind_from_name(doc.at("kind").get<std::string>());
    d.dom_clopen = doc.at("dom_clopen").get<bool>();
    d.compact_space = doc.at("compact_space").get<bool>();
    d.parameters = doc.value("parameters", json::object());
  } catch (const json::exception& e) {
    throw SystemError(std::string("malformed system description: ") + e.what());
  }
  if (!d.parameters.is_object()) bad(d.system_id, "parameters must be an object");
  return d;
}

SystemDescription load_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SystemError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SystemError(path + ": " + e.what());
  }
  return parse_description(doc);
}

json to_json(const SystemDescription& d) {
  return {{"system_id", d.system_id},
          {"kind", kind_name(d.kind)},
          {"dom_clopen", d.dom_clopen},
          {"compact_space", d.compact_space},
          {"parameters", d.parameters}};
}

SystemDescription describe_gallery(const GallerySystem& g) {
  SystemDescription d;
  d.system_id = g.id;
  d.kind = g.system.kind();
  d.dom_clopen = g.system.dom_clopen();
  d.compact_space = g.system.compact_space();
  d.parameters = {{"gallery", g.id}, {"depth", g.depth}, {"sample_size", g.system.size()}};
  return d;
}

GallerySystem materialize(const SystemDescription& d) {
  try {
    if (d.parameters.contains("gallery")) {
      auto g = build_gallery(d.parameters.at("gallery").get<std::string>(), field<int>(d.parameters, "depth", -1));
      if (g.system.kind() != d.kind) bad(d.system_id, "kind does not match gallery system " + g.id);
      return g;
    }
    if (d.kind == SpaceKind::Table) return build_table(d);
    if (d.kind == SpaceKind::Otw) return build_otw(d);
  } catch (const json::exception& e) {
    bad(d.system_id, e.what());
  } catch (const std::invalid_argument& e) {
    bad(d.system_id, e.what());
  }
  bad(d.system_id, kind_name(d.kind) + " systems are described by a gallery reference");
}

}  // namespace drs
