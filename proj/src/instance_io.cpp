#include "mnpp/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json_fields.hpp"

namespace mnpp {

using detail::Json;

namespace {

Json money_or_null(const std::optional<Money>& m) {
  return m ? Json(m->value()) : Json(nullptr);
}

Json grid_to_json(const PriceGrid& grid) {
  Json out = Json::object();
  bool uniform = grid.size() >= 2;
  for (std::size_t m = 2; uniform && m < grid.size(); ++m) {
    uniform = grid[m] - grid[m - 1] == grid[1] - grid[0];
  }
  if (uniform) {
    out["min"] = grid.min().value();
    out["max"] = grid.max().value();
    out["step"] = (grid[1] - grid[0]).value();
  } else {
    Json prices = Json::array();
    for (Money p : grid.prices()) prices.push_back(p.value());
    out["prices"] = std::move(prices);
  }
  return out;
}

Money money_field(const Json& j, const std::string& path, std::string_view key) {
  try {
    return Money::from_double(detail::number(j, path, key));
  } catch (const InputError& e) {
    throw InputError("field '" + detail::join_path(path, key) + "': " + e.what());
  }
}

PriceGrid grid_from_json(const Json& j, const std::string& path) {
  detail::require_object(j, path);
  if (j.contains("prices")) {
    detail::reject_unknown(j, path, {"prices"});
    const Json& arr = j["prices"];
    if (!arr.is_array()) throw InputError("field '" + path + ".prices' must be an array");
    std::vector<Money> prices;
    for (const auto& p : arr) {
      if (!p.is_number()) throw InputError("field '" + path + ".prices' must hold numbers");
      prices.push_back(Money::from_double(p.get<double>()));
    }
    return PriceGrid(std::move(prices));
  }
  detail::reject_unknown(j, path, {"min", "max", "step"});
  return PriceGrid::uniform(money_field(j, path, "min"), money_field(j, path, "max"),
                            money_field(j, path, "step"));
}

}  // namespace

std::string instance_to_text(const Instance& inst) {
  Json doc = Json::object();
  doc["format"] = kInstanceFormat;
  Json meta = Json::object();
  meta["model"] = to_string(inst.model());
  meta["pi"] = money_or_null(inst.pi());
  meta["seed"] = inst.seed();
  meta["grid"] = grid_to_json(inst.grid());
  doc["meta"] = std::move(meta);
  doc["outlets"] = inst.n_outlets();

  Json demands = Json::array();
  for (int e = 0; e < inst.n_demands(); ++e) {
    const DemandNode& node = inst.demand(e);
    Json d = Json::object();
    d["id"] = e;
    d["c"] = node.competitor_price.value();
    d["c_bar"] = money_or_null(node.basket_floor);
    d["d"] = node.volume.value();
    d["beta"] = node.match_share.value();
    d["gamma"] = node.war_share.value();
    demands.push_back(std::move(d));
  }
  doc["demands"] = std::move(demands);

  Json edges = Json::array();
  for (const Edge& edge : inst.edges()) {
    Json j = Json::object();
    j["e"] = edge.demand;
    j["f"] = edge.outlet;
    j["a_hat"] = edge.war_intercept;
    j["b_hat"] = edge.war_slope;
    j["a_bar"] = edge.match_intercept;
    j["b_bar"] = edge.match_slope;
    edges.push_back(std::move(j));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Instance instance_from_text(std::string_view text) {
  const Json doc = detail::parse_json(text, "instance file");
  detail::reject_unknown(doc, "", {"format", "meta", "outlets", "demands", "edges"});
  const std::string format = detail::text(doc, "", "format");
  if (format != kInstanceFormat) {
    throw InputError("unsupported instance format '" + format + "'");
  }

  const Json& meta = detail::field(doc, "", "meta");
  detail::reject_unknown(meta, "meta", {"model", "pi", "seed", "grid"});
  const ModelKind model = parse_model_kind(detail::text(meta, "meta", "model"));
  std::optional<Money> pi;
  if (!detail::field(meta, "meta", "pi").is_null()) pi = money_field(meta, "meta", "pi");
  const Json& seed_json = detail::field(meta, "meta", "seed");
  if (!seed_json.is_number_unsigned() && !seed_json.is_number_integer()) {
    throw InputError("field 'meta.seed' must be an integer");
  }
  const auto seed = seed_json.get<std::uint64_t>();
  PriceGrid grid = grid_from_json(detail::field(meta, "meta", "grid"), "meta.grid");

  const auto n_outlets = detail::integer(doc, "", "outlets");
  if (n_outlets < 1) throw InputError("field 'outlets' must be positive");

  const Json& demands_json = detail::field(doc, "", "demands");
  if (!demands_json.is_array()) throw InputError("field 'demands' must be an array");
  std::vector<DemandNode> demands;
  for (std::size_t i = 0; i < demands_json.size(); ++i) {
    const std::string path = "demands[" + std::to_string(i) + "]";
    const Json& d = demands_json[i];
    detail::reject_unknown(d, path, {"id", "c", "c_bar", "d", "beta", "gamma"});
    if (detail::integer(d, path, "id") != static_cast<std::int64_t>(i)) {
      throw InputError("field '" + path + ".id' must equal its position " + std::to_string(i));
    }
    DemandNode node;
    node.competitor_price = money_field(d, path, "c");
    if (!detail::field(d, path, "c_bar").is_null()) {
      node.basket_floor = money_field(d, path, "c_bar");
    }
    node.volume = Volume::from_double(detail::number(d, path, "d"));
    node.match_share = Share::from_double(detail::number(d, path, "beta"));
    node.war_share = Share::from_double(detail::number(d, path, "gamma"));
    demands.push_back(node);
  }

  const Json& edges_json = detail::field(doc, "", "edges");
  if (!edges_json.is_array()) throw InputError("field 'edges' must be an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    const Json& j = edges_json[i];
    detail::reject_unknown(j, path, {"e", "f", "a_hat", "b_hat", "a_bar", "b_bar"});
    Edge edge;
    edge.demand = static_cast<DemandId>(detail::integer(j, path, "e"));
    edge.outlet = static_cast<OutletId>(detail::integer(j, path, "f"));
    edge.war_intercept = detail::number(j, path, "a_hat");
    edge.war_slope = detail::number(j, path, "b_hat");
    edge.match_intercept = detail::number(j, path, "a_bar");
    edge.match_slope = detail::number(j, path, "b_bar");
    edges.push_back(edge);
  }

  return Instance(static_cast<int>(n_outlets), std::move(demands), std::move(edges),
                  std::move(grid), model, pi, seed);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw InputError("write failed for '" + path.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, instance_to_text(inst));
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_text(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace mnpp
