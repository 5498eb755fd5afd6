#include "congestlab/json_io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace congestlab {

namespace {

using nlohmann::json;

json graph_to_json_obj(const Graph& g) {
  json j;
  j["n"] = g.n();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  j["edges"] = std::move(edges);
  json labels = json::object();
  for (NodeId v = 0; v < g.n(); ++v) {
    const std::string def = "v" + std::to_string(v);
    if (g.label(v) != def) labels[std::to_string(v)] = g.label(v);
  }
  if (!labels.empty()) j["labels"] = std::move(labels);
  return j;
}

Graph graph_from_json_obj(const json& j) {
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("graph json: edge must be [u, v, w]");
    g.add_edge(e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<std::int64_t>());
  }
  if (j.contains("labels"))
    for (const auto& [key, value] : j.at("labels").items())
      g.set_label(std::stoi(key), value.get<std::string>());
  return g;
}

json bitstring_to_json(const BitString& s) {
  json j;
  j["bits"] = s.size();
  j["hex"] = s.to_hex();
  return j;
}

BitString bitstring_from_json(const json& j) {
  return BitString::from_hex(j.at("hex").get<std::string>(),
                             j.at("bits").get<std::size_t>());
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string graph_to_json(const Graph& g) { return graph_to_json_obj(g).dump(2); }

Graph graph_from_json(const std::string& text) {
  return graph_from_json_obj(json::parse(text));
}

std::string instance_to_json(const LowerBoundInstance& inst) {
  json j;
  j["kind"] = kind_name(inst.kind);
  j["params"] = {{"k", inst.params.k},
                 {"c", inst.params.c},
                 {"n", inst.params.n},
                 {"w_max", inst.params.w_max}};
  j["graph"] = graph_to_json_obj(inst.graph);
  std::string sides;
  sides.reserve(inst.partition.side.size());
  for (Side s : inst.partition.side) sides.push_back(s == Side::A ? 'A' : 'B');
  j["partition"] = std::move(sides);
  if (inst.x.size() > 0) j["x"] = bitstring_to_json(inst.x);
  if (inst.y.size() > 0) j["y"] = bitstring_to_json(inst.y);
  if (!inst.wx.empty()) j["wx"] = inst.wx;
  if (!inst.wy.empty()) j["wy"] = inst.wy;
  return j.dump(2);
}

LowerBoundInstance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  LowerBoundInstance inst;
  inst.kind = kind_from_name(j.at("kind").get<std::string>());
  const auto& p = j.at("params");
  inst.params.k = p.at("k").get<int>();
  inst.params.c = p.at("c").get<int>();
  inst.params.n = p.at("n").get<int>();
  inst.params.w_max = p.at("w_max").get<std::int64_t>();
  inst.graph = graph_from_json_obj(j.at("graph"));
  const auto sides = j.at("partition").get<std::string>();
  if (static_cast<int>(sides.size()) != inst.graph.n())
    throw std::invalid_argument("instance json: partition length mismatch");
  for (char c : sides) {
    if (c != 'A' && c != 'B')
      throw std::invalid_argument("instance json: partition must be A/B letters");
    inst.partition.side.push_back(c == 'A' ? Side::A : Side::B);
  }
  if (j.contains("x")) inst.x = bitstring_from_json(j.at("x"));
  if (j.contains("y")) inst.y = bitstring_from_json(j.at("y"));
  if (j.contains("wx")) inst.wx = j.at("wx").get<std::vector<std::int64_t>>();
  if (j.contains("wy")) inst.wy = j.at("wy").get<std::vector<std::int64_t>>();
  return inst;
}

std::string graph_to_dot(const Graph& g, const Partition* part) {
  std::ostringstream os;
  os << "graph G {\n";
  os << "  node [shape=ellipse, fontsize=10];\n";
  for (NodeId v = 0; v < g.n(); ++v)
    os << "  n" << v << " [label=\"" << escape_dot(g.label(v)) << "\"];\n";
  bool weighted = false;
  for (const auto& e : g.edges())
    if (e.w != 1) {
      weighted = true;
      break;
    }
  for (const auto& e : g.edges()) {
    os << "  n" << e.u << " -- n" << e.v;
    const bool cut = part != nullptr &&
                     part->side[static_cast<std::size_t>(e.u)] !=
                         part->side[static_cast<std::size_t>(e.v)];
    if (weighted || cut) {
      os << " [";
      bool first = true;
      if (weighted) {
        os << "label=\"" << e.w << "\"";
        first = false;
      }
      if (cut) os << (first ? "" : ", ") << "style=dashed";
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace congestlab
