#pragma once
// JSON serialization for graphs and schemes.
//
// Graph format:
//   { "vertices": N, "root": id|null,
//     "edges": [[tailVertex,tailSlot,headVertex,headSlot], ...] }
// Scheme format adds:
//   "ladder_vertices": [{"id":v,"type":"Ne|No|L|R|B","twist":bool,
//                        "legs":[[v,s],...]}]
// Vertex ids cover the root and all 4-valent vertices; `vertices` counts all
// of them.  Standard vertices are the 4-valent vertices not listed under
// "ladder_vertices".

#include <fstream>
#include <string>

#include "feyn/stranded.hpp"
#include "json.hpp"

namespace feyn {

inline std::string lv_type_name(VKind k) {
  switch (k) {
    case VKind::Ne: return "Ne";
    case VKind::No: return "No";
    case VKind::L: return "L";
    case VKind::R: return "R";
    case VKind::B: return "B";
    default: throw std::runtime_error("not a ladder-vertex kind");
  }
}

inline VKind lv_type_from_name(const std::string& s) {
  if (s == "Ne") return VKind::Ne;
  if (s == "No") return VKind::No;
  if (s == "L") return VKind::L;
  if (s == "R") return VKind::R;
  if (s == "B") return VKind::B;
  throw std::runtime_error("unknown ladder-vertex type: " + s);
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.num_vertices();
  if (g.root >= 0)
    j["root"] = g.root;
  else
    j["root"] = nullptr;
  nlohmann::json es = nlohmann::json::array();
  for (const Edge& e : g.edges())
    es.push_back({e.tail.v, e.tail.s, e.head.v, e.head.s});
  j["edges"] = es;
  nlohmann::json lvs = nlohmann::json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!is_ladder_vertex(g.kinds[v])) continue;
    nlohmann::json legs = nlohmann::json::array();
    for (int s = 0; s < 4; ++s) {
      Slot m = g.mate({v, s});
      legs.push_back({m.v, m.s});
    }
    lvs.push_back({{"id", v},
                   {"type", lv_type_name(g.kinds[v])},
                   {"twist", false},
                   {"legs", legs}});
  }
  if (!lvs.empty()) j["ladder_vertices"] = lvs;
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  Graph g;
  int n = j.at("vertices").get<int>();
  int root = -1;
  if (!j.at("root").is_null()) root = j.at("root").get<int>();
  std::vector<VKind> kinds(n, VKind::Std);
  if (root >= 0) kinds[root] = VKind::Root;
  if (j.contains("ladder_vertices"))
    for (const auto& lv : j.at("ladder_vertices"))
      kinds[lv.at("id").get<int>()] =
          lv_type_from_name(lv.at("type").get<std::string>());
  for (VKind k : kinds) g.add_vertex(k);
  for (const auto& e : j.at("edges"))
    g.connect(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
              e.at(3).get<int>());
  g.check();
  return g;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace feyn
