// Builds the genus-two regression fixtures: starting from the smallest
// genus-one two-particle-irreducible graph, apply each documented move
// (connecting insertions on rung or rail edge pairs, separating insertions
// and two-edge connections between two copies) and write the results as
// JSON graphs under the given directory.
#include <filesystem>
#include <iostream>

#include "feyn/generate.hpp"
#include "feyn/io.hpp"
#include "feyn/reduce.hpp"

using namespace feyn;

int main(int argc, char** argv) {
  std::string outdir = argc > 1 ? argv[1] : "tests/fixtures";
  std::filesystem::create_directories(outdir);

  // the unique melon-free (g=1, l=0) graph on four vertices
  GenerationLevel lv1 = generate_level(1, 4);
  if (lv1.all.size() != 1) {
    std::cerr << "expected a unique four-vertex genus-one graph\n";
    return 1;
  }
  Graph host = lv1.all.begin()->second;

  // split the host edges into rung pairs (the parallel edges of an N-dipole)
  // and rail edges
  std::vector<std::pair<Edge, Edge>> rung_pairs;
  std::set<std::string> rung_keys;
  auto key = [](const Edge& e) {
    return std::to_string(e.tail.v) + "." + std::to_string(e.tail.s);
  };
  for (const Dipole& d : find_dipoles(host)) {
    if (d.kind != DipKind::N) continue;
    std::vector<Edge> rungs;
    for (const Edge& e : host.edges())
      if ((e.tail.v == d.a || e.tail.v == d.b) &&
          (e.head.v == d.a || e.head.v == d.b))
        rungs.push_back(e);
    if (rungs.size() != 2) continue;
    rung_pairs.push_back({rungs[0], rungs[1]});
    rung_keys.insert(key(rungs[0]));
    rung_keys.insert(key(rungs[1]));
  }
  std::vector<Edge> rails;
  for (const Edge& e : host.edges())
    if (!rung_keys.count(key(e))) rails.push_back(e);
  if (rung_pairs.empty() || rails.size() < 2) {
    std::cerr << "host decomposition failed\n";
    return 1;
  }

  std::vector<std::pair<std::string, Graph>> fixtures;

  // connecting insertions on the two edges of a rung: an N-dipole or an odd
  // ladder raises the genus by one and keeps the graph 2PI
  auto connect_on = [&](const std::string& name,
                        const std::vector<std::pair<Edge, Edge>>& sites,
                        int len, bool want_2pi) {
    for (const auto& [e1, e2] : sites)
      for (int var = 0; var < 2; ++var) {
        auto h = insert_connecting_N(host, e1, e2, len, var);
        if (!h) continue;
        if (invariants(*h).ell != 0) continue;
        if (want_2pi != is_2pi(*h)) continue;
        fixtures.push_back({name, *h});
        return;
      }
    std::cerr << "no site worked for " << name << "\n";
    std::exit(1);
  };
  std::vector<std::pair<Edge, Edge>> rail_pairs;
  for (size_t i = 0; i < rails.size(); ++i)
    for (size_t j = i + 1; j < rails.size(); ++j)
      rail_pairs.push_back({rails[i], rails[j]});
  std::vector<std::pair<Edge, Edge>> series_sites;
  for (const Edge& e : rails) series_sites.push_back({e, e});
  connect_on("connecting_dipole_on_rung", {rung_pairs[0]}, 1, true);
  connect_on("connecting_odd_ladder_on_rung", {rung_pairs[0]}, 3, true);
  connect_on("connecting_odd_ladder_on_rails", rail_pairs, 3, true);
  // an even connecting ladder keeps the grade at zero only when both cuts
  // fall on the same edge, and the result is then two-particle reducible
  connect_on("connecting_even_ladder_in_series", series_sites, 2, false);

  // separating insertions and the bare two-edge connection between two
  // copies, at a rung edge and at a rail edge; all results are 2PR
  auto separate_at = [&](const std::string& name, const Edge& site,
                         const std::vector<DipKind>& word) {
    Graph h = insert_separating_word(host, site, host, word);
    Invariants inv = invariants(h);
    if (inv.g != 2 || inv.ell != 0 || is_2pi(h)) {
      std::cerr << "unexpected result for " << name << "\n";
      std::exit(1);
    }
    fixtures.push_back({name, h});
  };
  const Edge rung_site = rung_pairs[0].first;
  const Edge rail_site = rails[0];
  using D = DipKind;
  separate_at("separating_even_ladder_at_rung", rung_site, {D::N, D::N});
  separate_at("separating_left_ladder_at_rung", rung_site, {D::L, D::L});
  separate_at("separating_right_ladder_at_rung", rung_site, {D::R, D::R});
  separate_at("separating_broken_ladder_at_rung", rung_site, {D::N, D::L});
  separate_at("separating_even_ladder_at_rail", rail_site, {D::N, D::N});
  separate_at("separating_broken_ladder_at_rail", rail_site, {D::N, D::L});
  separate_at("separating_dipole_at_rail", rail_site, {D::N});
  separate_at("separating_odd_ladder_at_rail", rail_site, {D::N, D::N, D::N});
  for (const Edge& site : {rung_site, rail_site}) {
    Graph h = insert_two_edge_connection(host, site, host);
    Invariants inv = invariants(h);
    if (inv.g != 2 || inv.ell != 0 || is_2pi(h)) {
      std::cerr << "unexpected two-edge connection result\n";
      return 1;
    }
    fixtures.push_back(
        {site == rung_site ? "two_edge_connection_at_rung"
                           : "two_edge_connection_at_rail",
         h});
  }

  for (const auto& [name, g] : fixtures) {
    nlohmann::json j = graph_to_json(g);
    j["name"] = name;
    write_json_file(outdir + "/" + name + ".json", j);
    Invariants inv = invariants(g);
    std::cout << name << ": v=" << g.num_standard() << " g=" << inv.g
              << " ell=" << inv.ell << (is_2pi(g) ? " 2PI" : " 2PR") << "\n";
  }
  std::cout << fixtures.size() << " fixtures written to " << outdir << "\n";
  return 0;
}
