// Command-line surface: enumeration censuses, scheme/graph listings,
// generating-function coefficients, dominant-scheme and cubic-map tools, and
// the one-shot verification suites.
//
// Exit codes: 0 success, 1 check failure, 2 usage error.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "feyn/dominant.hpp"
#include "feyn/generate.hpp"
#include "feyn/io.hpp"
#include "feyn/maps2pi.hpp"
#include "feyn/oracle.hpp"
#include "feyn/reduce.hpp"
#include "feyn/series.hpp"

using namespace feyn;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// small helpers

struct GlobalOpts {
  int threads = 1;
  unsigned seed = 0;  // recorded in reports; all algorithms are deterministic
  bool fast = false;
  std::string out;
};

void emit_text(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot open output file: " + g.out);
  f << text;
}

void emit_json(const GlobalOpts& g, const json& j) {
  emit_text(g, j.dump(2) + "\n");
}

json rational_pair(const Rational& r) {
  return json::array({boost::multiprecision::numerator(r).str(),
                      boost::multiprecision::denominator(r).str()});
}

// series indexed by the square of the variable -> coefficient list in the
// variable itself (odd coefficients vanish)
json coeffs_in_variable(const PowerSeries& half, int order) {
  json arr = json::array();
  for (int k = 0; k <= order; ++k) {
    if (k % 2 == 0 && k / 2 <= half.order())
      arr.push_back(rational_pair(half[k / 2]));
    else
      arr.push_back(rational_pair(Rational(0)));
  }
  return arr;
}

// resource cap for the exhaustive enumerations, overridable by environment
int vertex_cap() {
  if (const char* e = std::getenv("FEYN_MAX_VERTICES")) {
    int v = std::atoi(e);
    if (v > 0) return std::min(v, kOracleVertexBound);
  }
  return 6;
}

std::vector<SchemeSignature> signatures(const SchemeSet& s,
                                        bool two_pi_only = false) {
  std::vector<SchemeSignature> out;
  for (const auto& [c, g] : s.schemes) {
    if (two_pi_only && !s.two_pi.count(c)) continue;
    out.push_back(signature_of(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// verification report

struct Check {
  std::string name, expected, computed;
  bool pass = false;
  double seconds = 0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

template <typename Fn>
void run_check(Report& r, const std::string& name, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Check c;
  c.name = name;
  try {
    auto [expected, computed] = fn();
    c.expected = expected;
    c.computed = computed;
    c.pass = expected == computed;
  } catch (const std::exception& e) {
    c.expected = "no exception";
    c.computed = std::string("exception: ") + e.what();
  }
  c.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  r.checks.push_back(std::move(c));
}

using CheckResult = std::pair<std::string, std::string>;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// verification suites

void suite_invariants(Report& r, const GlobalOpts& g) {
  run_check(r, "cycle graph has genus 0 and grade 0", [&]() -> CheckResult {
    Invariants inv = invariants(cycle_graph());
    return {"v=0 g=0 l=0", "v=" + std::to_string(inv.v) +
                               " g=" + std::to_string(inv.g) +
                               " l=" + std::to_string(inv.ell)};
  });
  run_check(r, "unique two-vertex planar graph (rooted melon)",
            [&]() -> CheckResult {
              Census c = census_parallel(2, g.threads);
              return {"1", std::to_string(c.count(2, 0, 0))};
            });
  run_check(r, "grade-zero rows need an even vertex count",
            [&]() -> CheckResult {
              Census c = census_parallel(3, g.threads);
              int64_t odd = 0;
              for (const auto& [k, n] : c.rows)
                if (k.v % 2 == 1 && k.ell == 0) odd += n;
              return {"0", std::to_string(odd)};
            });
  run_check(r, "census is independent of the worker count",
            [&]() -> CheckResult {
              Census a = census_parallel(4, 1);
              Census b = census_parallel(4, 3);
              return {"equal", a.rows == b.rows ? "equal" : "different"};
            });
  run_check(r, "level sets are independent of the worker count",
            [&]() -> CheckResult {
              LevelOptions one, three;
              one.threads = 1;
              three.threads = 3;
              GenerationLevel a = generate_level(1, 6, one);
              GenerationLevel b = generate_level(1, 6, three);
              bool eq = true;
              for (const auto& [c, gr] : a.all) eq &= b.all.count(c) == 1;
              eq &= a.all.size() == b.all.size();
              return {"equal", eq ? "equal" : "different"};
            });
}

void suite_oracle(Report& r, const GlobalOpts& g) {
  const int vmax = g.fast ? 4 : 6;
  Census c = census_parallel(vmax, g.threads, is_melon_free);
  for (int genus : {1, 2}) {
    run_check(r,
              "melon-free grade-zero census matches the generator, genus " +
                  std::to_string(genus),
              [&]() -> CheckResult {
                LevelOptions lo;
                lo.threads = g.threads;
                GenerationLevel lv = generate_level(genus, vmax, lo);
                std::map<int, int64_t> byv;
                for (const auto& [code, gr] : lv.all) ++byv[gr.num_standard()];
                std::string want, got;
                for (int v = 0; v <= vmax; ++v) {
                  want += std::to_string(c.count(v, genus, 0, true)) + " ";
                  got += std::to_string(byv.count(v) ? byv[v] : 0) + " ";
                }
                return {want, got};
              });
  }
  for (int genus : {0, 1}) {
    run_check(r,
              "series coefficients match the oracle census, genus " +
                  std::to_string(genus),
              [&]() -> CheckResult {
                SchemeGenOptions so;
                so.threads = g.threads;
                PowerSeries G =
                    genus_gf(signatures(generate_schemes(genus, so)), vmax / 2);
                std::string want, got;
                for (int n = 0; 2 * n <= vmax; ++n) {
                  want += std::to_string(c.count(2 * n, genus, 0)) + " ";
                  got += G[n].convert_to<BigInt>().str() + " ";
                }
                return {want, got};
              });
  }
}

void suite_schemes(Report& r, const GlobalOpts& g) {
  SchemeGenOptions so;
  so.threads = g.threads;
  SchemeSet s1 = generate_schemes(1, so);
  run_check(r, "genus-one schemes: eighteen, two irreducible",
            [&]() -> CheckResult {
              return {"18 schemes, 2 2PI",
                      std::to_string(s1.schemes.size()) + " schemes, " +
                          std::to_string(s1.two_pi.size()) + " 2PI"};
            });
  run_check(r, "genus-one generating function starts 1, 12",
            [&]() -> CheckResult {
              PowerSeries G1 = genus_gf(signatures(s1), 3);
              return {"1 12",
                      G1[2].convert_to<BigInt>().str() + " " +
                          G1[3].convert_to<BigInt>().str()};
            });
  run_check(r, "genus-one irreducible coefficients 1,0,2,0,2",
            [&]() -> CheckResult {
              PowerSeries G = genus_gf_2pi(signatures(s1, true), 6);
              std::string got;
              for (int n = 2; n <= 6; ++n)
                got += G[n].convert_to<BigInt>().str() + " ";
              return {"1 0 2 0 2 ", got};
            });
  if (!g.fast) {
    run_check(r, "genus-two scheme census is 21150 with 82 irreducible",
              [&]() -> CheckResult {
                SchemeSet s2 = generate_schemes(2, so);
                return {"21150 schemes, 82 2PI",
                        std::to_string(s2.schemes.size()) + " schemes, " +
                            std::to_string(s2.two_pi.size()) + " 2PI"};
              });
  }
}

void suite_dominant(Report& r, const GlobalOpts& g) {
  run_check(r, "dominant counts per genus: 2, 16, 256, 5120",
            [&]() -> CheckResult {
              std::string want, got;
              for (int genus = 1; genus <= 4; ++genus) {
                want += count_dominant(genus).str() + " ";
                got += std::to_string(enumerate_trees(genus).size()) + " ";
              }
              return {want, got};
            });
  run_check(r, "tree bijection round-trips are identities",
            [&]() -> CheckResult {
              int total = 0, ok = 0;
              for (int genus = 1; genus <= 3; ++genus)
                for (const DecoratedTree& t : enumerate_trees(genus)) {
                  ++total;
                  Graph s = tree_to_scheme(t);
                  if (is_dominant(s) && scheme_to_tree(s) == t) ++ok;
                }
              return {std::to_string(total) + " round-trips",
                      std::to_string(ok) + " round-trips"};
            });
  run_check(r, "triple-scaled series matches the closed form",
            [&]() -> CheckResult {
              TripleScaledSeries s = D_series(40);
              double err = 0;
              for (double k : {0.3, 0.8, 1.2})
                err = std::max(err, std::fabs(s.eval(k) - D_closed(k)));
              return {"max error < 1e-9", err < 1e-9 ? "max error < 1e-9"
                                                     : "max error " + fmt(err)};
            });
  run_check(r, "critical point estimate within 1e-3", [&]() -> CheckResult {
    double est = critical_kappa_ratio(D_series(200));
    double err = std::fabs(est - dominant_kappa_c());
    return {"error < 1e-3", err < 1e-3 ? "error < 1e-3" : "error " + fmt(err)};
  });
}

void suite_two_pi(Report& r, const GlobalOpts& g) {
  run_check(r, "bridgeless planar cubic map counts 1, 1, 4, 24, 176",
            [&]() -> CheckResult {
              const int nmax = g.fast ? 3 : 4;
              std::string want, got;
              for (int n = 0; n <= nmax; ++n) {
                want += cubic_map_count(n).str() + " ";
                got += std::to_string(enumerate_cubic_maps(n).size()) + " ";
              }
              return {want, got};
            });
  run_check(r, "irreducible-dominant counts per genus: 2, 8, 128",
            [&]() -> CheckResult {
              std::string want, got;
              for (int genus = 1; genus <= 3; ++genus) {
                want += count_2pi_dominant(genus).str() + " ";
                std::set<std::string> codes;
                for (const SpinCubicMap& m : all_spin_maps(genus))
                  codes.insert(canonical_hex(map_to_scheme(m)));
                got += std::to_string(codes.size()) + " ";
              }
              return {want, got};
            });
  run_check(r, "map bijection round-trips are identities",
            [&]() -> CheckResult {
              int total = 0, ok = 0;
              for (int genus = 1; genus <= (g.fast ? 2 : 3); ++genus)
                for (const SpinCubicMap& m : all_spin_maps(genus)) {
                  ++total;
                  Graph s = map_to_scheme(m);
                  if (is_2pi_dominant(s) && scheme_to_map(s) == m) ++ok;
                }
              return {std::to_string(total) + " round-trips",
                      std::to_string(ok) + " round-trips"};
            });
  run_check(r, "spin generating functions reproduce the scheme series",
            [&]() -> CheckResult {
              bool ok = verify_ising_identity(g.fast ? 1 : 2, 12, g.threads);
              return {"identity holds", ok ? "identity holds" : "mismatch"};
            });
  run_check(r, "irreducible triple-scaled series: value and critical data",
            [&]() -> CheckResult {
              PowerSeries d = D_tilde_series(8);
              bool half = d[0] == Rational(1, 2);
              CriticalData cd = critical_data(200);
              bool kc = std::fabs(cd.kappa_c - maps_kappa_c()) < 1e-3;
              bool ex = std::fabs(cd.exponent - 2.5) < 0.05 * 2.5;
              return {"constant 1/2, critical point ok, exponent ok",
                      std::string(half ? "constant 1/2" : "bad constant") +
                          (kc ? ", critical point ok" : ", bad critical point") +
                          (ex ? ", exponent ok" : ", bad exponent")};
            });
}

void suite_series(Report& r, const GlobalOpts&) {
  run_check(r, "melonic coefficients 1, 1, 4, 22, 140", [&]() -> CheckResult {
    PowerSeries t = melonic_T(4);
    std::string want, got;
    for (int n = 0; n <= 4; ++n) {
      want += fuss_catalan_4(n).convert_to<BigInt>().str() + " ";
      got += t[n].convert_to<BigInt>().str() + " ";
    }
    return {want, got};
  });
  run_check(r, "melonic value at criticality is 4/3", [&]() -> CheckResult {
    double v = melonic_T_at_accelerated(Rational(27, 256), 4000);
    double err = std::fabs(v - 4.0 / 3.0);
    return {"error < 1e-6", err < 1e-6 ? "error < 1e-6" : "error " + fmt(err)};
  });
}

Report run_verify(const std::string& suite, const GlobalOpts& g) {
  Report r;
  r.suite = suite;
  if (suite == "invariants" || suite == "all") suite_invariants(r, g);
  if (suite == "oracle" || suite == "all") suite_oracle(r, g);
  if (suite == "schemes" || suite == "all") suite_schemes(r, g);
  if (suite == "dominant" || suite == "all") suite_dominant(r, g);
  if (suite == "two-pi" || suite == "all") suite_two_pi(r, g);
  if (suite == "series" || suite == "all") suite_series(r, g);
  return r;
}

int finish_verify(const Report& r, const GlobalOpts& g) {
  for (const Check& c : r.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": expected "
              << c.expected << ", got " << c.computed << "\n";
  }
  std::cout << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks.size()
            << " checks)\n";
  if (!g.out.empty()) {
    json j;
    j["suite"] = r.suite;
    j["seed"] = g.seed;
    j["pass"] = r.pass();
    j["checks"] = json::array();
    for (const Check& c : r.checks)
      j["checks"].push_back({{"name", c.name},
                             {"expected", c.expected},
                             {"computed", c.computed},
                             {"pass", c.pass},
                             {"seconds", c.seconds}});
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot open output file: " + g.out);
    f << j.dump(2) << "\n";
  }
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stranded-graph machinery: enumeration, schemes, series"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker count (never changes output)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed recorded in reports");
  app.add_flag("--fast", g.fast, "reduced verification bounds");

  // enumerate --vertices V [--melon-free] --out census.csv
  auto* cmd_enum = app.add_subcommand(
      "enumerate", "exhaustive rooted-graph census up to a vertex bound");
  int en_v = 4;
  bool en_mf = false;
  cmd_enum->add_option("--vertices", en_v, "maximum standard vertices")
      ->required();
  cmd_enum->add_flag("--melon-free", en_mf, "also count melon-free graphs");
  cmd_enum->add_option("--out", g.out, "output CSV file (default stdout)");

  // schemes --genus G [--two-pi] [--dominant] --out schemes.json
  auto* cmd_sch = app.add_subcommand("schemes", "list the schemes of a genus");
  int sc_g = 1;
  bool sc_2pi = false, sc_dom = false;
  cmd_sch->add_option("--genus", sc_g, "genus")->required();
  cmd_sch->add_flag("--two-pi", sc_2pi, "only irreducible schemes");
  cmd_sch->add_flag("--dominant", sc_dom, "only dominant schemes");
  cmd_sch->add_option("--out", g.out, "output JSON file (default stdout)");

  // graphs --genus G --max-vertices V
  auto* cmd_gra = app.add_subcommand(
      "graphs", "list the melon-free grade-zero graphs of a genus");
  int gr_g = 1, gr_v = 6;
  bool gr_2pi = false;
  cmd_gra->add_option("--genus", gr_g, "genus")->required();
  cmd_gra->add_option("--max-vertices", gr_v, "vertex budget")->required();
  cmd_gra->add_flag("--two-pi", gr_2pi, "only irreducible graphs");
  cmd_gra->add_option("--out", g.out, "output JSON file (default stdout)");

  // gf --genus G --order K [--two-pi] --out gf.json
  auto* cmd_gf = app.add_subcommand(
      "gf", "generating-function coefficients of a genus");
  int gf_g = 1, gf_k = 10;
  bool gf_2pi = false;
  cmd_gf->add_option("--genus", gf_g, "genus")->required();
  cmd_gf->add_option("--order", gf_k, "truncation order in the coupling")
      ->required();
  cmd_gf->add_flag("--two-pi", gf_2pi, "irreducible generating function");
  cmd_gf->add_option("--out", g.out, "output JSON file (default stdout)");

  // dominant --genus G --list|--count  /  --series --order K --kappa X
  auto* cmd_dom = app.add_subcommand(
      "dominant", "dominant-scheme counts, listings, and scaled series");
  int do_g = 1, do_k = 40;
  double do_kappa = -1;
  bool do_list = false, do_count = false, do_series = false;
  cmd_dom->add_option("--genus", do_g, "genus");
  cmd_dom->add_flag("--list", do_list, "list the dominant schemes");
  cmd_dom->add_flag("--count", do_count, "print the dominant count");
  cmd_dom->add_flag("--series", do_series, "triple-scaled series");
  cmd_dom->add_option("--order", do_k, "series truncation order");
  cmd_dom->add_option("--kappa", do_kappa, "evaluation point");
  cmd_dom->add_option("--out", g.out, "output file (default stdout)");

  // maps --n N [--list]
  auto* cmd_map =
      app.add_subcommand("maps", "rooted bridgeless planar cubic maps");
  int mp_n = 0;
  bool mp_list = false;
  cmd_map->add_option("--n", mp_n, "half the number of trivalent vertices")
      ->required();
  cmd_map->add_flag("--list", mp_list, "list the maps");
  cmd_map->add_option("--out", g.out, "output file (default stdout)");

  // two-pi --genus G --count / --series --order K
  auto* cmd_2pi = app.add_subcommand(
      "two-pi", "irreducible-dominant counts and scaled series");
  int tp_g = 1, tp_k = 40;
  bool tp_count = false, tp_series = false;
  cmd_2pi->add_option("--genus", tp_g, "genus");
  cmd_2pi->add_flag("--count", tp_count, "print the irreducible-dominant count");
  cmd_2pi->add_flag("--series", tp_series, "triple-scaled series");
  cmd_2pi->add_option("--order", tp_k, "series truncation order");
  cmd_2pi->add_option("--out", g.out, "output file (default stdout)");

  // verify --suite NAME
  auto* cmd_ver =
      app.add_subcommand("verify", "run a verification suite");
  std::string ver_suite = "all";
  cmd_ver->add_option("--suite", ver_suite, "suite name")
      ->check(CLI::IsMember({"invariants", "oracle", "schemes", "dominant",
                             "two-pi", "series", "all"}));
  cmd_ver->add_option("--out", g.out, "JSON report file");

  // let --threads/--seed/--fast appear after the subcommand as well
  for (CLI::App* sub : app.get_subcommands(/*filter=*/[](CLI::App*) {
         return true;
       }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_enum->parsed()) {
      if (en_v > vertex_cap())
        throw std::runtime_error(
            "vertex bound exceeds the resource cap " +
            std::to_string(vertex_cap()) + " (set FEYN_MAX_VERTICES to raise)");
      Census c = census_parallel(
          en_v, g.threads,
          en_mf ? std::function<bool(const Graph&)>(is_melon_free) : nullptr);
      std::ostringstream os;
      os << "v,g,ell,melon_free,count\n";
      for (const auto& [k, n] : c.rows)
        os << k.v << "," << k.g << "," << k.ell << "," << (k.melon_free ? 1 : 0)
           << "," << n << "\n";
      emit_text(g, os.str());
    } else if (cmd_sch->parsed()) {
      SchemeGenOptions so;
      so.threads = g.threads;
      so.two_pi_only = sc_2pi;
      SchemeSet s = generate_schemes(sc_g, so);
      json arr = json::array();
      for (const auto& [code, gr] : s.schemes) {
        if (sc_2pi && !s.two_pi.count(code)) continue;
        if (sc_dom && !is_dominant(gr)) continue;
        json j = graph_to_json(gr);
        j["code"] = code;
        j["two_pi"] = s.two_pi.count(code) == 1;
        j["dominant"] = is_dominant(gr);
        arr.push_back(std::move(j));
      }
      emit_json(g, json{{"genus", sc_g},
                        {"count", arr.size()},
                        {"schemes", std::move(arr)}});
    } else if (cmd_gra->parsed()) {
      LevelOptions lo;
      lo.threads = g.threads;
      lo.two_pi_only = gr_2pi;
      GenerationLevel lv = generate_level(gr_g, gr_v, lo);
      const auto& src = gr_2pi ? lv.two_pi : lv.all;
      json arr = json::array();
      for (const auto& [code, gr] : src) {
        json j = graph_to_json(gr);
        j["code"] = code;
        j["two_pi"] = lv.two_pi.count(code) == 1;
        arr.push_back(std::move(j));
      }
      emit_json(g, json{{"genus", gr_g},
                        {"max_vertices", gr_v},
                        {"count", arr.size()},
                        {"graphs", std::move(arr)}});
    } else if (cmd_gf->parsed()) {
      SchemeGenOptions so;
      so.threads = g.threads;
      so.two_pi_only = gf_2pi;
      SchemeSet s = generate_schemes(gf_g, so);
      std::vector<SchemeSignature> sigs = signatures(s, gf_2pi);
      PowerSeries G = gf_2pi ? genus_gf_2pi(sigs, gf_k / 2)
                             : genus_gf(sigs, gf_k / 2);
      emit_json(g, json{{"variable", "lambda"},
                        {"genus", gf_g},
                        {"two_pi", gf_2pi},
                        {"coeffs", coeffs_in_variable(G, gf_k)}});
    } else if (cmd_dom->parsed()) {
      if (do_series) {
        TripleScaledSeries s = D_series(do_k);
        json coeffs = json::array();
        for (const Rational& c : s.reduced) coeffs.push_back(rational_pair(c));
        json j{{"variable", "kappa^2"},
               {"prefactor", s.prefactor},
               {"kappa_c", s.kappa_c},
               {"reduced_coeffs", std::move(coeffs)}};
        if (do_kappa >= 0) {
          j["kappa"] = do_kappa;
          j["value"] = s.eval(do_kappa);
          j["closed_form"] = D_closed(do_kappa);
        }
        emit_json(g, j);
      } else if (do_count && !do_list) {
        emit_text(g, count_dominant(do_g).str() + "\n");
      } else if (do_list) {
        json arr = json::array();
        for (const DecoratedTree& t : enumerate_trees(do_g)) {
          Graph s = tree_to_scheme(t);
          json j = graph_to_json(s);
          j["code"] = canonical_hex(s);
          arr.push_back(std::move(j));
        }
        emit_json(g, json{{"genus", do_g},
                          {"count", arr.size()},
                          {"schemes", std::move(arr)}});
      } else {
        throw CLI::ValidationError("dominant",
                                   "pass --list, --count, or --series");
      }
    } else if (cmd_map->parsed()) {
      std::vector<CubicMap> maps = enumerate_cubic_maps(mp_n);
      json j{{"n", mp_n},
             {"count", maps.size()},
             {"closed_form", cubic_map_count(mp_n).str()}};
      if (mp_list) {
        json arr = json::array();
        for (const CubicMap& m : maps) arr.push_back(m.alpha);
        j["maps"] = std::move(arr);
      }
      emit_json(g, j);
    } else if (cmd_2pi->parsed()) {
      if (tp_series) {
        PowerSeries d = D_tilde_series(tp_k);
        json coeffs = json::array();
        for (int n = 0; n <= d.order(); ++n)
          coeffs.push_back(rational_pair(d[n]));
        CriticalData cd = critical_data(std::max(tp_k, 4));
        emit_json(g, json{{"variable", "kappa^2/16"},
                          {"coeffs", std::move(coeffs)},
                          {"kappa_c", maps_kappa_c()},
                          {"kappa_c_estimate", cd.kappa_c},
                          {"exponent_estimate", cd.exponent}});
      } else if (tp_count) {
        emit_text(g, count_2pi_dominant(tp_g).str() + "\n");
      } else {
        throw CLI::ValidationError("two-pi", "pass --count or --series");
      }
    } else if (cmd_ver->parsed()) {
      return finish_verify(run_verify(ver_suite, g), g);
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
