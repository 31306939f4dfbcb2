#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ms3/model.hpp"

namespace ms3 {

namespace detail {

inline CyclicWord w(std::initializer_list<Letter> ls) {
  return CyclicWord(std::vector<Letter>(ls));
}

inline EdgeRecord loop(std::string label, std::string vertex, EdgeKind kind,
                       Orientation orient = Orientation::Fixed) {
  return {std::move(label), vertex, vertex, orient, kind};
}

}  // namespace detail

// Flow with one closed orbit of each index on the 3-sphere and a trivially
// framed orbit neighbourhood.  The distinguishing graph is four disjoint
// loops; one attaching annulus of the middle handle has essential core, the
// other bounds a disk.  The two signs are the intersection numbers of the
// curve b with the meridians of the round 0- and 2-handles; flipping either
// orientation changes the flow.
inline FlowPresentation trivial_orbit_flow(int s0, int s2) {
  if ((s0 != 1 && s0 != -1) || (s2 != 1 && s2 != -1))
    throw std::invalid_argument("trivial_orbit_flow: signs must be +1 or -1");
  using detail::w;
  FlowPresentation p;
  p.vertices = {"va", "vb", "vc", "vd"};
  for (const char* l : {"a", "b", "c", "d"})
    p.edges.push_back(detail::loop(l, std::string("v") + l, EdgeKind::Corner));
  p.surfaces = {
      {"L1", 0, {w({{"a", 1}}), w({{"b", -1}})}},
      {"L2", 0, {w({{"c", 1}}), w({{"d", -1}})}},
      {"L3", 0, {w({{"a", -1}}), w({{"b", 1}}), w({{"c", -1}})}},
      {"L4", 0, {w({{"d", 1}})}},
      {"L5", 0, {w({{"a", 1}}), w({{"d", -1}})}},
      {"L6", 0, {w({{"b", 1}}), w({{"c", -1}})}},
  };
  HandleRecord t0{"T0", HandleKind::Round, 0, std::nullopt, false,
                  {"L1", "L2", "L3", "L4"}, {}, {}};
  HandleRecord t1{"T1", HandleKind::Round, 1, 0, true, {}, {"L1", "L2"}, {"L5", "L6"}};
  HandleRecord t2{"T2", HandleKind::Round, 2, std::nullopt, false,
                  {"L3", "L4", "L5", "L6"}, {}, {}};
  p.handles = {t0, t1, t2};
  p.tau.case1 = {{"T0", "T2", s0, s2}};
  normalize(p);
  return p;
}

// Flow whose closed 1-orbit has a twisted neighbourhood: the middle handle
// is a regular neighbourhood of 2n+1 half-twisted bands.  The meridian of
// the round 0-handle meets the loop a in 2n+1 points, the graph L is the
// triangle on the three ring domains, and `total_framing` fixes the mod-2
// class that the orbit orientations would determine.
inline FlowPresentation twisted_orbit_flow(int n, int total_framing = 0) {
  if (n < 0) throw std::invalid_argument("twisted_orbit_flow: n must be >= 0");
  using detail::w;
  FlowPresentation p;
  p.vertices = {"va", "vb"};
  p.edges.push_back(detail::loop("a", "va", EdgeKind::Corner));
  p.edges.push_back(detail::loop("b", "vb", EdgeKind::Corner));
  p.surfaces = {
      {"L1", 0, {w({{"a", 1}}), w({{"b", -1}})}},
      {"L2", 0, {w({{"a", 1}}), w({{"b", -1}})}},
      {"L3", 0, {w({{"a", 1}}), w({{"b", -1}})}},
  };
  HandleRecord t0{"T0", HandleKind::Round, 0, std::nullopt, false, {"L1", "L2"}, {}, {}};
  HandleRecord t1{"T1", HandleKind::Round, 1, 0, true, {}, {"L1"}, {"L3"}};
  HandleRecord t2{"T2", HandleKind::Round, 2, std::nullopt, false, {"L2", "L3"}, {}, {}};
  p.handles = {t0, t1, t2};
  p.tau.case2 = {
      {"T0", {2 * n + 1, 0}, std::pair<int, int>{1, 2 * n + 1}},
      {"T1", {0, 0}, std::pair<int, int>{1, 2}},
      {"T2", {0, 0}, std::pair<int, int>{0, 1}},
  };
  p.tau.graph_l.vertices = {{"T0", VertexRole::Source},
                            {"T1", VertexRole::Saddle},
                            {"T2", VertexRole::Sink}};
  p.tau.graph_l.edges = {{"e01", "T0", "T1"}, {"e02", "T0", "T2"}, {"e12", "T1", "T2"}};
  p.tau.mu = {{"e01", FramingValue::of(total_framing)},
              {"e02", FramingValue::of(0)},
              {"e12", FramingValue::of(0)}};
  normalize(p);
  return p;
}

namespace detail {

// Torus cut by two parallel essential circles a, b and a transversal circle
// w crossing each once.  The two square regions exhibit case-3 records,
// multi-letter chosen cycles, free edges and crossing vertices.
inline FlowPresentation fixture_tau_case3() {
  FlowPresentation p;
  p.vertices = {"p", "q"};
  p.edges = {
      loop("a", "p", EdgeKind::UpperCurve),
      loop("b", "q", EdgeKind::UpperCurve),
      {"w1", "p", "q", Orientation::Free, EdgeKind::TauCurve},
      {"w2", "q", "p", Orientation::Free, EdgeKind::TauCurve},
  };
  p.surfaces = {
      {"R1", 0, {w({{"a", 1}, {"w1", 1}, {"b", -1}, {"w1", -1}})}},
      {"R2", 0, {w({{"b", 1}, {"w2", 1}, {"a", -1}, {"w2", -1}})}},
  };
  HandleRecord t0{"T0", HandleKind::Round, 0, std::nullopt, false, {"R1", "R2"}, {}, {}};
  HandleRecord t2{"T2", HandleKind::Round, 2, std::nullopt, false, {"R1", "R2"}, {}, {}};
  p.handles = {t0, t2};
  p.upper_pairs = {{w({{"a", 1}}), w({{"b", 1}})}};
  p.chosen_cycles = {{"T0", w({{"w1", 1}, {"w2", 1}})}, {"T2", w({{"a", 1}})}};
  p.tau.case3 = {
      {"T0", w({{"a", 1}}), 1},         {"T0", w({{"b", 1}}), 1},
      {"T0", w({{"w1", 1}, {"w2", 1}}), 0}, {"T2", w({{"a", 1}}), 0},
      {"T2", w({{"b", 1}}), 0},         {"T2", w({{"w1", 1}, {"w2", 1}}), 1},
  };
  normalize(p);
  return p;
}

// Round 0- and 2-handles glued along both annuli of a torus split by two
// free curves; the graph L is a pair of parallel edges without saddles.
inline FlowPresentation fixture_type1_l() {
  FlowPresentation p;
  p.vertices = {"va", "vb"};
  p.edges = {loop("a", "va", EdgeKind::TauCurve, Orientation::Free),
             loop("b", "vb", EdgeKind::TauCurve, Orientation::Free)};
  p.surfaces = {
      {"L1", 0, {w({{"a", 1}}), w({{"b", -1}})}},
      {"L2", 0, {w({{"b", 1}}), w({{"a", -1}})}},
  };
  HandleRecord t0{"T0", HandleKind::Round, 0, std::nullopt, false, {"L1", "L2"}, {}, {}};
  HandleRecord t2{"T2", HandleKind::Round, 2, std::nullopt, false, {"L1", "L2"}, {}, {}};
  p.handles = {t0, t2};
  p.chosen_cycles = {{"T0", w({{"a", 1}})}, {"T2", w({{"b", 1}})}};
  p.tau.case2 = {
      {"T0", {1, 0}, std::pair<int, int>{1, 2}},
      {"T2", {0, 0}, std::pair<int, int>{0, 1}},
  };
  p.tau.graph_l.vertices = {{"T0", VertexRole::Source}, {"T2", VertexRole::Sink}};
  p.tau.graph_l.edges = {{"g1", "T0", "T2"}, {"g2", "T0", "T2"}};
  p.tau.mu = {{"g1", FramingValue::of(2)}, {"g2", FramingValue::of(3)}};
  normalize(p);
  return p;
}

// Chain of round 0-, 1- and 2-handles with two private regions and one
// simple handle; the graph L is a two-edge path through a saddle.
inline FlowPresentation fixture_type3_l() {
  FlowPresentation p;
  p.vertices = {"va", "vb"};
  p.edges = {loop("a", "va", EdgeKind::LowerCurve),
             loop("b", "vb", EdgeKind::LowerCurve)};
  p.surfaces = {
      {"Lx", 0, {w({{"a", 1}}), w({{"b", -1}})}},
      {"Ly", 0, {w({{"b", 1}}), w({{"a", -1}})}},
      {"Lw", 0, {w({{"b", 1}}), w({{"a", -1}})}},
      {"Lz", 0, {w({{"a", 1}}), w({{"b", -1}})}},
  };
  HandleRecord t0{"T0", HandleKind::Round, 0, std::nullopt, false, {"Lx", "Lw"}, {}, {}};
  HandleRecord t1{"T1", HandleKind::Round, 1, 0, true, {}, {"Lx"}, {"Ly"}};
  HandleRecord t2{"T2", HandleKind::Round, 2, std::nullopt, false, {"Ly", "Lz"}, {}, {}};
  HandleRecord s1{"S1", HandleKind::Simple, 1, std::nullopt, false, {"Lw"}, {}, {}};
  p.handles = {t0, t1, t2, s1};
  p.lower_pairs = {{w({{"a", 1}}), w({{"b", 1}})}};
  p.chosen_cycles = {{"T0", w({{"a", 1}})}, {"T1", w({{"a", 1}})}, {"T2", w({{"b", 1}})}};
  p.tau.case2 = {
      {"T0", {1, 0}, std::pair<int, int>{1, 2}},
      {"T1", {0, 0}, std::pair<int, int>{1, 2}},
      {"T2", {0, 0}, std::pair<int, int>{0, 1}},
  };
  p.tau.graph_l.vertices = {{"T0", VertexRole::Source},
                            {"T1", VertexRole::Saddle},
                            {"T2", VertexRole::Sink}};
  p.tau.graph_l.edges = {{"g1", "T0", "T1"}, {"g2", "T1", "T2"}};
  p.tau.mu = {{"g1", FramingValue::of(1)}, {"g2", FramingValue::of(0)}};
  normalize(p);
  return p;
}

}  // namespace detail

// Small synthetic fixtures covering each tau case and each framed-graph
// type beyond what the two orbit families exhibit.
inline FlowPresentation builtin(const std::string& name) {
  if (name == "tau-case3-demo") return detail::fixture_tau_case3();
  if (name == "type1-L") return detail::fixture_type1_l();
  if (name == "type2-L") return twisted_orbit_flow(1, 1);
  if (name == "type3-L") return detail::fixture_type3_l();
  throw std::invalid_argument("builtin: unknown fixture " + name);
}

inline std::vector<std::string> builtin_names() {
  return {"tau-case3-demo", "type1-L", "type2-L", "type3-L"};
}

// Parses catalog keys like "trivial-orbit(+1,-1)", "twisted-orbit(3)",
// "twisted-orbit(3,1)" or a builtin fixture name.
inline FlowPresentation catalog_emit(const std::string& key) {
  auto lp = key.find('(');
  if (lp == std::string::npos) return builtin(key);
  if (key.back() != ')') throw std::invalid_argument("catalog key missing ')': " + key);
  std::string name = key.substr(0, lp);
  std::string args = key.substr(lp + 1, key.size() - lp - 2);
  std::vector<int> values;
  std::string cur;
  for (char c : args + ",") {
    if (c == ',') {
      if (cur.empty()) throw std::invalid_argument("empty argument in catalog key " + key);
      std::size_t pos = 0;
      int v = 0;
      try {
        v = std::stoi(cur, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != cur.size())
        throw std::invalid_argument("bad integer '" + cur + "' in catalog key " + key);
      values.push_back(v);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (name == "trivial-orbit") {
    if (values.size() != 2)
      throw std::invalid_argument("trivial-orbit takes two signs");
    return trivial_orbit_flow(values[0], values[1]);
  }
  if (name == "twisted-orbit") {
    if (values.size() == 1) return twisted_orbit_flow(values[0]);
    if (values.size() == 2) return twisted_orbit_flow(values[0], values[1]);
    throw std::invalid_argument("twisted-orbit takes n and an optional total framing");
  }
  throw std::invalid_argument("unknown catalog family " + name);
}

inline std::vector<std::string> catalog_keys() {
  std::vector<std::string> keys;
  for (const char* s : {"(+1,+1)", "(+1,-1)", "(-1,+1)", "(-1,-1)"})
    keys.push_back(std::string("trivial-orbit") + s);
  for (int n = 0; n <= 5; ++n)
    keys.push_back("twisted-orbit(" + std::to_string(n) + ")");
  for (const auto& n : builtin_names()) keys.push_back(n);
  return keys;
}

inline std::vector<std::pair<std::string, FlowPresentation>> catalog_items() {
  std::vector<std::pair<std::string, FlowPresentation>> out;
  for (const auto& k : catalog_keys()) out.emplace_back(k, catalog_emit(k));
  return out;
}

}  // namespace ms3
