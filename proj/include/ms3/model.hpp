#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ms3/framed.hpp"
#include "ms3/words.hpp"

namespace ms3 {

enum class Orientation { Fixed, Free };

enum class EdgeKind { LowerCurve, UpperCurve, Corner, TauCurve, ChosenCycleCurve };

inline const char* to_token(Orientation o) {
  return o == Orientation::Fixed ? "fixed" : "free";
}

inline const char* to_token(EdgeKind k) {
  switch (k) {
    case EdgeKind::LowerCurve: return "lower-curve";
    case EdgeKind::UpperCurve: return "upper-curve";
    case EdgeKind::Corner: return "corner";
    case EdgeKind::TauCurve: return "tau-curve";
    default: return "chosen-cycle-curve";
  }
}

// Arc of the distinguishing graph.  The (tail, head) order fixes the
// traversal sense of power +1 letters; for free-orientation edges the stored
// order is a bookkeeping choice and may be flipped by an isomorphism.
struct EdgeRecord {
  std::string label;
  std::string tail, head;
  Orientation orientation = Orientation::Fixed;
  EdgeKind kind = EdgeKind::Corner;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// One region cut out of the stratified set, with its genus (negative for a
// non-orientable region) and one word per boundary circle.
struct SurfaceRegion {
  std::string id;
  int genus_signed = 0;
  std::vector<CyclicWord> boundary_words;

  friend bool operator==(const SurfaceRegion&, const SurfaceRegion&) = default;
};

enum class HandleKind { Simple, Round };

inline const char* to_token(HandleKind k) {
  return k == HandleKind::Simple ? "simple" : "round";
}

struct HandleRecord {
  std::string id;
  HandleKind kind = HandleKind::Simple;
  int index = 0;
  std::optional<int> height;
  // Round 1-handles split their boundary regions into incoming and outgoing
  // sides; every other handle keeps a flat region list.
  bool partitioned = false;
  std::vector<std::string> regions;
  std::vector<std::string> incoming, outgoing;

  std::vector<std::string> all_regions() const {
    if (!partitioned) return regions;
    std::vector<std::string> out = incoming;
    out.insert(out.end(), outgoing.begin(), outgoing.end());
    return out;
  }

  friend bool operator==(const HandleRecord&, const HandleRecord&) = default;
};

// Intersection data of a round 0-handle / round 2-handle pair whose shared
// wall has genus 1; records with alpha = beta = 0 are implicit.
struct TauCase1 {
  std::string handle0, handle2;
  int alpha = 0, beta = 0;

  friend bool operator==(const TauCase1&, const TauCase1&) = default;
};

// Per-torus meridian pair and, when a genuine choice exists, the (k, l)
// decomposition of the meridian class over the bounding curve and omega.
struct TauCase2 {
  std::string handle;
  std::pair<int, int> meridian{0, 0};
  std::optional<std::pair<int, int>> omega;

  friend bool operator==(const TauCase2&, const TauCase2&) = default;
};

// Intersection number of one oriented cycle on a round-handle boundary with
// the chosen cycle of that handle.
struct TauCase3 {
  std::string handle;
  CyclicWord cycle;
  int alpha = 0;

  friend bool operator==(const TauCase3&, const TauCase3&) = default;
};

struct TauInvariant {
  std::vector<TauCase1> case1;
  std::vector<TauCase2> case2;
  MSGraph graph_l;  // vertices are handle ids; edges are the ring domains
  Framing mu;       // framing of graph_l, equivalence up to the two moves
  std::vector<TauCase3> case3;

  bool empty_l() const { return graph_l.vertices.empty() && graph_l.edges.empty(); }

  friend bool operator==(const TauInvariant&, const TauInvariant&) = default;
};

struct FlowPresentation {
  std::vector<std::string> vertices;
  std::vector<EdgeRecord> edges;
  std::vector<SurfaceRegion> surfaces;
  std::vector<HandleRecord> handles;
  std::vector<std::pair<CyclicWord, CyclicWord>> lower_pairs, upper_pairs;
  std::map<std::string, CyclicWord> chosen_cycles;  // round-handle id -> cycle
  TauInvariant tau;

  const EdgeRecord* find_edge(const std::string& label) const {
    for (const auto& e : edges)
      if (e.label == label) return &e;
    return nullptr;
  }
  const SurfaceRegion* find_surface(const std::string& id) const {
    for (const auto& s : surfaces)
      if (s.id == id) return &s;
    return nullptr;
  }
  const HandleRecord* find_handle(const std::string& id) const {
    for (const auto& h : handles)
      if (h.id == id) return &h;
    return nullptr;
  }

  friend bool operator==(const FlowPresentation&, const FlowPresentation&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string subject;
  std::string detail;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const {
    for (const auto& i : issues)
      if (i.code == code) return true;
    return false;
  }
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& i : issues)
      os << i.code << " [" << i.subject << "]: " << i.detail << "\n";
    return os.str();
  }
};

namespace detail {

inline std::pair<std::string, std::string> traverse(const EdgeRecord& e, int power) {
  if (power > 0) return {e.tail, e.head};
  return {e.head, e.tail};
}

// A word is a closed edge path when consecutive letters chain endpoint to
// endpoint, cyclically.  Unknown labels disqualify silently; the caller
// reports those separately.
inline bool closed_edge_path(const FlowPresentation& p, const CyclicWord& w) {
  if (w.empty()) return false;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const EdgeRecord* cur = p.find_edge(w.letters[i].label);
    const EdgeRecord* nxt = p.find_edge(w.letters[(i + 1) % n].label);
    if (!cur || !nxt) return false;
    if (detail::traverse(*cur, w.letters[i].power).second !=
        detail::traverse(*nxt, w.letters[(i + 1) % n].power).first)
      return false;
  }
  return true;
}

}  // namespace detail

inline ValidationReport validate_presentation(const FlowPresentation& p) {
  ValidationReport rep;
  auto issue = [&](std::string code, std::string subject, std::string detail) {
    rep.issues.push_back({std::move(code), std::move(subject), std::move(detail)});
  };

  std::set<std::string> vset, eset, sset, hset;
  for (const auto& v : p.vertices)
    if (!vset.insert(v).second) issue("duplicate-id", v, "vertex declared twice");
  for (const auto& e : p.edges)
    if (!eset.insert(e.label).second) issue("duplicate-id", e.label, "edge declared twice");
  for (const auto& s : p.surfaces)
    if (!sset.insert(s.id).second) issue("duplicate-id", s.id, "surface declared twice");
  for (const auto& h : p.handles)
    if (!hset.insert(h.id).second) issue("duplicate-id", h.id, "handle declared twice");

  for (const auto& e : p.edges) {
    if (!vset.count(e.tail))
      issue("unknown-vertex", e.label, "tail " + e.tail + " not declared");
    if (!vset.count(e.head))
      issue("unknown-vertex", e.label, "head " + e.head + " not declared");
    const bool oriented_kind = e.kind == EdgeKind::Corner ||
                               e.kind == EdgeKind::LowerCurve ||
                               e.kind == EdgeKind::UpperCurve;
    if (oriented_kind && e.orientation != Orientation::Fixed)
      issue("orientation-fixed-required", e.label,
            std::string(to_token(e.kind)) + " edges carry the orbit orientation");
  }

  auto check_word = [&](const CyclicWord& w, const std::string& subject) {
    if (w.empty()) {
      issue("empty-word", subject, "words must be non-empty");
      return;
    }
    for (const auto& l : w.letters) {
      if (!eset.count(l.label))
        issue("unknown-edge", subject, "letter " + l.label + " names no edge");
      if (l.power != 1 && l.power != -1)
        issue("bad-letter-power", subject, "letter " + l.label + " has power outside {+1,-1}");
    }
  };

  for (const auto& s : p.surfaces) {
    if (s.boundary_words.empty())
      issue("no-boundary", s.id, "surface lists no boundary words");
    for (const auto& w : s.boundary_words) check_word(w, "surface " + s.id);
  }

  std::map<std::string, int> region_refs;
  for (const auto& h : p.handles) {
    if (h.kind == HandleKind::Simple && (h.index < 0 || h.index > 3))
      issue("bad-handle-index", h.id, "simple handles have index 0..3");
    if (h.kind == HandleKind::Round && (h.index < 0 || h.index > 2))
      issue("bad-handle-index", h.id, "round handles have index 0..2");
    if (h.height && *h.height < 0)
      issue("bad-height", h.id, "heights are non-negative");
    const bool must_partition = h.kind == HandleKind::Round && h.index == 1;
    if (must_partition && !h.partitioned)
      issue("partition-required", h.id,
            "round 1-handles carry the incoming/outgoing partition");
    if (!must_partition && h.partitioned)
      issue("partition-unexpected", h.id, "only round 1-handles are partitioned");
    if (h.partitioned && !h.regions.empty())
      issue("partition-mixed", h.id, "partitioned handles list no flat regions");
    if (!h.partitioned && (!h.incoming.empty() || !h.outgoing.empty()))
      issue("partition-mixed", h.id, "flat handles list no incoming/outgoing sides");
    std::set<std::string> within;
    for (const auto& r : h.all_regions()) {
      if (!sset.count(r)) issue("unknown-region", h.id, "region " + r + " not declared");
      if (!within.insert(r).second)
        issue("duplicate-region-ref", h.id, "region " + r + " listed twice");
      region_refs[r] += 1;
    }
  }
  for (const auto& [r, n] : region_refs)
    if (n > 2)
      issue("region-overshared", r, "region bounds " + std::to_string(n) + " handles");

  // Round-handle boundaries are closed surfaces, so each arc on one borders
  // exactly two region sides there.
  for (const auto& h : p.handles) {
    if (h.kind != HandleKind::Round) continue;
    std::map<std::string, int> count;
    for (const auto& rid : h.all_regions()) {
      const SurfaceRegion* r = p.find_surface(rid);
      if (!r) continue;
      for (const auto& w : r->boundary_words)
        for (const auto& l : w.letters) count[l.label] += 1;
    }
    for (const auto& [label, n] : count)
      if (n != 2)
        issue("edge-occurrence", h.id,
              "edge " + label + " occurs " + std::to_string(n) +
                  " times on the boundary of " + h.id + ", expected 2");
  }

  std::set<std::string> used;
  for (const auto& s : p.surfaces)
    for (const auto& w : s.boundary_words)
      for (const auto& l : w.letters) used.insert(l.label);
  for (const auto& e : p.edges)
    if (!used.count(e.label))
      issue("edge-unused", e.label, "edge appears in no boundary word");

  auto is_round = [&](const std::string& id) {
    const HandleRecord* h = p.find_handle(id);
    return h && h->kind == HandleKind::Round;
  };
  auto round_index = [&](const std::string& id) -> int {
    const HandleRecord* h = p.find_handle(id);
    return h && h->kind == HandleKind::Round ? h->index : -1;
  };

  for (const auto& [hid, w] : p.chosen_cycles) {
    if (!is_round(hid))
      issue("chosen-handle", hid, "chosen cycles attach to round handles");
    check_word(w, "chosen cycle of " + hid);
    if (!w.empty() && !detail::closed_edge_path(p, w))
      issue("open-cycle", "chosen cycle of " + hid, "word is not a closed edge path");
  }

  auto check_pairs = [&](const std::vector<std::pair<CyclicWord, CyclicWord>>& ps,
                         const char* name) {
    int i = 0;
    for (const auto& [w1, w2] : ps) {
      std::string subject = std::string(name) + " pair " + std::to_string(i++);
      for (const CyclicWord* w : {&w1, &w2}) {
        check_word(*w, subject);
        if (!w->empty() && !detail::closed_edge_path(p, *w))
          issue("open-cycle", subject, "cycle is not a closed edge path");
      }
    }
  };
  check_pairs(p.lower_pairs, "lower");
  check_pairs(p.upper_pairs, "upper");

  // tau data
  std::set<std::pair<std::string, std::string>> c1seen;
  for (const auto& r : p.tau.case1) {
    if (round_index(r.handle0) != 0)
      issue("tau-handle", r.handle0, "case-1 records pair a round 0-handle");
    if (round_index(r.handle2) != 2)
      issue("tau-handle", r.handle2, "case-1 records pair a round 2-handle");
    if (!c1seen.insert({r.handle0, r.handle2}).second)
      issue("tau-duplicate", r.handle0 + "/" + r.handle2, "handle pair recorded twice");
  }
  std::set<std::string> c2seen;
  for (const auto& r : p.tau.case2) {
    if (!is_round(r.handle))
      issue("tau-handle", r.handle, "case-2 records attach to round handles");
    if (!c2seen.insert(r.handle).second)
      issue("tau-duplicate", r.handle, "case-2 handle recorded twice");
    if (r.omega) {
      auto [k, l] = *r.omega;
      const long long al = l < 0 ? -static_cast<long long>(l) : l;
      if (k < 0 || k > al || (k == 0 && l == 0))
        issue("tau-omega", r.handle, "omega pair (k,l) needs 0 <= k <= |l|, (0,0) excluded");
    }
  }
  for (const auto& s : msgraph_issues(p.tau.graph_l))
    issue("tau-graph", "L", s);
  for (const auto& v : p.tau.graph_l.vertices) {
    bool incident_edge = false;
    for (const auto& e : p.tau.graph_l.edges)
      if (e.tail == v.id || e.head == v.id) incident_edge = true;
    if (!incident_edge)
      issue("tau-graph-vertex", v.id, "isolated vertex in L (no ring domain)");
    const HandleRecord* h = p.find_handle(v.id);
    if (!h) {
      issue("tau-graph-vertex", v.id, "L vertices name handles");
      continue;
    }
    if (h->kind == HandleKind::Round && h->index == 0 && v.role != VertexRole::Source)
      issue("tau-graph-vertex", v.id, "round 0-handles are sources of L");
    if (h->kind == HandleKind::Round && h->index == 2 && v.role != VertexRole::Sink)
      issue("tau-graph-vertex", v.id, "round 2-handles are sinks of L");
  }
  if (p.tau.mu.size() != p.tau.graph_l.edges.size())
    issue("tau-mu-domain", "L", "mu must frame exactly the edges of L");
  for (const auto& e : p.tau.graph_l.edges)
    if (!p.tau.mu.count(e.id))
      issue("tau-mu-domain", e.id, "edge of L has no mu value");
  for (const auto& r : p.tau.case3) {
    if (!is_round(r.handle))
      issue("tau-handle", r.handle, "case-3 records attach to round handles");
    check_word(r.cycle, "case-3 cycle on " + r.handle);
    if (!r.cycle.empty() && !detail::closed_edge_path(p, r.cycle))
      issue("open-cycle", "case-3 cycle on " + r.handle, "cycle is not a closed edge path");
  }

  return rep;
}

// Label correspondence between two presentations (or a relabeling recipe for
// one).  Free edges listed in `flips` have every letter's power negated and
// their stored endpoint order reversed.
struct Isomorphism {
  std::map<std::string, std::string> vertex_map, edge_map, region_map, handle_map;
  std::set<std::string> flips;

  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

inline Isomorphism identity_isomorphism(const FlowPresentation& p) {
  Isomorphism iso;
  for (const auto& v : p.vertices) iso.vertex_map[v] = v;
  for (const auto& e : p.edges) iso.edge_map[e.label] = e.label;
  for (const auto& s : p.surfaces) iso.region_map[s.id] = s.id;
  for (const auto& h : p.handles) iso.handle_map[h.id] = h.id;
  return iso;
}

inline Isomorphism inverse(const Isomorphism& iso) {
  Isomorphism out;
  for (const auto& [a, b] : iso.vertex_map) out.vertex_map[b] = a;
  for (const auto& [a, b] : iso.edge_map) out.edge_map[b] = a;
  for (const auto& [a, b] : iso.region_map) out.region_map[b] = a;
  for (const auto& [a, b] : iso.handle_map) out.handle_map[b] = a;
  for (const auto& e : iso.flips) {
    auto it = iso.edge_map.find(e);
    out.flips.insert(it == iso.edge_map.end() ? e : it->second);
  }
  return out;
}

// Canonical storage order.  Parsing, relabeling and the catalog all leave
// presentations in this order, so structural equality is memberwise.
inline void normalize(FlowPresentation& p) {
  std::sort(p.vertices.begin(), p.vertices.end());
  std::sort(p.edges.begin(), p.edges.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) { return a.label < b.label; });
  std::sort(p.surfaces.begin(), p.surfaces.end(),
            [](const SurfaceRegion& a, const SurfaceRegion& b) { return a.id < b.id; });
  for (auto& s : p.surfaces)
    std::sort(s.boundary_words.begin(), s.boundary_words.end(), word_less);
  std::sort(p.handles.begin(), p.handles.end(),
            [](const HandleRecord& a, const HandleRecord& b) { return a.id < b.id; });
  for (auto& h : p.handles) {
    std::sort(h.regions.begin(), h.regions.end());
    std::sort(h.incoming.begin(), h.incoming.end());
    std::sort(h.outgoing.begin(), h.outgoing.end());
  }
  auto norm_pairs = [](std::vector<std::pair<CyclicWord, CyclicWord>>& ps) {
    for (auto& [a, b] : ps)
      if (word_less(b, a)) std::swap(a, b);
    std::sort(ps.begin(), ps.end(), [](const auto& x, const auto& y) {
      if (x.first == y.first) return word_less(x.second, y.second);
      return word_less(x.first, y.first);
    });
  };
  norm_pairs(p.lower_pairs);
  norm_pairs(p.upper_pairs);
  std::sort(p.tau.case1.begin(), p.tau.case1.end(),
            [](const TauCase1& a, const TauCase1& b) {
              return std::tie(a.handle0, a.handle2, a.alpha, a.beta) <
                     std::tie(b.handle0, b.handle2, b.alpha, b.beta);
            });
  std::sort(p.tau.case2.begin(), p.tau.case2.end(),
            [](const TauCase2& a, const TauCase2& b) { return a.handle < b.handle; });
  std::sort(p.tau.case3.begin(), p.tau.case3.end(),
            [](const TauCase3& a, const TauCase3& b) {
              if (a.handle != b.handle) return a.handle < b.handle;
              if (a.cycle != b.cycle) return word_less(a.cycle, b.cycle);
              return a.alpha < b.alpha;
            });
  std::sort(p.tau.graph_l.vertices.begin(), p.tau.graph_l.vertices.end(),
            [](const MSVertex& a, const MSVertex& b) { return a.id < b.id; });
  std::sort(p.tau.graph_l.edges.begin(), p.tau.graph_l.edges.end(),
            [](const MSEdge& a, const MSEdge& b) { return a.id < b.id; });
}

namespace detail {

inline const std::string& mapped(const std::map<std::string, std::string>& m,
                                 const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? key : it->second;
}

}  // namespace detail

// Rewrite a presentation through a label correspondence; entries missing
// from a map act as the identity.  Rejects flips of fixed-orientation edges
// and non-injective images.
inline FlowPresentation relabel(const FlowPresentation& p, const Isomorphism& m) {
  for (const auto& f : m.flips) {
    const EdgeRecord* e = p.find_edge(f);
    if (!e) throw std::invalid_argument("relabel: flip of unknown edge " + f);
    if (e->orientation != Orientation::Free)
      throw std::invalid_argument("relabel: flip of fixed-orientation edge " + f);
  }
  auto apply_injective = [](const std::vector<std::string>& keys,
                            const std::map<std::string, std::string>& map,
                            const char* what) {
    std::set<std::string> seen;
    for (const auto& k : keys)
      if (!seen.insert(detail::mapped(map, k)).second)
        throw std::invalid_argument(std::string("relabel: ") + what +
                                    " map is not injective at " + k);
  };
  {
    std::vector<std::string> ids;
    for (const auto& v : p.vertices) ids.push_back(v);
    apply_injective(ids, m.vertex_map, "vertex");
    ids.clear();
    for (const auto& e : p.edges) ids.push_back(e.label);
    apply_injective(ids, m.edge_map, "edge");
    ids.clear();
    for (const auto& s : p.surfaces) ids.push_back(s.id);
    apply_injective(ids, m.region_map, "region");
    ids.clear();
    for (const auto& h : p.handles) ids.push_back(h.id);
    apply_injective(ids, m.handle_map, "handle");
  }

  auto vmap = [&](const std::string& v) { return detail::mapped(m.vertex_map, v); };
  auto emap = [&](const std::string& e) { return detail::mapped(m.edge_map, e); };
  auto rmap = [&](const std::string& r) { return detail::mapped(m.region_map, r); };
  auto hmap = [&](const std::string& h) { return detail::mapped(m.handle_map, h); };
  std::map<std::string, std::string> total_edge_map;
  for (const auto& e : p.edges) total_edge_map[e.label] = emap(e.label);
  auto wmap = [&](const CyclicWord& w) { return translate(w, total_edge_map, m.flips); };

  FlowPresentation out;
  for (const auto& v : p.vertices) out.vertices.push_back(vmap(v));
  for (const auto& e : p.edges) {
    EdgeRecord ne = e;
    ne.label = emap(e.label);
    ne.tail = vmap(e.tail);
    ne.head = vmap(e.head);
    if (m.flips.count(e.label)) std::swap(ne.tail, ne.head);
    out.edges.push_back(std::move(ne));
  }
  for (const auto& s : p.surfaces) {
    SurfaceRegion ns;
    ns.id = rmap(s.id);
    ns.genus_signed = s.genus_signed;
    for (const auto& w : s.boundary_words) ns.boundary_words.push_back(wmap(w));
    out.surfaces.push_back(std::move(ns));
  }
  for (const auto& h : p.handles) {
    HandleRecord nh = h;
    nh.id = hmap(h.id);
    nh.regions.clear();
    nh.incoming.clear();
    nh.outgoing.clear();
    for (const auto& r : h.regions) nh.regions.push_back(rmap(r));
    for (const auto& r : h.incoming) nh.incoming.push_back(rmap(r));
    for (const auto& r : h.outgoing) nh.outgoing.push_back(rmap(r));
    out.handles.push_back(std::move(nh));
  }
  for (const auto& [a, b] : p.lower_pairs) out.lower_pairs.emplace_back(wmap(a), wmap(b));
  for (const auto& [a, b] : p.upper_pairs) out.upper_pairs.emplace_back(wmap(a), wmap(b));
  for (const auto& [h, w] : p.chosen_cycles) out.chosen_cycles[hmap(h)] = wmap(w);
  for (const auto& r : p.tau.case1)
    out.tau.case1.push_back({hmap(r.handle0), hmap(r.handle2), r.alpha, r.beta});
  for (const auto& r : p.tau.case2)
    out.tau.case2.push_back({hmap(r.handle), r.meridian, r.omega});
  for (const auto& v : p.tau.graph_l.vertices)
    out.tau.graph_l.vertices.push_back({hmap(v.id), v.role});
  for (const auto& e : p.tau.graph_l.edges)
    out.tau.graph_l.edges.push_back({e.id, hmap(e.tail), hmap(e.head)});
  out.tau.mu = p.tau.mu;
  for (const auto& r : p.tau.case3)
    out.tau.case3.push_back({hmap(r.handle), wmap(r.cycle), r.alpha});

  normalize(out);
  return out;
}

}  // namespace ms3
