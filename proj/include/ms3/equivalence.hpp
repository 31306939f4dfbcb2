#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ms3/model.hpp"

namespace ms3 {

inline CyclicWord translate(const CyclicWord& w, const Isomorphism& iso) {
  return translate(w, iso.edge_map, iso.flips);
}

namespace detail {

inline std::string word_key(const CyclicWord& w) {
  std::string out;
  for (const auto& l : w.letters) {
    out += l.label;
    out += l.power > 0 ? '+' : '-';
    out += '.';
  }
  return out;
}

}  // namespace detail

// Region lists match when the genera agree and the boundary words correspond
// bijectively up to rotation and inversion; canonical forms reduce that to a
// multiset comparison.
inline bool lists_equivalent(const SurfaceRegion& a, const SurfaceRegion& b,
                             const Isomorphism& iso) {
  if (a.genus_signed != b.genus_signed) return false;
  if (a.boundary_words.size() != b.boundary_words.size()) return false;
  std::vector<std::string> ka, kb;
  for (const auto& w : a.boundary_words)
    ka.push_back(detail::word_key(canonical_form(translate(w, iso))));
  for (const auto& w : b.boundary_words)
    kb.push_back(detail::word_key(canonical_form(w)));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// Matches two sets of region lists, returning a region bijection with
// equivalent lists per pair.  Matchability is a per-class counting condition
// on (genus, canonical word multiset) signatures, so any within-class
// pairing serves.
inline std::optional<std::map<std::string, std::string>> slw_equivalent(
    const std::vector<SurfaceRegion>& s1, const std::vector<SurfaceRegion>& s2,
    const Isomorphism& iso) {
  if (s1.size() != s2.size()) return std::nullopt;
  auto key = [](const SurfaceRegion& s, const Isomorphism* tr) {
    std::vector<std::string> ks;
    for (const auto& w : s.boundary_words)
      ks.push_back(detail::word_key(canonical_form(tr ? translate(w, *tr) : w)));
    std::sort(ks.begin(), ks.end());
    std::string out = std::to_string(s.genus_signed) + "|";
    for (const auto& k : ks) out += k + ";";
    return out;
  };
  std::map<std::string, std::vector<std::string>> g1, g2;
  for (const auto& s : s1) g1[key(s, &iso)].push_back(s.id);
  for (const auto& s : s2) g2[key(s, nullptr)].push_back(s.id);
  if (g1.size() != g2.size()) return std::nullopt;
  std::map<std::string, std::string> out;
  for (auto& [k, ids1] : g1) {
    auto it = g2.find(k);
    if (it == g2.end() || it->second.size() != ids1.size()) return std::nullopt;
    std::sort(ids1.begin(), ids1.end());
    std::sort(it->second.begin(), it->second.end());
    for (std::size_t i = 0; i < ids1.size(); ++i) out[ids1[i]] = it->second[i];
  }
  return out;
}

namespace detail {

// Orientation-normalized key for a case-3 record: the cycle orientations of
// the record set are a per-presentation convention, so a record matches
// either the same oriented cycle with the same number or the reversed cycle
// with the negated number.
inline std::tuple<std::string, std::string, int> case3_key(
    const std::string& handle, const CyclicWord& w, int alpha) {
  CyclicWord fwd = least_rotation(w);
  CyclicWord bwd = least_rotation(invert(w));
  if (fwd == bwd) return {handle, word_key(fwd), alpha < 0 ? -alpha : alpha};
  if (word_less(bwd, fwd)) return {handle, word_key(bwd), -alpha};
  return {handle, word_key(fwd), alpha};
}

// Compare the framed graphs L through the handle correspondence.  Edge ids
// are private bookkeeping; parallel edges with the same mapped endpoints are
// paired infinity-to-infinity first (the only pairing-sensitive part of the
// criteria), then by value.
inline bool tau_l_match(const TauInvariant& t1, const TauInvariant& t2,
                        const std::map<std::string, std::string>& hmap) {
  const MSGraph& l1 = t1.graph_l;
  const MSGraph& l2 = t2.graph_l;
  if (l1.vertices.size() != l2.vertices.size()) return false;
  if (l1.edges.size() != l2.edges.size()) return false;
  if (l1.vertices.empty() && l1.edges.empty()) return true;

  auto mapped = [&](const std::string& h) -> const std::string& {
    auto it = hmap.find(h);
    if (it == hmap.end())
      throw std::invalid_argument("isomorphism does not cover handle " + h);
    return it->second;
  };

  std::set<std::pair<std::string, int>> v1m, v2s;
  for (const auto& v : l1.vertices) v1m.insert({mapped(v.id), static_cast<int>(v.role)});
  for (const auto& v : l2.vertices) v2s.insert({v.id, static_cast<int>(v.role)});
  if (v1m != v2s) return false;

  using Class = std::pair<std::string, std::string>;
  std::map<Class, std::vector<const MSEdge*>> c1, c2;
  for (const auto& e : l1.edges) c1[{mapped(e.tail), mapped(e.head)}].push_back(&e);
  for (const auto& e : l2.edges) c2[{e.tail, e.head}].push_back(&e);
  if (c1.size() != c2.size()) return false;

  auto by_value = [](const Framing& f) {
    return [&f](const MSEdge* a, const MSEdge* b) {
      const FramingValue& va = f.at(a->id);
      const FramingValue& vb = f.at(b->id);
      if (va.infinite != vb.infinite) return va.infinite;
      if (va.value != vb.value) return va.value < vb.value;
      return a->id < b->id;
    };
  };

  Framing transported;
  for (auto& [cls, edges1] : c1) {
    auto it = c2.find(cls);
    if (it == c2.end() || it->second.size() != edges1.size()) return false;
    std::sort(edges1.begin(), edges1.end(), by_value(t1.mu));
    std::sort(it->second.begin(), it->second.end(), by_value(t2.mu));
    for (std::size_t i = 0; i < edges1.size(); ++i)
      transported[it->second[i]->id] = t1.mu.at(edges1[i]->id);
  }
  return framings_equivalent(l2, transported, t2.mu);
}

}  // namespace detail

inline bool tau_equivalent(const TauInvariant& t1, const TauInvariant& t2,
                           const Isomorphism& iso) {
  auto hmap = [&](const std::string& h) -> const std::string& {
    auto it = iso.handle_map.find(h);
    if (it == iso.handle_map.end())
      throw std::invalid_argument("isomorphism does not cover handle " + h);
    return it->second;
  };

  // case 1: exact pair matching, records with alpha = beta = 0 are implicit
  {
    std::multiset<std::tuple<std::string, std::string, int, int>> a, b;
    for (const auto& r : t1.case1)
      if (r.alpha != 0 || r.beta != 0)
        a.insert({hmap(r.handle0), hmap(r.handle2), r.alpha, r.beta});
    for (const auto& r : t2.case1)
      if (r.alpha != 0 || r.beta != 0)
        b.insert({r.handle0, r.handle2, r.alpha, r.beta});
    if (a != b) return false;
  }

  // case 2: meridian and omega pairs per torus
  {
    using Rec = std::tuple<std::string, int, int, int, int, int>;
    auto rec = [](const std::string& h, const TauCase2& r) -> Rec {
      return {h, r.meridian.first, r.meridian.second, r.omega ? 1 : 0,
              r.omega ? r.omega->first : 0, r.omega ? r.omega->second : 0};
    };
    std::multiset<Rec> a, b;
    for (const auto& r : t1.case2) a.insert(rec(hmap(r.handle), r));
    for (const auto& r : t2.case2) b.insert(rec(r.handle, r));
    if (a != b) return false;
  }

  if (!detail::tau_l_match(t1, t2, iso.handle_map)) return false;

  // case 3: the beta map plays no role here
  {
    std::multiset<std::tuple<std::string, std::string, int>> a, b;
    for (const auto& r : t1.case3)
      a.insert(detail::case3_key(hmap(r.handle), translate(r.cycle, iso), r.alpha));
    for (const auto& r : t2.case3)
      b.insert(detail::case3_key(r.handle, r.cycle, r.alpha));
    if (a != b) return false;
  }
  return true;
}

namespace detail {

inline bool bijective_over(const std::vector<std::string>& dom,
                           const std::vector<std::string>& cod,
                           const std::map<std::string, std::string>& m) {
  if (dom.size() != cod.size() || m.size() != dom.size()) return false;
  std::set<std::string> cods(cod.begin(), cod.end()), image;
  for (const auto& d : dom) {
    auto it = m.find(d);
    if (it == m.end() || !cods.count(it->second)) return false;
    if (!image.insert(it->second).second) return false;
  }
  return true;
}

inline std::string pair_key(const CyclicWord& a, const CyclicWord& b) {
  std::string ka = word_key(least_rotation(a));
  std::string kb = word_key(least_rotation(b));
  if (kb < ka) std::swap(ka, kb);
  return ka + "|" + kb;
}

}  // namespace detail

// Full verification of one candidate correspondence: graph incidence, edge
// kinds and orientations, the region lists, handle structure with sides,
// the orbit pairings, chosen cycles (up to rotation only, orientations are
// part of the data) and the tau invariant.
inline bool check_isomorphism(const FlowPresentation& p1,
                              const FlowPresentation& p2,
                              const Isomorphism& iso) {
  try {
    std::vector<std::string> d, c;
    for (const auto& v : p1.vertices) d.push_back(v);
    for (const auto& v : p2.vertices) c.push_back(v);
    if (!detail::bijective_over(d, c, iso.vertex_map)) return false;
    d.clear(); c.clear();
    for (const auto& e : p1.edges) d.push_back(e.label);
    for (const auto& e : p2.edges) c.push_back(e.label);
    if (!detail::bijective_over(d, c, iso.edge_map)) return false;
    d.clear(); c.clear();
    for (const auto& s : p1.surfaces) d.push_back(s.id);
    for (const auto& s : p2.surfaces) c.push_back(s.id);
    if (!detail::bijective_over(d, c, iso.region_map)) return false;
    d.clear(); c.clear();
    for (const auto& h : p1.handles) d.push_back(h.id);
    for (const auto& h : p2.handles) c.push_back(h.id);
    if (!detail::bijective_over(d, c, iso.handle_map)) return false;

    for (const auto& f : iso.flips) {
      const EdgeRecord* e = p1.find_edge(f);
      if (!e || e->orientation != Orientation::Free) return false;
    }

    for (const auto& e1 : p1.edges) {
      const EdgeRecord* e2 = p2.find_edge(iso.edge_map.at(e1.label));
      if (!e2) return false;
      if (e1.kind != e2->kind || e1.orientation != e2->orientation) return false;
      const bool flip = iso.flips.count(e1.label) > 0;
      const std::string& t = iso.vertex_map.at(flip ? e1.head : e1.tail);
      const std::string& h = iso.vertex_map.at(flip ? e1.tail : e1.head);
      if (e2->tail != t || e2->head != h) return false;
    }

    for (const auto& s1 : p1.surfaces) {
      const SurfaceRegion* s2 = p2.find_surface(iso.region_map.at(s1.id));
      if (!s2 || !lists_equivalent(s1, *s2, iso)) return false;
    }

    for (const auto& h1 : p1.handles) {
      const HandleRecord* h2 = p2.find_handle(iso.handle_map.at(h1.id));
      if (!h2) return false;
      if (h1.kind != h2->kind || h1.index != h2->index || h1.height != h2->height ||
          h1.partitioned != h2->partitioned)
        return false;
      auto mapped_sorted = [&](const std::vector<std::string>& rs) {
        std::vector<std::string> out;
        for (const auto& r : rs) out.push_back(iso.region_map.at(r));
        std::sort(out.begin(), out.end());
        return out;
      };
      auto sorted = [](std::vector<std::string> rs) {
        std::sort(rs.begin(), rs.end());
        return rs;
      };
      if (mapped_sorted(h1.regions) != sorted(h2->regions)) return false;
      if (mapped_sorted(h1.incoming) != sorted(h2->incoming)) return false;
      if (mapped_sorted(h1.outgoing) != sorted(h2->outgoing)) return false;
    }

    auto pairs_match = [&](const std::vector<std::pair<CyclicWord, CyclicWord>>& a,
                           const std::vector<std::pair<CyclicWord, CyclicWord>>& b) {
      if (a.size() != b.size()) return false;
      std::multiset<std::string> ka, kb;
      for (const auto& [w1, w2] : a)
        ka.insert(detail::pair_key(translate(w1, iso), translate(w2, iso)));
      for (const auto& [w1, w2] : b) kb.insert(detail::pair_key(w1, w2));
      return ka == kb;
    };
    if (!pairs_match(p1.lower_pairs, p2.lower_pairs)) return false;
    if (!pairs_match(p1.upper_pairs, p2.upper_pairs)) return false;

    if (p1.chosen_cycles.size() != p2.chosen_cycles.size()) return false;
    for (const auto& [h, w] : p1.chosen_cycles) {
      auto it = p2.chosen_cycles.find(iso.handle_map.at(h));
      if (it == p2.chosen_cycles.end()) return false;
      if (!rotate_equal(translate(w, iso), it->second)) return false;
    }

    return tau_equivalent(p1.tau, p2.tau, iso);
  } catch (const std::exception&) {
    return false;
  }
}

namespace detail {

inline std::map<std::string, int> vertex_degrees(const FlowPresentation& p) {
  std::map<std::string, int> deg;
  for (const auto& v : p.vertices) deg[v] = 0;
  for (const auto& e : p.edges) {
    deg[e.tail] += 1;
    deg[e.head] += 1;
  }
  return deg;
}

inline std::string handle_attr_key(const HandleRecord& h) {
  std::ostringstream os;
  os << to_token(h.kind) << "/" << h.index << "/"
     << (h.height ? std::to_string(*h.height) : std::string("-")) << "/"
     << (h.partitioned ? "p" : "f");
  return os.str();
}

// Handle-membership profile of a region: which kinds of handle boundaries it
// lies on, and on which side.
inline std::map<std::string, std::string> region_profiles(const FlowPresentation& p) {
  std::map<std::string, std::vector<std::string>> prof;
  for (const auto& s : p.surfaces) prof[s.id];
  for (const auto& h : p.handles) {
    const std::string key = handle_attr_key(h);
    for (const auto& r : h.regions) prof[r].push_back(key + "/flat");
    for (const auto& r : h.incoming) prof[r].push_back(key + "/in");
    for (const auto& r : h.outgoing) prof[r].push_back(key + "/out");
  }
  std::map<std::string, std::string> out;
  for (auto& [id, v] : prof) {
    std::sort(v.begin(), v.end());
    std::string joined;
    for (const auto& s : v) joined += s + ",";
    out[id] = joined;
  }
  return out;
}

// Label-free local signature of an edge; equal signatures are necessary for
// two edges to correspond under any isomorphism.
inline std::map<std::string, std::string> edge_signatures(const FlowPresentation& p) {
  auto deg = vertex_degrees(p);
  std::map<std::string, std::string> out;
  std::map<std::string, int> chosen_count, pair_count, case3_count;
  for (const auto& [h, w] : p.chosen_cycles)
    for (const auto& l : w.letters) chosen_count[l.label] += 1;
  for (const auto* ps : {&p.lower_pairs, &p.upper_pairs})
    for (const auto& [w1, w2] : *ps) {
      for (const auto& l : w1.letters) pair_count[l.label] += 1;
      for (const auto& l : w2.letters) pair_count[l.label] += 1;
    }
  for (const auto& r : p.tau.case3)
    for (const auto& l : r.cycle.letters) case3_count[l.label] += 1;

  for (const auto& e : p.edges) {
    // a boundary word may be recorded in either direction, so only the
    // total occurrence count of a letter is invariant, not its power split
    int occurrences = 0;
    std::vector<std::string> membership;
    for (const auto& s : p.surfaces)
      for (const auto& w : s.boundary_words)
        for (const auto& l : w.letters)
          if (l.label == e.label) {
            occurrences += 1;
            membership.push_back(std::to_string(s.genus_signed) + ":" +
                                 std::to_string(s.boundary_words.size()) + ":" +
                                 std::to_string(w.size()));
          }
    std::sort(membership.begin(), membership.end());
    std::ostringstream os;
    os << to_token(e.kind) << "|" << to_token(e.orientation) << "|"
       << (e.tail == e.head ? "loop" : "arc") << "|";
    int d1 = deg.count(e.tail) ? deg[e.tail] : 0;
    int d2 = deg.count(e.head) ? deg[e.head] : 0;
    os << std::min(d1, d2) << "," << std::max(d1, d2) << "|";
    os << occurrences << "|";
    for (const auto& m : membership) os << m << ";";
    os << "|c" << chosen_count[e.label] << "|p" << pair_count[e.label] << "|t"
       << case3_count[e.label];
    out[e.label] = os.str();
  }
  return out;
}

inline std::optional<std::string> quick_reject(const FlowPresentation& p1,
                                               const FlowPresentation& p2) {
  if (p1.vertices.size() != p2.vertices.size()) return "vertex counts differ";
  if (p1.edges.size() != p2.edges.size()) return "edge counts differ";
  if (p1.surfaces.size() != p2.surfaces.size()) return "region counts differ";
  if (p1.handles.size() != p2.handles.size()) return "handle counts differ";
  if (p1.lower_pairs.size() != p2.lower_pairs.size()) return "lower pairing counts differ";
  if (p1.upper_pairs.size() != p2.upper_pairs.size()) return "upper pairing counts differ";
  if (p1.chosen_cycles.size() != p2.chosen_cycles.size()) return "chosen cycle counts differ";

  auto sorted_values = [](std::map<std::string, std::string> m) {
    std::vector<std::string> v;
    for (auto& [k, s] : m) v.push_back(std::move(s));
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted_values(edge_signatures(p1)) != sorted_values(edge_signatures(p2)))
    return "edge signatures differ";
  if (sorted_values(region_profiles(p1)) != sorted_values(region_profiles(p2)))
    return "region handle profiles differ";

  auto degree_multiset = [](const FlowPresentation& p) {
    std::vector<int> d;
    for (auto& [v, n] : vertex_degrees(p)) d.push_back(n);
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degree_multiset(p1) != degree_multiset(p2)) return "vertex degrees differ";

  auto region_shape = [](const FlowPresentation& p) {
    std::vector<std::string> v;
    for (const auto& s : p.surfaces) {
      std::vector<std::size_t> lens;
      for (const auto& w : s.boundary_words) lens.push_back(w.size());
      std::sort(lens.begin(), lens.end());
      std::string k = std::to_string(s.genus_signed) + ":";
      for (auto n : lens) k += std::to_string(n) + ",";
      v.push_back(std::move(k));
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  if (region_shape(p1) != region_shape(p2)) return "region genus/word shapes differ";

  auto handle_shape = [](const FlowPresentation& p) {
    std::vector<std::string> v;
    for (const auto& h : p.handles) {
      std::string k = handle_attr_key(h) + "|" + std::to_string(h.regions.size()) +
                      "/" + std::to_string(h.incoming.size()) + "/" +
                      std::to_string(h.outgoing.size());
      v.push_back(std::move(k));
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  if (handle_shape(p1) != handle_shape(p2)) return "handle structures differ";

  auto attrs_of = [](const FlowPresentation& p, const std::string& id) {
    const HandleRecord* h = p.find_handle(id);
    return h ? handle_attr_key(*h) : "?";
  };
  auto tau_shape = [&](const FlowPresentation& p) {
    std::vector<std::string> v;
    for (const auto& r : p.tau.case1)
      if (r.alpha != 0 || r.beta != 0)
        v.push_back("c1|" + attrs_of(p, r.handle0) + "|" + attrs_of(p, r.handle2) +
                    "|" + std::to_string(r.alpha) + "|" + std::to_string(r.beta));
    for (const auto& r : p.tau.case2) {
      std::string k = "c2|" + attrs_of(p, r.handle) + "|" +
                      std::to_string(r.meridian.first) + "," +
                      std::to_string(r.meridian.second) + "|";
      if (r.omega)
        k += std::to_string(r.omega->first) + "," + std::to_string(r.omega->second);
      v.push_back(std::move(k));
    }
    for (const auto& r : p.tau.case3)
      v.push_back("c3|" + attrs_of(p, r.handle) + "|" + std::to_string(r.cycle.size()) +
                  "|" + std::to_string(r.alpha < 0 ? -r.alpha : r.alpha));
    int sources = 0, sinks = 0, saddles = 0;
    for (const auto& vx : p.tau.graph_l.vertices) {
      if (vx.role == VertexRole::Source) sources++;
      else if (vx.role == VertexRole::Sink) sinks++;
      else saddles++;
    }
    long long finite_sum = 0;
    int infinities = 0;
    for (const auto& [id, val] : p.tau.mu) {
      if (val.infinite) infinities++;
      else finite_sum += val.value;
    }
    v.push_back("L|" + std::to_string(sources) + "/" + std::to_string(sinks) + "/" +
                std::to_string(saddles) + "|" + std::to_string(p.tau.graph_l.edges.size()) +
                "|inf" + std::to_string(infinities) + "|m2_" +
                std::to_string(((finite_sum % 2) + 2) % 2));
    std::sort(v.begin(), v.end());
    return v;
  };
  if (tau_shape(p1) != tau_shape(p2)) return "tau invariants differ";

  return std::nullopt;
}

// Backtracking search for an isomorphism: edges are assigned first (rarest
// candidate sets first, vertices unified on the fly), then regions and
// handles are matched within signature classes, and every complete candidate
// goes through check_isomorphism.
struct EquivalenceSearch {
  const FlowPresentation& p1;
  const FlowPresentation& p2;
  std::map<std::string, std::string> esig1, esig2, prof1, prof2;

  std::vector<const EdgeRecord*> order;                  // p1 edges, rarity order
  std::map<std::string, std::vector<std::string>> cand;  // p1 edge -> p2 labels

  std::map<std::string, std::string> emap, emap_inv, vmap, vmap_inv;
  std::set<std::string> flips;
  std::optional<Isomorphism> found;

  EquivalenceSearch(const FlowPresentation& a, const FlowPresentation& b)
      : p1(a), p2(b) {
    esig1 = edge_signatures(p1);
    esig2 = edge_signatures(p2);
    prof1 = region_profiles(p1);
    prof2 = region_profiles(p2);
    for (const auto& e1 : p1.edges) {
      std::vector<std::string> cs;
      for (const auto& e2 : p2.edges)
        if (esig1[e1.label] == esig2[e2.label]) cs.push_back(e2.label);
      std::sort(cs.begin(), cs.end());
      cand[e1.label] = std::move(cs);
      order.push_back(&e1);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](const EdgeRecord* x, const EdgeRecord* y) {
                       if (cand[x->label].size() != cand[y->label].size())
                         return cand[x->label].size() < cand[y->label].size();
                       return x->label < y->label;
                     });
  }

  bool unify(const std::string& a, const std::string& b,
             std::vector<std::string>& trail) {
    auto it = vmap.find(a);
    if (it != vmap.end()) return it->second == b;
    if (vmap_inv.count(b)) return false;
    vmap[a] = b;
    vmap_inv[b] = a;
    trail.push_back(a);
    return true;
  }

  void undo(const std::vector<std::string>& trail) {
    for (const auto& a : trail) {
      vmap_inv.erase(vmap[a]);
      vmap.erase(a);
    }
  }

  bool run() { return assign(0); }

  bool assign(std::size_t k) {
    if (k == order.size()) return leaf();
    const EdgeRecord& e1 = *order[k];
    for (const auto& lbl2 : cand[e1.label]) {
      if (emap_inv.count(lbl2)) continue;
      const EdgeRecord* e2 = p2.find_edge(lbl2);
      const bool can_flip = e1.orientation == Orientation::Free;
      for (int flip = 0; flip <= (can_flip ? 1 : 0); ++flip) {
        std::vector<std::string> trail;
        const std::string& t1 = flip ? e1.head : e1.tail;
        const std::string& h1 = flip ? e1.tail : e1.head;
        if (unify(t1, e2->tail, trail) && unify(h1, e2->head, trail)) {
          emap[e1.label] = lbl2;
          emap_inv[lbl2] = e1.label;
          if (flip) flips.insert(e1.label);
          if (assign(k + 1)) return true;
          if (flip) flips.erase(e1.label);
          emap.erase(e1.label);
          emap_inv.erase(lbl2);
        }
        undo(trail);
      }
    }
    return false;
  }

  bool leaf() {
    // leftover vertices carry no structure beyond their count
    std::vector<std::string> rest1, rest2;
    for (const auto& v : p1.vertices)
      if (!vmap.count(v)) rest1.push_back(v);
    for (const auto& v : p2.vertices)
      if (!vmap_inv.count(v)) rest2.push_back(v);
    if (rest1.size() != rest2.size()) return false;
    std::sort(rest1.begin(), rest1.end());
    std::sort(rest2.begin(), rest2.end());
    std::vector<std::string> trail;
    for (std::size_t i = 0; i < rest1.size(); ++i)
      if (!unify(rest1[i], rest2[i], trail)) {
        undo(trail);
        return false;
      }

    auto region_key = [&](const SurfaceRegion& s, bool from_p1) {
      std::vector<std::string> ks;
      for (const auto& w : s.boundary_words)
        ks.push_back(word_key(canonical_form(from_p1 ? translate(w, emap, flips) : w)));
      std::sort(ks.begin(), ks.end());
      std::string out = std::to_string(s.genus_signed) + "|";
      for (const auto& k : ks) out += k + ";";
      out += (from_p1 ? prof1 : prof2).at(s.id);
      return out;
    };

    std::map<std::string, std::vector<std::string>> rcand;
    bool feasible = true;
    for (const auto& s1 : p1.surfaces) {
      std::string k1;
      try {
        k1 = region_key(s1, true);
      } catch (const std::exception&) {
        feasible = false;
        break;
      }
      std::vector<std::string> cs;
      for (const auto& s2 : p2.surfaces)
        if (k1 == region_key(s2, false)) cs.push_back(s2.id);
      if (cs.empty()) {
        feasible = false;
        break;
      }
      std::sort(cs.begin(), cs.end());
      rcand[s1.id] = std::move(cs);
    }
    if (feasible && assign_regions(rcand)) return true;
    undo(trail);
    return false;
  }

  bool assign_regions(const std::map<std::string, std::vector<std::string>>& rcand) {
    std::vector<std::string> rorder;
    for (const auto& [id, cs] : rcand) rorder.push_back(id);
    std::sort(rorder.begin(), rorder.end(), [&](const std::string& a, const std::string& b) {
      if (rcand.at(a).size() != rcand.at(b).size())
        return rcand.at(a).size() < rcand.at(b).size();
      return a < b;
    });
    std::map<std::string, std::string> rmap;
    std::set<std::string> used;
    return assign_region_at(rcand, rorder, 0, rmap, used);
  }

  bool assign_region_at(const std::map<std::string, std::vector<std::string>>& rcand,
                        const std::vector<std::string>& rorder, std::size_t k,
                        std::map<std::string, std::string>& rmap,
                        std::set<std::string>& used) {
    if (k == rorder.size()) return assign_handles(rmap);
    for (const auto& r2 : rcand.at(rorder[k])) {
      if (used.count(r2)) continue;
      rmap[rorder[k]] = r2;
      used.insert(r2);
      if (assign_region_at(rcand, rorder, k + 1, rmap, used)) return true;
      used.erase(r2);
      rmap.erase(rorder[k]);
    }
    return false;
  }

  bool assign_handles(const std::map<std::string, std::string>& rmap) {
    auto mapped_sorted = [&](const std::vector<std::string>& rs) {
      std::vector<std::string> out;
      for (const auto& r : rs) out.push_back(rmap.at(r));
      std::sort(out.begin(), out.end());
      return out;
    };
    auto sorted = [](std::vector<std::string> rs) {
      std::sort(rs.begin(), rs.end());
      return rs;
    };
    std::map<std::string, std::vector<std::string>> hcand;
    for (const auto& h1 : p1.handles) {
      std::vector<std::string> cs;
      for (const auto& h2 : p2.handles) {
        if (h1.kind != h2.kind || h1.index != h2.index || h1.height != h2.height ||
            h1.partitioned != h2.partitioned)
          continue;
        if (mapped_sorted(h1.regions) != sorted(h2.regions)) continue;
        if (mapped_sorted(h1.incoming) != sorted(h2.incoming)) continue;
        if (mapped_sorted(h1.outgoing) != sorted(h2.outgoing)) continue;
        cs.push_back(h2.id);
      }
      if (cs.empty()) return false;
      std::sort(cs.begin(), cs.end());
      hcand[h1.id] = std::move(cs);
    }
    std::vector<std::string> horder;
    for (const auto& [id, cs] : hcand) horder.push_back(id);
    std::sort(horder.begin(), horder.end(), [&](const std::string& a, const std::string& b) {
      if (hcand.at(a).size() != hcand.at(b).size())
        return hcand.at(a).size() < hcand.at(b).size();
      return a < b;
    });
    std::map<std::string, std::string> hmap;
    std::set<std::string> used;
    return assign_handle_at(hcand, horder, 0, hmap, used, rmap);
  }

  bool assign_handle_at(const std::map<std::string, std::vector<std::string>>& hcand,
                        const std::vector<std::string>& horder, std::size_t k,
                        std::map<std::string, std::string>& hmap,
                        std::set<std::string>& used,
                        const std::map<std::string, std::string>& rmap) {
    if (k == horder.size()) {
      Isomorphism iso;
      iso.vertex_map = vmap;
      iso.edge_map = emap;
      iso.region_map = rmap;
      iso.handle_map = hmap;
      iso.flips = flips;
      if (check_isomorphism(p1, p2, iso)) {
        found = std::move(iso);
        return true;
      }
      return false;
    }
    for (const auto& h2 : hcand.at(horder[k])) {
      if (used.count(h2)) continue;
      hmap[horder[k]] = h2;
      used.insert(h2);
      if (assign_handle_at(hcand, horder, k + 1, hmap, used, rmap)) return true;
      used.erase(h2);
      hmap.erase(horder[k]);
    }
    return false;
  }
};

}  // namespace detail

struct EquivalenceResult {
  std::optional<Isomorphism> iso;
  std::string failure;  // set when iso is absent
};

inline EquivalenceResult find_equivalence_explained(const FlowPresentation& p1,
                                                    const FlowPresentation& p2) {
  auto r1 = validate_presentation(p1);
  auto r2 = validate_presentation(p2);
  if (!r1.ok() || !r2.ok())
    throw std::invalid_argument("find_equivalence: invalid input presentation:\n" +
                                r1.to_string() + r2.to_string());
  if (auto reason = detail::quick_reject(p1, p2)) return {std::nullopt, *reason};
  detail::EquivalenceSearch search(p1, p2);
  if (search.run()) return {std::move(search.found), ""};
  return {std::nullopt, "no label correspondence preserves all structure (search exhausted)"};
}

inline std::optional<Isomorphism> find_equivalence(const FlowPresentation& p1,
                                                   const FlowPresentation& p2) {
  return find_equivalence_explained(p1, p2).iso;
}

}  // namespace ms3
