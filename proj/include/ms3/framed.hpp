#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms3 {

enum class VertexRole { Source, Sink, Saddle };

inline const char* to_token(VertexRole r) {
  switch (r) {
    case VertexRole::Source: return "source";
    case VertexRole::Sink: return "sink";
    default: return "saddle";
  }
}

struct MSVertex {
  std::string id;
  VertexRole role = VertexRole::Source;

  friend bool operator==(const MSVertex&, const MSVertex&) = default;
};

struct MSEdge {
  std::string id;
  std::string tail, head;

  friend bool operator==(const MSEdge&, const MSEdge&) = default;
};

// Oriented graph in which every edge has a source or a sink endpoint.
// Vertices that are neither are the saddles.
struct MSGraph {
  std::vector<MSVertex> vertices;
  std::vector<MSEdge> edges;

  const MSVertex* find_vertex(const std::string& id) const {
    for (const auto& v : vertices)
      if (v.id == id) return &v;
    return nullptr;
  }
  const MSEdge* find_edge(const std::string& id) const {
    for (const auto& e : edges)
      if (e.id == id) return &e;
    return nullptr;
  }

  friend bool operator==(const MSGraph&, const MSGraph&) = default;
};

inline std::vector<std::string> msgraph_issues(const MSGraph& g) {
  std::vector<std::string> issues;
  std::set<std::string> vids, eids;
  for (const auto& v : g.vertices)
    if (!vids.insert(v.id).second) issues.push_back("duplicate vertex id " + v.id);
  for (const auto& e : g.edges) {
    if (!eids.insert(e.id).second) issues.push_back("duplicate edge id " + e.id);
    const MSVertex* t = g.find_vertex(e.tail);
    const MSVertex* h = g.find_vertex(e.head);
    if (!t) issues.push_back("edge " + e.id + " has unknown tail " + e.tail);
    if (!h) issues.push_back("edge " + e.id + " has unknown head " + e.head);
    if (t && h) {
      auto endpoint = [](const MSVertex* v) {
        return v->role == VertexRole::Source || v->role == VertexRole::Sink;
      };
      if (!endpoint(t) && !endpoint(h))
        issues.push_back("edge " + e.id + " has neither a source nor a sink endpoint");
      if (h->role == VertexRole::Source)
        issues.push_back("source " + h->id + " has incoming edge " + e.id);
      if (t->role == VertexRole::Sink)
        issues.push_back("sink " + t->id + " has outgoing edge " + e.id);
    }
  }
  return issues;
}

inline void require_valid(const MSGraph& g) {
  auto issues = msgraph_issues(g);
  if (issues.empty()) return;
  std::string msg = "invalid MS-graph:";
  for (const auto& s : issues) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

inline bool incident(const MSEdge& a, const MSEdge& b) {
  return a.tail == b.tail || a.tail == b.head || a.head == b.tail ||
         a.head == b.head;
}

// Two distinct edges are sequential when one enters and the other leaves a
// common saddle vertex.  Pairs meeting head-to-head or tail-to-tail at a
// saddle, and pairs meeting only at sources or sinks, are not sequential.
inline bool sequential(const MSGraph& g, const MSEdge& a, const MSEdge& b) {
  auto is_saddle = [&](const std::string& id) {
    const MSVertex* v = g.find_vertex(id);
    return v && v->role == VertexRole::Saddle;
  };
  if (a.head == b.tail && is_saddle(a.head)) return true;
  if (b.head == a.tail && is_saddle(b.head)) return true;
  return false;
}

// Integer framing value or the absorbing infinity.
struct FramingValue {
  bool infinite = false;
  std::int64_t value = 0;

  static FramingValue inf() { return {true, 0}; }
  static FramingValue of(std::int64_t v) { return {false, v}; }

  friend bool operator==(const FramingValue&, const FramingValue&) = default;
};

using Framing = std::map<std::string, FramingValue>;

inline void require_same_domain(const MSGraph& g, const Framing& f) {
  if (f.size() != g.edges.size())
    throw std::invalid_argument("framing domain does not match the edge set");
  for (const auto& e : g.edges)
    if (!f.count(e.id))
      throw std::invalid_argument("framing missing edge " + e.id);
}

// op == 1: add k to both framings of a sequential pair.
// op == 2: add k to one and -k to the other, for an incident pair that is
// not sequential.  Infinity absorbs any addition.
struct FrameOp {
  int op = 1;
  std::string edge_a, edge_b;
  std::int64_t k = 0;
};

inline Framing apply_operation(const MSGraph& g, const Framing& f,
                               const FrameOp& op) {
  require_valid(g);
  require_same_domain(g, f);
  const MSEdge* ea = g.find_edge(op.edge_a);
  const MSEdge* eb = g.find_edge(op.edge_b);
  if (!ea || !eb) throw std::invalid_argument("operation names an unknown edge");
  if (ea == eb) throw std::invalid_argument("operation needs two distinct edges");
  const bool seq = sequential(g, *ea, *eb);
  if (op.op == 1) {
    if (!seq)
      throw std::invalid_argument("operation 1 requires a sequential pair");
  } else if (op.op == 2) {
    if (!incident(*ea, *eb))
      throw std::invalid_argument("operation 2 requires incident edges");
    if (seq)
      throw std::invalid_argument("operation 2 requires a non-sequential pair");
  } else {
    throw std::invalid_argument("unknown operation kind");
  }
  Framing out = f;
  auto add = [](FramingValue& v, std::int64_t k) {
    if (!v.infinite) v.value += k;
  };
  add(out[op.edge_a], op.k);
  add(out[op.edge_b], op.op == 1 ? op.k : -op.k);
  return out;
}

enum class GraphType { Type1, Type2, Type3 };

struct GraphComponent {
  std::vector<std::string> vertex_ids;  // sorted
  std::vector<std::string> edge_ids;    // sorted
  GraphType type = GraphType::Type1;
  // Type3 only: 0 = group containing the piece with the least vertex id.
  std::map<std::string, int> edge_group;
};

// Classify each connected component.  Type1: no saddles.  Otherwise cut the
// component at its saddles; the resulting pieces must admit a 2-colouring in
// which the pieces of an entering and a leaving edge at a saddle differ and
// the pieces of two same-direction edges at a saddle agree.  No such
// colouring means some cycle reverses direction at an odd number of saddle
// passages: Type2.  A valid colouring is returned as the Type3 groups.
inline std::vector<GraphComponent> classify(const MSGraph& g) {
  require_valid(g);
  const std::size_t nv = g.vertices.size();
  std::map<std::string, std::size_t> vidx;
  for (std::size_t i = 0; i < nv; ++i) vidx[g.vertices[i].id] = i;

  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (const auto& e : g.edges) unite(vidx[e.tail], vidx[e.head]);

  std::map<std::size_t, std::vector<std::size_t>> comp_vertices;
  for (std::size_t i = 0; i < nv; ++i) comp_vertices[find(i)].push_back(i);

  // deterministic order: by least vertex id in the component
  std::vector<std::pair<std::string, std::size_t>> roots;
  for (const auto& [root, vs] : comp_vertices) {
    std::string least = g.vertices[vs.front()].id;
    for (auto v : vs) least = std::min(least, g.vertices[v].id);
    roots.emplace_back(least, root);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<GraphComponent> out;
  for (const auto& [least, root] : roots) {
    GraphComponent comp;
    std::set<std::string> in_comp;
    for (auto v : comp_vertices[root]) {
      comp.vertex_ids.push_back(g.vertices[v].id);
      in_comp.insert(g.vertices[v].id);
    }
    std::sort(comp.vertex_ids.begin(), comp.vertex_ids.end());
    for (const auto& e : g.edges)
      if (in_comp.count(e.tail)) comp.edge_ids.push_back(e.id);
    std::sort(comp.edge_ids.begin(), comp.edge_ids.end());

    bool has_saddle = false;
    for (const auto& id : comp.vertex_ids)
      if (g.find_vertex(id)->role == VertexRole::Saddle) has_saddle = true;

    if (!has_saddle || comp.edge_ids.empty()) {
      comp.type = GraphType::Type1;
      out.push_back(std::move(comp));
      continue;
    }

    // pieces: union-find over non-saddle vertices and edges
    std::vector<std::string> slots;  // "v:" + id or "e:" + id
    std::map<std::string, std::size_t> sidx;
    for (const auto& id : comp.vertex_ids)
      if (g.find_vertex(id)->role != VertexRole::Saddle) {
        sidx["v:" + id] = slots.size();
        slots.push_back("v:" + id);
      }
    for (const auto& id : comp.edge_ids) {
      sidx["e:" + id] = slots.size();
      slots.push_back("e:" + id);
    }
    std::vector<std::size_t> pparent(slots.size());
    std::iota(pparent.begin(), pparent.end(), 0);
    auto pfind = [&](std::size_t x) {
      while (pparent[x] != x) {
        pparent[x] = pparent[pparent[x]];
        x = pparent[x];
      }
      return x;
    };
    auto punite = [&](std::size_t a, std::size_t b) { pparent[pfind(a)] = pfind(b); };
    for (const auto& id : comp.edge_ids) {
      const MSEdge* e = g.find_edge(id);
      for (const std::string& end : {e->tail, e->head})
        if (g.find_vertex(end)->role != VertexRole::Saddle)
          punite(sidx["e:" + id], sidx["v:" + end]);
    }

    // colouring nodes: pieces plus one node per saddle; an edge entering a
    // saddle ties its piece to the saddle colour, a leaving edge to the
    // opposite colour
    std::map<std::string, std::size_t> node_of;  // piece root / saddle -> node
    std::vector<std::vector<std::pair<std::size_t, int>>> adj;
    auto node = [&](const std::string& key) {
      auto it = node_of.find(key);
      if (it != node_of.end()) return it->second;
      node_of[key] = adj.size();
      adj.emplace_back();
      return adj.size() - 1;
    };
    auto link = [&](std::size_t a, std::size_t b, int parity) {
      adj[a].push_back({b, parity});
      adj[b].push_back({a, parity});
    };
    for (const auto& id : comp.vertex_ids) {
      if (g.find_vertex(id)->role != VertexRole::Saddle) continue;
      std::size_t sn = node("s:" + id);
      for (const auto& eid : comp.edge_ids) {
        const MSEdge* e = g.find_edge(eid);
        std::size_t pn = node("p:" + std::to_string(pfind(sidx["e:" + eid])));
        if (e->head == id) link(sn, pn, 0);  // entering: same colour as saddle
        if (e->tail == id) link(sn, pn, 1);  // leaving: opposite colour
      }
    }

    std::vector<int> colour(adj.size(), -1);
    bool consistent = true;
    for (std::size_t s = 0; s < adj.size() && consistent; ++s) {
      if (colour[s] != -1) continue;
      colour[s] = 0;
      std::deque<std::size_t> q{s};
      while (!q.empty() && consistent) {
        std::size_t x = q.front();
        q.pop_front();
        for (auto [y, parity] : adj[x]) {
          int want = colour[x] ^ parity;
          if (colour[y] == -1) {
            colour[y] = want;
            q.push_back(y);
          } else if (colour[y] != want) {
            consistent = false;
            break;
          }
        }
      }
    }

    if (!consistent) {
      comp.type = GraphType::Type2;
    } else {
      comp.type = GraphType::Type3;
      // group 0 is the group of the piece holding the least non-saddle vertex
      std::string least_ns;
      for (const auto& id : comp.vertex_ids)
        if (g.find_vertex(id)->role != VertexRole::Saddle) {
          least_ns = id;
          break;
        }
      int base = colour[node_of.at(
          "p:" + std::to_string(pfind(sidx.at("v:" + least_ns))))];
      for (const auto& eid : comp.edge_ids) {
        int c = colour[node_of.at(
            "p:" + std::to_string(pfind(sidx.at("e:" + eid))))];
        comp.edge_group[eid] = c ^ base;
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// Per-component reachability invariant.  Both operations fix the set of
// infinity-framed edges, and when that set is nonempty any finite edge can
// be driven to any value through a path ending at an infinity edge, so the
// set alone decides the component.  Without infinities the component type
// determines the complete invariant: total sum (Type1), total sum mod 2
// (Type2), or the difference of the two group totals (Type3).
struct ComponentSignature {
  std::vector<std::string> inf_edges;
  int type = 0;  // 0 when inf_edges nonempty, else 1/2/3
  std::int64_t aggregate = 0;

  friend bool operator==(const ComponentSignature&,
                         const ComponentSignature&) = default;
};

inline std::vector<ComponentSignature> framing_signature(const MSGraph& g,
                                                         const Framing& f) {
  require_valid(g);
  require_same_domain(g, f);
  std::vector<ComponentSignature> out;
  for (const auto& comp : classify(g)) {
    ComponentSignature sig;
    for (const auto& eid : comp.edge_ids)
      if (f.at(eid).infinite) sig.inf_edges.push_back(eid);
    if (!sig.inf_edges.empty()) {
      out.push_back(std::move(sig));
      continue;
    }
    switch (comp.type) {
      case GraphType::Type1: {
        sig.type = 1;
        for (const auto& eid : comp.edge_ids) sig.aggregate += f.at(eid).value;
        break;
      }
      case GraphType::Type2: {
        sig.type = 2;
        std::int64_t s = 0;
        for (const auto& eid : comp.edge_ids) s += f.at(eid).value;
        sig.aggregate = ((s % 2) + 2) % 2;
        break;
      }
      case GraphType::Type3: {
        sig.type = 3;
        for (const auto& eid : comp.edge_ids) {
          std::int64_t v = f.at(eid).value;
          sig.aggregate += comp.edge_group.at(eid) == 0 ? v : -v;
        }
        break;
      }
    }
    out.push_back(std::move(sig));
  }
  return out;
}

inline bool framings_equivalent(const MSGraph& g, const Framing& f1,
                                const Framing& f2) {
  return framing_signature(g, f1) == framing_signature(g, f2);
}

// Breadth-first search over all framings reachable by unit operations
// (k = +1 or -1) with every finite value clamped to [-value_bound,
// value_bound].  Independent of the signature criteria above.
inline bool oracle_equivalent(const MSGraph& g, const Framing& f1,
                              const Framing& f2, std::int64_t value_bound) {
  require_valid(g);
  require_same_domain(g, f1);
  require_same_domain(g, f2);
  if (value_bound < 0) throw std::invalid_argument("negative oracle bound");
  for (const Framing* f : {&f1, &f2})
    for (const auto& [id, v] : *f)
      if (!v.infinite && (v.value < -value_bound || v.value > value_bound))
        throw std::invalid_argument("framing value outside the oracle bound");

  // operations never change the infinity set
  std::vector<std::string> ids;
  for (const auto& e : g.edges) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  std::vector<int> finite_pos(ids.size(), -1);
  int nfin = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (f1.at(ids[i]).infinite != f2.at(ids[i]).infinite) return false;
    if (!f1.at(ids[i]).infinite) finite_pos[i] = nfin++;
  }

  std::vector<std::int64_t> start(nfin), target(nfin);
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (finite_pos[i] >= 0) {
      start[finite_pos[i]] = f1.at(ids[i]).value;
      target[finite_pos[i]] = f2.at(ids[i]).value;
    }
  if (start == target) return true;
  if (nfin == 0) return true;

  struct Move {
    int pos_a, pos_b;  // -1 when the edge is infinity-framed
    std::int64_t da, db;
  };
  std::vector<Move> moves;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const MSEdge* ea = g.find_edge(ids[i]);
      const MSEdge* eb = g.find_edge(ids[j]);
      if (!incident(*ea, *eb)) continue;
      const bool seq = sequential(g, *ea, *eb);
      const int pa = finite_pos[i], pb = finite_pos[j];
      if (pa < 0 && pb < 0) continue;
      for (std::int64_t k : {std::int64_t(1), std::int64_t(-1)}) {
        if (seq)
          moves.push_back({pa, pb, k, k});
        else
          moves.push_back({pa, pb, k, -k});
      }
    }

  std::set<std::vector<std::int64_t>> seen{start};
  std::deque<std::vector<std::int64_t>> queue{start};
  while (!queue.empty()) {
    std::vector<std::int64_t> cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& m : moves) {
      std::vector<std::int64_t> next = cur;
      if (m.pos_a >= 0) next[m.pos_a] += m.da;
      if (m.pos_b >= 0) next[m.pos_b] += m.db;
      bool in_box = true;
      for (auto v : next)
        if (v < -value_bound || v > value_bound) {
          in_box = false;
          break;
        }
      if (!in_box) continue;
      if (next == target) return true;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return false;
}

// Constructive normal form on a saddle-free component: returns an operation
// list that zeroes every edge of the target's component except the target,
// which ends up carrying the component's total sum.
inline std::vector<FrameOp> normalize_type1_ops(const MSGraph& g,
                                                const Framing& f,
                                                const std::string& target) {
  require_valid(g);
  require_same_domain(g, f);
  if (!g.find_edge(target)) throw std::invalid_argument("unknown target edge");

  const GraphComponent* comp = nullptr;
  auto comps = classify(g);
  for (const auto& c : comps)
    if (std::find(c.edge_ids.begin(), c.edge_ids.end(), target) != c.edge_ids.end())
      comp = &c;
  if (!comp || comp->type != GraphType::Type1)
    throw std::invalid_argument("target component must be saddle-free");
  for (const auto& eid : comp->edge_ids)
    if (f.at(eid).infinite)
      throw std::invalid_argument("normal form needs finite framings");

  // BFS over edge adjacency, rooted at the target
  std::map<std::string, std::string> toward;  // edge -> neighbour nearer target
  std::vector<std::string> order;             // BFS order from the target
  std::set<std::string> visited{target};
  std::deque<std::string> q{target};
  while (!q.empty()) {
    std::string cur = q.front();
    q.pop_front();
    order.push_back(cur);
    const MSEdge* ec = g.find_edge(cur);
    for (const auto& eid : comp->edge_ids) {
      if (visited.count(eid)) continue;
      if (!incident(*ec, *g.find_edge(eid))) continue;
      visited.insert(eid);
      toward[eid] = cur;
      q.push_back(eid);
    }
  }

  std::vector<FrameOp> ops;
  Framing cur = f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == target) continue;
    std::int64_t v = cur.at(*it).value;
    if (v == 0) continue;
    FrameOp op{2, *it, toward.at(*it), -v};
    cur = apply_operation(g, cur, op);
    ops.push_back(op);
  }
  return ops;
}

}  // namespace ms3
