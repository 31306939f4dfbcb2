#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ms3/model.hpp"

namespace testkit {

// Random relabeling recipe: fresh shuffled names in every namespace and a
// random flip set over the free edges.
inline ms3::Isomorphism random_relabeling(const ms3::FlowPresentation& p,
                                          std::mt19937& rng) {
  ms3::Isomorphism m;
  auto assign = [&](const std::vector<std::string>& olds, const char* prefix,
                    std::map<std::string, std::string>& out) {
    std::vector<int> idx(olds.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0; i < olds.size(); ++i)
      out[olds[i]] = prefix + std::to_string(idx[i]);
  };
  std::vector<std::string> vs(p.vertices), es, rs, hs;
  for (const auto& e : p.edges) es.push_back(e.label);
  for (const auto& s : p.surfaces) rs.push_back(s.id);
  for (const auto& h : p.handles) hs.push_back(h.id);
  assign(vs, "nv", m.vertex_map);
  assign(es, "ne", m.edge_map);
  assign(rs, "nr", m.region_map);
  assign(hs, "nh", m.handle_map);
  std::bernoulli_distribution flip(0.5);
  for (const auto& e : p.edges)
    if (e.orientation == ms3::Orientation::Free && flip(rng)) m.flips.insert(e.label);
  return m;
}

}  // namespace testkit
