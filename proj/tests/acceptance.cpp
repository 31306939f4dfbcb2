// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion carries a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "framed_testkit.hpp"
#include "model_testkit.hpp"
#include "ms3/ms3.hpp"

namespace {

struct Criterion {
  int id;
  std::string summary;
  double limit_seconds;
  std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

// --- criterion 1: the four trivially-framed flows -------------------------

void criterion_trivial_family(std::ostringstream& note) {
  const int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  std::vector<ms3::FlowPresentation> flows;
  for (auto [s0, s2] : signs) flows.push_back(ms3::trivial_orbit_flow(s0, s2));
  int checks = 0;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    auto self = ms3::find_equivalence(flows[i], flows[i]);
    require(self.has_value(), "flow " + std::to_string(i) + " not self-equivalent");
    require(ms3::check_isomorphism(flows[i], flows[i], *self),
            "self-equivalence fails verification");
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      ++checks;
      require(!ms3::find_equivalence(flows[i], flows[j]).has_value(),
              "flows " + std::to_string(i) + " and " + std::to_string(j) +
                  " compare equivalent");
    }
  }
  note << checks << " pairwise checks, 4 self checks";
}

// --- criterion 2: the twisted family ---------------------------------------

void criterion_twisted_family(std::ostringstream& note) {
  std::mt19937 rng(101);
  std::vector<ms3::FlowPresentation> flows;
  for (int n = 0; n <= 5; ++n) flows.push_back(ms3::twisted_orbit_flow(n));
  int pair_checks = 0, relabel_checks = 0;
  for (std::size_t i = 0; i < flows.size(); ++i)
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      ++pair_checks;
      require(!ms3::find_equivalence(flows[i], flows[j]).has_value(),
              "twisted flows n=" + std::to_string(i) + " and n=" + std::to_string(j) +
                  " compare equivalent");
    }
  for (std::size_t i = 0; i < flows.size(); ++i)
    for (int t = 0; t < 10; ++t) {
      ++relabel_checks;
      auto m = testkit::random_relabeling(flows[i], rng);
      auto q = ms3::relabel(flows[i], m);
      auto iso = ms3::find_equivalence(flows[i], q);
      require(iso.has_value(), "relabeling of twisted n=" + std::to_string(i) +
                                   " not recovered (trial " + std::to_string(t) + ")");
      require(ms3::check_isomorphism(flows[i], q, *iso),
              "recovered correspondence fails verification");
    }
  note << pair_checks << " pairwise + " << relabel_checks << " relabel checks";
}

// --- criterion 3: exhaustive framed-graph sweep ----------------------------

void criterion_framed_sweep(std::ostringstream& note) {
  auto graphs = testkit::enumerate_connected_msgraphs(4);
  require(!graphs.empty(), "graph enumeration came back empty");

  std::mt19937 rng(103);
  long long framing_count = 0, direct_checks = 0;
  for (const auto& g : graphs) {
    auto framings = testkit::enumerate_framings(g, 2, 2);
    framing_count += static_cast<long long>(framings.size());

    testkit::BoxOracle oracle(g, 8);
    std::vector<int32_t> cls(framings.size());
    std::vector<std::string> sig(framings.size());
    for (std::size_t i = 0; i < framings.size(); ++i) {
      cls[i] = oracle.class_of(framings[i]);
      std::ostringstream ss;
      for (const auto& c : ms3::framing_signature(g, framings[i])) {
        ss << c.type << "/" << c.aggregate << "/";
        for (const auto& e : c.inf_edges) ss << e << ",";
        ss << ";";
      }
      sig[i] = ss.str();
    }

    // the criteria and the reachability classes are both equivalence
    // relations, so agreement on all pairs is exactly agreement of the two
    // partitions: class ids and signatures must determine each other
    std::map<int32_t, std::string> cls_to_sig;
    std::map<std::string, int32_t> sig_to_cls;
    for (std::size_t i = 0; i < framings.size(); ++i) {
      auto [it1, fresh1] = cls_to_sig.emplace(cls[i], sig[i]);
      require(it1->second == sig[i],
              "criteria split a reachability class (graph with " +
                  std::to_string(g.edges.size()) + " edges)");
      auto [it2, fresh2] = sig_to_cls.emplace(sig[i], cls[i]);
      require(it2->second == cls[i],
              "criteria merge two reachability classes (graph with " +
                  std::to_string(g.edges.size()) + " edges)");
    }

    // tie the partition check to the public pairwise interfaces
    if (!framings.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, framings.size() - 1);
      const int direct = g.edges.size() <= 3 ? 12 : 4;
      for (int t = 0; t < direct; ++t) {
        std::size_t i = pick(rng), j = pick(rng);
        const bool criteria = ms3::framings_equivalent(g, framings[i], framings[j]);
        require(criteria == (sig[i] == sig[j]), "signature comparison drifted");
        const bool reach = ms3::oracle_equivalent(g, framings[i], framings[j], 8);
        require(reach == (cls[i] == cls[j]), "batched oracle drifted from BFS");
        require(criteria == reach, "criteria disagree with the oracle");
        ++direct_checks;
      }
    }
  }
  note << graphs.size() << " graphs, " << framing_count << " framings, "
       << direct_checks << " direct cross-checks";
}

// --- criterion 4: framing criteria spot checks ----------------------------------------

void criterion_framing_spot_checks(std::ostringstream& note) {
  using ms3::FramingValue;
  ms3::MSGraph parallel;
  parallel.vertices = {{"s", ms3::VertexRole::Source}, {"t", ms3::VertexRole::Sink}};
  parallel.edges = {{"e1", "s", "t"}, {"e2", "s", "t"}};
  require(ms3::framings_equivalent(parallel,
                                   {{"e1", FramingValue::of(2)}, {"e2", FramingValue::of(3)}},
                                   {{"e1", FramingValue::of(0)}, {"e2", FramingValue::of(5)}}),
          "equal sums on a saddle-free graph must be equivalent");

  ms3::MSGraph triangle;
  triangle.vertices = {{"s", ms3::VertexRole::Source},
                       {"x", ms3::VertexRole::Saddle},
                       {"t", ms3::VertexRole::Sink}};
  triangle.edges = {{"e1", "s", "x"}, {"e2", "x", "t"}, {"e3", "s", "t"}};
  require(ms3::framings_equivalent(
              triangle,
              {{"e1", FramingValue::of(1)}, {"e2", FramingValue::of(1)}, {"e3", FramingValue::of(1)}},
              {{"e1", FramingValue::of(5)}, {"e2", FramingValue::of(0)}, {"e3", FramingValue::of(0)}}),
          "sums 3 and 5 are both odd and must be equivalent");

  ms3::MSGraph path;
  path.vertices = {{"s", ms3::VertexRole::Source},
                   {"x", ms3::VertexRole::Saddle},
                   {"t", ms3::VertexRole::Sink}};
  path.edges = {{"e1", "s", "x"}, {"e2", "x", "t"}};
  require(!ms3::framings_equivalent(path,
                                    {{"e1", FramingValue::of(1)}, {"e2", FramingValue::of(0)}},
                                    {{"e1", FramingValue::of(0)}, {"e2", FramingValue::of(1)}}),
          "group differences +1 and -1 must not be equivalent");

  require(ms3::framings_equivalent(path,
                                   {{"e1", FramingValue::inf()}, {"e2", FramingValue::of(7)}},
                                   {{"e1", FramingValue::inf()}, {"e2", FramingValue::of(-2)}}),
          "coinciding infinity sets must be equivalent");
  require(!ms3::framings_equivalent(path,
                                    {{"e1", FramingValue::inf()}, {"e2", FramingValue::of(0)}},
                                    {{"e1", FramingValue::of(0)}, {"e2", FramingValue::inf()}}),
          "different infinity sets must not be equivalent");
  note << "sum, parity, group-difference and infinity-set verdicts";
}

// --- criterion 5: first-return fidelity -------------------------------------

void criterion_first_return(std::ostringstream& note) {
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> ad(-50.0, 50.0);
  std::uniform_real_distribution<double> zd(-1.0, 1.0);
  std::uniform_int_distribution<int> side(0, 1);
  int tested = 0;
  while (tested < 10000) {
    double z = zd(rng);
    if (z == 0.0 || std::fabs(z) >= 1.0) continue;
    double rho = side(rng) ? 1.0 : 3.0;
    double alpha = ad(rng);
    ms3::TorusPoint q = ms3::first_return({rho, alpha, z});
    const double want_rho = rho == 1.0 ? 2.0 - std::fabs(z) : 2.0 + std::fabs(z);
    const double want_alpha = alpha + std::log(std::fabs(z));
    const double want_z = z > 0 ? 1.0 : -1.0;
    require(std::fabs(q.rho - want_rho) <= 1e-12, "rho drifted from the closed form");
    require(std::fabs(q.alpha - want_alpha) <= 1e-12, "alpha drifted from the closed form");
    require(q.z == want_z, "z must be the sign of the input");
    require(ms3::is_outgoing(q), "output violates the outgoing chart");
    ++tested;
  }
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    double z = std::ldexp(1.0, -k);
    ms3::TorusPoint q = ms3::first_return({1.0, 0.0, z});
    require(q.alpha < prev, "alpha must strictly decrease along z = 2^-k");
    require(std::fabs(std::fabs(q.rho - 2.0) - z) <= 1e-15, "rho must approach 2 at rate |z|");
    prev = q.alpha;
  }
  note << tested << " random points, 40-term winding sequence";
}

// --- criterion 6: equivalence-relation laws ---------------------------------

void criterion_equivalence_laws(std::ostringstream& note) {
  auto items = ms3::catalog_items();
  int reflexive = 0, symmetric = 0;
  for (const auto& [key, p] : items) {
    auto iso = ms3::find_equivalence(p, p);
    require(iso.has_value(), key + " is not self-equivalent");
    require(ms3::check_isomorphism(p, p, *iso), key + ": returned map fails verification");
    require(ms3::check_isomorphism(p, p, ms3::inverse(*iso)),
            key + ": inverse map fails verification");
    ++reflexive;
  }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      auto ab = ms3::find_equivalence(items[i].second, items[j].second);
      auto ba = ms3::find_equivalence(items[j].second, items[i].second);
      require(ab.has_value() == ba.has_value(),
              items[i].first + " / " + items[j].first + ": asymmetric verdicts");
      if (ab) {
        require(ms3::check_isomorphism(items[i].second, items[j].second, *ab),
                "forward map fails verification");
        require(ms3::check_isomorphism(items[j].second, items[i].second, ms3::inverse(*ab)),
                "inverted map fails verification in reverse");
      }
      ++symmetric;
    }
  note << reflexive << " reflexivity + " << symmetric << " symmetry checks";
}

// --- criterion 7: round trip -------------------------------------------------

void criterion_round_trip(std::ostringstream& note) {
  std::mt19937 rng(109);
  auto items = ms3::catalog_items();
  int count = 0;
  for (const auto& [key, p] : items) {
    require(ms3::parse_flow(ms3::serialize(p)) == p, key + ": round trip drifted");
    ++count;
  }
  int relabels = 0;
  while (relabels < 100) {
    for (const auto& [key, p] : items) {
      if (relabels >= 100) break;
      auto q = ms3::relabel(p, testkit::random_relabeling(p, rng));
      require(ms3::parse_flow(ms3::serialize(q)) == q,
              key + ": relabeled round trip drifted");
      ++relabels;
    }
  }
  note << count << " catalog items + " << relabels << " relabelings";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "trivial family: 4 flows pairwise inequivalent, each self-equivalent", 1.0,
       criterion_trivial_family},
      {2, "twisted family: n=0..5 pairwise inequivalent, relabelings recovered", 5.0,
       criterion_twisted_family},
      {3, "framed graphs <= 4 edges: criteria match the reachability oracle", 600.0,
       criterion_framed_sweep},
      {4, "framing criteria spot checks (sum, parity, difference, infinity set)", 1.0,
       criterion_framing_spot_checks},
      {5, "first-return map matches the closed form and winds onto u1", 1.0,
       criterion_first_return},
      {6, "equivalence laws over the catalog (reflexive, symmetric, inverses)", 10.0,
       criterion_equivalence_laws},
      {7, "serialization round trip over catalog and 100 relabelings", 5.0,
       criterion_round_trip},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(detail);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty();
    if (ok && elapsed > c.limit_seconds) {
      ok = false;
      error = "time limit exceeded";
    }
    std::printf("[%s] criterion %d (%.2fs / limit %.0fs): %s%s%s%s\n",
                ok ? "PASS" : "FAIL", c.id, elapsed, c.limit_seconds,
                c.summary.c_str(), detail.str().empty() ? "" : " — ",
                detail.str().c_str(), error.empty() ? "" : (" — " + error).c_str());
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
