// Command-line interface for flow presentations.
//
// exit codes: 0 success / equivalent, 1 inequivalent or invariant
// violations, 2 invalid input.  `framed check --oracle` exits 4 when the
// reachability search contradicts the criteria (which indicates a bug).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ms3/ms3.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_isomorphism(const ms3::Isomorphism& iso) {
  for (const auto& [a, b] : iso.vertex_map)
    std::cout << "vertex " << a << " -> " << b << "\n";
  for (const auto& [a, b] : iso.edge_map) {
    std::cout << "edge " << a << " -> " << b;
    if (iso.flips.count(a)) std::cout << " (flipped)";
    std::cout << "\n";
  }
  for (const auto& [a, b] : iso.region_map)
    std::cout << "region " << a << " -> " << b << "\n";
  for (const auto& [a, b] : iso.handle_map)
    std::cout << "handle " << a << " -> " << b << "\n";
}

int cmd_check(const std::string& file_a, const std::string& file_b) {
  ms3::FlowPresentation a, b;
  try {
    a = ms3::parse_flow(read_file(file_a));
    b = ms3::parse_flow(read_file(file_b));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto result = ms3::find_equivalence_explained(a, b);
  if (result.iso) {
    std::cout << "equivalent\n";
    print_isomorphism(*result.iso);
    return 0;
  }
  std::cout << "inequivalent: " << result.failure << "\n";
  return 1;
}

int cmd_validate(const std::string& file) {
  ms3::FlowPresentation p;
  try {
    p = ms3::parse_flow_raw(read_file(file));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto rep = ms3::validate_presentation(p);
  if (rep.ok()) {
    std::cout << "ok\n";
    return 0;
  }
  std::cout << rep.to_string();
  return 1;
}

int cmd_canon(const std::string& file) {
  ms3::FlowPresentation p;
  try {
    p = ms3::parse_flow_raw(read_file(file));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto rep = ms3::validate_presentation(p);
  if (!rep.ok()) {
    std::cerr << rep.to_string();
    return 1;
  }
  std::cout << ms3::serialize(p);
  return 0;
}

int cmd_catalog_list() {
  for (const auto& key : ms3::catalog_keys()) std::cout << key << "\n";
  std::cout << "# twisted-orbit(n) accepts any n >= 0 and an optional total framing\n";
  return 0;
}

int cmd_catalog_emit(const std::string& key) {
  try {
    std::cout << ms3::serialize(ms3::catalog_emit(key));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_framed_check(const std::string& gfile, const std::string& f1file,
                     const std::string& f2file, long long oracle_bound,
                     bool run_oracle) {
  ms3::MSGraph g;
  ms3::Framing f1, f2;
  try {
    g = ms3::parse_msgraph(read_file(gfile));
    f1 = ms3::parse_framing(read_file(f1file), g);
    f2 = ms3::parse_framing(read_file(f2file), g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto comps = ms3::classify(g);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::cout << "component " << i + 1 << " (" << comps[i].edge_ids.size()
              << " edges): type ";
    switch (comps[i].type) {
      case ms3::GraphType::Type1: std::cout << "1"; break;
      case ms3::GraphType::Type2: std::cout << "2"; break;
      case ms3::GraphType::Type3: std::cout << "3"; break;
    }
    std::cout << "\n";
  }
  const bool verdict = ms3::framings_equivalent(g, f1, f2);
  std::cout << (verdict ? "equivalent" : "not equivalent") << "\n";

  if (run_oracle) {
    long long bound = oracle_bound;
    if (bound <= 0) {
      if (const char* env = std::getenv("MS3_ORACLE_BOUND")) {
        bound = std::atoll(env);
      }
    }
    if (bound <= 0) {
      std::int64_t maxabs = 1;
      for (const auto* f : {&f1, &f2})
        for (const auto& [id, v] : *f)
          if (!v.infinite)
            maxabs = std::max(maxabs, v.value < 0 ? -v.value : v.value);
      bound = 4 * maxabs;
    }
    bool oracle = false;
    try {
      oracle = ms3::oracle_equivalent(g, f1, f2, bound);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cout << "oracle (bound " << bound << "): "
              << (oracle ? "equivalent" : "not equivalent");
    if (oracle == verdict) {
      std::cout << " - agrees\n";
    } else {
      std::cout << " - DISAGREES\n";
      return 4;
    }
  }
  return verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distinguishing-graph presentations of Morse-Smale flows on 3-manifolds"};
  app.require_subcommand(1);

  std::string file_a, file_b, key;
  auto* check = app.add_subcommand("check", "decide topological equivalence of two presentations");
  check->add_option("a", file_a, "first presentation file")->required();
  check->add_option("b", file_b, "second presentation file")->required();

  std::string vfile;
  auto* validate = app.add_subcommand("validate", "report invariant violations");
  validate->add_option("file", vfile, "presentation file")->required();

  std::string cfile;
  auto* canon = app.add_subcommand("canon", "print the canonical serialization");
  canon->add_option("file", cfile, "presentation file")->required();

  auto* catalog = app.add_subcommand("catalog", "built-in example presentations");
  auto* list = catalog->add_subcommand("list", "list catalog keys");
  auto* emit = catalog->add_subcommand("emit", "write a catalog presentation");
  emit->add_option("key", key, "catalog key, e.g. trivial-orbit(+1,-1)")->required();
  catalog->require_subcommand(1);

  auto* framed = app.add_subcommand("framed", "framed MS-graph equivalence");
  std::string gfile, f1file, f2file;
  long long oracle_bound = 0;
  auto* fcheck = framed->add_subcommand("check", "compare two framings of one graph");
  fcheck->add_option("graph", gfile, "MS-graph file")->required();
  fcheck->add_option("f1", f1file, "first framing file")->required();
  fcheck->add_option("f2", f2file, "second framing file")->required();
  auto* oracle_opt = fcheck->add_option(
      "--oracle", oracle_bound,
      "cross-check with the reachability search; 0 picks the default clamp "
      "(MS3_ORACLE_BOUND or 4x the largest framing value)");
  oracle_opt->expected(0, 1);
  framed->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (*check) return cmd_check(file_a, file_b);
  if (*validate) return cmd_validate(vfile);
  if (*canon) return cmd_canon(cfile);
  if (*list) return cmd_catalog_list();
  if (*emit) return cmd_catalog_emit(key);
  if (*fcheck)
    return cmd_framed_check(gfile, f1file, f2file, oracle_bound,
                            oracle_opt->count() > 0);
  return 0;
}
