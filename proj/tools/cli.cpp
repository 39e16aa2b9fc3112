// Copyright 2026 The Hodge Strata Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hodge/coeff.hpp"
#include "hodge/graph.hpp"
#include "hodge/rt.hpp"
#include "hodge/twist.hpp"
#include "parallel.hpp"
#include "verify.hpp"

namespace hodge::cli {
namespace {

struct RunConfig {
  int genus = -1;
  int genus_max = -1;
  int markings = -1;
  int max_loops = -1;
  std::string zeros;
  std::string order;
  std::string format = "text";
  std::string cache;
  unsigned jobs = default_jobs();
  std::string fallback = "none";
  bool stats = false;
  int grid = -1;
  std::string variant = "down";
  int anchor = 1;
  int second = 0;
  std::string suite;
  int max_size = 6;
  int dim = 3;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument(std::string(what) + ": '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  return out;
}

twist::ZeroProfile parse_zeros(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("-Z: missing zero profile");
  auto z = parse_int_list(text, "-Z");
  for (int v : z) {
    if (v < 0) throw std::invalid_argument("-Z: negative entry " + std::to_string(v));
  }
  return z;
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

int cmd_enumerate_graphs(const RunConfig& c, std::ostream& out) {
  const int max_loops = c.max_loops < 0 ? c.genus : c.max_loops;
  const auto graphs = graph::enumerate_stable_graphs(c.genus, c.markings, max_loops);
  if (c.format == "csv") out << "index,automorphisms,graph\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto aut = graph::canonical_form(graphs[i]).automorphism_count;
    const std::string json = graph::canonical_json(graphs[i]);
    if (c.format == "json") {
      out << nlohmann::json{{"automorphisms", aut}, {"graph", graph::to_json(graphs[i])}}.dump()
          << "\n";
    } else if (c.format == "csv") {
      out << i << "," << aut << "," << csv_quote(json) << "\n";
    } else {
      out << "graph " << i << ": aut=" << aut << " " << json << "\n";
    }
  }
  if (c.format == "json") {
    out << nlohmann::json{{"count", graphs.size()}}.dump() << "\n";
  } else if (c.format == "csv") {
    out << "count," << graphs.size() << "\n";
  } else {
    out << "count: " << graphs.size() << "\n";
  }
  return kExitOk;
}

twist::Anchoring parse_variant(const std::string& v) {
  if (v == "down") return twist::Anchoring::down;
  if (v == "both") return twist::Anchoring::both;
  if (v == "split") return twist::Anchoring::split;
  return twist::Anchoring::split_literal;
}

int cmd_enumerate_bicolored(const RunConfig& c, std::ostream& out) {
  const auto zeros = parse_zeros(c.zeros);
  twist::BicoloredQuery q{parse_variant(c.variant), c.anchor, c.second, c.max_loops};
  const auto graphs = twist::enumerate_bicolored(c.genus, zeros, q);
  if (c.format == "csv") out << "index,multiplicity,graph\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto m = twist::multiplicity(graphs[i]);
    const auto j = twist::to_json(graphs[i]);
    if (c.format == "json") {
      out << nlohmann::json{{"multiplicity", m}, {"graph", j}}.dump() << "\n";
    } else if (c.format == "csv") {
      out << i << "," << m << "," << csv_quote(j.dump()) << "\n";
    } else {
      out << "graph " << i << ": multiplicity=" << m << " " << j.dump() << "\n";
    }
  }
  if (c.format == "json") {
    out << nlohmann::json{{"count", graphs.size()}}.dump() << "\n";
  } else if (c.format == "csv") {
    out << "count," << graphs.size() << "\n";
  } else {
    out << "count: " << graphs.size() << "\n";
  }
  return kExitOk;
}

int cmd_alpha_rt(const RunConfig& c, std::ostream& out) {
  const auto zeros = parse_zeros(c.zeros);
  rt::AlphaOptions opts;
  if (!c.order.empty()) opts.increment_order = parse_int_list(c.order, "--order");
  const auto alpha = rt::alpha_rt(c.genus, zeros, opts);
  if (c.format == "json") {
    out << nlohmann::json{{"genus", c.genus}, {"zeros", zeros}, {"alpha", rt::render(alpha)}}.dump()
        << "\n";
  } else if (c.format == "csv") {
    out << "xi_power,class\n";
    for (auto it = alpha.coefficients().rbegin(); it != alpha.coefficients().rend(); ++it) {
      out << it->first << "," << csv_quote(rt::render(it->second)) << "\n";
    }
  } else {
    out << rt::render(alpha) << "\n";
  }
  return kExitOk;
}

struct Row {
  std::string kind;  // "w", "u", "a_g" or "a"
  int g, z, n;
  std::optional<Rational> value;
  std::string provenance;
};

void emit_row(const RunConfig& c, const Row& r, std::ostream& out) {
  const std::string value = r.value ? to_string(*r.value) : "";
  if (c.format == "json") {
    nlohmann::json j{{"kind", r.kind}, {"g", r.g}, {"z", r.z}, {"n", r.n},
                     {"provenance", r.provenance}};
    j["value"] = r.value ? nlohmann::json(value) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    out << r.kind << "," << r.g << "," << r.z << "," << r.n << "," << value << ","
        << r.provenance << "\n";
  } else if (r.kind == "a_g") {
    out << "a_" << r.g << "=" << value << "\n";
  } else if (r.kind == "a") {
    out << "a(" << r.g << "," << r.z << "," << r.n << ")=" << (r.value ? value : "unreachable")
        << " [" << r.provenance << "]\n";
  } else {
    out << r.kind << "_{" << r.g << "," << r.n << "}=" << value << "\n";
  }
}

int cmd_coeff_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.genus_max < 1) throw std::invalid_argument("coeff-table: -G must be at least 1");
  coeff::CoeffTable table;
  if (!c.cache.empty()) table.load(c.cache);

  auto cell = [&](const std::string& kind, int g, int z, int n) {
    const Rational v = coeff::a_rec(table, g, z, n);
    return Row{kind, g, z, n, v, to_string(table.find({g, z, n})->provenance)};
  };
  std::vector<Row> rows;
  for (int g = 1; g <= c.genus_max; ++g) {
    for (int n = 0; n <= g - 1; ++n) rows.push_back(cell("w", g, g - n - 1, n));
    for (int n = 0; n <= g - 1; ++n) rows.push_back(cell("u", g, g - n, n));
    rows.push_back(cell("a_g", g, 1, g - 1));
  }

  if (c.grid >= 0) {
    std::vector<Row> grid;
    for (int g = 1; g <= c.genus_max; ++g) {
      for (int n = 0; 2 * n <= c.grid; ++n) {
        for (int z = 0; z + 2 * n <= c.grid; ++z) {
          if (coeff::reachable(g, z, n)) {
            grid.push_back(cell("a", g, z, n));
          } else {
            grid.push_back(Row{"a", g, z, n, std::nullopt, "unreachable"});
          }
        }
      }
    }
    if (c.fallback == "symbolic") {
      // Explicitly requested: fill the cells the identities do not reach from
      // the symbolic route. These values never enter the cache.
      std::vector<std::size_t> missing;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!grid[i].value) missing.push_back(i);
      }
      const auto values = parallel_map(missing, c.jobs, [&](std::size_t i) {
        return rt::a_symbolic(grid[i].g, grid[i].z, grid[i].n);
      });
      for (std::size_t k = 0; k < missing.size(); ++k) {
        grid[missing[k]].value = values[k];
        grid[missing[k]].provenance = "symbolic";
      }
    }
    rows.insert(rows.end(), grid.begin(), grid.end());
  }

  if (c.format == "csv") out << "kind,g,z,n,value,provenance\n";
  for (const auto& r : rows) emit_row(c, r, out);
  if (!c.cache.empty()) table.append_new(c.cache);
  if (c.stats) {
    const auto s = table.stats();
    err << "stats: loaded=" << s.loaded << " computed=" << s.computed << " hits=" << s.hits
        << "\n";
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyBounds b;
  b.genus_max = c.genus_max;
  b.max_size = c.max_size;
  b.dim = c.dim;
  b.jobs = std::max(1u, c.jobs);
  std::vector<Check> checks;
  auto run_suite = [&](const std::string& name, auto&& f) {
    if (c.suite == name || c.suite == "all") {
      auto part = f(b);
      checks.insert(checks.end(), part.begin(), part.end());
    }
  };
  run_suite("graphs", verify_graphs);
  run_suite("twists", verify_twists);
  run_suite("rt", verify_rt);
  run_suite("coeffs", verify_coeffs);

  std::size_t passed = 0;
  for (const auto& ch : checks) {
    passed += ch.passed;
    if (c.format == "json") {
      out << nlohmann::json{{"check", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}}.dump()
          << "\n";
    } else {
      out << (ch.passed ? "PASS " : "FAIL ") << ch.name;
      if (!ch.passed) out << ": " << ch.detail;
      out << "\n";
    }
  }
  const bool ok = passed == checks.size();
  if (c.format == "json") {
    out << nlohmann::json{{"suite", c.suite}, {"passed", ok}, {"checks", checks.size()},
                          {"failed", checks.size() - passed}}
               .dump()
        << "\n";
  } else {
    out << "verify " << c.suite << ": " << (ok ? "pass" : "fail") << " (" << passed << "/"
        << checks.size() << " checks)\n";
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Stable graphs, twisted level graphs, rational-tails stratum classes and "
               "their coefficients.",
               "hodge"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "csv", "text"});

  auto* eg = app.add_subcommand("enumerate-graphs", "Stable graphs of genus g with n legs");
  eg->add_option("-g,--genus", c.genus, "Genus")->required()->check(CLI::NonNegativeNumber);
  eg->add_option("-n,--markings", c.markings, "Number of legs")->required()->check(CLI::NonNegativeNumber);
  eg->add_option("--max-loops", c.max_loops, "Bound on h^1 (default: g)");
  eg->add_option("--format", c.format, "json, csv or text")->check(formats);

  auto* eb = app.add_subcommand("enumerate-bicolored", "Depth-1 twisted level graphs");
  eb->add_option("-g,--genus", c.genus, "Genus")->required()->check(CLI::NonNegativeNumber);
  eb->add_option("-Z,--zeros", c.zeros, "Comma-separated zero profile")->required()->allow_extra_args(false);
  eb->add_option("--variant", c.variant, "down, both, split or split-literal")
      ->check(CLI::IsMember({"down", "both", "split", "split-literal"}));
  eb->add_option("--anchor", c.anchor, "Marking at level -1");
  eb->add_option("--second", c.second, "Second marking for both/split");
  eb->add_option("--max-loops", c.max_loops, "Bound on h^1 (default: g)");
  eb->add_option("--format", c.format, "json, csv or text")->check(formats);

  auto* ar = app.add_subcommand("alpha-rt", "Rational-tails stratum class alpha(g, Z)");
  ar->add_option("-g,--genus", c.genus, "Genus")->required();
  ar->add_option("-Z,--zeros", c.zeros, "Comma-separated zero profile")->required();
  ar->add_option("--order", c.order, "Comma-separated markings in increment order");
  ar->add_option("--format", c.format, "json, csv or text")->check(formats);

  auto* ct = app.add_subcommand("coeff-table", "u/w tables and a_g up to genus G");
  ct->add_option("-G,--genus-max", c.genus_max, "Largest genus")->required();
  ct->add_option("--grid", c.grid, "Also list a(g,z,n) for z + 2n <= SIZE");
  ct->add_option("--cache", c.cache, "Cache file of computed cells");
  ct->add_option("--fallback", c.fallback, "none or symbolic")
      ->check(CLI::IsMember({"none", "symbolic"}));
  ct->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  ct->add_flag("--stats", c.stats, "Print cache counters to stderr");
  ct->add_option("--format", c.format, "json, csv or text")->check(formats);

  auto* vf = app.add_subcommand("verify", "Run an invariant suite");
  vf->add_option("suite", c.suite, "graphs, twists, rt, coeffs or all")
      ->required()
      ->check(CLI::IsMember({"graphs", "twists", "rt", "coeffs", "all"}));
  vf->add_option("-G,--genus-max", c.genus_max, "Largest genus (suite default if absent)");
  vf->add_option("--max-size", c.max_size, "Largest |Z| for the rt suite")->check(CLI::NonNegativeNumber);
  vf->add_option("--dim", c.dim, "Largest 3g-3+n for graphs and twists")->check(CLI::NonNegativeNumber);
  vf->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  vf->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eg->parsed()) return cmd_enumerate_graphs(c, out);
    if (eb->parsed()) return cmd_enumerate_bicolored(c, out);
    if (ar->parsed()) return cmd_alpha_rt(c, out);
    if (ct->parsed()) return cmd_coeff_table(c, out, err);
    if (vf->parsed()) return cmd_verify(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hodge::cli
