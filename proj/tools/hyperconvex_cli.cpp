#include "hyperconvex/bundle_charts.hpp"
#include "hyperconvex/convex_core.hpp"
#include "hyperconvex/grassmann.hpp"
#include "hyperconvex/hypermetrics.hpp"
#include "hyperconvex/random_instances.hpp"
#include "hyperconvex/serialization.hpp"
#include "hyperconvex/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hc = hyperconvex;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hc::SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw hc::SchemaError(path + ": " + e.what());
  }
}

hc::ConvexSet read_set(const std::string& path, const hc::Tolerances& tol) {
  std::vector<std::string> warnings;
  try {
    hc::ConvexSet set = hc::parse_set(read_json(path), &warnings, tol);
    for (const std::string& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return set;
  } catch (const hc::SchemaError& e) {
    throw hc::SchemaError(path + ": " + e.what());
  }
}

hc::Subspace read_subspace(const std::string& path, const hc::Tolerances& tol) {
  hc::ConvexSet set = read_set(path, tol);
  if (auto* s = std::get_if<hc::Subspace>(&set)) return *s;
  throw hc::SchemaError(path + ": expected a subspace document");
}

hc::Polytope read_polytope(const std::string& path, const hc::Tolerances& tol) {
  hc::ConvexSet set = read_set(path, tol);
  if (auto* p = std::get_if<hc::Polytope>(&set)) return *p;
  throw hc::SchemaError(path + ": expected a polytope document");
}

hc::Flat read_flat(const std::string& path, const hc::Tolerances& tol) {
  hc::ConvexSet set = read_set(path, tol);
  if (auto* f = std::get_if<hc::Flat>(&set)) return *f;
  if (auto* s = std::get_if<hc::Subspace>(&set)) return hc::Flat::through_origin(*s);
  throw hc::SchemaError(path + ": expected a flat or subspace document");
}

hc::Tolerances tolerances_from_env() {
  hc::Tolerances tol;
  if (const char* env = std::getenv("HYPERCONVEX_TOL")) {
    std::istringstream in(env);
    double value = 0.0;
    if (!(in >> value) || !(in >> std::ws).eof() || !(value > 0.0)) {
      throw hc::SchemaError(std::string("HYPERCONVEX_TOL: expected a positive number, got '") + env + "'");
    }
    tol.geom = value;
  }
  tol.validate();
  return tol;
}

void print(const json& out) { std::cout << out.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-set hyperspace metrics, Grassmannian charts and property suites"};
  app.require_subcommand(1);

  auto* dist = app.add_subcommand("dist", "Distance between two sets");
  std::string metric = "hausdorff";
  double eps = 1e-3;
  std::string dist_a;
  std::string dist_b;
  dist->add_option("--metric", metric, "hausdorff, aw, aw-origin or gap")
      ->check(CLI::IsMember({"hausdorff", "aw", "aw-origin", "gap"}));
  dist->add_option("--eps", eps, "Certification width")->check(CLI::PositiveNumber);
  dist->add_option("A", dist_a, "First set document")->required();
  dist->add_option("B", dist_b, "Second set document")->required();

  auto* project = app.add_subcommand("project", "Metric projection of a point");
  std::string project_set;
  std::string project_point;
  project->add_option("SET", project_set, "Set document")->required();
  project->add_option("--point", project_point, "Comma-separated coordinates")->required();

  auto* chart = app.add_subcommand("chart", "Bundle charts over a subspace W");
  std::string chart_kind;
  std::string chart_w;
  std::vector<std::string> forward;
  std::string inverse;
  chart->add_option("KIND", chart_kind, "flat or convex")->required()->check(CLI::IsMember({"flat", "convex"}));
  chart->add_option("--w", chart_w, "Subspace document for W")->required();
  auto* fwd = chart->add_option("--forward", forward, "V.json OMEGA.json [A.json]")->expected(2, 3);
  auto* inv = chart->add_option("--inverse", inverse, "Flat or polytope document");
  fwd->excludes(inv);
  inv->excludes(fwd);

  auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
  std::string suite;
  hc::SuiteOptions suite_options;
  std::string report_path;
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(hc::suite_names()));
  verify->add_option("--dim", suite_options.dim, "Largest ambient dimension")->required()->check(CLI::PositiveNumber);
  verify->add_option("--trials", suite_options.trials, "Number of trials")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", suite_options.seed, "Seed")->required();
  verify->add_option("--report", report_path, "Write the report JSON here as well");
  verify->add_option("--selections", suite_options.selections, "Adversarial selections per family")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--threads", suite_options.threads, "Worker threads (0 = all cores)");

  auto* gen = app.add_subcommand("gen", "Random set document");
  std::string kind;
  long n = 2;
  long k = 1;
  std::uint64_t seed = 1;
  gen->add_option("--kind", kind, "Instance kind")->required()->check(CLI::IsMember(hc::instance_kinds()));
  gen->add_option("--dim", n, "Ambient dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", k, "Dimension of the set")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const hc::Tolerances tol = tolerances_from_env();

    if (*dist) {
      const hc::ConvexSet a = read_set(dist_a, tol);
      const hc::ConvexSet b = read_set(dist_b, tol);
      json out = {{"metric", metric}};
      if (metric == "hausdorff") {
        const auto* pa = std::get_if<hc::Polytope>(&a);
        const auto* pb = std::get_if<hc::Polytope>(&b);
        if (pa == nullptr || pb == nullptr) throw hc::SchemaError("hausdorff: both documents must be polytopes");
        out["value"] = hc::hausdorff(*pa, *pb, tol);
      } else if (metric == "gap") {
        const auto* va = std::get_if<hc::Subspace>(&a);
        const auto* vb = std::get_if<hc::Subspace>(&b);
        if (va == nullptr || vb == nullptr) throw hc::SchemaError("gap: both documents must be subspaces");
        out["value"] = hc::gap(*va, *vb);
        out["direct"] = hc::to_json(hc::gap_direct(*va, *vb, eps));
      } else {
        hc::AWParams params;
        params.eps_sup = eps;
        const hc::Interval i = metric == "aw" ? hc::attouch_wets(a, b, params, tol) : hc::aw_origin(a, b, params, tol);
        out["interval"] = hc::to_json(i);
      }
      print(out);
      return 0;
    }

    if (*project) {
      const hc::ConvexSet set = read_set(project_set, tol);
      const hc::Vector x = hc::parse_point_list(project_point);
      const hc::Projection p = hc::metric_projection(set, x, tol);
      print({{"point", hc::to_json(p.point)}, {"dist", p.dist}});
      return 0;
    }

    if (*chart) {
      const hc::Subspace w = read_subspace(chart_w, tol);
      if (forward.empty() && inverse.empty()) throw hc::SchemaError("chart: give --forward or --inverse");
      if (chart_kind == "flat") {
        if (!inverse.empty()) {
          const auto [v, omega] = hc::chart_flat_inv(w, read_flat(inverse, tol), tol);
          print({{"V", hc::serialize(v)}, {"omega", hc::to_json(omega)}});
        } else {
          if (forward.size() != 2) throw hc::SchemaError("chart flat --forward takes V.json OMEGA.json");
          const hc::Subspace v = read_subspace(forward[0], tol);
          const hc::Vector omega = hc::parse_vector(read_json(forward[1]));
          print(hc::serialize(hc::chart_flat(w, v, omega, tol)));
        }
      } else {
        if (!inverse.empty()) {
          print(hc::to_json(hc::chart_convex_inv(w, read_polytope(inverse, tol), tol)));
        } else {
          if (forward.size() != 3) throw hc::SchemaError("chart convex --forward takes V.json OMEGA.json A.json");
          const hc::ChartTriple t{read_subspace(forward[0], tol), hc::parse_vector(read_json(forward[1])),
                                  read_polytope(forward[2], tol)};
          print(hc::serialize(hc::chart_convex(w, t, tol)));
        }
      }
      return 0;
    }

    if (*verify) {
      suite_options.tol = tol;
      const hc::Report report = hc::run_suite(suite, suite_options);
      const json out = report.to_json();
      if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) throw hc::SchemaError("cannot write '" + report_path + "'");
        file << out.dump(2) << "\n";
      }
      print(out);
      return report.exit_code();
    }

    if (*gen) {
      if (k > n) throw hc::SchemaError("gen: --k must not exceed --dim");
      print(hc::serialize(hc::random_instance(kind, n, k, seed)));
      return 0;
    }
  } catch (const hc::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hc::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hc::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
