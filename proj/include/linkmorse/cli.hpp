#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkmorse/catalog.hpp"
#include "linkmorse/hessian.hpp"
#include "linkmorse/json_io.hpp"
#include "linkmorse/svg.hpp"
#include "linkmorse/topology.hpp"

namespace linkmorse {

// Exit codes: 0 success, 1 usage error, 2 verification failure.

namespace cli_detail {

inline LengthVector resolve_lengths(int n, double perturb, std::uint64_t seed) {
  if (perturb > 0.0) return perturb_lengths(n, {perturb, seed});
  return LengthVector::ones(n);
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
}

inline int cmd_catalog(int n, double perturb, std::uint64_t seed, const std::string& out_path) {
  const Catalog catalog = build_catalog(n, resolve_lengths(n, perturb, seed));
  const std::string text = catalog_to_json(catalog);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(out_path, text);
    std::printf("wrote %zu entries to %s\n", catalog.entries.size(), out_path.c_str());
  }
  return 0;
}

inline int cmd_betti(int n, bool decorated, bool json_line) {
  const BettiTable table = decorated ? betti_decorated(n) : betti_M3(n);
  std::printf("betti numbers of %s, n = %d, dim = %d\n",
              decorated ? "decorated M3(n)" : "M3(n)", n, table.dim);
  std::printf("  %6s  %10s\n", "degree", "betti");
  for (int m = 0; m <= table.dim; m += 2)
    std::printf("  %6d  %10llu\n", m,
                static_cast<unsigned long long>(table.betti[static_cast<std::size_t>(m)]));
  std::printf("  %6s  %10llu\n", "total", static_cast<unsigned long long>(table.total()));
  if (json_line) {
    nlohmann::json j;
    j["n"] = n;
    j["space"] = decorated ? "DecoratedM3" : "M3";
    j["dim"] = table.dim;
    j["betti"] = table.betti;
    j["total"] = table.total();
    std::printf("%s\n", j.dump().c_str());
  }
  return 0;
}

inline int cmd_verify(int n, int max_n, bool json_line) {
  bool all_ok = true;
  nlohmann::json summary = nlohmann::json::array();
  const int last = std::max(n, max_n);
  for (int m = n; m <= last; m += 2) {
    const PerfectnessReport report = verify_perfect(m);
    std::printf("n = %d  (decorated dimension %d)\n", m, 2 * m - 4);
    std::printf("  %6s  %10s  %10s  %s\n", "degree", "morse", "betti", "match");
    for (const auto& [degree, pair] : report.per_index)
      std::printf("  %6d  %10llu  %10llu  %s\n", degree,
                  static_cast<unsigned long long>(pair.first),
                  static_cast<unsigned long long>(pair.second),
                  pair.first == pair.second ? "ok" : "MISMATCH");
    std::printf("  %6s  %10llu  %10llu  verdict: %s\n", "total",
                static_cast<unsigned long long>(report.total_critical),
                static_cast<unsigned long long>(report.total_betti),
                report.verdict ? "PERFECT" : "NOT PERFECT");
    all_ok = all_ok && report.verdict;
    nlohmann::json j;
    j["n"] = m;
    j["verdict"] = report.verdict;
    j["total_critical"] = report.total_critical;
    j["total_betti"] = report.total_betti;
    summary.push_back(j);
  }
  if (json_line) std::printf("%s\n", summary.dump().c_str());
  return all_ok ? 0 : 2;
}

inline int cmd_hessian(int n, double perturb, std::uint64_t seed, bool planar, bool json_line) {
  const Catalog catalog = build_catalog(n, resolve_lengths(n, perturb, seed));
  bool all_ok = true;
  int fallbacks = 0;
  std::printf("%-22s  %5s  %8s  %8s  %5s  %12s\n", "type", "comb",
              planar ? "planar" : "numeric", "expected", "zeros", "residual");
  std::vector<HessianReport> reports(catalog.entries.size());
  if (planar) {
    parallel_for(static_cast<int>(catalog.entries.size()), [&](int i) {
      reports[static_cast<std::size_t>(i)] = planar_numeric_index(catalog.entries[static_cast<std::size_t>(i)]);
    });
  } else {
    reports = certify_catalog(catalog);
  }
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    const CatalogEntry& entry = catalog.entries[i];
    const HessianReport& report = reports[i];
    const int expected = planar ? planar_index(entry.ctype) : entry.index_combinatorial;
    const bool ok = report.negatives == expected;
    all_ok = all_ok && ok;
    fallbacks += report.fallback_engaged ? 1 : 0;
    std::printf("%-22s  %5d  %8d  %8d  %5d  %12.3e%s\n", entry.key().c_str(),
                entry.index_combinatorial, report.negatives, expected, report.zeros,
                report.gradient_residual, ok ? "" : "  MISMATCH");
  }
  std::printf("%zu entries, %s; perturbation fallback engaged on %d\n", catalog.entries.size(),
              all_ok ? "all indices certified" : "MISMATCHES PRESENT", fallbacks);
  if (json_line) {
    nlohmann::json j;
    j["n"] = n;
    j["planar"] = planar;
    j["entries"] = catalog.entries.size();
    j["all_match"] = all_ok;
    j["fallbacks"] = fallbacks;
    std::printf("%s\n", j.dump().c_str());
  }
  return all_ok ? 0 : 2;
}

inline int cmd_search(int n, int restarts, std::uint64_t seed, const std::string& json_path) {
  const std::vector<SearchResult> results = random_search(n, restarts, seed);
  int converged = 0, matched = 0, nonplanar = 0;
  for (const auto& r : results) {
    if (r.classification == Classification::PlanarCyclic) {
      ++converged;
      ++matched;
    } else if (r.classification == Classification::NonPlanarCandidate) {
      ++converged;
      ++nonplanar;
    }
  }
  std::printf("%-12s  %8s  %8s\n", "class", "count", "share");
  std::printf("%-12s  %8d  %7.1f%%\n", "planar", matched, 100.0 * matched / restarts);
  std::printf("%-12s  %8d  %7.1f%%\n", "nonplanar", nonplanar, 100.0 * nonplanar / restarts);
  std::printf("%-12s  %8d  %7.1f%%\n", "unconverged", restarts - converged,
              100.0 * (restarts - converged) / restarts);
  std::printf("search n=%d restarts=%d seed=%llu: %d converged, %d matched the catalog, %d non-planar\n",
              n, restarts, static_cast<unsigned long long>(seed), converged, matched, nonplanar);

  nlohmann::json j;
  j["n"] = n;
  j["restarts"] = restarts;
  j["seed"] = seed;
  j["converged"] = converged;
  j["matched"] = matched;
  j["nonplanar"] = nonplanar;
  if (!json_path.empty()) {
    nlohmann::json full = j;
    full["results"] = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json jr;
      jr["classification"] = to_string(r.classification);
      jr["residual"] = r.residual;
      if (r.matched_entry) {
        jr["matched_entry"] = *r.matched_entry;
        jr["match_distance"] = r.match_distance;
      }
      if (r.diagnostics) {
        jr["xi_parallel_defect"] = r.diagnostics->xi_parallel_defect;
        jr["concyclicity_rms"] = r.diagnostics->concyclicity_rms;
        jr["coplanarity_max"] = r.diagnostics->coplanarity_max;
      }
      jr["config"] = nlohmann::json::parse(config_to_json(r.found));
      full["results"].push_back(jr);
    }
    write_file(json_path, full.dump(1) + "\n");
    std::printf("%s\n", j.dump().c_str());
  }
  return nonplanar == 0 ? 0 : 2;
}

inline int cmd_gradcheck(int n, int samples, std::uint64_t seed, bool json_line) {
  const double err = max_fd_gradient_error(n, samples, seed);
  std::printf("max relative gradient error over %d samples (n=%d, seed=%llu): %.3e\n", samples, n,
              static_cast<unsigned long long>(seed), err);
  if (json_line) {
    nlohmann::json j;
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["max_relative_error"] = err;
    std::printf("%s\n", j.dump().c_str());
  }
  return err < 1e-6 ? 0 : 2;
}

inline int cmd_render(int n, double perturb, std::uint64_t seed, const std::string& out_dir,
                      int canvas, bool no_circle, bool no_labels) {
  const Catalog catalog = build_catalog(n, resolve_lengths(n, perturb, seed));
  std::filesystem::create_directories(out_dir);
  for (const auto& entry : catalog.entries) {
    RenderSpec spec{entry, canvas, !no_circle, !no_labels};
    write_file((std::filesystem::path(out_dir) / entry_filename(entry)).string(), render_svg(spec));
  }
  std::printf("wrote %zu figures to %s\n", catalog.entries.size(), out_dir.c_str());
  return 0;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"critical points of the oriented area on equilateral polygon spaces"};
  app.require_subcommand(1);

  int n = 5, max_n = 0, restarts = 100, samples = 100, canvas = 480;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  std::string out_path, json_path, out_dir;
  bool decorated = false, planar = false, json_line = false, no_circle = false, no_labels = false;

  auto add_n = [&](CLI::App* cmd) { return cmd->add_option("--n", n, "number of edges (odd, >= 5)")->required(); };
  auto add_perturb = [&](CLI::App* cmd) {
    CLI::Option* p = cmd->add_option("--perturb", perturb, "length perturbation magnitude");
    CLI::Option* s = cmd->add_option("--seed", seed, "random seed");
    p->needs(s);
    return p;
  };

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "enumerate and realize all critical pairs");
  add_n(catalog_cmd);
  add_perturb(catalog_cmd);
  catalog_cmd->add_option("--out", out_path, "output JSON file (stdout if omitted)");

  CLI::App* betti_cmd = app.add_subcommand("betti", "Betti numbers of the configuration space");
  add_n(betti_cmd);
  betti_cmd->add_flag("--decorated", decorated, "decorated space instead of M3(n)");
  betti_cmd->add_flag("--json", json_line, "append a machine-readable JSON line");

  CLI::App* verify_cmd = app.add_subcommand("verify", "match the Morse census against Betti numbers");
  add_n(verify_cmd);
  verify_cmd->add_option("--max", max_n, "verify every odd n up to this bound");
  verify_cmd->add_flag("--json", json_line, "append a machine-readable JSON line");

  CLI::App* hessian_cmd = app.add_subcommand("hessian", "certify Morse indices numerically");
  add_n(hessian_cmd);
  add_perturb(hessian_cmd);
  hessian_cmd->add_flag("--planar", planar, "planar mode: the area A on M2(n)");
  hessian_cmd->add_flag("--json", json_line, "append a machine-readable JSON line");

  CLI::App* search_cmd = app.add_subcommand("search", "random-restart search for critical points");
  add_n(search_cmd);
  search_cmd->add_option("--restarts", restarts, "number of restarts")->required();
  search_cmd->add_option("--seed", seed, "random seed")->required();
  search_cmd->add_option("--json", json_path, "write full results to this JSON file");

  CLI::App* gradcheck_cmd = app.add_subcommand("gradcheck", "finite-difference gradient check");
  add_n(gradcheck_cmd);
  gradcheck_cmd->add_option("--samples", samples, "number of random configurations")->required();
  gradcheck_cmd->add_option("--seed", seed, "random seed")->required();
  gradcheck_cmd->add_flag("--json", json_line, "append a machine-readable JSON line");

  CLI::App* render_cmd = app.add_subcommand("render", "write one SVG figure per catalog entry");
  add_n(render_cmd);
  add_perturb(render_cmd);
  render_cmd->add_option("--out", out_dir, "output directory")->required();
  render_cmd->add_option("--canvas", canvas, "canvas size in pixels");
  render_cmd->add_flag("--no-circle", no_circle, "omit the circumcircle");
  render_cmd->add_flag("--no-labels", no_labels, "omit the caption");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (catalog_cmd->parsed()) return cli_detail::cmd_catalog(n, perturb, seed, out_path);
    if (betti_cmd->parsed()) return cli_detail::cmd_betti(n, decorated, json_line);
    if (verify_cmd->parsed()) return cli_detail::cmd_verify(n, max_n, json_line);
    if (hessian_cmd->parsed()) return cli_detail::cmd_hessian(n, perturb, seed, planar, json_line);
    if (search_cmd->parsed()) return cli_detail::cmd_search(n, restarts, seed, json_path);
    if (gradcheck_cmd->parsed()) return cli_detail::cmd_gradcheck(n, samples, seed, json_line);
    if (render_cmd->parsed())
      return cli_detail::cmd_render(n, perturb, seed, out_dir, canvas, no_circle, no_labels);
  } catch (const BadParity& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace linkmorse
