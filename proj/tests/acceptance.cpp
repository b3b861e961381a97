// Acceptance suite: runs each verification criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exit code = number of
// failures.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "linkmorse/hessian.hpp"
#include "linkmorse/topology.hpp"

using namespace linkmorse;

namespace {

int failures = 0;

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!ok) ++failures;
}

// 1. Perfectness for every odd n in {5, ..., 21}, with the fixed pentagon and
//    heptagon censuses; exact integer equality, under 5 s total.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int n = 5; n <= 21; n += 2) {
    const PerfectnessReport report = verify_perfect(n);
    if (!report.verdict) {
      ok = false;
      detail = "verdict false at n = " + std::to_string(n);
    }
  }
  const std::map<int, std::uint64_t> expected5{{0, 1}, {2, 6}, {4, 6}, {6, 1}};
  const std::map<int, std::uint64_t> expected7{{0, 1}, {2, 8}, {4, 29}, {6, 29}, {8, 8}, {10, 1}};
  if (morse_census(build_catalog(5)) != expected5) {
    ok = false;
    detail = "pentagon census mismatch";
  }
  if (morse_census(build_catalog(7)) != expected7) {
    ok = false;
    detail = "heptagon census mismatch";
  }
  if (verify_perfect(5).total_critical != 14 || verify_perfect(7).total_critical != 76) {
    ok = false;
    detail = "totals differ from 14 / 76";
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 5.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + " s exceeds 5 s";
  }
  if (ok)
    detail = "perfect Morse verdict for all odd n in [5, 21], censuses fixed at 14/76 (" +
             std::to_string(elapsed) + " s)";
  report(1, ok, detail);
}

// 2. Numeric index = 2e - 2w - 2 for every entry, n in {5, 7, 9}; degenerate
//    Hessians must stabilize under the eps = 1e-3 fallback. Under 60 s.
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  std::size_t entries = 0;
  int fallbacks = 0;
  for (int n : {5, 7, 9}) {
    const Catalog catalog = build_catalog(n);
    std::vector<HessianReport> reports;
    try {
      reports = certify_catalog(catalog);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("certification failed: ") + e.what();
      break;
    }
    entries += catalog.entries.size();
    for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
      fallbacks += reports[i].fallback_engaged ? 1 : 0;
      if (reports[i].negatives != catalog.entries[i].index_combinatorial) {
        ok = false;
        detail = "index mismatch at " + catalog.entries[i].key();
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (ok && entries != 14 + 76 + 374) {
    ok = false;
    detail = "entry count " + std::to_string(entries);
  }
  if (elapsed >= 60.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + " s exceeds 60 s";
  }
  if (ok)
    detail = "all 464 numeric indices equal 2e-2w-2, fallback engaged on " +
             std::to_string(fallbacks) + " entries (" + std::to_string(elapsed) + " s)";
  report(2, ok, detail);
}

// 3. Criticality: projected gradient < 1e-8 at every entry, equilateral and
//    perturbed (the latter after one Newton polish).
void criterion_3() {
  bool ok = true;
  std::string detail;
  for (int n : {5, 7, 9}) {
    for (const auto& entry : build_catalog(n).entries) {
      if (projected_gradient_norm(entry.config) >= 1e-8) {
        ok = false;
        detail = "equilateral entry " + entry.key() + " not critical";
      }
    }
  }
  for (int n : {5, 7}) {
    const Catalog perturbed = build_catalog(n, perturb_lengths(n, {1e-3, 1}));
    for (const auto& entry : perturbed.entries) {
      double residual = projected_gradient_norm(entry.config);
      if (residual >= 1e-8) residual = projected_gradient_norm(refine_critical(entry.config, 20));
      if (residual >= 1e-8) {
        ok = false;
        detail = "perturbed entry " + entry.key() + " not critical after polish";
      }
    }
  }
  if (ok) detail = "projected gradient < 1e-8 at every catalog entry (equilateral and perturbed)";
  report(3, ok, detail);
}

// 4. Planar cross-check on the pentagon: indices 2 / 0 / five 1s on the
//    positive branch, complements in dimension 2 on the mirror branch.
void criterion_4() {
  bool ok = true;
  std::string detail;
  std::map<int, int> positive, mirror;
  for (const auto& entry : build_catalog(5).entries) {
    const HessianReport report = planar_numeric_index(entry);
    if (report.zeros != 0) {
      ok = false;
      detail = "planar Hessian degenerate at " + entry.key();
    }
    (entry.ctype.omega > 0 ? positive : mirror)[report.negatives] += 1;
    const int expected = planar_index(entry.ctype);
    if (report.negatives != expected) {
      ok = false;
      detail = "planar index mismatch at " + entry.key();
    }
  }
  const std::map<int, int> want_positive{{2, 1}, {0, 1}, {1, 5}};
  const std::map<int, int> want_mirror{{0, 1}, {2, 1}, {1, 5}};
  if (positive != want_positive || mirror != want_mirror) {
    ok = false;
    detail = "planar census is not {one 2, one 0, five 1s} with complements";
  }
  if (ok) detail = "planar indices: one 2, one 0, five 1s; mirrors take complements in dim 2";
  report(4, ok, detail);
}

// 5. search --n 7 --restarts 500 --seed 1: >= 80% convergence, every
//    converged result PlanarCyclic with a catalog match within 1e-6, zero
//    non-planar candidates. Under 120 s.
void criterion_5() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  const std::vector<SearchResult> results = random_search(7, 500, 1);
  int converged = 0, matched = 0, nonplanar = 0;
  for (const auto& r : results) {
    if (r.classification == Classification::NotConverged) continue;
    ++converged;
    if (r.classification == Classification::NonPlanarCandidate) ++nonplanar;
    if (r.classification == Classification::PlanarCyclic && r.match_distance <= 1e-6) ++matched;
  }
  const double elapsed = seconds_since(start);
  if (converged < 400) {
    ok = false;
    detail = "only " + std::to_string(converged) + "/500 restarts converged";
  } else if (nonplanar != 0 || matched != converged) {
    ok = false;
    detail = std::to_string(nonplanar) + " non-planar candidates, " + std::to_string(matched) +
             "/" + std::to_string(converged) + " matched";
  } else if (elapsed >= 120.0) {
    ok = false;
    detail = "runtime " + std::to_string(elapsed) + " s exceeds 120 s";
  }
  if (ok)
    detail = std::to_string(converged) + "/500 converged, all matched the catalog within 1e-6, "
             "zero non-planar (" + std::to_string(elapsed) + " s)";
  report(5, ok, detail);
}

// 6. Analytic vs central-difference gradients over 100 seeded random
//    heptagon configurations: max relative error < 1e-6.
void criterion_6() {
  const double err = max_fd_gradient_error(7, 100, 1);
  report(6, err < 1e-6, "max relative gradient error " + std::to_string(err) +
                            (err < 1e-6 ? " < 1e-6" : " >= 1e-6"));
}

// 7. Three-fold property: every pentagon entry and edge embeds to a heptagon
//    critical pair with both indices raised by exactly 2 and S unchanged.
void criterion_7() {
  bool ok = true;
  std::string detail;
  const Catalog c5 = build_catalog(5);
  const LengthVector ones7 = LengthVector::ones(7);
  for (const auto& entry : c5.entries) {
    const int base_numeric = numeric_index(entry).negatives;
    for (int i = 0; i < 5 && ok; ++i) {
      const CyclicType spliced = threefold_type(entry.ctype, i);
      if (combinatorial_index(spliced) != entry.index_combinatorial + 2) {
        ok = false;
        detail = "combinatorial index did not rise by 2 at " + entry.key();
        break;
      }
      const DecoratedConfiguration embedded = threefold_embed(entry.config, i);
      if (std::abs(area_S(embedded) - entry.s_value) >= 1e-12) {
        ok = false;
        detail = "S changed under the fold at " + entry.key();
        break;
      }
      const CatalogEntry realized = build_cyclic(spliced, ones7);
      if (numeric_index(realized).negatives != base_numeric + 2) {
        ok = false;
        detail = "numeric index did not rise by 2 at " + entry.key();
        break;
      }
      if (configuration_distance(embedded, realized.config) > 1e-9) {
        ok = false;
        detail = "embedded configuration differs from the spliced realization";
        break;
      }
    }
    if (!ok) break;
  }
  if (ok) detail = "all 14 x 5 folds: indices +2, S preserved to 1e-12";
  report(7, ok, detail);
}

// 8. Exact structural identities: complements, palindromic censuses, the
//    closed-form total vs the Betti sum, and both decorated-Betti routes.
void criterion_8() {
  bool ok = true;
  std::string detail;
  for (int n : {5, 7, 9}) {
    const Catalog catalog = build_catalog(n);
    const int top = 4 * ((n - 1) / 2) - 2;
    for (const auto& entry : catalog.entries) {
      const CatalogEntry* partner = catalog.find(type_key(mirrored(entry.ctype)));
      if (partner == nullptr ||
          entry.index_combinatorial + partner->index_combinatorial != top) {
        ok = false;
        detail = "complement rule fails at " + entry.key();
      }
    }
  }
  for (int n = 5; n <= 21 && ok; n += 2) {
    const auto census = census_by_multiplicity(n);
    const int top = 2 * n - 4;
    for (const auto& [degree, count] : census) {
      if (census.at(top - degree) != count) {
        ok = false;
        detail = "census not palindromic at n = " + std::to_string(n);
      }
    }
    if (critical_count_formula(n) != betti_decorated(n).total()) {
      ok = false;
      detail = "closed-form total differs from Betti sum at n = " + std::to_string(n);
    }
    // betti_decorated cross-checks the bundle route against the direct
    // formula internally and throws FormulaMismatch on any disagreement.
    try {
      betti_decorated(n);
    } catch (const FormulaMismatch& e) {
      ok = false;
      detail = e.what();
    }
  }
  if (ok) detail = "complements, palindromic censuses, count identity and both Betti routes agree for odd n <= 21";
  report(8, ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d/8 criteria passed (%.1f s total)\n", 8 - failures, seconds_since(start));
  return failures;
}
