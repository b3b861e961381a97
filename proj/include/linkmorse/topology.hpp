#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "linkmorse/catalog.hpp"
#include "linkmorse/errors.hpp"

namespace linkmorse {

// Everything in this module is exact integer arithmetic. All values for
// n <= 21 fit in 64 bits with a wide margin; binomial() still guards
// against overflow so that misuse fails loudly.

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    if (result > UINT64_MAX / num) throw NumericalError("binomial: 64-bit overflow");
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

enum class Space { M3, DecoratedM3 };

/// Even-degree Betti numbers, degree-indexed 0..dim (odd entries are 0).
struct BettiTable {
  int n{0};
  Space space{Space::M3};
  int dim{0};
  std::vector<std::uint64_t> betti;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto b : betti) t += b;
    return t;
  }
};

/// Betti numbers of M_3(n): beta^{2p} = sum_{i<=p} C(2k, i) for p < k,
/// upper degrees by Poincare duality on dim = 4k - 4.
inline BettiTable betti_M3(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("betti_M3: n must be odd and >= 5");
  const int k = (n - 1) / 2;
  BettiTable table{n, Space::M3, 4 * k - 4, {}};
  table.betti.assign(static_cast<std::size_t>(table.dim) + 1, 0);
  for (int p = 0; 2 * p <= table.dim; ++p) {
    if (p < k) {
      std::uint64_t sum = 0;
      for (int i = 0; i <= p; ++i) sum += binomial(2 * k, i);
      table.betti[static_cast<std::size_t>(2 * p)] = sum;
    } else {
      table.betti[static_cast<std::size_t>(2 * p)] =
          table.betti[static_cast<std::size_t>(table.dim - 2 * p)];
    }
  }
  return table;
}

/// Betti numbers of the decorated space, computed two ways and cross-checked:
/// the sphere-bundle relation beta~^m = beta^m + beta^{m-2} over betti_M3,
/// and the direct formula beta~^{2p} = sum_{i<=p} C(n, i) with duality.
inline BettiTable betti_decorated(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("betti_decorated: n must be odd and >= 5");
  const int k = (n - 1) / 2;
  const int dim = 4 * k - 2;

  const BettiTable base = betti_M3(n);
  auto base_at = [&](int m) -> std::uint64_t {
    if (m < 0 || m > base.dim) return 0;
    return base.betti[static_cast<std::size_t>(m)];
  };

  BettiTable table{n, Space::DecoratedM3, dim, {}};
  table.betti.assign(static_cast<std::size_t>(dim) + 1, 0);
  for (int m = 0; m <= dim; m += 2) table.betti[static_cast<std::size_t>(m)] = base_at(m) + base_at(m - 2);

  for (int p = 0; 2 * p <= dim; ++p) {
    std::uint64_t direct;
    if (p < k) {
      direct = 0;
      for (int i = 0; i <= p; ++i) direct += binomial(n, i);
    } else {
      const int q = 2 * k - 1 - p;
      direct = 0;
      for (int i = 0; i <= q; ++i) direct += binomial(n, i);
    }
    if (direct != table.betti[static_cast<std::size_t>(2 * p)])
      throw FormulaMismatch("betti_decorated: bundle route and direct route disagree at degree " +
                            std::to_string(2 * p));
  }
  return table;
}

/// Critical points binned by combinatorial index.
inline std::map<int, std::uint64_t> morse_census(const Catalog& catalog) {
  std::map<int, std::uint64_t> census;
  for (const auto& entry : catalog.entries) ++census[entry.index_combinatorial];
  return census;
}

/// The same census from type multiplicities: a positive-branch class with c
/// minority signs and winding w has index 2(n - c) - 2w - 2 and occurs for
/// C(n, c) sign words; the mirror branch takes complements in 4k - 2.
inline std::map<int, std::uint64_t> census_by_multiplicity(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("census_by_multiplicity: n must be odd and >= 5");
  const int k = (n - 1) / 2;
  std::map<int, std::uint64_t> census;
  for (int c = 0; c <= k - 1; ++c) {
    const std::uint64_t words = binomial(n, c);
    for (int w = 1; w <= k - c; ++w) {
      const int index = 2 * (n - c) - 2 * w - 2;
      census[index] += words;
      census[(4 * k - 2) - index] += words;
    }
  }
  return census;
}

/// Closed-form size of the critical set: 2 sum_{c=0}^{k-1} C(n,c) (k-c).
inline std::uint64_t critical_count_formula(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("critical_count_formula: n must be odd and >= 5");
  const int k = (n - 1) / 2;
  std::uint64_t total = 0;
  for (int c = 0; c <= k - 1; ++c) total += binomial(n, c) * static_cast<std::uint64_t>(k - c);
  return 2 * total;
}

struct PerfectnessReport {
  int n{0};
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> per_index;  // degree -> (morse, betti)
  bool verdict{false};
  std::uint64_t total_critical{0};
  std::uint64_t total_betti{0};
};

inline PerfectnessReport make_perfectness_report(int n, const std::map<int, std::uint64_t>& census) {
  const BettiTable betti = betti_decorated(n);
  PerfectnessReport report;
  report.n = n;
  report.verdict = true;
  for (int m = 0; m <= betti.dim; m += 2) {
    const auto it = census.find(m);
    const std::uint64_t morse = (it == census.end()) ? 0 : it->second;
    const std::uint64_t b = betti.betti[static_cast<std::size_t>(m)];
    report.per_index[m] = {morse, b};
    report.total_critical += morse;
    report.total_betti += b;
    if (morse != b) report.verdict = false;
  }
  for (const auto& [degree, count] : census) {
    if (degree % 2 != 0 || degree < 0 || degree > betti.dim) {
      report.per_index[degree] = {count, 0};
      report.total_critical += count;
      report.verdict = false;
    }
  }
  return report;
}

/// Perfectness verdict: per-degree equality of the Morse census and the
/// decorated Betti table. Censuses come from the realized catalog up to
/// n = 11 and from exact multiplicities beyond (the catalog for n = 21 has
/// ~2.8M entries; both routes are equal and the equality is under test).
inline PerfectnessReport verify_perfect(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("verify_perfect: n must be odd and >= 5");
  const auto census =
      (n <= 11) ? morse_census(build_catalog(n)) : census_by_multiplicity(n);
  return make_perfectness_report(n, census);
}

}  // namespace linkmorse
