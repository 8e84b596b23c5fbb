#include "dfs/report.hpp"

#include <cmath>
#include <stdexcept>

namespace dfs {

DegeneracyTable table_degeneracies(int max_n) {
  if (max_n < 1 || max_n > 64) throw std::invalid_argument("max_n must be in [1, 64]");
  DegeneracyTable table;
  table.max_n = max_n;
  table.formula_matches_paths = true;
  for (int n = 1; n <= max_n; ++n)
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2) {
      DegeneracyCell cell{n, twoJ, scd_degeneracy(n, twoJ)};
      if (cell.n_j != scd_path_count(n, twoJ)) table.formula_matches_paths = false;
      table.cells.push_back(std::move(cell));
    }
  return table;
}

std::vector<EfficiencyRow> efficiency_curve(const std::vector<int>& ns) {
  std::vector<EfficiencyRow> rows;
  for (int n : ns) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("efficiency curve needs even n >= 2");
    if (n > 256) throw std::invalid_argument("n too large for double-precision log");
    EfficiencyRow row;
    row.n = n;
    row.k_over_n = std::log2(scd_degeneracy(n, 0).convert_to<double>()) / n;
    row.formula = 1.0 - 1.5 * std::log2(static_cast<double>(n)) / n;
    row.gap = std::abs(row.k_over_n - row.formula);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dfs
