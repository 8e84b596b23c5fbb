#ifndef DFS_REPORT_HPP
#define DFS_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfs/basis.hpp"

namespace dfs {

struct Report {
  std::string check;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::string provenance;  // claim label, or "plumbing" for artifact glue

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["check"] = check;
    j["pass"] = pass;
    j["metrics"] = metrics;
    j["provenance"] = provenance;
    return j;
  }
};

struct DegeneracyCell {
  int n;
  int twoJ;
  BigInt n_j;
};

struct DegeneracyTable {
  int max_n;
  std::vector<DegeneracyCell> cells;
  bool formula_matches_paths = false;  // exact cross-check against the walk-counting oracle
};

/// Full triangle of strong-model block degeneracies up to max_n (<= 64),
/// cross-checked cell-by-cell against the lattice-walk count.
DegeneracyTable table_degeneracies(int max_n);

struct EfficiencyRow {
  int n;
  double k_over_n;  // log2(n_{J=0}) / n
  double formula;   // 1 - 1.5 log2(n) / n
  double gap;       // |k/n - formula|
};

/// Encoding rate of the J=0 blocks against its asymptotic form.
std::vector<EfficiencyRow> efficiency_curve(const std::vector<int>& ns);

}  // namespace dfs

#endif
