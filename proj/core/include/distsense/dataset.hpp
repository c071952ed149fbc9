#pragma once

#include <numeric>
#include <string>
#include <vector>

namespace distsense {

/// Observed sample x_1..x_n with provenance.
struct Dataset {
  std::vector<double> values;
  std::string source;  // file path, "simulated:<spec>", ...
  std::string units;

  int n() const { return static_cast<int>(values.size()); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

}  // namespace distsense
