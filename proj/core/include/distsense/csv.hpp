#pragma once

#include <optional>
#include <string>

#include "distsense/dataset.hpp"
#include "distsense/posterior.hpp"

namespace distsense {

/// Reads a dataset from a single-column or named-column CSV file.  The first
/// line is treated as a header when it is not numeric.  Parse failures name
/// the offending line numbers.
Dataset ingest_csv(const std::string& path, const std::optional<std::string>& column = {});

/// One draw per row, columns in parameter order.
void write_draws_csv(const PosteriorDraws& draws, const std::string& path);

/// Shortest-round-trip formatting used for all numeric CSV output, so that
/// repeated runs are byte-identical.
std::string format_double(double v);

}  // namespace distsense
