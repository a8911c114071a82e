#pragma once

#include <string>
#include <vector>

#include "aidrin/chart.hpp"
#include "aidrin/dataset.hpp"

namespace aidrin {

/// One chart per feature describing its relation to the target:
///   numeric target, numeric feature         -> scatter
///   categorical target, numeric feature     -> box per target category
///   numeric target, categorical feature     -> box of the target per feature level
///   categorical target, categorical feature -> grouped counts, one bar
///                                              series per target level
/// Rows missing either value are skipped.
std::vector<ChartSpec> relevance_charts(const Dataset& ds, const std::vector<std::string>& features,
                                        const std::string& target);

}  // namespace aidrin
