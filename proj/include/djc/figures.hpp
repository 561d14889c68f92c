#pragma once

// Named CSV reproductions of the published figure series, with their
// parameter sets baked in and echoed as '#' header comments.

#include <string>
#include <string_view>
#include <vector>

#include "djc/csv.hpp"

namespace djc {

struct FigureTarget {
    std::string name;
    std::string summary;
};

const std::vector<FigureTarget>& figure_targets();

/// Throws UsageError for an unknown target name.
CsvTable reproduce_figure(std::string_view name);

}  // namespace djc
