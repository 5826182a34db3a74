#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "labelgeom/diagram.hpp"

namespace labelgeom {

/// Names accepted by census_diagram; "Ln:<n>" and "encircled:<variant>"
/// stand for families.
std::vector<std::string> census_names();

/// fig8, borromean, turks_head, Ln:<n> (n >= 3), 9a37, 11a79,
/// encircled:<variant>.  Throws UnknownCensusName.
PlanarDiagram census_diagram(std::string_view name);

}  // namespace labelgeom
