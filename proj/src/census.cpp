#include "labelgeom/census.hpp"

#include <charconv>

#include "census_data.hpp"
#include "labelgeom/analysis.hpp"
#include "labelgeom/error.hpp"
#include "labelgeom/planar.hpp"

namespace labelgeom {

std::vector<std::string> census_names() {
    std::vector<std::string> out{"fig8", "borromean", "turks_head", "Ln:<n>", "9a37", "11a79"};
    for (auto v : encircled_variants()) out.push_back("encircled:" + std::string(v));
    return out;
}

PlanarDiagram census_diagram(std::string_view name) {
    if (name == "fig8") return parse_pd(fixtures::kFigureEight);
    if (name == "9a37") return parse_pd(fixtures::k9a37);
    if (name == "11a79") return parse_pd(fixtures::k11a79);
    if (name == "borromean") return braid_closure_L(3);
    if (name == "turks_head") return braid_closure_L(4);
    if (name.starts_with("Ln:")) {
        const std::string_view digits = name.substr(3);
        int n = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc{} && end == digits.data() + digits.size() && n >= 3) return braid_closure_L(n);
    }
    if (name.starts_with("encircled:")) return encircled_census(name.substr(10)).diagram;
    throw Error(ErrorCode::UnknownCensusName, "unknown census name '" + std::string(name) + "'");
}

}  // namespace labelgeom
