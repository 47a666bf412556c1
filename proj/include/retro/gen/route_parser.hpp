#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "retro/mapping/pathway.hpp"

namespace retro::gen {

struct ParsedRoutes {
  std::vector<mapping::RawPathway> pathways;
  std::vector<std::string> diagnostics;  // one entry per dropped block/step issue
  bool found_route_block = false;        // false means a no-route error
};

// Extracts every <ROUTE>...</ROUTE> block and parses the step-dictionary
// syntax tolerantly: single or double quotes, trailing commas, bracketed
// molecule lists, list-or-string field values. A malformed step aborts only
// its own block. PLAN/EXPLANATION text is ignored for structure. Never
// throws on arbitrary input.
ParsedRoutes parse_route_response(std::string_view text);

}  // namespace retro::gen
