#pragma once

#include <string>

#include "atlas/export.hpp"
#include "atlas/packing.hpp"
#include "atlas/tiling.hpp"

namespace atlas {

struct SvgOptions {
  double width = 800.0;  // pixels; tiling height follows from the aspect eta : 1
};

// The cylinder cut open at theta = 0, root at the bottom, B at the top.
// The header is embedded as an XML comment. Output is deterministic.
std::string tiling_svg(const PlanarNetwork& net, const RectangleTiling& tiling, const Json& header,
                       const SvgOptions& options = {});

// Circles inside the unit disc (drawn dashed); boundary circles shaded.
std::string packing_svg(const PlanarNetwork& net, const CirclePacking& packing, const Json& header,
                        const SvgOptions& options = {});

}  // namespace atlas
