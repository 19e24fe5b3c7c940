#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "atlas/harmonic.hpp"
#include "atlas/martin.hpp"
#include "atlas/packing.hpp"
#include "atlas/rough_iso.hpp"
#include "atlas/tiling.hpp"
#include "atlas/walk.hpp"

namespace atlas {

// Keys keep insertion order so that every document starts with its header.
using Json = nlohmann::ordered_json;

// {tool, version, command, config, seed}. No timestamps, so re-runs are byte-identical.
Json make_header(std::string_view command, const Json& config, std::uint64_t seed);

// header first, then the members of body; two-space indent, trailing newline.
std::string format_document(const Json& header, const Json& body);

Json to_json(const HarmonicProfile& profile);
Json to_json(const RectangleTiling& tiling);
Json to_json(const TilingReport& report);
Json to_json(const PackingRadii& radii);
Json to_json(const CirclePacking& packing);
Json to_json(const PackingReport& report);
Json to_json(const BoundaryCorrespondence& c);
Json to_json(const ExitHistogram& h);
Json to_json(const QkResult& q);
Json to_json(const WalkTrace& t);
Json to_json(const MartinTable& t);
Json to_json(const MartinConvergenceReport& r);
Json to_json(const DensityReport& r);
Json to_json(const RoughIsoReport& r);
Json to_json(const EnergyConstants& k);
Json to_json(const InequalityCheck& c);

}  // namespace atlas
