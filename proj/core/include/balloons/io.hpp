#pragma once

#include <string>

#include "balloons/balloon.hpp"
#include "balloons/hyptess.hpp"
#include "balloons/matching.hpp"
#include "balloons/pointproc.hpp"
#include "balloons/treesep.hpp"

namespace balloons {

// JSON documents use shortest round-trip formatting for doubles, so every
// value read back compares equal to the value written.

std::string space_to_json(const Space& space, const Window& window);

std::string pointset_to_json(const PointSet& ps);
PointSet pointset_from_json(const std::string& text);

std::string matching_to_json(const MatchingResult& mr);
MatchingResult matching_from_json(const std::string& text);

std::string trajectory_to_json(const Trajectory& traj, const CoverReport& cover);

/// Vertex addresses, disk coordinates and the truncation radius.
std::string tessellation_to_json(const Tessellation& tess);

/// "u,v,color" rows, one per edge, u < v.
std::string colored_edges_csv(const ColoredMultigraph& g);

}  // namespace balloons
