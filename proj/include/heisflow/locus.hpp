#pragma once

#include "heisflow/curvature.hpp"
#include "heisflow/horizontal.hpp"
#include "heisflow/patch.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace heisflow {

struct LocusPoint {
    double u = 0.0;
    double v = 0.0;
    Point3 point;
    double normal_norm = 0.0;
};

struct LocusResult {
    std::string surface;
    std::vector<std::vector<LocusPoint>> polylines;

    std::size_t point_count() const;
};

struct LocusOptions {
    GridSpec grid{41, 41};
    int bisect_iterations = 60;
    EpsChar eps_char;
    /// Refined points with |N^h| above this are discarded.
    double accept = 1e-8;
};

/// Grid detection of the characteristic locus.
///
/// Curves of characteristic points are found where N^h reverses direction
/// along a grid edge (sign change of N^h(p) . N^h(edge start)), refined by
/// bisection. Isolated characteristic points are found by Newton iteration
/// on (n1, n2) in cells where both components change sign. Grid nodes that
/// are already characteristic are reported as they are. Edge crossings in a
/// cell are joined into segments and the segments chained into polylines.
LocusResult find_characteristic_locus(const SurfaceHandle& s, const LocusOptions& opts = {});

std::string locus_to_json(const LocusResult& r);
std::string locus_to_csv(const LocusResult& r);

} // namespace heisflow
