#pragma once

#include <functional>
#include <span>

#include "knotperc/diagram.hpp"

namespace knotperc {

/// Three-crossing trefoil in table form, labels 0..11.
CodeTable trefoil_table();

/// Diagram of the closed polygon through `points` (last point joins the first).
KnotCode code_from_polygon(std::span<const Vec3> points);

/// Diagram of a closed parametric curve sampled at `samples` points on [0, 2pi).
KnotCode code_from_parametric(const std::function<Vec3(double)>& curve, int samples = 360);

KnotCode trefoil_code();        // from the table
KnotCode figure_eight_code();   // four crossings, from a parametrized curve

/// Cuts the arc of half-edge 0 in each diagram and reconnects the four ends
/// into one planar diagram.
KnotCode connected_sum(const KnotCode& a, const KnotCode& b);

}  // namespace knotperc
