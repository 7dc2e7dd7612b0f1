#pragma once

#include "pairorbit/classify.hpp"
#include "pairorbit/dynamics.hpp"

#include <string>

namespace pairorbit {

/// Lab-frame orbit plot: positron (particle 1) blue, electron (particle 2)
/// orange, center of mass red-dashed, start/end points highlighted.
/// Throws EmptyPlot on an empty trajectory.
std::string render_trajectory_svg(const Trajectory& traj);

/// Relative-particle orbit in the (q1, q2) plane with the caustic curves of
/// the region overlaid.
std::string render_relative_svg(const Trajectory& traj, const MotionConstants& mc,
                                const PhysConfig& cfg);

/// Allowed region in the (q1, q2) plane: gray-shaded allowed zone, black
/// caustic arcs, red dot at the Coulomb center (-a, 0), cross at the
/// oscillator center. Throws ForbiddenRegion when no motion is allowed.
std::string render_region_svg(const MotionConstants& mc, const PhysConfig& cfg);

/// Bifurcation diagram raster in the (lambda_a, h_a) plane: forbidden cells
/// gray, orbit-type cells color-coded, L1 red, L2 blue, discriminant-zero
/// locus green. Throws EmptyPlot on an empty scan.
std::string render_diagram_svg(const DiagramScan& scan);

} // namespace pairorbit
