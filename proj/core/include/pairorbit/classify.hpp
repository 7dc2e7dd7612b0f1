#pragma once

#include "pairorbit/coords.hpp"
#include "pairorbit/model.hpp"
#include "pairorbit/quartic.hpp"

#include <string>
#include <vector>

namespace pairorbit {

/// Closed subinterval of the u- or v-range on which the motion polynomial is
/// nonnegative. Endpoints are movable roots of P4 or the fixed values +-1/1.
struct Interval {
    double lo;
    double hi;
};

/// Maximal allowed intervals: u-intervals within [1, inf) where P4 <= 0
/// (so (1-u^2) P4(u) >= 0), v-intervals within [-1, 1] where P4 >= 0.
struct AllowedIntervals {
    std::vector<Interval> u_intervals;
    std::vector<Interval> v_intervals;
};

enum class OrbitLabel {
    ts1,
    ts2,
    ts3,
    tp1,
    tp2,
    tm1,
    tm2,
    forbidden,
    boundary,
};

const char* label_name(OrbitLabel l);

/// Caustic of the allowed region: ellipse u = u_c or hyperbola v = v_c in the
/// (q1, q2) plane, stored as the polynomial implicit form
/// c_q1sq * q1^2 + c_q2sq * q2^2 + c_const = 0, which equals the normalized
///   ellipse:    q1^2/(a^2 u_c^2) + q2^2/(a^2 (u_c^2-1)) = 1
///   hyperbola:  q1^2/(a^2 v_c^2) - q2^2/(a^2 (1-v_c^2)) = 1
/// after dividing by -c_const (and degrades gracefully to the line q1 = 0 for
/// the measure-zero case v_c = 0).
struct CausticCurve {
    enum class Kind { ellipse, hyperbola };
    Kind kind;
    double parameter; // u_c or v_c
    double c_q1sq;
    double c_q2sq;
    double c_const;

    /// |implicit equation| at q, normalized to the "= 1" form when possible.
    double residual(const QPoint& q) const;
};

/// Full classification of one parameter point of the bifurcation diagram.
struct RegionReport {
    std::vector<OrbitLabel> labels;
    AllowedIntervals intervals;
    std::vector<CausticCurve> caustics;
    bool collision_possible = false;
    RootSet roots;
    double l1 = 0.0;
    double l2 = 0.0;
};

AllowedIntervals allowed_intervals(const MotionConstants& mc, const PhysConfig& cfg);

/// Classifies by interval structure (component counts plus which endpoints are
/// fixed), which is equivalent to the seven root-ordering patterns:
///   t_s1/t_s2: u = [1,u_c], v = [-1,v_c]      (2 / 4 real roots)
///   t_s3+t_m2: u = [1,u_c], v = [-1,v_1] u [v_2,v_3]
///   t_p1/t_p2: u = [u_c1,u_c2], v = [-1,1]    (2 / 4 real roots)
///   t_m1:      u = [1,u_c], v = [v_c1,v_c2] interior
/// Points on L1/L2 (within line_band_tol) or with a near-multiple root are
/// labelled boundary; an empty u- or v-interval list means forbidden.
RegionReport classify_point(const MotionConstants& mc, const PhysConfig& cfg);

/// One curve per interval endpoint that is a movable root; throws
/// ForbiddenRegion when the region admits no motion.
std::vector<CausticCurve> caustics(const MotionConstants& mc, const PhysConfig& cfg);

/// Inclusive-endpoint uniform grid: linspace(start, stop, count).
struct GridSpec {
    double start;
    double stop;
    int count;

    double at(int i) const {
        if (count <= 1)
            return start;
        return start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
};

/// Rasterized bifurcation diagram at fixed alpha_a plus the sampled boundary
/// curves: the lines L1, L2 and the discriminant-zero locus (bisected along
/// lambda_a at every grid h_a).
struct DiagramScan {
    double alpha_a = 0.0;
    GridSpec h_grid;
    GridSpec lambda_grid;
    // row-major: cell (i_h, i_lambda) at index i_h * lambda_grid.count + i_lambda
    std::vector<std::vector<OrbitLabel>> cell_labels;
    std::vector<std::pair<double, double>> delta_zero; // (h_a, lambda_a) points

    const std::vector<OrbitLabel>& at(int ih, int il) const {
        return cell_labels[static_cast<size_t>(ih) * lambda_grid.count + il];
    }
};

/// Cells are independent; evaluation is spread over `threads` workers
/// (0 = hardware concurrency) with deterministic output placement.
DiagramScan scan_diagram(double alpha_a, const GridSpec& h_grid,
                         const GridSpec& lambda_grid, unsigned threads = 0);

} // namespace pairorbit
