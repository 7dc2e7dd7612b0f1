#include "pairorbit/initcond.hpp"
#include "pairorbit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pairorbit {

double FullState::separation() const {
    return std::hypot(x1 - x2, y1 - y2);
}

namespace {

double coulomb_distance(const QPoint& q, const PhysConfig& cfg) {
    const double r2 = std::hypot(q.q1 + cfg.a, q.q2);
    if (r2 <= 1e-13 * cfg.a)
        throw CoulombSingularity("evaluation at the Coulomb center");
    return r2;
}

struct Candidate {
    double c1;
    double c2;
};

// One damped 2D Newton pass on F = (H - h, Lambda - lambda).
void polish_pair(Candidate& c, const QPoint& q, const MotionConstants& mc,
                 const PhysConfig& cfg) {
    for (int it = 0; it < 25; ++it) {
        double H, L;
        cartesian_invariants(q, c.c1, c.c2, cfg, H, L);
        const double f1 = H - mc.h;
        const double f2 = L - mc.lambda;
        const double scale = std::max({1.0, std::fabs(mc.h), std::fabs(mc.lambda)});
        if (std::fabs(f1) + std::fabs(f2) < 1e-14 * scale)
            return;
        const double ang = q.q2 * c.c1 - q.q1 * c.c2;
        // J = [[c1, c2], [ang*q2 + c1, -ang*q1]]
        const double j11 = c.c1, j12 = c.c2;
        const double j21 = ang * q.q2 + c.c1, j22 = -ang * q.q1;
        const double det = j11 * j22 - j12 * j21;
        if (std::fabs(det) < 1e-14)
            return; // merged branches at a caustic: keep the candidate as is
        const double d1 = (f1 * j22 - f2 * j12) / det;
        const double d2 = (f2 * j11 - f1 * j21) / det;
        c.c1 -= d1;
        c.c2 -= d2;
        if (std::fabs(d1) + std::fabs(d2) < 1e-15)
            return;
    }
}

} // namespace

void cartesian_invariants(const QPoint& q, double qdot1, double qdot2,
                          const PhysConfig& cfg, double& H, double& Lambda) {
    const double r2 = coulomb_distance(q, cfg);
    const double ang = q.q2 * qdot1 - q.q1 * qdot2;
    H = 0.5 * (qdot1 * qdot1 + qdot2 * qdot2) +
        0.5 * (q.q1 * q.q1 + q.q2 * q.q2) - cfg.alpha / r2;
    Lambda = 0.5 * (ang * ang + qdot1 * qdot1) + 0.5 * q.q1 * q.q1 +
             cfg.alpha * q.q1 / (cfg.a * r2);
}

std::vector<VelocityBranch> velocity_branches(const QPoint& q, const MotionConstants& mc,
                                              const PhysConfig& cfg) {
    const double r2 = coulomb_distance(q, cfg);
    const double scale = std::max({1.0, std::fabs(mc.h), std::fabs(mc.lambda)});

    // speed shell: qd1^2 + qd2^2 = S
    const double W = 0.5 * (q.q1 * q.q1 + q.q2 * q.q2) - cfg.alpha / r2;
    double S = 2.0 * (mc.h - W);
    if (S < 0.0) {
        if (S < -1e-12 * scale)
            return {}; // below the potential: outside the allowed region
        S = 0.0;
    }
    // angular shell: (q2 qd1 - q1 qd2)^2 + qd1^2 = T
    const double T = 2.0 * mc.lambda - q.q1 * q.q1 - 2.0 * cfg.alpha * q.q1 / (cfg.a * r2);

    // eliminate qd2: with w = qd1^2, A = q2^2 - q1^2 + 1, B = T - q1^2 S,
    // (A^2 + 4 q1^2 q2^2) w^2 - (2AB + 4 q1^2 q2^2 S) w + B^2 = 0.
    const double A = q.q2 * q.q2 - q.q1 * q.q1 + 1.0;
    const double B = T - q.q1 * q.q1 * S;
    const double qq = q.q1 * q.q1 * q.q2 * q.q2;
    const double ca = A * A + 4.0 * qq;
    const double cb = -(2.0 * A * B + 4.0 * qq * S);
    const double cc = B * B;

    std::vector<double> wcands{0.0, S};
    if (ca > 0.0) {
        // for q1 = 0 or q2 = 0 this quadratic is a perfect square, so a tiny
        // negative discriminant is pure rounding and must be snapped to zero
        double disc = cb * cb - 4.0 * ca * cc;
        if (disc < 0.0 && disc > -1e-10 * (cb * cb + std::fabs(4.0 * ca * cc) + 1.0))
            disc = 0.0;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double qf = -(cb + std::copysign(sq, cb)) / 2.0;
            if (qf != 0.0) {
                wcands.push_back(qf / ca);
                wcands.push_back(cc / qf);
            } else {
                wcands.push_back(0.0);
            }
        }
    }

    std::vector<Candidate> cands;
    for (double w : wcands) {
        if (w < -1e-10 * std::max(1.0, S) || w > S * (1.0 + 1e-10) + 1e-14)
            continue;
        w = std::clamp(w, 0.0, S);
        for (double sgn : {1.0, -1.0}) {
            const double c1 = sgn * std::sqrt(w);
            const double denom = 2.0 * q.q1 * q.q2 * c1;
            if (std::fabs(denom) > 1e-12) {
                cands.push_back({c1, (A * c1 * c1 - B) / denom});
            } else {
                const double c2 = std::sqrt(std::max(S - w, 0.0));
                cands.push_back({c1, c2});
                cands.push_back({c1, -c2});
            }
        }
    }

    // On a caustic the solution pair merges into a double root whose
    // machine-precision neighborhood is ~1e-7 wide (residuals reach eps over
    // that whole segment), so deduplication must be coarser than that scale.
    constexpr double dedup_dist = 1e-6;
    std::vector<VelocityBranch> out;
    for (Candidate c : cands) {
        polish_pair(c, q, mc, cfg);
        double H, L;
        cartesian_invariants(q, c.c1, c.c2, cfg, H, L);
        const double res_h = H - mc.h;
        const double res_l = L - mc.lambda;
        if (std::fabs(res_h) > 1e-9 * std::max(1.0, std::fabs(mc.h)) ||
            std::fabs(res_l) > 1e-9 * std::max(1.0, std::fabs(mc.lambda)))
            continue;
        auto twin = std::find_if(out.begin(), out.end(), [&](const VelocityBranch& b) {
            return std::hypot(b.qdot1 - c.c1, b.qdot2 - c.c2) < dedup_dist;
        });
        if (twin == out.end()) {
            out.push_back(VelocityBranch{c.c1, c.c2, 0, res_h, res_l});
        } else if (std::fabs(res_h) + std::fabs(res_l) <
                   std::fabs(twin->residual_h) + std::fabs(twin->residual_lambda)) {
            *twin = VelocityBranch{c.c1, c.c2, 0, res_h, res_l};
        }
    }
    std::sort(out.begin(), out.end(), [](const VelocityBranch& a, const VelocityBranch& b) {
        return a.qdot1 != b.qdot1 ? a.qdot1 < b.qdot1 : a.qdot2 < b.qdot2;
    });
    for (size_t i = 0; i < out.size(); ++i)
        out[i].branch_index = static_cast<int>(i);
    return out;
}

FullState build_full_state(double X0, double Y0, const QPoint& q,
                           const VelocityBranch& branch, const PhysConfig& cfg) {
    FullState s;
    reconstruct_particles(X0, Y0, q, cfg, s.x1, s.y1, s.x2, s.y2);
    const double inv2a = 1.0 / (2.0 * cfg.a);
    const double x0 = cfg.x0, y0 = cfg.y0;
    const double q1 = q.q1, q2 = q.q2;
    const double d1 = branch.qdot1, d2 = branch.qdot2;
    s.vx1 = (x0 * (q2 - d1) - y0 * (q1 + d2)) * inv2a;
    s.vy1 = -(x0 * (q1 + d2) + y0 * (q2 - d1)) * inv2a;
    s.vx2 = (x0 * (q2 + d1) - y0 * (q1 - d2)) * inv2a;
    s.vy2 = -(x0 * (q1 - d2) + y0 * (q2 + d1)) * inv2a;
    return s;
}

} // namespace pairorbit
