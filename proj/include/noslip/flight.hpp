#pragma once

#include <functional>
#include <vector>

#include "noslip/collision.hpp"

namespace noslip {

/// One ledger row per collision.  All velocity data refers to the
/// post-collision state; residual and defect are evaluated on the
/// pre-collision state arriving at this boundary point.
struct CollisionRow {
    long index = 0;
    double time = 0.0;         ///< cumulative time at this collision
    double flight_time = 0.0;  ///< time to the next collision
    double x = 0.0, y = 0.0;   ///< transverse position
    double h = 0.0;            ///< a . e
    double arc_param = 0.0;
    int side = 0;
    double nu_x = 0.0, nu_y = 0.0;  ///< transverse inward normal
    double u_x = 0.0, u_y = 0.0;    ///< transverse velocity
    double sigma = 0.0;             ///< u . e
    double w_x = 0.0, w_y = 0.0;    ///< mixed w = gamma r U e
    double omega_e = 0.0;           ///< transverse spin (n = 3)
    double energy = 0.0;            ///< kinetic + m g h
    double residual = 0.0;          ///< rolling-impact residual (pre-collision)
    double defect = 0.0;            ///< transversal rolling defect (pre-collision)
};

struct TrajectoryRecord {
    MassParams params;
    CrossSection section;
    std::vector<CollisionRow> rows;
};

using RowSink = std::function<void(const CollisionRow&)>;

/// Free flight for time t: transverse motion is straight, the axis component
/// feels the constant acceleration -g; U is unchanged.
ReducedState fly(const ReducedState& state, double t, const MassParams& p);

/// From a post-collision state on the boundary, advance to the next collision
/// and apply the no-slip map.  Returns the next post-collision state and the
/// flight time.
std::pair<ReducedState, double> billiard_step(const ReducedState& state,
                                              const CrossSection& sec,
                                              const MassParams& p);

/// Event-driven trajectory.  `initial` must lie on the boundary of the
/// cylinder with u.nu <= 0 (pre-collision); the first recorded row is the
/// post-collision state at that point.  Deterministic: identical inputs give
/// bit-identical records.
TrajectoryRecord run_trajectory(const ReducedState& initial, const CrossSection& sec,
                                const MassParams& p, long n_collisions);

/// Streaming form of run_trajectory for long runs.
void run_trajectory(const ReducedState& initial, const CrossSection& sec,
                    const MassParams& p, long n_collisions, const RowSink& sink);

/// Post-collision full state reconstructed from a record row.
ReducedState state_of_row(const CollisionRow& row, const CrossSection& sec,
                          const MassParams& p);

}  // namespace noslip
