#pragma once

#include <Eigen/Dense>

#include "noslip/algebra.hpp"

namespace noslip {

enum class SectionKind { Circle, Stadium, Plates };

/// Transverse cross-section of the cylinder, already offset inward by the
/// particle radius (lengths here are effective: a circular section of a
/// cylinder of radius R holding a particle of radius r has rho = R - r).
///
/// Circle and Stadium are planar (dim = 2).  Plates is the slab between two
/// parallel hyperplanes x_0 = -gap/2 (side 0) and x_0 = +gap/2 (side 1) and
/// supports cross-section dimension 1 or 2 (ambient dimension 2 or 3).
struct CrossSection {
    SectionKind kind;
    int dim;           ///< cross-section dimension
    double rho = 0.0;       ///< circle radius / stadium cap radius
    double half_len = 0.0;  ///< stadium: half length of each straight
    double gap = 0.0;       ///< plates: distance between the hyperplanes

    static CrossSection circle(double rho);
    static CrossSection stadium(double rho, double half_len);
    static CrossSection plates(double gap, int dim = 2);
};

/// Boundary point of the cross-section with its moving frame.
/// nu is the inward unit normal; tau the unit tangent with arc length
/// increasing along tau.  In the ambient 3-D picture (tau, nu, e) is a
/// positive basis, i.e. tau = nu x e.  Plates in cross-dimension 1 have no
/// tangent direction (tau is the zero vector).
struct BoundaryFrame {
    Eigen::VectorXd a;
    Eigen::VectorXd nu;
    Eigen::VectorXd tau;
    double curvature = 0.0;
    double arc_param = 0.0;
    int side = 0;  ///< plates: 0 lower plate, 1 upper; otherwise 0
};

/// Result of an exact ray/boundary intersection.
struct BoundaryHit {
    Eigen::VectorXd point;
    double t = 0.0;
    double arc_param = 0.0;
    int side = 0;
};

/// Frame at arc-length parameter `s`, reduced modulo the perimeter.
/// Arc origin: Circle at (rho, 0); Stadium at the midpoint of the lower
/// straight.  For Plates, `s` parametrizes the chosen side's hyperplane.
BoundaryFrame frame_at(const CrossSection& sec, double s, int side = 0);

/// Arc-length parameter (and side) of a boundary point.
/// Stadium cap/straight junctions are classified as cap points.
std::pair<double, int> arc_param_of(const CrossSection& sec,
                                    const Eigen::VectorXd& point);

/// Frame built directly from a boundary point (normals computed from the
/// point itself, not from the arc parametrization round trip).  The event
/// loop uses this on exact intersection points.
BoundaryFrame frame_at_point(const CrossSection& sec, const Eigen::VectorXd& point);

/// First boundary point hit by the ray a + t*u_bar with t > t_min.
/// Throws SimulationError if the ray never reaches the boundary (plates,
/// velocity parallel to the planes: "parallel escape").
BoundaryHit next_transverse_collision(const CrossSection& sec,
                                      const Eigen::VectorXd& a,
                                      const Eigen::VectorXd& u_bar,
                                      double t_min = 1e-12);

/// Total boundary length (bounded sections only).
double perimeter(const CrossSection& sec);

/// Curvature as a periodic function of arc length (bounded sections only).
double curvature_profile(const CrossSection& sec, double s);

namespace detail {

// Extended-precision kernels used by the event loop.  Long event-driven runs
// accumulate shear-type roundoff, so the loop keeps its state in long double
// and rounds only at the recorded rows.
using VectorXl = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatrixXl = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct BoundaryHitL {
    VectorXl point;
    long double t = 0.0L;
    double arc_param = 0.0;
    int side = 0;
};

BoundaryHitL next_transverse_collision_l(const CrossSection& sec, const VectorXl& a,
                                         const VectorXl& u_bar,
                                         long double t_min = 1e-12L);

/// Inward unit normal at a boundary point.
VectorXl inward_normal_l(const CrossSection& sec, const VectorXl& point);

}  // namespace detail

}  // namespace noslip
