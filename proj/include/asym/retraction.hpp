#pragma once

#include <span>
#include <vector>

#include "asym/box_domain.hpp"

namespace asym {

/// Geometry of the cube pair (I^{n+1}, L^n), L^n the union of the side
/// faces (x_i in {0,1}, i < n) and the bottom (t = 0), with t the last
/// coordinate of the cube.
///
/// Membership and fixing of L^n are exact: the retraction writes the hit
/// coordinate as a literal 0 or 1, so retracting twice returns the first
/// result bit for bit.

/// Exact membership test.
bool on_L(int n, std::span<const double> u);

/// Central projection from p = (1/2, ..., 1/2, 2): the first intersection
/// (smallest ray parameter >= 1) of the ray from p through u with L^n.
/// Ties at corners resolve by face priority: bottom, then sides in
/// coordinate order with the 0-side first.
std::vector<double> retract_to_L(int n, std::span<const double> u);

struct LFace {
    bool bottom = true;
    int axis = 0;  // valid when !bottom
    int side = 0;  // 0 or 1
    bool operator==(const LFace& o) const {
        return bottom == o.bottom && (bottom || (axis == o.axis && side == o.side));
    }
};

/// All faces of L^n: the bottom plus 2n sides.
std::vector<LFace> l_faces(int n);

/// Embed face coordinates (an I^n point) into the cube I^{n+1}.
/// Bottom: coords are (x_0..x_{n-1}), t = 0. Side (i, s): coords are
/// (x_0.. skip i .., t), x_i = s.
std::vector<double> l_face_point(int n, const LFace& face, std::span<const double> face_coords);

/// Inverse of l_face_point for points on (or near) the face: drops the
/// fixed coordinate and clamps the rest into [0,1].
std::vector<double> l_face_coords(int n, const LFace& face, std::span<const double> cube_point);

/// The face of L^n nearest to a cube point, with the priority order above.
LFace nearest_l_face(int n, std::span<const double> u);

}  // namespace asym
