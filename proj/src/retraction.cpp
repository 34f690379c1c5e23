#include "asym/retraction.hpp"

#include <cmath>
#include <limits>

#include "asym/errors.hpp"

namespace asym {

bool on_L(int n, std::span<const double> u) {
    if (static_cast<int>(u.size()) != n + 1) throw ShapeError("on_L: point dimension mismatch");
    if (u[static_cast<size_t>(n)] == 0.0) return true;
    for (int i = 0; i < n; ++i) {
        if (u[static_cast<size_t>(i)] == 0.0 || u[static_cast<size_t>(i)] == 1.0) return true;
    }
    return false;
}

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kInsideSlack = 1e-9;

struct Candidate {
    double s = std::numeric_limits<double>::infinity();
    LFace face;
    bool valid = false;
};

}  // namespace

std::vector<double> retract_to_L(int n, std::span<const double> u) {
    const int N = n + 1;
    if (static_cast<int>(u.size()) != N) throw ShapeError("retract_to_L: dimension mismatch");
    for (double c : u) {
        if (c < -kInsideSlack || c > 1.0 + kInsideSlack)
            throw DomainError("retract_to_L: point outside the closed cube");
    }
    std::vector<double> out(u.begin(), u.end());
    if (on_L(n, u)) return out;

    const double t = u[static_cast<size_t>(n)];

    auto point_at = [&](double s, int fixed_axis, double fixed_value) {
        std::vector<double> q(static_cast<size_t>(N));
        for (int j = 0; j < n; ++j) {
            double pj = 0.5;
            q[static_cast<size_t>(j)] = pj + s * (u[static_cast<size_t>(j)] - pj);
        }
        q[static_cast<size_t>(n)] = 2.0 + s * (t - 2.0);
        if (fixed_axis >= 0) q[static_cast<size_t>(fixed_axis)] = fixed_value;
        return q;
    };

    auto inside = [&](const std::vector<double>& q) {
        for (double c : q) {
            if (c < -kInsideSlack || c > 1.0 + kInsideSlack) return false;
        }
        return true;
    };

    // candidates in priority order: bottom first, then sides by axis with
    // the 0-side before the 1-side
    std::vector<Candidate> candidates;
    {
        Candidate cand;
        cand.face = LFace{true, 0, 0};
        cand.s = 2.0 / (2.0 - t);
        std::vector<double> q = point_at(cand.s, n, 0.0);
        cand.valid = cand.s >= 1.0 - kTieTol && inside(q);
        candidates.push_back(cand);
    }
    for (int i = 0; i < n; ++i) {
        for (int side = 0; side <= 1; ++side) {
            Candidate cand;
            cand.face = LFace{false, i, side};
            double denom = (side == 0) ? (0.5 - u[static_cast<size_t>(i)])
                                       : (u[static_cast<size_t>(i)] - 0.5);
            if (denom <= 0.0) continue;  // the ray never reaches this side
            cand.s = 0.5 / denom;
            std::vector<double> q = point_at(cand.s, i, static_cast<double>(side));
            cand.valid = cand.s >= 1.0 - kTieTol && inside(q);
            candidates.push_back(cand);
        }
    }

    double best = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
        if (c.valid && c.s < best) best = c.s;
    }
    if (!std::isfinite(best)) throw DomainError("retract_to_L: ray missed L (unreachable)");

    for (const Candidate& c : candidates) {
        if (!c.valid || c.s > best + kTieTol) continue;
        // first in priority order wins the tie
        std::vector<double> q = c.face.bottom
                                    ? point_at(c.s, n, 0.0)
                                    : point_at(c.s, c.face.axis, static_cast<double>(c.face.side));
        for (double& v : q) v = std::min(1.0, std::max(0.0, v));
        return q;
    }
    throw DomainError("retract_to_L: no valid face candidate (unreachable)");
}

std::vector<LFace> l_faces(int n) {
    std::vector<LFace> out = {LFace{true, 0, 0}};
    for (int i = 0; i < n; ++i) {
        out.push_back(LFace{false, i, 0});
        out.push_back(LFace{false, i, 1});
    }
    return out;
}

std::vector<double> l_face_point(int n, const LFace& face, std::span<const double> face_coords) {
    if (static_cast<int>(face_coords.size()) != n)
        throw ShapeError("l_face_point: face coordinate dimension mismatch");
    std::vector<double> q(static_cast<size_t>(n) + 1);
    if (face.bottom) {
        for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] = face_coords[static_cast<size_t>(j)];
        q[static_cast<size_t>(n)] = 0.0;
        return q;
    }
    int src = 0;
    for (int j = 0; j < n; ++j) {
        if (j == face.axis) {
            q[static_cast<size_t>(j)] = static_cast<double>(face.side);
        } else {
            q[static_cast<size_t>(j)] = face_coords[static_cast<size_t>(src++)];
        }
    }
    q[static_cast<size_t>(n)] = face_coords[static_cast<size_t>(src)];
    return q;
}

std::vector<double> l_face_coords(int n, const LFace& face, std::span<const double> cube_point) {
    if (static_cast<int>(cube_point.size()) != n + 1)
        throw ShapeError("l_face_coords: cube point dimension mismatch");
    std::vector<double> c;
    c.reserve(static_cast<size_t>(n));
    auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    if (face.bottom) {
        for (int j = 0; j < n; ++j) c.push_back(clamp01(cube_point[static_cast<size_t>(j)]));
        return c;
    }
    for (int j = 0; j < n; ++j) {
        if (j != face.axis) c.push_back(clamp01(cube_point[static_cast<size_t>(j)]));
    }
    c.push_back(clamp01(cube_point[static_cast<size_t>(n)]));
    return c;
}

LFace nearest_l_face(int n, std::span<const double> u) {
    LFace best{true, 0, 0};
    double best_d = std::abs(u[static_cast<size_t>(n)]);
    for (int i = 0; i < n; ++i) {
        for (int side = 0; side <= 1; ++side) {
            double d = std::abs(u[static_cast<size_t>(i)] - static_cast<double>(side));
            if (d < best_d - kTieTol) {
                best_d = d;
                best = LFace{false, i, side};
            }
        }
    }
    return best;
}

}  // namespace asym
