#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace lodfem {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

using Triangle = std::array<Point2, 3>;

inline double signed_area(const Triangle& t) {
    return 0.5 * cross(t[1] - t[0], t[2] - t[0]);
}

inline double area(const Triangle& t) { return std::abs(signed_area(t)); }

inline double diameter(const Triangle& t) {
    return std::max({dist(t[0], t[1]), dist(t[1], t[2]), dist(t[2], t[0])});
}

inline Point2 centroid(const Triangle& t) {
    return {(t[0].x + t[1].x + t[2].x) / 3.0, (t[0].y + t[1].y + t[2].y) / 3.0};
}

// Barycentric coordinates of p with respect to t (sums to 1, any sign).
inline std::array<double, 3> barycentric(const Triangle& t, Point2 p) {
    const double a2 = cross(t[1] - t[0], t[2] - t[0]);
    const double l1 = cross(p - t[0], t[2] - t[0]) / a2;
    const double l2 = cross(t[1] - t[0], p - t[0]) / a2;
    return {1.0 - l1 - l2, l1, l2};
}

inline bool point_in_triangle(Point2 p, const Triangle& t, double tol = 1e-12) {
    const auto b = barycentric(t, p);
    return b[0] >= -tol && b[1] >= -tol && b[2] >= -tol;
}

inline double dist_point_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 v = b - a;
    const double len2 = dot(v, v);
    double s = len2 > 0.0 ? dot(p - a, v) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return dist(p, a + s * v);
}

inline bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const double d1 = cross(q2 - q1, p1 - q1);
    const double d2 = cross(q2 - q1, p2 - q1);
    const double d3 = cross(p2 - p1, q1 - p1);
    const double d4 = cross(p2 - p1, q2 - p1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on = [](Point2 a, Point2 b, Point2 c, double d) {
        return d == 0.0 && std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
    };
    return on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4);
}

inline double dist_segment_segment(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    if (segments_intersect(p1, p2, q1, q2)) return 0.0;
    return std::min({dist_point_segment(p1, q1, q2), dist_point_segment(p2, q1, q2),
                     dist_point_segment(q1, p1, p2), dist_point_segment(q2, p1, p2)});
}

// Distance from a point to the closed triangle (0 if inside).
inline double dist_point_triangle(Point2 p, const Triangle& t) {
    if (point_in_triangle(p, t)) return 0.0;
    return std::min({dist_point_segment(p, t[0], t[1]), dist_point_segment(p, t[1], t[2]),
                     dist_point_segment(p, t[2], t[0])});
}

// Distance from a segment to the closed triangle (0 if they intersect).
inline double dist_segment_triangle(Point2 a, Point2 b, const Triangle& t) {
    if (point_in_triangle(a, t) || point_in_triangle(b, t)) return 0.0;
    return std::min({dist_segment_segment(a, b, t[0], t[1]),
                     dist_segment_segment(a, b, t[1], t[2]),
                     dist_segment_segment(a, b, t[2], t[0])});
}

using Polygon = std::vector<Point2>;

// Sutherland-Hodgman clip of a convex polygon against the half plane
// {x : side(x) >= 0}, where side is an affine functional sampled at vertices.
template <class SideFn>
Polygon clip_polygon(const Polygon& poly, SideFn&& side, double merge_tol) {
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 cur = poly[i];
        const Point2 nxt = poly[(i + 1) % n];
        const double fc = side(cur);
        const double fn = side(nxt);
        if (fc >= 0.0) out.push_back(cur);
        if ((fc > 0.0) != (fn > 0.0) && fc != fn) {
            const double s = fc / (fc - fn);
            if (s > 0.0 && s < 1.0) out.push_back(cur + s * (nxt - cur));
        }
    }
    Polygon res;
    for (const auto& p : out) {
        if (res.empty() || dist(p, res.back()) > merge_tol) res.push_back(p);
    }
    while (res.size() > 1 && dist(res.front(), res.back()) <= merge_tol) res.pop_back();
    return res;
}

} // namespace lodfem
