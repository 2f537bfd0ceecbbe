#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "lodfem/errors.hpp"
#include "lodfem/geometry.hpp"

namespace lodfem {

// Support of the singular source: a point, a pair of points, or a line
// segment, each carrying a constant source density.
struct SingularSet {
    enum class Kind { point, point_pair, segment };

    Kind kind = Kind::point;
    Point2 a;            // point location / first point / segment start
    Point2 b;            // second point / segment end (unused for Kind::point)
    double density_a = 1.0;
    double density_b = 1.0; // second component density (point_pair only)

    int ell() const { return kind == Kind::segment ? 1 : 0; }

    double length() const { return kind == Kind::segment ? dist(a, b) : 0.0; }

    static SingularSet point(Point2 p, double f = 1.0) {
        SingularSet s;
        s.kind = Kind::point;
        s.a = p;
        s.density_a = f;
        return s;
    }
    static SingularSet point_pair(Point2 p, double fp, Point2 q, double fq) {
        SingularSet s;
        s.kind = Kind::point_pair;
        s.a = p;
        s.b = q;
        s.density_a = fp;
        s.density_b = fq;
        return s;
    }
    static SingularSet segment(Point2 p, Point2 q, double f = 1.0) {
        SingularSet s;
        s.kind = Kind::segment;
        s.a = p;
        s.b = q;
        s.density_a = f;
        return s;
    }
};

// Geometry must sit inside the open unit square; segments need positive length.
inline void validate_geometry(const SingularSet& s) {
    auto inside = [](Point2 p) {
        return p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0;
    };
    if (!inside(s.a) || (s.kind != SingularSet::Kind::point && !inside(s.b)))
        throw ConfigError("singular set geometry must lie strictly inside the unit square");
    if (s.kind == SingularSet::Kind::segment && !(dist(s.a, s.b) > 0.0))
        throw ConfigError("segment source must have positive length");
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v > lo && v < hi; }
    bool is_endpoint(double v) const { return v == lo || v == hi; }
    std::string str() const {
        return "(" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
    }
};

struct AdmissibleIntervals {
    Interval muckenhoupt; // weight exponents with a valid weighted Poincare inequality
    Interval source;      // exponents admitting the singular-source trace
};

inline AdmissibleIntervals admissible_intervals(int d, int ell) {
    if (d != 2 || (ell != 0 && ell != 1))
        throw ConfigError("only d=2 with ell in {0,1} is supported, got d=" +
                          std::to_string(d) + ", ell=" + std::to_string(ell));
    const double half = 0.5 * (d - ell);
    return {{-half, half}, {half - 1.0, half}};
}

// Distance-weight specification: weight(x) = dist(x, Lambda)^(2*beta).
struct WeightSpec {
    SingularSet lambda;
    double beta = 0.0;
    static constexpr int d = 2;

    int ell() const { return lambda.ell(); }

    bool muckenhoupt_admissible() const {
        return admissible_intervals(d, ell()).muckenhoupt.contains(beta);
    }
    void require_admissible() const {
        if (!muckenhoupt_admissible()) {
            const auto iv = admissible_intervals(d, ell()).muckenhoupt;
            throw ConfigError("weight exponent beta=" + std::to_string(beta) +
                              " outside the admissible interval " + iv.str() +
                              " for ell=" + std::to_string(ell()));
        }
    }
};

inline double distance(Point2 x, const SingularSet& s) {
    switch (s.kind) {
    case SingularSet::Kind::point:
        return dist(x, s.a);
    case SingularSet::Kind::point_pair:
        return std::min(dist(x, s.a), dist(x, s.b));
    case SingularSet::Kind::segment:
        return dist_point_segment(x, s.a, s.b);
    }
    return 0.0;
}

// Distance from the closed triangle to the singular set (0 on contact).
inline double distance(const Triangle& t, const SingularSet& s) {
    switch (s.kind) {
    case SingularSet::Kind::point:
        return dist_point_triangle(s.a, t);
    case SingularSet::Kind::point_pair:
        return std::min(dist_point_triangle(s.a, t), dist_point_triangle(s.b, t));
    case SingularSet::Kind::segment:
        return dist_segment_triangle(s.a, s.b, t);
    }
    return 0.0;
}

} // namespace lodfem
