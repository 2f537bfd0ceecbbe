#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lodfem/errors.hpp"
#include "lodfem/geometry.hpp"
#include "lodfem/singular.hpp"

namespace lodfem {

// Symmetric quadrature rule on the reference triangle in barycentric
// coordinates. Weights sum to 1; multiply by the triangle area.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int order = 0;
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with shifts,
// tracking the first row of the eigenvector matrix (Golub-Welsch weights).
inline void tridiag_eigen_first_row(std::vector<double>& diag, std::vector<double>& off,
                                    std::vector<double>& first_row) {
    const int n = static_cast<int>(diag.size());
    off.resize(n, 0.0);
    first_row.assign(n, 0.0);
    first_row[0] = 1.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = 0;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) throw NumericalError("quadrature eigensolver did not converge");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + (g >= 0.0 ? r : -r));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * off[i];
                    const double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    f = first_row[i + 1];
                    first_row[i + 1] = s * first_row[i] + c * f;
                    first_row[i] = c * first_row[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace detail

// Gauss rule with n nodes for the weight t^c on [0,1]; exact for polynomial
// factors of degree <= 2n-1. c > -1. c = 0 gives Gauss-Legendre.
struct Gauss01 {
    std::vector<double> x;
    std::vector<double> w;
};

inline Gauss01 gauss_jacobi01(int n, double c) {
    if (!(c > -1.0)) throw ConfigError("gauss_jacobi01 requires exponent > -1");
    // Recurrence coefficients of Jacobi polynomials for weight (1+x)^c on [-1,1].
    std::vector<double> diag(n), off(n, 0.0);
    diag[0] = c / (c + 2.0);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + c;
        diag[k] = c * c / (s * (s + 2.0));
        const double num = 4.0 * k * k * (k + c) * (k + c);
        off[k - 1] = std::sqrt(num / (s * s * (s + 1.0) * (s - 1.0)));
    }
    const double mu0 = std::exp((c + 1.0) * std::log(2.0) - std::log(c + 1.0));
    std::vector<double> z;
    detail::tridiag_eigen_first_row(diag, off, z);
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < n; ++i) nw[i] = {diag[i], mu0 * z[i] * z[i]};
    std::sort(nw.begin(), nw.end());
    Gauss01 g;
    g.x.resize(n);
    g.w.resize(n);
    const double scale = std::exp(-(c + 1.0) * std::log(2.0));
    for (int i = 0; i < n; ++i) {
        g.x[i] = 0.5 * (nw[i].first + 1.0);
        g.w[i] = nw[i].second * scale;
    }
    return g;
}

inline Gauss01 gauss_legendre01(int n) { return gauss_jacobi01(n, 0.0); }

namespace detail {

inline QuadratureRule make_rule_order1() {
    QuadratureRule r;
    r.order = 1;
    r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {1.0};
    return r;
}

inline QuadratureRule make_rule_order2() {
    QuadratureRule r;
    r.order = 2;
    const double a = 2.0 / 3.0, b = 1.0 / 6.0;
    r.points = {{a, b, b}, {b, a, b}, {b, b, a}};
    r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return r;
}

// Conical product of 2-pt Gauss-Legendre and 2-pt Gauss-Jacobi: 4 positive
// points, exact to degree 3.
inline QuadratureRule make_rule_order3() {
    QuadratureRule r;
    r.order = 3;
    const Gauss01 gl = gauss_legendre01(2);
    const Gauss01 gj = gauss_jacobi01(2, 1.0); // weight (1-eta) after eta -> 1-eta flip
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double eta = 1.0 - gj.x[j]; // gj integrates t^1; we need weight (1-eta)
            const double x = gl.x[i] * (1.0 - eta);
            const double y = eta;
            r.points.push_back({1.0 - x - y, x, y});
            r.weights.push_back(2.0 * gl.w[i] * gj.w[j]);
        }
    }
    return r;
}

inline QuadratureRule make_rule_order6() {
    QuadratureRule r;
    r.order = 6;
    auto orbit3 = [&](double a, double w) {
        const double b = 1.0 - 2.0 * a;
        r.points.push_back({b, a, a});
        r.points.push_back({a, b, a});
        r.points.push_back({a, a, b});
        r.weights.insert(r.weights.end(), 3, w);
    };
    auto orbit6 = [&](double a, double b, double w) {
        const double c = 1.0 - a - b;
        r.points.push_back({a, b, c});
        r.points.push_back({a, c, b});
        r.points.push_back({b, a, c});
        r.points.push_back({b, c, a});
        r.points.push_back({c, a, b});
        r.points.push_back({c, b, a});
        r.weights.insert(r.weights.end(), 6, w);
    };
    orbit3(0.063089014491502228, 0.050844906370206817);
    orbit3(0.249286745170910421, 0.116786275726379366);
    orbit6(0.310352451033784405, 0.053145049844816947, 0.082851075618373575);
    return r;
}

} // namespace detail

// Shared rules keyed by requested exactness degree (rounded up).
inline const QuadratureRule& triangle_rule(int order) {
    static const QuadratureRule r1 = detail::make_rule_order1();
    static const QuadratureRule r2 = detail::make_rule_order2();
    static const QuadratureRule r3 = detail::make_rule_order3();
    static const QuadratureRule r6 = detail::make_rule_order6();
    if (order <= 1) return r1;
    if (order == 2) return r2;
    if (order == 3) return r3;
    return r6;
}

struct QuadParams {
    int depth = 8;          // graded subdivision depth near the singular set
    int base_order = 6;     // base rule exactness on smooth leaves
    int singular_nodes = 8; // 1D node count of the singular-leaf rules
};

// Quadrature engine for integrals of g(x) * dist(x,Lambda)^(2*beta) over
// triangles. Triangles within one diameter of Lambda are recursively split
// toward it; leaves still touching Lambda at the depth limit are handled by
// Duffy-type rules with Gauss-Jacobi radial weights, which are exact in the
// singular direction.
class WeightedQuadrature {
public:
    WeightedQuadrature(const WeightSpec& w, const QuadParams& p = {})
        : w_(w), p_(p), base_(&triangle_rule(p.base_order)) {
        w_.require_admissible();
        if (w_.lambda.kind == SingularSet::Kind::segment && !(w_.lambda.length() > 0.0))
            throw ConfigError("segment singular set must have positive length");
        const int n = p_.singular_nodes;
        gl_ = gauss_legendre01(n);
        if (w_.beta != 0.0) {
            radial_ = gauss_jacobi01(n, 2.0 * w_.beta + 1.0);
            across_ = gauss_jacobi01(n, 2.0 * w_.beta);
        } else {
            radial_ = gauss_jacobi01(n, 1.0);
            across_ = gl_;
        }
    }

    const WeightSpec& weight() const { return w_; }
    const QuadParams& params() const { return p_; }

    // Visits quadrature points with combined weights (rule weight x area x
    // distance-weight factor), so that the integral is sum of w * g(x).
    template <class Visitor>
    void for_each_point(const Triangle& t, Visitor&& visit) const {
        recurse(t, p_.depth, visit);
    }

    template <class F>
    double integrate(const Triangle& t, F&& g) const {
        double s = 0.0;
        for_each_point(t, [&](Point2 x, double w) { s += w * g(x); });
        return s;
    }

private:
    WeightSpec w_;
    QuadParams p_;
    const QuadratureRule* base_;
    Gauss01 gl_;     // Legendre nodes for the smooth directions
    Gauss01 radial_; // weight rho^(2beta+1): fan rules
    Gauss01 across_; // weight v^(2beta): edge-singular rules

    double weight_at(Point2 x) const {
        if (w_.beta == 0.0) return 1.0;
        return std::pow(distance(x, w_.lambda), 2.0 * w_.beta);
    }

    template <class Visitor>
    void base_rule(const Triangle& t, Visitor& visit) const {
        const double a = area(t);
        if (a <= 0.0) return;
        for (std::size_t q = 0; q < base_->points.size(); ++q) {
            const auto& b = base_->points[q];
            const Point2 x = b[0] * t[0] + b[1] * t[1] + b[2] * t[2];
            visit(x, a * base_->weights[q] * weight_at(x));
        }
    }

    template <class Visitor>
    void recurse(const Triangle& t, int depth, Visitor& visit) const {
        const double d = distance(t, w_.lambda);
        if (d >= diameter(t)) {
            base_rule(t, visit);
            return;
        }
        if (depth == 0) {
            if (d == 0.0)
                singular_leaf(t, visit);
            else
                base_rule(t, visit);
            return;
        }
        const Point2 m01 = 0.5 * (t[0] + t[1]);
        const Point2 m12 = 0.5 * (t[1] + t[2]);
        const Point2 m20 = 0.5 * (t[2] + t[0]);
        recurse({t[0], m01, m20}, depth - 1, visit);
        recurse({m01, t[1], m12}, depth - 1, visit);
        recurse({m20, m12, t[2]}, depth - 1, visit);
        recurse({m01, m12, m20}, depth - 1, visit);
    }

    // Fan rule over the (possibly degenerate) triangle (apex, v1, v2) for an
    // integrand g * delta(x)^(2beta) where delta is positively homogeneous
    // from the apex: delta(apex + rho*(e - apex)) = rho * delta(e). Returns a
    // signed contribution according to the triangle orientation.
    template <class DeltaFn, class Visitor>
    void fan_rule(Point2 apex, Point2 v1, Point2 v2, DeltaFn&& delta, Visitor& visit,
                  double scale_tol) const {
        const double a2 = cross(v1 - apex, v2 - apex);
        if (std::abs(a2) <= scale_tol) return;
        const int n = p_.singular_nodes;
        for (int i = 0; i < n; ++i) {
            const double xi = gl_.x[i];
            const Point2 e = apex + (1.0 - xi) * (v1 - apex) + xi * (v2 - apex);
            const double dfac = std::pow(delta(e), 2.0 * w_.beta);
            for (int j = 0; j < n; ++j) {
                const Point2 x = apex + radial_.x[j] * (e - apex);
                visit(x, a2 * gl_.w[i] * radial_.w[j] * dfac);
            }
        }
    }

    // Exact-in-v rule for a triangle with vertices c1, c2 on the singular
    // line and v off it: delta(x) = bary_v(x) * dist(v, line).
    template <class Visitor>
    void edge_rule(Point2 c1, Point2 c2, Point2 v, double h, Visitor& visit,
                   double scale_tol) const {
        const double a2 = std::abs(cross(c2 - c1, v - c1));
        if (a2 <= scale_tol) return;
        const double hfac = std::pow(h, 2.0 * w_.beta);
        const int n = p_.singular_nodes;
        for (int j = 0; j < n; ++j) {
            const double vv = across_.x[j];
            for (int i = 0; i < n; ++i) {
                const double xi = gl_.x[i];
                const Point2 x = (1.0 - vv) * ((1.0 - xi) * c1 + xi * c2) + vv * v;
                visit(x, a2 * across_.w[j] * gl_.w[i] * (1.0 - vv) * hfac);
            }
        }
    }

    template <class Visitor>
    void singular_leaf(const Triangle& t, Visitor& visit) const {
        switch (w_.lambda.kind) {
        case SingularSet::Kind::point:
            point_leaf(t, w_.lambda.a, visit);
            return;
        case SingularSet::Kind::point_pair: {
            const double da = dist_point_triangle(w_.lambda.a, t);
            const double db = dist_point_triangle(w_.lambda.b, t);
            const Point2 nearp = da <= db ? w_.lambda.a : w_.lambda.b;
            const double other = std::max(da, db);
            if (other > 2.0 * diameter(t)) {
                point_leaf(t, nearp, visit);
            } else {
                base_rule(t, visit); // components nearly coincide; not graded further
            }
            return;
        }
        case SingularSet::Kind::segment:
            segment_leaf(t, visit);
            return;
        }
    }

    // Signed fan of a counterclockwise polygon from an apex on (or near) its
    // boundary; cancellation-free when the apex is inside the closed hull.
    template <class DeltaFn, class Visitor>
    void fan_polygon(const Polygon& poly, Point2 apex, DeltaFn&& delta, Visitor& visit,
                     double scale_tol) const {
        for (std::size_t i = 0; i < poly.size(); ++i)
            fan_rule(apex, poly[i], poly[(i + 1) % poly.size()], delta, visit, scale_tol);
    }

    static Polygon ccw_polygon(const Polygon& poly) {
        double a2 = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
            a2 += cross(poly[i], poly[(i + 1) % poly.size()]);
        if (a2 >= 0.0) return poly;
        return Polygon(poly.rbegin(), poly.rend());
    }

    template <class Visitor>
    void point_leaf(const Triangle& t, Point2 p, Visitor& visit) const {
        const double scale_tol = 1e-30 * diameter(t) * diameter(t);
        auto delta = [&](Point2 e) { return dist(e, p); };
        // p lies in the closed triangle: every signed fan triangle is
        // nonnegative; degenerate ones (p on an edge or vertex) drop out.
        fan_polygon(ccw_polygon({t[0], t[1], t[2]}), p, delta, visit, scale_tol);
    }

    template <class Visitor>
    void segment_leaf(const Triangle& t, Visitor& visit) const {
        const Point2 a = w_.lambda.a;
        const Point2 b = w_.lambda.b;
        const Point2 dir = b - a;
        const double len2 = dot(dir, dir);
        const Point2 nrm = {-dir.y / std::sqrt(len2), dir.x / std::sqrt(len2)};
        auto param = [&](Point2 x) { return dot(x - a, dir) / len2; };
        auto side = [&](Point2 x) { return dot(x - a, nrm); };
        const double dm = diameter(t);
        const double merge_tol = 1e-14 * dm;
        const double on_tol = 1e-12 * dm;
        const double scale_tol = 1e-30 * dm * dm;

        const Polygon tri = {t[0], t[1], t[2]};
        const Polygon before = clip_polygon(tri, [&](Point2 x) { return -param(x); }, merge_tol);
        const Polygon after = clip_polygon(tri, [&](Point2 x) { return param(x) - 1.0; }, merge_tol);
        Polygon strip = clip_polygon(tri, [&](Point2 x) { return param(x); }, merge_tol);
        strip = clip_polygon(strip, [&](Point2 x) { return 1.0 - param(x); }, merge_tol);

        // Beyond an endpoint the nearest feature is that endpoint: signed fan.
        auto endpoint_piece = [&](const Polygon& piece, Point2 e) {
            if (piece.size() < 3) return;
            auto delta = [&](Point2 q) { return dist(q, e); };
            fan_polygon(ccw_polygon(piece), e, delta, visit, scale_tol);
        };
        endpoint_piece(before, a);
        endpoint_piece(after, b);

        if (strip.size() < 3) return;
        auto strip_side = [&](const Polygon& poly) {
            if (poly.size() < 3) return;
            // Anchor the triangulation at a vertex on the line so every fan
            // triangle admits an exact singular rule.
            std::size_t anchor = poly.size();
            double best = on_tol;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const double s = std::abs(side(poly[i]));
                if (s <= best) {
                    best = s;
                    anchor = i;
                }
            }
            if (anchor == poly.size()) {
                // Piece does not reach the line: plain rule, full weight.
                for (std::size_t i = 1; i + 1 < poly.size(); ++i)
                    base_rule({poly[0], poly[i], poly[i + 1]}, visit);
                return;
            }
            auto line_delta = [&](Point2 q) { return std::abs(side(q)); };
            for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
                const Point2 u = poly[(anchor + i) % poly.size()];
                const Point2 v = poly[(anchor + i + 1) % poly.size()];
                const Point2 p0 = poly[anchor];
                const bool u_on = std::abs(side(u)) <= on_tol;
                const bool v_on = std::abs(side(v)) <= on_tol;
                if (u_on && v_on) continue; // sliver along the line
                if (!u_on && !v_on) {
                    fan_rule(p0, u, v, line_delta,
                             [&](Point2 x, double w) { visit(x, std::abs(w)); }, scale_tol);
                } else if (u_on) {
                    edge_rule(p0, u, v, std::abs(side(v)), visit, scale_tol);
                } else {
                    edge_rule(p0, v, u, std::abs(side(u)), visit, scale_tol);
                }
            }
        };
        strip_side(clip_polygon(strip, [&](Point2 x) { return side(x); }, merge_tol));
        strip_side(clip_polygon(strip, [&](Point2 x) { return -side(x); }, merge_tol));
    }
};

// Integral over a triangle of g(x) * dist(x, Lambda)^(2*beta).
template <class F>
double weighted_element_integral(const Triangle& t, F&& g, const WeightSpec& w,
                                 const QuadParams& p = {}) {
    return WeightedQuadrature(w, p).integrate(t, std::forward<F>(g));
}

// Composite 2-point Gauss-Legendre approximation of the line integral of g
// along the segment; exact for integrands piecewise linear on the
// subintervals.
template <class F>
double segment_line_integral(F&& g, const SingularSet& seg, int subdivisions) {
    if (seg.kind != SingularSet::Kind::segment)
        throw ConfigError("segment_line_integral requires a segment singular set");
    if (subdivisions < 1) throw ConfigError("segment_line_integral requires n >= 1");
    const double len = dist(seg.a, seg.b);
    const double g1 = 0.5 - 0.5 / std::sqrt(3.0);
    const double g2 = 0.5 + 0.5 / std::sqrt(3.0);
    double s = 0.0;
    for (int i = 0; i < subdivisions; ++i) {
        const double t0 = static_cast<double>(i) / subdivisions;
        const double t1 = static_cast<double>(i + 1) / subdivisions;
        for (double q : {t0 + g1 * (t1 - t0), t0 + g2 * (t1 - t0)}) {
            const Point2 x = seg.a + q * (seg.b - seg.a);
            s += 0.5 * (t1 - t0) * g(x);
        }
    }
    return s * len;
}

// High-precision reference for the integral of dist(x, v0)^(2*beta) over the
// reference triangle (0,0),(1,0),(0,1) with the singular point at the origin:
// polar coordinates reduce it to a smooth 1D integral.
inline double vertex_singular_reference_integral(double beta) {
    const Gauss01 gl = gauss_legendre01(48);
    const double pi = 3.14159265358979323846;
    double s = 0.0;
    const int panels = 8;
    for (int k = 0; k < panels; ++k) {
        const double t0 = 0.5 * pi * k / panels;
        const double t1 = 0.5 * pi * (k + 1) / panels;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double th = t0 + gl.x[i] * (t1 - t0);
            s += (t1 - t0) * gl.w[i] *
                 std::pow(std::cos(th) + std::sin(th), -(2.0 * beta + 2.0));
        }
    }
    return s / (2.0 * beta + 2.0);
}

} // namespace lodfem
