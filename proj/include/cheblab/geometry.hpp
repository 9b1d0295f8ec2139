#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "cheblab/common.hpp"

namespace cheblab {

// A component of the compact set E: a real interval [alpha, beta] or a
// real-symmetric closed curve (circle or axis-aligned ellipse with real
// center). Intervals are the "arc" components (E_arc).
struct Component {
    enum class Kind { real_interval, symmetric_closed_curve };
    enum class Shape { none, circle, ellipse };

    Kind kind = Kind::real_interval;
    Shape shape = Shape::none;
    double alpha = 0.0, beta = 0.0; // interval endpoints
    double center = 0.0;            // curve center (real)
    double semi_x = 0.0, semi_y = 0.0; // curve semi-axes (circle: both = radius)

    bool is_arc() const { return kind == Kind::real_interval; }

    static Component interval(double a, double b) {
        Component c;
        c.kind = Kind::real_interval;
        c.alpha = a;
        c.beta = b;
        return c;
    }
    static Component circle(double center, double radius) {
        Component c;
        c.kind = Kind::symmetric_closed_curve;
        c.shape = Shape::circle;
        c.center = center;
        c.semi_x = c.semi_y = radius;
        return c;
    }
    static Component ellipse(double center, double semi_x, double semi_y) {
        Component c;
        c.kind = Kind::symmetric_closed_curve;
        c.shape = Shape::ellipse;
        c.center = center;
        c.semi_x = semi_x;
        c.semi_y = semi_y;
        return c;
    }

    // Curve parametrization p(t), t in [0, 2*pi); satisfies p(2*pi - t) = conj(p(t)).
    cplx point(double t) const {
        if (kind == Kind::real_interval)
            return cplx(0.5 * (alpha + beta) + 0.5 * (beta - alpha) * std::cos(t), 0.0);
        return cplx(center + semi_x * std::cos(t), semi_y * std::sin(t));
    }
    // |p'(t)| for curves; interval components use the theta parametrization
    // x = mid + half*cos(theta) whose speed is half*|sin(theta)|.
    double speed(double t) const {
        if (kind == Kind::real_interval)
            return 0.5 * (beta - alpha) * std::abs(std::sin(t));
        return std::hypot(semi_x * std::sin(t), semi_y * std::cos(t));
    }

    // Extent of the component's projection onto the real axis.
    double left() const { return kind == Kind::real_interval ? alpha : center - semi_x; }
    double right() const { return kind == Kind::real_interval ? beta : center + semi_x; }
};

struct CompactSystem {
    std::vector<Component> components;

    std::size_t size() const { return components.size(); }
    const Component& operator[](std::size_t k) const { return components[k]; }

    // Real hull [min left, max right]; center/half-diameter used as the
    // conditioning frame by the chebyshev module.
    double hull_left() const {
        double v = components.front().left();
        for (const auto& c : components) v = std::min(v, c.left());
        return v;
    }
    double hull_right() const {
        double v = components.front().right();
        for (const auto& c : components) v = std::max(v, c.right());
        return v;
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::size_t p = 0;                          // number of components
    std::vector<std::pair<double, double>> gaps; // (right_k, left_{k+1})
    std::vector<std::size_t> arc_indices;        // components counted in E_arc

    void violation(const std::string& v) {
        valid = false;
        violations.push_back(v);
    }
};

inline ValidationReport validate_system(const CompactSystem& sys) {
    ValidationReport rep;
    rep.p = sys.size();
    if (sys.size() == 0) {
        rep.violation("system has no components");
        return rep;
    }
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const Component& c = sys[k];
        if (c.kind == Component::Kind::real_interval) {
            if (!(c.alpha < c.beta))
                rep.violation("component " + std::to_string(k) +
                              ": interval endpoints not strictly increasing");
            rep.arc_indices.push_back(k);
        } else {
            if (!(c.semi_x > 0.0) || !(c.semi_y > 0.0))
                rep.violation("component " + std::to_string(k) +
                              ": curve semi-axes must be positive");
            // reflection identity p(2*pi - t) = conj(p(t)) on a sample grid
            for (int j = 0; j < 17; ++j) {
                double t = 2.0 * std::numbers::pi * j / 17.0;
                cplx d = c.point(2.0 * std::numbers::pi - t) - std::conj(c.point(t));
                if (std::abs(d) > 1e-12 * (1.0 + std::abs(c.point(t)))) {
                    rep.violation("component " + std::to_string(k) +
                                  ": parametrization breaks real symmetry");
                    break;
                }
            }
        }
    }
    // Pairwise separation. Mutually exterior components in scope have disjoint
    // real extents; nested curve pairs (condenser validation configurations)
    // are allowed when the sampled distance stays positive.
    auto sampled_distance = [](const Component& a, const Component& b) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 64; ++i) {
            double s = 2.0 * std::numbers::pi * i / 64.0;
            for (int j = 0; j < 64; ++j) {
                double t = 2.0 * std::numbers::pi * j / 64.0;
                dmin = std::min(dmin, std::abs(a.point(s) - b.point(t)));
            }
        }
        return dmin;
    };
    for (std::size_t k = 0; k < sys.size(); ++k) {
        for (std::size_t l = k + 1; l < sys.size(); ++l) {
            const Component &a = sys[k], &b = sys[l];
            bool extents_disjoint = a.right() < b.left() || b.right() < a.left();
            if (extents_disjoint) continue;
            bool both_curves = !a.is_arc() && !b.is_arc();
            double scale = std::max({1.0, std::abs(a.right()), std::abs(b.right())});
            if (!(both_curves && sampled_distance(a, b) > 1e-12 * scale))
                rep.violation("components " + std::to_string(k) + " and " + std::to_string(l) +
                              ": real extents overlap");
        }
    }
    // List order follows the real line; gaps exist between consecutive
    // extent-disjoint components.
    for (std::size_t k = 0; k + 1 < sys.size(); ++k) {
        double r = sys[k].right(), l = sys[k + 1].left();
        if (r < l)
            rep.gaps.emplace_back(r, l);
        else if (sys[k + 1].right() < sys[k].left())
            rep.violation("components " + std::to_string(k) + " and " + std::to_string(k + 1) +
                          ": out of order along the real line");
    }
    return rep;
}

// Quadrature nodes in the parameter measure: intervals carry theta_j =
// (2j-1)*pi/(2N) (Chebyshev points absorbing the endpoint singularity of the
// equilibrium density), closed curves carry t_j = 2*pi*j/N starting at 0.
struct DiscretizedBoundary {
    CompactSystem system;
    std::vector<cplx> nodes;
    std::vector<double> weights;       // parameter measure (sums: pi per interval, 2*pi per curve)
    std::vector<double> params;        // theta or t per node
    std::vector<int> component_id;
    std::vector<char> singular_flag;   // near an interval endpoint
    std::vector<std::size_t> offsets;  // per-component start index, size p+1

    std::size_t size() const { return nodes.size(); }
    std::size_t count(std::size_t comp) const { return offsets[comp + 1] - offsets[comp]; }
};

inline DiscretizedBoundary discretize(const CompactSystem& sys, std::size_t nodes_per_component) {
    ValidationReport rep = validate_system(sys);
    if (!rep.valid)
        fail("geometry", "discretize", "invalid system: " + rep.violations.front());
    if (nodes_per_component < 8)
        fail("geometry", "discretize",
             "nodes_per_component = " + std::to_string(nodes_per_component) +
                 " is too coarse (minimum 8)");

    DiscretizedBoundary bd;
    bd.system = sys;
    const std::size_t N = nodes_per_component;
    bd.offsets.push_back(0);
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const Component& c = sys[k];
        if (c.kind == Component::Kind::real_interval) {
            for (std::size_t j = 0; j < N; ++j) {
                double th = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * N);
                bd.nodes.push_back(c.point(th));
                bd.weights.push_back(std::numbers::pi / N);
                bd.params.push_back(th);
                bd.component_id.push_back(static_cast<int>(k));
                bd.singular_flag.push_back(j < 2 || j + 2 >= N);
            }
        } else {
            for (std::size_t j = 0; j < N; ++j) {
                double t = 2.0 * std::numbers::pi * j / N;
                bd.nodes.push_back(c.point(t));
                bd.weights.push_back(2.0 * std::numbers::pi / N);
                bd.params.push_back(t);
                bd.component_id.push_back(static_cast<int>(k));
                bd.singular_flag.push_back(false);
            }
        }
        bd.offsets.push_back(bd.nodes.size());
    }
    return bd;
}

} // namespace cheblab
