#ifndef TOPNET_INDICATOR_HPP
#define TOPNET_INDICATOR_HPP

#include <json.hpp>
#include <utility>
#include <vector>

#include "topnet/relu.hpp"
#include "topnet/sampling.hpp"
#include "topnet/shapes.hpp"

namespace topnet {

/**
 * Size/depth accounting of one synthesis call against the closed-form bound
 * it targets. `terms` itemizes every formula term for the report JSON.
 */
struct BoundReport {
    long long constructed_size = 0;
    int constructed_depth = 0;
    double paper_size_bound = 0.0;
    double paper_depth_bound = 0.0;
    double eps_budget = 0.0;
    double delta_shell = 0.0;
    long long padding_units = 0;
    bool overlap_flag = false;
    double size_to_theory_ratio = 0.0;  // size / (d^2 beta^2 / eps), representatives only
    nlohmann::json terms;

    nlohmann::json to_json() const;
};

struct SynthesizedNetwork {
    ReluNetwork net;
    BoundReport report;
};

/**
 * 3-layer indicator network for the d-ball of radius r at center c.
 *
 * Per-coordinate truncated squares are summed and thresholded at r^2; the
 * shift x -> x - c rides in the first affine stage at no size cost. The
 * internal error budget splits eps evenly between the sup-norm half and the
 * boundary-shell half. Size <= 4 d^2 r^2 / eps + 2d + 2, checked on return.
 */
SynthesizedNetwork ball_network(int d, double r, const Eigen::VectorXd& c, double eps,
                                const MeasureSpec& measure);

/**
 * 5-layer indicator network for the solid torus T^d_{r,R}(c), wired as
 * truncated squares over the spine coordinates, a truncated square root,
 * recentering at R, the axial truncated square, and a final threshold.
 * Size is checked against (2d/eps)(4(d-1)(R+r)^2 + 8r^2 + r/sqrt(R-r)) + 9.
 */
SynthesizedNetwork torus_network(int d, double r, double R, const Eigen::VectorXd& c, double eps,
                                 const MeasureSpec& measure);

/**
 * Indicator of the union of the member indicators: one fan-in sum followed by
 * a rising threshold ramp. Depth max member depth + 1, size sum + 2 (plus
 * depth-alignment padding, reported separately). Risk bound sum of eps_i.
 */
SynthesizedNetwork union_network(const std::vector<std::pair<ReluNetwork, double>>& members);

/**
 * Classifier for a whole topological representative: every component is
 * synthesized at eps_i = eps / m and the union is taken. The report records
 * the composed closed-form bound, the measured size, and the ratio
 * size / (d^2 beta^2 / eps) for scaling checks; overlapping components are
 * flagged, not rejected.
 */
SynthesizedNetwork representative_network(const RepresentativeSpec& spec, double eps,
                                          const MeasureSpec& measure);

/** Closed-form Prop-1 ball size bound 4 d^2 r^2 / eps + 2d + 2. */
double ball_size_bound(int d, double r, double eps);
/** Closed-form torus size bound (2d/eps)(4(d-1)(R+r)^2 + 8r^2 + r/sqrt(R-r)) + 9. */
double torus_size_bound(int d, double r, double R, double eps);

/**
 * Evaluates every closed-form depth/size term of the end-to-end bounds as
 * plain arithmetic: the topology term d^2 beta^2 / eps, the geometry terms
 * tau^{-d^2/2} log^{d/2}(1/(tau delta)) and D tau^{-d} log(1/(tau delta)),
 * the depth terms, and (when k, l are given) the simplicial-map size
 * D + d + k(D+1) + l(d+1).
 */
nlohmann::json theoretical_size_bounds(int d, int D, long long beta, double eps, double tau,
                                       double delta, long long k = 0, long long l = 0);

}  // namespace topnet

#endif  // TOPNET_INDICATOR_HPP
