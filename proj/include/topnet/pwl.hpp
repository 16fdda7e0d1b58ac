#ifndef TOPNET_PWL_HPP
#define TOPNET_PWL_HPP

#include <Eigen/Dense>
#include <functional>

#include "topnet/relu.hpp"

namespace topnet {

/**
 * Continuous piecewise-linear function R -> R with p pieces.
 *
 * `breakpoints` holds the p-1 strictly increasing knots, `slopes` the p piece
 * slopes from left to right, and `anchor_value` the function value at the
 * first breakpoint (at 0 when there are no breakpoints). Values everywhere
 * else follow by continuity.
 */
struct PiecewiseLinear1D {
    Eigen::VectorXd breakpoints;
    Eigen::VectorXd slopes;
    double anchor_value = 0.0;

    Eigen::Index pieces() const { return slopes.size(); }
};

void validate(const PiecewiseLinear1D& f);

/** Direct evaluation of the piecewise definition. */
double value_at(const PiecewiseLinear1D& f, double x);

/** PWL through the given knot values, constant outside [xs.front(), xs.back()]. */
PiecewiseLinear1D pwl_interpolant(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

/**
 * Exact depth-2 ReLU representation of a PWL function with p pieces.
 *
 * Uses at most p hidden units, and at most p-1 when the leftmost or rightmost
 * slope is zero. (A non-constant single-piece function is the one exception:
 * its exact representation on all of R needs the 2-unit split relu(x)-relu(-x).)
 */
ReluNetwork pwl_to_network(const PiecewiseLinear1D& f);

/**
 * Depth-2 approximation of an L-Lipschitz function that is constant outside
 * [a, b], built as the equal-partition interpolant on m = ceil(L(b-a)/eps)
 * segments. Sup error <= eps, at most ceil(L(b-a)/eps)+1 hidden units.
 */
ReluNetwork lipschitz_to_network(const std::function<double(double)>& f, double lipschitz,
                                 double a, double b, double eps);

/**
 * Depth-2 approximation of min{x^2, r^2} within eps in sup norm,
 * size <= 2 r^2 / eps + 2.
 */
ReluNetwork truncated_square_net(double r, double eps);

/**
 * Depth-2 approximation of min{max{sqrt(x), g1}, g2} within eps in sup norm,
 * with at most ceil((g2-g1)/(2 eps sqrt(g1))) + 1 hidden units. Breakpoints
 * are uniform in sqrt(x), which keeps the chord error quadratic in eps.
 */
ReluNetwork truncated_sqrt_net(double g1, double g2, double eps);

enum class ThresholdDirection {
    Falling,  // 1 below t - delta, linear ramp on [t - delta, t], 0 above t
    Rising    // 0 below t, linear ramp on [t, t + delta], 1 above t + delta
};

/** Exact 3-piece threshold ramp; depth 2, size 2, range [0, 1]. */
ReluNetwork threshold_net(double t, double delta, ThresholdDirection direction);

/** Ceiling that forgives sub-1e-9 floating-point overshoot. */
long long ceil_tol(double v);

}  // namespace topnet

#endif  // TOPNET_PWL_HPP
