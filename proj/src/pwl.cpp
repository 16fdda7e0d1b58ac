#include "topnet/pwl.hpp"

#include <cmath>
#include <vector>

#include "topnet/errors.hpp"

namespace topnet {

void validate(const PiecewiseLinear1D& f) {
    if (f.pieces() < 1) throw config_error("piecewise function needs at least one piece");
    if (f.breakpoints.size() != f.slopes.size() - 1)
        throw config_error("piece count must be breakpoint count + 1");
    for (Eigen::Index i = 0; i + 1 < f.breakpoints.size(); ++i)
        if (!(f.breakpoints(i) < f.breakpoints(i + 1)))
            throw config_error("breakpoints must be strictly increasing");
    if (!f.breakpoints.allFinite() || !f.slopes.allFinite() || !std::isfinite(f.anchor_value))
        throw config_error("piecewise function has non-finite data");
}

double value_at(const PiecewiseLinear1D& f, double x) {
    if (f.breakpoints.size() == 0) return f.anchor_value + f.slopes(0) * x;
    // Walk from the anchor at the first breakpoint.
    double v = f.anchor_value;
    if (x <= f.breakpoints(0)) return v + f.slopes(0) * (x - f.breakpoints(0));
    for (Eigen::Index i = 0; i < f.breakpoints.size(); ++i) {
        const double right = (i + 1 < f.breakpoints.size()) ? f.breakpoints(i + 1) : x;
        const double stop = std::min(x, right);
        v += f.slopes(i + 1) * (stop - f.breakpoints(i));
        if (x <= right) return v;
        v -= f.slopes(i + 1) * (stop - f.breakpoints(i + 1));
    }
    return v;
}

PiecewiseLinear1D pwl_interpolant(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw config_error("interpolant needs at least two knots");
    PiecewiseLinear1D f;
    f.breakpoints = xs;
    f.slopes.resize(xs.size() + 1);
    f.slopes(0) = 0.0;
    for (Eigen::Index i = 0; i + 1 < xs.size(); ++i)
        f.slopes(i + 1) = (ys(i + 1) - ys(i)) / (xs(i + 1) - xs(i));
    f.slopes(xs.size()) = 0.0;
    f.anchor_value = ys(0);
    validate(f);
    return f;
}

ReluNetwork pwl_to_network(const PiecewiseLinear1D& f) {
    validate(f);
    const Eigen::Index p = f.pieces();
    std::vector<double> unit_w, unit_b, readout;
    double bias = 0.0;

    if (p == 1) {
        const double s = f.slopes(0);
        bias = f.anchor_value;
        if (s != 0.0) {
            unit_w = {1.0, -1.0};
            unit_b = {0.0, 0.0};
            readout = {s, -s};
        }
    } else if (f.slopes(0) == 0.0) {
        // f(x) = f(b1) + sum_i (s_{i+1} - s_i) relu(x - b_i)
        bias = f.anchor_value;
        for (Eigen::Index i = 0; i < p - 1; ++i) {
            const double gap = f.slopes(i + 1) - f.slopes(i);
            if (gap == 0.0) continue;
            unit_w.push_back(1.0);
            unit_b.push_back(-f.breakpoints(i));
            readout.push_back(gap);
        }
    } else if (f.slopes(p - 1) == 0.0) {
        // Mirrored form anchored at the last breakpoint.
        bias = value_at(f, f.breakpoints(p - 2));
        for (Eigen::Index i = 0; i < p - 1; ++i) {
            const double gap = f.slopes(i + 1) - f.slopes(i);
            if (gap == 0.0) continue;
            unit_w.push_back(-1.0);
            unit_b.push_back(f.breakpoints(i));
            readout.push_back(gap);
        }
    } else {
        // General case: relu(b1 - x) carries the leftmost slope, then the
        // coefficient on relu(x - b1) becomes s2 and the rest are slope gaps.
        bias = f.anchor_value;
        unit_w.push_back(-1.0);
        unit_b.push_back(f.breakpoints(0));
        readout.push_back(-f.slopes(0));
        if (f.slopes(1) != 0.0) {
            unit_w.push_back(1.0);
            unit_b.push_back(-f.breakpoints(0));
            readout.push_back(f.slopes(1));
        }
        for (Eigen::Index i = 1; i < p - 1; ++i) {
            const double gap = f.slopes(i + 1) - f.slopes(i);
            if (gap == 0.0) continue;
            unit_w.push_back(1.0);
            unit_b.push_back(-f.breakpoints(i));
            readout.push_back(gap);
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(unit_w.size());
    ReluNetwork net;
    net.input_dim = 1;
    AffineLayer hidden;
    hidden.weights.resize(n, 1);
    hidden.biases.resize(n);
    hidden.activation = Activation::Relu;
    AffineLayer out;
    out.weights.resize(1, n);
    out.biases = Eigen::VectorXd::Constant(1, bias);
    out.activation = Activation::Identity;
    for (Eigen::Index i = 0; i < n; ++i) {
        hidden.weights(i, 0) = unit_w[i];
        hidden.biases(i) = unit_b[i];
        out.weights(0, i) = readout[i];
    }
    net.layers = {std::move(hidden), std::move(out)};
    validate(net);
    return net;
}

long long ceil_tol(double v) {
    const double c = std::ceil(v - 1e-9);
    return static_cast<long long>(c);
}

ReluNetwork lipschitz_to_network(const std::function<double(double)>& f, double lipschitz,
                                 double a, double b, double eps) {
    if (eps <= 0.0) throw config_error("lipschitz_to_network: eps must be positive");
    if (!(a < b)) throw config_error("lipschitz_to_network: need a < b");
    if (lipschitz < 0.0) throw config_error("lipschitz_to_network: negative Lipschitz constant");
    const long long m = std::max<long long>(1, ceil_tol(lipschitz * (b - a) / eps));
    Eigen::VectorXd xs(m + 1), ys(m + 1);
    for (long long i = 0; i <= m; ++i) {
        xs(i) = a + (b - a) * static_cast<double>(i) / static_cast<double>(m);
        ys(i) = f(xs(i));
    }
    return pwl_to_network(pwl_interpolant(xs, ys));
}

ReluNetwork truncated_square_net(double r, double eps) {
    if (r <= 0.0 || eps <= 0.0) throw config_error("truncated_square_net: r and eps must be positive");
    const long long m = std::max<long long>(1, ceil_tol(2.0 * r * r / eps));
    Eigen::VectorXd xs(m + 1), ys(m + 1);
    for (long long i = 0; i <= m; ++i) {
        const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(m);
        xs(i) = x;
        ys(i) = x * x;
    }
    ys(0) = r * r;  // pin the plateau exactly despite rounding of the knots
    ys(m) = r * r;
    return pwl_to_network(pwl_interpolant(xs, ys));
}

ReluNetwork truncated_sqrt_net(double g1, double g2, double eps) {
    if (!(0.0 < g1 && g1 < g2)) throw config_error("truncated_sqrt_net: need 0 < g1 < g2");
    if (eps <= 0.0) throw config_error("truncated_sqrt_net: eps must be positive");
    const long long m = std::max<long long>(1, ceil_tol((g2 - g1) / (2.0 * eps * std::sqrt(g1))));
    Eigen::VectorXd xs(m + 1), ys(m + 1);
    for (long long i = 0; i <= m; ++i) {
        const double y = g1 + (g2 - g1) * static_cast<double>(i) / static_cast<double>(m);
        xs(i) = y * y;
        ys(i) = y;
    }
    return pwl_to_network(pwl_interpolant(xs, ys));
}

ReluNetwork threshold_net(double t, double delta, ThresholdDirection direction) {
    if (delta <= 0.0) throw config_error("threshold_net: delta must be positive");
    PiecewiseLinear1D f;
    f.breakpoints.resize(2);
    f.slopes.resize(3);
    if (direction == ThresholdDirection::Falling) {
        f.breakpoints << t - delta, t;
        f.slopes << 0.0, -1.0 / delta, 0.0;
        f.anchor_value = 1.0;
    } else {
        f.breakpoints << t, t + delta;
        f.slopes << 0.0, 1.0 / delta, 0.0;
        f.anchor_value = 0.0;
    }
    return pwl_to_network(f);
}

}  // namespace topnet
