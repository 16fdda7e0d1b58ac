#include "topnet/indicator.hpp"

#include <cmath>

#include "topnet/errors.hpp"
#include "topnet/geometry.hpp"
#include "topnet/pwl.hpp"
#include "topnet/rng.hpp"

namespace topnet {

nlohmann::json BoundReport::to_json() const {
    return {{"constructed_size", constructed_size},
            {"constructed_depth", constructed_depth},
            {"paper_size_bound", paper_size_bound},
            {"paper_depth_bound", paper_depth_bound},
            {"eps_budget", eps_budget},
            {"delta_shell", delta_shell},
            {"padding_units", padding_units},
            {"overlap_flag", overlap_flag},
            {"size_to_theory_ratio", size_to_theory_ratio},
            {"terms", terms}};
}

double ball_size_bound(int d, double r, double eps) {
    return 4.0 * d * d * r * r / eps + 2.0 * d + 2.0;
}

double torus_size_bound(int d, double r, double R, double eps) {
    return 2.0 * d / eps * (4.0 * (d - 1) * (R + r) * (R + r) + 8.0 * r * r + r / std::sqrt(R - r)) +
           9.0;
}

namespace {

/** Depth-1 network selecting one shifted coordinate: x -> x_i - c_i. */
ReluNetwork coordinate_selector(int d, int i, double shift) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(1, d);
    w(0, i) = 1.0;
    return affine_network(w, Eigen::VectorXd::Constant(1, -shift));
}

/** Depth-2 exact scalar identity, relu(x) - relu(-x); 2 hidden units. */
ReluNetwork identity_passthrough_1d() {
    PiecewiseLinear1D id;
    id.breakpoints.resize(0);
    id.slopes = Eigen::VectorXd::Constant(1, 1.0);
    id.anchor_value = 0.0;
    return pwl_to_network(id);
}

void check_size_bound(const BoundReport& report, const char* what) {
    if (report.constructed_size > static_cast<long long>(std::ceil(report.paper_size_bound)))
        throw certification_error(std::string(what) + ": constructed size " +
                                  std::to_string(report.constructed_size) + " exceeds bound " +
                                  std::to_string(report.paper_size_bound));
}

}  // namespace

SynthesizedNetwork ball_network(int d, double r, const Eigen::VectorXd& c, double eps,
                                const MeasureSpec& measure) {
    if (d < 1) throw config_error("ball_network: need d >= 1");
    if (r <= 0.0 || eps <= 0.0) throw config_error("ball_network: r and eps must be positive");
    if (c.size() != d) throw config_error("ball_network: center has wrong dimension");

    const double eps_block = eps / (2.0 * d);
    ReluNetwork sum;
    long long block_size = 0;
    for (int i = 0; i < d; ++i) {
        ReluNetwork block = compose(truncated_square_net(r, eps_block), coordinate_selector(d, i, c(i)));
        if (i == 0) block_size = metrics(block).size;
        sum = (i == 0) ? block : add(sum, block);
    }

    const RepresentativeSpec shape = single_ball(d, r, c);
    const double delta = shell_delta(shape, eps / 2.0, measure);
    ReluNetwork net = compose(threshold_net(r * r, delta, ThresholdDirection::Falling), sum);

    SynthesizedNetwork out;
    out.net = std::move(net);
    const NetworkMetrics m = metrics(out.net);
    out.report.constructed_size = m.size;
    out.report.constructed_depth = m.depth;
    out.report.paper_size_bound = ball_size_bound(d, r, eps);
    out.report.paper_depth_bound = 3;
    out.report.eps_budget = eps;
    out.report.delta_shell = delta;
    out.report.terms = {{"d", d},
                        {"r", r},
                        {"eps_block", eps_block},
                        {"block_size", block_size},
                        {"block_count", d},
                        {"threshold_size", 2},
                        {"size_bound_terms",
                         {{"4d2r2_over_eps", 4.0 * d * d * r * r / eps}, {"2d", 2.0 * d}, {"const", 2.0}}}};
    check_size_bound(out.report, "ball_network");
    if (m.depth != 3) throw certification_error("ball_network: depth is not 3");
    return out;
}

SynthesizedNetwork torus_network(int d, double r, double R, const Eigen::VectorXd& c, double eps,
                                 const MeasureSpec& measure) {
    if (d < 2) throw config_error("torus_network: need d >= 2");
    if (!(R > r && r > 0.0)) throw config_error("torus_network: need R > r > 0");
    if (eps <= 0.0) throw config_error("torus_network: eps must be positive");
    if (c.size() != d) throw config_error("torus_network: center has wrong dimension");

    const double eps_block = eps / (2.0 * d);

    // Stage 1: spine truncated squares summed, axial coordinate passed through.
    ReluNetwork spine_sum;
    long long spine_block_size = 0;
    for (int i = 0; i + 1 < d; ++i) {
        ReluNetwork block =
            compose(truncated_square_net(R + r, eps_block), coordinate_selector(d, i, c(i)));
        if (i == 0) spine_block_size = metrics(block).size;
        spine_sum = (i == 0) ? block : add(spine_sum, block);
    }
    ReluNetwork axial_pass = compose(identity_passthrough_1d(), coordinate_selector(d, d - 1, c(d - 1)));
    ReluNetwork stage1 = parallel({spine_sum, axial_pass});  // outputs (u, v)

    // Stage 2: u -> l2(u; R-r, R+r), v passes through.
    ReluNetwork sqrt_block = truncated_sqrt_net(R - r, R + r, eps_block);
    const long long sqrt_size = metrics(sqrt_block).size;
    Eigen::MatrixXd sel_u = Eigen::MatrixXd::Zero(1, 2);
    sel_u(0, 0) = 1.0;
    Eigen::MatrixXd sel_v = Eigen::MatrixXd::Zero(1, 2);
    sel_v(0, 1) = 1.0;
    ReluNetwork stage2 =
        parallel({compose(sqrt_block, affine_network(sel_u, Eigen::VectorXd::Zero(1))),
                  compose(identity_passthrough_1d(), affine_network(sel_v, Eigen::VectorXd::Zero(1)))});

    // Stage 3: l1(w - R; r) + l1(v; r).
    ReluNetwork radial_block =
        compose(truncated_square_net(r, eps_block), affine_network(sel_u, Eigen::VectorXd::Constant(1, -R)));
    ReluNetwork axial_block =
        compose(truncated_square_net(r, eps_block), affine_network(sel_v, Eigen::VectorXd::Zero(1)));
    const long long tube_block_size = metrics(radial_block).size;
    ReluNetwork stage3 = add(radial_block, axial_block);

    ReluNetwork body = compose(stage3, compose(stage2, stage1));

    const RepresentativeSpec shape = single_torus(d, r, R, c);
    const double delta = shell_delta(shape, eps / 2.0, measure);
    ReluNetwork net = compose(threshold_net(r * r, delta, ThresholdDirection::Falling), body);

    SynthesizedNetwork out;
    out.net = std::move(net);
    const NetworkMetrics m = metrics(out.net);
    out.report.constructed_size = m.size;
    out.report.constructed_depth = m.depth;
    out.report.paper_size_bound = torus_size_bound(d, r, R, eps);
    out.report.paper_depth_bound = 5;
    out.report.eps_budget = eps;
    out.report.delta_shell = delta;
    out.report.terms = {{"d", d},
                        {"r", r},
                        {"R", R},
                        {"eps_block", eps_block},
                        {"spine_block_size", spine_block_size},
                        {"spine_block_count", d - 1},
                        {"sqrt_block_size", sqrt_size},
                        {"tube_block_size", tube_block_size},
                        {"passthrough_units", 4},
                        {"threshold_size", 2}};
    check_size_bound(out.report, "torus_network");
    if (m.depth != 5) throw certification_error("torus_network: depth is not 5");
    return out;
}

SynthesizedNetwork union_network(const std::vector<std::pair<ReluNetwork, double>>& members) {
    if (members.empty()) throw config_error("union_network: need at least one member");
    long long member_sizes = 0;
    int max_depth = 0;
    double eps_total = 0.0;
    ReluNetwork sum;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const ReluNetwork& n = members[i].first;
        if (n.output_dim() != 1) throw config_error("union_network: members must be scalar");
        member_sizes += metrics(n).size;
        max_depth = std::max(max_depth, metrics(n).depth);
        eps_total += members[i].second;
        sum = (i == 0) ? n : add(sum, n);
    }
    // Rising ramp: 0 at sum <= 0, identity on (0,1), 1 at sum >= 1. A single
    // fully-on member saturates the union; shell values pass unamplified.
    ReluNetwork net = compose(threshold_net(0.0, 1.0, ThresholdDirection::Rising), sum);

    SynthesizedNetwork out;
    out.net = std::move(net);
    const NetworkMetrics m = metrics(out.net);
    out.report.constructed_size = m.size;
    out.report.constructed_depth = m.depth;
    out.report.padding_units = m.size - member_sizes - 2;
    out.report.paper_size_bound =
        static_cast<double>(member_sizes + out.report.padding_units + 2);
    out.report.paper_depth_bound = max_depth + 2;
    out.report.eps_budget = eps_total;
    out.report.terms = {{"member_sizes", member_sizes},
                        {"members", members.size()},
                        {"threshold_size", 2},
                        {"padding_units", out.report.padding_units}};
    check_size_bound(out.report, "union_network");
    return out;
}

namespace {

bool shapes_overlap(const BallSpec& a, const BallSpec& b) {
    return (a.c - b.c).norm() < a.r + b.r;
}

bool shapes_overlap(const BallSpec& a, const TorusSpec& b) {
    return std::sqrt(torus_quadratic(b, a.c)) < b.r + a.r;
}

bool shapes_overlap(const TorusSpec& a, const TorusSpec& b) {
    RepresentativeSpec wrap_a;
    wrap_a.tori.push_back(a);
    const SampleBatch pts = sample_uniform(wrap_a, 500, 0x70707ULL);
    for (Eigen::Index j = 0; j < pts.points.cols(); ++j)
        if (contains(b, pts.points.col(j))) return true;
    return false;
}

bool any_overlap(const RepresentativeSpec& spec) {
    for (std::size_t i = 0; i < spec.balls.size(); ++i)
        for (std::size_t j = i + 1; j < spec.balls.size(); ++j)
            if (shapes_overlap(spec.balls[i], spec.balls[j])) return true;
    for (const BallSpec& b : spec.balls)
        for (const TorusSpec& t : spec.tori)
            if (shapes_overlap(b, t)) return true;
    for (std::size_t i = 0; i < spec.tori.size(); ++i)
        for (std::size_t j = i + 1; j < spec.tori.size(); ++j)
            if (shapes_overlap(spec.tori[i], spec.tori[j])) return true;
    return false;
}

}  // namespace

SynthesizedNetwork representative_network(const RepresentativeSpec& spec, double eps,
                                          const MeasureSpec& measure) {
    const int m = spec.components();
    if (m < 1) throw config_error("representative_network: empty representative");
    if (eps <= 0.0) throw config_error("representative_network: eps must be positive");
    const int d = spec.dim();
    const double eps_i = eps / static_cast<double>(m);

    std::vector<std::pair<ReluNetwork, double>> members;
    nlohmann::json member_terms = nlohmann::json::array();
    double bound_sum = 0.0;
    double max_depth_bound = 0.0;
    for (const BallSpec& b : spec.balls) {
        SynthesizedNetwork s = ball_network(b.d, b.r, b.c, eps_i, measure);
        member_terms.push_back({{"type", "ball"},
                                {"size", s.report.constructed_size},
                                {"bound", s.report.paper_size_bound},
                                {"eps_i", eps_i},
                                {"delta", s.report.delta_shell}});
        bound_sum += s.report.paper_size_bound;
        max_depth_bound = std::max(max_depth_bound, s.report.paper_depth_bound);
        members.emplace_back(std::move(s.net), eps_i);
    }
    for (const TorusSpec& t : spec.tori) {
        SynthesizedNetwork s = torus_network(t.d, t.r, t.R, t.c, eps_i, measure);
        member_terms.push_back({{"type", "torus"},
                                {"size", s.report.constructed_size},
                                {"bound", s.report.paper_size_bound},
                                {"eps_i", eps_i},
                                {"delta", s.report.delta_shell}});
        bound_sum += s.report.paper_size_bound;
        max_depth_bound = std::max(max_depth_bound, s.report.paper_depth_bound);
        members.emplace_back(std::move(s.net), eps_i);
    }

    SynthesizedNetwork out = union_network(members);
    long long beta = 0;
    if (spec.betti) {
        for (long long b : *spec.betti) beta += b;
    } else {
        beta = static_cast<long long>(spec.balls.size()) + 2 * static_cast<long long>(spec.tori.size());
    }
    out.report.paper_size_bound = bound_sum + 2.0 + static_cast<double>(out.report.padding_units);
    out.report.paper_depth_bound = max_depth_bound + 2.0;
    out.report.eps_budget = eps;
    out.report.overlap_flag = any_overlap(spec);
    out.report.size_to_theory_ratio =
        static_cast<double>(out.report.constructed_size) /
        (static_cast<double>(d) * d * static_cast<double>(beta) * static_cast<double>(beta) / eps);
    out.report.terms = {{"members", member_terms},
                        {"m", m},
                        {"eps_i", eps_i},
                        {"beta", beta},
                        {"union_overhead", 2},
                        {"padding_units", out.report.padding_units},
                        {"theorem1_bound", out.report.paper_size_bound}};
    check_size_bound(out.report, "representative_network");
    return out;
}

nlohmann::json theoretical_size_bounds(int d, int D, long long beta, double eps, double tau,
                                       double delta, long long k, long long l) {
    if (d < 1 || D < 1 || beta < 1) throw config_error("theoretical_size_bounds: bad dimensions");
    if (eps <= 0.0 || tau <= 0.0 || tau >= 1.0 + 1e-12 || delta <= 0.0 || delta >= 1.0)
        throw config_error("theoretical_size_bounds: need eps > 0, 0 < tau < 1, 0 < delta < 1");
    const double log_inv = std::log(1.0 / (tau * delta));
    const double size_topology = static_cast<double>(d) * d * static_cast<double>(beta) *
                                 static_cast<double>(beta) / eps;
    const double size_phi = std::pow(tau, -0.5 * d * d) * std::pow(log_inv, 0.5 * d);
    const double n_term = std::pow(tau, -static_cast<double>(d)) * log_inv;
    const double size_proj = static_cast<double>(D) * n_term;
    nlohmann::json j{{"depth_log_beta", std::log(static_cast<double>(beta))},
                     {"depth_geometry", d * std::log(1.0 / tau)},
                     {"depth_loglog", log_inv > 1.0 ? std::log(log_inv) : 0.0},
                     {"size_topology_term", size_topology},
                     {"size_simplicial_map_term", size_phi},
                     {"size_projection_term", size_proj},
                     {"n_asymptotic_term", n_term},
                     {"inputs", {{"d", d}, {"D", D}, {"beta", beta}, {"eps", eps}, {"tau", tau}, {"delta", delta}}}};
    if (k > 0 || l > 0) j["prop6_size"] = simplicial_net_size(D, d, k, l);
    return j;
}

}  // namespace topnet
