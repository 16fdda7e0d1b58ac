#include "topnet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "topnet/errors.hpp"
#include "topnet/rng.hpp"

namespace topnet {

Eigen::MatrixXd sample_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, long long n,
                           std::uint64_t seed) {
    if (n < 1) throw config_error("sample_box: need n >= 1");
    SplitMix64 rng(seed);
    Eigen::MatrixXd pts(lo.size(), n);
    for (long long j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < lo.size(); ++i) pts(i, j) = rng.uniform(lo(i), hi(i));
    return pts;
}

SampleBatch sample_uniform(const RepresentativeSpec& shape, long long n, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_uniform: need n >= 1");
    const Box box = bounding_box(shape);
    SplitMix64 rng(seed);
    Eigen::MatrixXd pts(box.lo.size(), n);
    Eigen::VectorXd x(box.lo.size());
    long long accepted = 0, attempts = 0;
    const long long attempt_budget = std::max<long long>(1000000, n * 20000);
    while (accepted < n) {
        if (++attempts > attempt_budget)
            throw certification_error("sample_uniform: acceptance rate below 1e-4, geometry too thin");
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(box.lo(i), box.hi(i));
        if (contains(shape, x)) pts.col(accepted++) = x;
    }
    return {std::move(pts), static_cast<double>(accepted) / static_cast<double>(attempts)};
}

LabelledSample sample_problem(const ClassificationProblem& problem, long long n, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_problem: need n >= 1");
    LabelledSample out;
    if (problem.measure.kind == MeasureSpec::Kind::UniformBox) {
        out.points = sample_box(problem.measure.lo, problem.measure.hi, n, seed);
        out.labels.resize(n);
        for (long long j = 0; j < n; ++j)
            out.labels(j) = contains(problem.m1, out.points.col(j)) ? 1.0 : 0.0;
        return out;
    }
    // Uniform on the union M1 (cup M0): rejection from the merged box gives
    // the volume-weighted mixture without explicit component volumes.
    Box box = bounding_box(problem.m1);
    if (problem.m0) box = merge(box, bounding_box(*problem.m0));
    SplitMix64 rng(seed);
    out.points.resize(box.lo.size(), n);
    out.labels.resize(n);
    Eigen::VectorXd x(box.lo.size());
    long long accepted = 0, attempts = 0;
    const long long attempt_budget = std::max<long long>(1000000, n * 20000);
    while (accepted < n) {
        if (++attempts > attempt_budget)
            throw certification_error("sample_problem: acceptance rate below 1e-4");
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(box.lo(i), box.hi(i));
        const bool in1 = contains(problem.m1, x);
        const bool in0 = problem.m0 && contains(*problem.m0, x);
        if (!in1 && !in0) continue;
        out.points.col(accepted) = x;
        out.labels(accepted) = in1 ? 1.0 : 0.0;
        ++accepted;
    }
    out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(attempts);
    return out;
}

namespace {

struct Welford {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++n;
        const double d1 = v - mean;
        mean += d1 / static_cast<double>(n);
        m2 += d1 * (v - mean);
    }

    /** Chan et al. parallel combination; deterministic for a fixed merge order. */
    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double delta = o.mean - mean;
        const long long total = n + o.n;
        m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) /
                         static_cast<double>(total);
        mean += delta * static_cast<double>(o.n) / static_cast<double>(total);
        n = total;
    }
};

}  // namespace

RiskEstimate monte_carlo_risk(const BatchClassifier& h, const ClassificationProblem& problem,
                              long long n, std::uint64_t seed, int shards) {
    if (n < 100) throw config_error("monte_carlo_risk: need n >= 100");
    if (shards < 1) throw config_error("monte_carlo_risk: need at least one shard");
    Welford acc;
    const long long base = n / shards, extra = n % shards;
    for (int s = 0; s < shards; ++s) {
        const long long ns = base + (s < extra ? 1 : 0);
        if (ns == 0) continue;
        const LabelledSample batch = sample_problem(problem, ns, derive_stream(seed, s));
        const Eigen::VectorXd values = h(batch.points);
        Welford shard;
        for (long long j = 0; j < ns; ++j) {
            const double e = values(j) - batch.labels(j);
            shard.push(e * e);
        }
        acc.merge(shard);
    }
    RiskEstimate est;
    est.mean = acc.mean;
    est.std_error = acc.n > 1 ? std::sqrt(acc.m2 / (static_cast<double>(acc.n - 1) * acc.n)) : 0.0;
    est.n_samples = acc.n;
    est.seed = seed;
    return est;
}

RiskEstimate monte_carlo_risk(const ReluNetwork& net, const ClassificationProblem& problem,
                              long long n, std::uint64_t seed, int shards) {
    BatchClassifier h = [&net](const Eigen::MatrixXd& pts) {
        return Eigen::VectorXd(eval_batch(net, pts).row(0).transpose());
    };
    return monte_carlo_risk(h, problem, n, seed, shards);
}

bool in_shell(const RepresentativeSpec& shape, const Eigen::VectorXd& x, double delta) {
    for (const BallSpec& b : shape.balls) {
        const double q = (x - b.c).squaredNorm();
        if (q >= b.r * b.r - delta && q <= b.r * b.r) return true;
    }
    for (const TorusSpec& t : shape.tori) {
        const double q = torus_quadratic(t, x);
        if (q >= t.r * t.r - delta && q <= t.r * t.r) return true;
    }
    return false;
}

namespace {

/** Surface area of the unit (k)-sphere S^k in R^{k+1}. */
double sphere_area(int k) {
    return 2.0 * std::pow(M_PI, (k + 1) / 2.0) / std::tgamma((k + 1) / 2.0);
}

double min_shell_quadratic(const RepresentativeSpec& shape) {
    double m = std::numeric_limits<double>::infinity();
    for (const BallSpec& b : shape.balls) m = std::min(m, b.r * b.r);
    for (const TorusSpec& t : shape.tori) m = std::min(m, t.r * t.r);
    return m;
}

/** Upper bound on the shell volume of one component at width delta. */
double shell_volume_bound(const BallSpec& b, double delta) {
    const double inner_sq = std::max(0.0, b.r * b.r - delta);
    return ball_volume(b.d, b.r) -
           (inner_sq > 0.0 ? ball_volume(b.d, std::sqrt(inner_sq)) : 0.0);
}

double shell_volume_bound(const TorusSpec& t, double delta) {
    // Tube cross-section area shrinks from pi r^2 to pi (r^2 - delta); the
    // radial factor is bounded by (R + r)^{d-2} on the tube.
    const double cross = M_PI * std::min(delta, t.r * t.r);
    return sphere_area(t.d - 2) * std::pow(t.R + t.r, t.d - 2) * cross;
}

double shell_measure_estimate(const RepresentativeSpec& shape, double delta,
                              const MeasureSpec& measure,
                              const std::optional<RepresentativeSpec>& m0, long long n,
                              std::uint64_t seed, double* std_error) {
    ClassificationProblem problem{shape, m0, measure};
    const LabelledSample batch = sample_problem(problem, n, seed);
    long long hits = 0;
    for (long long j = 0; j < batch.points.cols(); ++j)
        if (in_shell(shape, batch.points.col(j), delta)) ++hits;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    if (std_error) *std_error = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
    return p;
}

}  // namespace

double shell_delta(const RepresentativeSpec& shape, double eps2, const MeasureSpec& measure,
                   const std::optional<RepresentativeSpec>& m0, std::uint64_t seed) {
    if (eps2 <= 0.0) throw config_error("shell_delta: eps2 must be positive");
    const double cap = min_shell_quadratic(shape);
    const int m = shape.components();
    double delta;

    if (measure.kind == MeasureSpec::Kind::UniformBox) {
        const double budget = eps2 * measure.box_volume() / static_cast<double>(m);
        delta = cap;
        for (const BallSpec& b : shape.balls) {
            // Solve vol(ball r) - vol(ball sqrt(r^2 - delta)) = budget for delta.
            const double excess = ball_volume(b.d, b.r) - budget;
            double db = b.r * b.r;
            if (excess > 0.0) {
                const double inner = std::pow(excess / ball_volume(b.d, 1.0), 2.0 / b.d);
                db = b.r * b.r - inner;
            }
            delta = std::min(delta, db);
        }
        for (const TorusSpec& t : shape.tori) {
            const double dt = budget / (sphere_area(t.d - 2) * std::pow(t.R + t.r, t.d - 2) * M_PI);
            delta = std::min(delta, std::min(dt, t.r * t.r));
        }
    } else {
        // Monte-Carlo bisection targeting eps2 / 2 (safety factor 2).
        const long long n_probe = 40000;
        double lo = 0.0, hi = cap;
        if (shell_measure_estimate(shape, hi, measure, m0, n_probe, derive_stream(seed, 1), nullptr) <=
            eps2 / 2.0) {
            delta = hi;
        } else {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double p = shell_measure_estimate(shape, mid, measure, m0, n_probe,
                                                        derive_stream(seed, 2 + it), nullptr);
                if (p <= eps2 / 2.0) lo = mid;
                else hi = mid;
            }
            delta = lo;
            if (delta <= 0.0)
                throw certification_error("shell_delta: could not certify a positive shell width");
        }
    }

    if (delta <= 0.0) throw certification_error("shell_delta: non-positive shell width");

    // Independent recertification.
    double se = 0.0;
    const double measured = shell_measure_estimate(shape, delta, measure, m0, 60000,
                                                   derive_stream(seed, 101), &se);
    if (measured > eps2 + 3.0 * se)
        throw certification_error("shell_delta: recertification failed (measured " +
                                  std::to_string(measured) + " > eps2 " + std::to_string(eps2) + ")");
    return delta;
}

void write_point_cloud_csv(const std::string& path, const Eigen::MatrixXd& points,
                           const Eigen::VectorXd& labels) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path + " for writing");
    for (Eigen::Index i = 0; i < points.rows(); ++i) out << "x" << i << ",";
    out << "label\n";
    out.precision(17);
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        for (Eigen::Index i = 0; i < points.rows(); ++i) out << points(i, j) << ",";
        out << (labels.size() > j ? labels(j) : 0.0) << "\n";
    }
}

PointCloudCsv read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw config_error("empty point cloud file");
    const Eigen::Index dim = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ','));
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> labels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        Eigen::VectorXd x(dim);
        std::string tok;
        for (Eigen::Index i = 0; i < dim; ++i) {
            std::getline(ss, tok, ',');
            x(i) = std::stod(tok);
        }
        std::getline(ss, tok, ',');
        pts.push_back(x);
        labels.push_back(std::stod(tok));
    }
    PointCloudCsv cloud;
    cloud.points.resize(dim, static_cast<Eigen::Index>(pts.size()));
    cloud.labels.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t j = 0; j < pts.size(); ++j) {
        cloud.points.col(static_cast<Eigen::Index>(j)) = pts[j];
        cloud.labels(static_cast<Eigen::Index>(j)) = labels[j];
    }
    return cloud;
}

}  // namespace topnet
