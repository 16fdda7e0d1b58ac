#ifndef TOPNET_SAMPLING_HPP
#define TOPNET_SAMPLING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "topnet/relu.hpp"
#include "topnet/shapes.hpp"

namespace topnet {

/** Monte-Carlo estimate of the true risk with its standard error. */
struct RiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;
    std::uint64_t seed = 0;
};

/** Result of a rejection-sampling run: points are columns. */
struct SampleBatch {
    Eigen::MatrixXd points;
    double acceptance_rate = 1.0;
};

/**
 * Binary classification problem: class-1 shape, optional class-0 shape, and
 * the measure the risk integral runs over. A box measure integrates over the
 * ambient box; uniform-on-shapes integrates over M1 (union M0) with the
 * area-weighted uniform distribution.
 */
struct ClassificationProblem {
    RepresentativeSpec m1;
    std::optional<RepresentativeSpec> m0;
    MeasureSpec measure;
};

/** n uniform points in the box, deterministic per seed. */
Eigen::MatrixXd sample_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, long long n,
                           std::uint64_t seed);

/**
 * n uniform points on the solid shape, by rejection from its tight bounding
 * box. Throws certification_error if the acceptance rate drops under 1e-4.
 */
SampleBatch sample_uniform(const RepresentativeSpec& shape, long long n, std::uint64_t seed);

/** Uniform points on the problem's measure, with class-1 indicator labels. */
struct LabelledSample {
    Eigen::MatrixXd points;
    Eigen::VectorXd labels;
    double acceptance_rate = 1.0;
};
LabelledSample sample_problem(const ClassificationProblem& problem, long long n, std::uint64_t seed);

/** Batch classifier interface: points as columns in, one value per column out. */
using BatchClassifier = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

/**
 * Monte-Carlo estimate of R(h) = integral (h - I_{M1})^2 dmu, sharded into
 * `shards` independent streams merged by Welford combination; bitwise
 * reproducible for a fixed shard count.
 */
RiskEstimate monte_carlo_risk(const BatchClassifier& h, const ClassificationProblem& problem,
                              long long n, std::uint64_t seed, int shards = 8);
RiskEstimate monte_carlo_risk(const ReluNetwork& net, const ClassificationProblem& problem,
                              long long n, std::uint64_t seed, int shards = 8);

/** Any ball or torus of the representative within `delta` of its boundary shell. */
bool in_shell(const RepresentativeSpec& shape, const Eigen::VectorXd& x, double delta);

/**
 * Shell width delta > 0 whose boundary shell has measure at most eps2.
 *
 * Analytic for uniform-box measures (ball annulus volume; torus tube-shell
 * bound); Monte-Carlo bisection with safety factor 2 for uniform-on-shapes.
 * The result is always recertified by an independent Monte-Carlo measure
 * estimate; failure to certify throws certification_error.
 */
double shell_delta(const RepresentativeSpec& shape, double eps2, const MeasureSpec& measure,
                   const std::optional<RepresentativeSpec>& m0 = std::nullopt,
                   std::uint64_t seed = 0x5eed5eedULL);

/** Point-cloud CSV with header "x0,...,x{D-1},label". */
void write_point_cloud_csv(const std::string& path, const Eigen::MatrixXd& points,
                           const Eigen::VectorXd& labels);
struct PointCloudCsv {
    Eigen::MatrixXd points;
    Eigen::VectorXd labels;
};
PointCloudCsv read_point_cloud_csv(const std::string& path);

}  // namespace topnet

#endif  // TOPNET_SAMPLING_HPP
