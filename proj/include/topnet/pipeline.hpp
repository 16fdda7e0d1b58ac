#ifndef TOPNET_PIPELINE_HPP
#define TOPNET_PIPELINE_HPP

#include <json.hpp>
#include <string>

#include "topnet/homology.hpp"
#include "topnet/indicator.hpp"
#include "topnet/nerve.hpp"
#include "topnet/sampling.hpp"
#include "topnet/shapes.hpp"

namespace topnet {

/** Configuration of one end-to-end run. */
struct PipelineConfig {
    EmbeddedSpec problem;
    long long n_train = 0;
    double nerve_radius = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    long long n_risk_samples = 0;
    std::uint64_t seed = 0;
};

void validate(const PipelineConfig& config);

struct PipelineReport {
    RiskEstimate risk;
    BettiVector betti_class1, betti_class0;
    bool recovery_class1 = false, recovery_class0 = false;
    bool risk_within_budget = false;
    bool success = false;

    long long classifier_size = 0;
    int classifier_depth = 0;
    double theorem1_size_bound = 0.0;
    long long k_simplices = 0, l_simplices = 0;
    long long prop6_size = 0;        // simplicial-map network size accounting
    long long projection_size = 0;   // n * D accounting for the projection net
    double projection_depth = 0.0;   // log2(n) + 1
    long long repaired_simplices = 0;
    bool sample_bound_satisfied = false;
    SampleBoundReport sample_bound;
    BoundReport classifier_report;
    nlohmann::json theorem2_terms;

    nlohmann::json to_json() const;
};

/**
 * Sample the embedded manifold, recover per-class homology through the Cech
 * nerve, push the vertices through the known inverse embedding to build L and
 * the vertex map, classify with the synthesized representative network, and
 * estimate the true risk of g = h o phi o p on fresh samples.
 * Betti-recovery failure is recorded in the report, not thrown.
 */
PipelineReport run_pipeline(const PipelineConfig& config);

/** The annulus-vs-disk benchmark problem in R^3 used by the acceptance runs. */
PipelineConfig annulus_vs_disk_config(std::uint64_t seed);

struct ScalingRow {
    long long beta = 0;
    int m = 0;
    long long size = 0;
    int depth = 0;
    double bound = 0.0;
    double eps_i = 0.0;
    long long member_size_sum = 0;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    double fitted_exponent = 0.0;
    bool exponent_defined = false;
    std::string csv;  // one row per beta plus a fit summary row
};

/**
 * Synthesizes representatives (disjoint ball unions, beta = m) across the
 * given Betti ladder at a fixed total eps, measures sizes, and fits the
 * log-log size-vs-beta exponent by least squares.
 */
ScalingReport scaling_experiment(const std::vector<long long>& betas, double eps, int d,
                                 std::uint64_t seed);

PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
nlohmann::json pipeline_config_to_json(const PipelineConfig& config);

}  // namespace topnet

#endif  // TOPNET_PIPELINE_HPP
