#ifndef TOPNET_NERVE_HPP
#define TOPNET_NERVE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "topnet/homology.hpp"
#include "topnet/shapes.hpp"

namespace topnet {

/** Minimum enclosing ball of a point set (columns of `points`). */
struct Miniball {
    Eigen::VectorXd center;
    double radius = 0.0;
};

/** Welzl's move-to-front algorithm; exact for the small sets nerve tests need. */
Miniball miniball(const Eigen::MatrixXd& points);

/**
 * Cech complex at radius r: a simplex enters iff the minimum enclosing ball
 * of its vertices has radius <= r. Built by clique expansion of the
 * 2r-proximity graph up to max_dim; face-closed by construction.
 */
SimplicialComplex cech_complex(const Eigen::MatrixXd& points, double r, int max_dim);

/** Vietoris-Rips at radius r: all pairwise distances <= 2r, clique expansion. */
SimplicialComplex rips_complex(const Eigen::MatrixXd& points, double r, int max_dim);

/**
 * 2D alpha complex at radius r: Delaunay triangulation (incremental
 * Bowyer-Watson) filtered by the standard alpha value (triangles by
 * circumradius, edges by the Gabriel rule). Near-degenerate inputs are
 * retried under a deterministic per-index perturbation of 1e-9.
 * Throws config_error unless the points are 2-dimensional.
 */
SimplicialComplex alpha_complex_2d(const Eigen::MatrixXd& points, double r);

/** Evaluated sampling bound of the homology-recovery guarantee. */
struct SampleBoundReport {
    long long n_required = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    // echoed inputs
    double vol = 0.0;
    int d = 0;
    double tau = 0.0;
    double eps = 0.0;
    double delta = 0.0;
};

/**
 * n > lambda1 (log lambda2 + log(1/delta)) with
 * lambda1 = vol / (cos^d(theta1) vol(B^d_{eps/4})),
 * lambda2 = vol / (cos^d(theta2) vol(B^d_{eps/8})),
 * theta1 = arcsin(eps/(8 tau)), theta2 = arcsin(eps/(16 tau)).
 * Requires 0 < eps < tau/2 and 0 < delta < 1.
 */
SampleBoundReport sample_size_bound(double vol, int d, double tau, double eps, double delta);

/**
 * Sampling domain of a recovery experiment: either the solid union of a
 * representative, or a bare circle (spine of a 2D annulus).
 */
struct ManifoldSampler {
    enum class Kind { Solid, Circle };
    Kind kind = Kind::Solid;
    std::optional<RepresentativeSpec> solid;
    double circle_radius = 1.0;
    Eigen::Vector2d circle_center = Eigen::Vector2d::Zero();
    int intrinsic_dim = 1;
    std::vector<long long> betti_truth;

    static ManifoldSampler circle(double radius);
    static ManifoldSampler from_representative(const RepresentativeSpec& spec, int intrinsic_dim);
};

Eigen::MatrixXd sample_manifold(const ManifoldSampler& m, long long n, std::uint64_t seed);

struct RecoveryTrial {
    bool success = false;
    BettiVector betti;
};

/**
 * Sample n points on the manifold, build Cech(r) with max_dim = intrinsic
 * dimension + 1, and compare Betti numbers with the declared ground truth.
 */
RecoveryTrial homology_recovery_trial(const ManifoldSampler& m, long long n, double r,
                                      std::uint64_t seed);

}  // namespace topnet

#endif  // TOPNET_NERVE_HPP
