#ifndef TOPNET_RELU_HPP
#define TOPNET_RELU_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace topnet {

enum class Activation { Relu, Identity };

/**
 * One affine stage of a feed-forward network: x -> act(W x + b).
 *
 * Row count of `weights` is the stage's output width, column count its
 * input width; `biases` has one entry per row.
 */
struct AffineLayer {
    Eigen::MatrixXd weights;
    Eigen::VectorXd biases;
    Activation activation = Activation::Relu;

    Eigen::Index in_width() const { return weights.cols(); }
    Eigen::Index out_width() const { return weights.rows(); }
};

/**
 * Explicit ReLU feed-forward network.
 *
 * Invariants (enforced by validate()):
 *  - layer widths chain consistently from input_dim,
 *  - every layer but the last uses ReLU, the last is an identity readout,
 *  - bias length equals weight row count in every layer.
 *
 * Values are immutable after construction; evaluation is pure.
 */
struct ReluNetwork {
    Eigen::Index input_dim = 0;
    std::vector<AffineLayer> layers;

    Eigen::Index output_dim() const { return layers.back().out_width(); }
};

/** Depth, maximum hidden width and total hidden size (sum of hidden widths). */
struct NetworkMetrics {
    int depth = 0;          // number of layers, k + 1
    Eigen::Index width = 0; // max hidden width; 0 for a pure affine map
    long long size = 0;     // sum of hidden widths; 0 for a pure affine map
};

/** Throws config_error if the network violates its structural invariants. */
void validate(const ReluNetwork& net);

/** Exact forward pass. Throws config_error on input dimension mismatch. */
Eigen::VectorXd eval(const ReluNetwork& net, const Eigen::VectorXd& x);

/** Forward pass over many inputs at once; points are columns of `xs`. */
Eigen::MatrixXd eval_batch(const ReluNetwork& net, const Eigen::MatrixXd& xs);

NetworkMetrics metrics(const ReluNetwork& net);

/** Depth-1 network computing the plain affine map x -> W x + b. */
ReluNetwork affine_network(const Eigen::MatrixXd& weights, const Eigen::VectorXd& biases);

/** Depth-1 identity map on `dim` coordinates. */
ReluNetwork identity_network(Eigen::Index dim);

/** Depth-2 network that is constantly zero on `input_dim` inputs (scalar output, empty hidden layer). */
ReluNetwork zero_network(Eigen::Index input_dim);

/**
 * Function composition outer(inner(x)).
 *
 * The inner identity readout is fused into the outer first affine stage by a
 * matrix product, so depth(result) = depth(inner) + depth(outer) - 1 and
 * size(result) = size(inner) + size(outer) exactly.
 */
ReluNetwork compose(const ReluNetwork& outer, const ReluNetwork& inner);

/**
 * Pointwise sum f + g for networks with equal input and output widths.
 *
 * Equal depths add with size(f) + size(g) exactly. A shallower operand is
 * first padded with 2-unit identity passthrough stages (x = relu(x) - relu(-x)
 * per scalar per layer); the overhead is visible as size(result) - size(f) - size(g).
 */
ReluNetwork add(const ReluNetwork& f, const ReluNetwork& g);

/**
 * Parallel stack: one network evaluating all operands on the shared input and
 * concatenating their outputs. Hidden layers are block-diagonal, so size is
 * the sum of operand sizes plus identity-padding for depth alignment.
 */
ReluNetwork parallel(const std::vector<ReluNetwork>& nets);

/**
 * Pointwise maximum of m >= 2 scalar-output networks.
 *
 * Uses the pairwise gadget max(a,b) = (a + b + |a - b|)/2 (4 ReLU units) in a
 * balanced binary tree; odd carries pass through 2-unit identity gadgets.
 * For equal-depth operands the result satisfies
 * size <= sum(sizes) + 4(2m - 1) and depth <= max depth + ceil(log2 m).
 */
ReluNetwork maximum(const std::vector<ReluNetwork>& nets);

/**
 * Extend `net` to exactly `depth` layers without changing its function,
 * inserting identity passthrough ReLU stages before the readout.
 * Each inserted stage costs 2 units per output scalar.
 */
ReluNetwork pad_to_depth(const ReluNetwork& net, int depth);

/** JSON round trip per the network file schema; bit-stable for finite doubles. */
std::string to_json_string(const ReluNetwork& net);
ReluNetwork network_from_json_string(const std::string& text);
void save_network(const ReluNetwork& net, const std::string& path);
ReluNetwork load_network(const std::string& path);

}  // namespace topnet

#endif  // TOPNET_RELU_HPP
