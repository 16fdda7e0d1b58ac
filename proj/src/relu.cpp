#include "topnet/relu.hpp"

#include <fstream>
#include <json.hpp>

#include "topnet/errors.hpp"

namespace topnet {

void validate(const ReluNetwork& net) {
    if (net.input_dim <= 0) throw config_error("network input_dim must be positive");
    if (net.layers.empty()) throw config_error("network needs at least one layer");
    Eigen::Index width = net.input_dim;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const AffineLayer& layer = net.layers[i];
        if (layer.weights.cols() != width)
            throw config_error("layer " + std::to_string(i) + " expects input width " +
                               std::to_string(layer.weights.cols()) + ", got " + std::to_string(width));
        if (layer.biases.size() != layer.weights.rows())
            throw config_error("layer " + std::to_string(i) + " bias length does not match row count");
        const bool last = (i + 1 == net.layers.size());
        if (last && layer.activation != Activation::Identity)
            throw config_error("last layer must be an identity readout");
        if (!last && layer.activation != Activation::Relu)
            throw config_error("hidden layer " + std::to_string(i) + " must use ReLU");
        width = layer.out_width();
    }
}

Eigen::VectorXd eval(const ReluNetwork& net, const Eigen::VectorXd& x) {
    if (x.size() != net.input_dim)
        throw config_error("eval: input has length " + std::to_string(x.size()) +
                           ", network expects " + std::to_string(net.input_dim));
    Eigen::VectorXd v = x;
    for (const AffineLayer& layer : net.layers) {
        v = (layer.weights * v + layer.biases).eval();
        if (layer.activation == Activation::Relu) v = v.cwiseMax(0.0);
    }
    return v;
}

Eigen::MatrixXd eval_batch(const ReluNetwork& net, const Eigen::MatrixXd& xs) {
    if (xs.rows() != net.input_dim)
        throw config_error("eval_batch: points must be columns of height input_dim");
    Eigen::MatrixXd v = xs;
    for (const AffineLayer& layer : net.layers) {
        v = ((layer.weights * v).colwise() + layer.biases).eval();
        if (layer.activation == Activation::Relu) v = v.cwiseMax(0.0);
    }
    return v;
}

NetworkMetrics metrics(const ReluNetwork& net) {
    NetworkMetrics m;
    m.depth = static_cast<int>(net.layers.size());
    for (std::size_t i = 0; i + 1 < net.layers.size(); ++i) {
        const Eigen::Index w = net.layers[i].out_width();
        m.size += w;
        m.width = std::max(m.width, w);
    }
    return m;
}

ReluNetwork affine_network(const Eigen::MatrixXd& weights, const Eigen::VectorXd& biases) {
    ReluNetwork net;
    net.input_dim = weights.cols();
    net.layers.push_back({weights, biases, Activation::Identity});
    validate(net);
    return net;
}

ReluNetwork identity_network(Eigen::Index dim) {
    return affine_network(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
}

ReluNetwork zero_network(Eigen::Index input_dim) {
    ReluNetwork net;
    net.input_dim = input_dim;
    net.layers.push_back({Eigen::MatrixXd::Zero(0, input_dim), Eigen::VectorXd::Zero(0), Activation::Relu});
    net.layers.push_back({Eigen::MatrixXd::Zero(1, 0), Eigen::VectorXd::Zero(1), Activation::Identity});
    validate(net);
    return net;
}

ReluNetwork compose(const ReluNetwork& outer, const ReluNetwork& inner) {
    if (outer.input_dim != inner.output_dim())
        throw config_error("compose: outer expects input width " + std::to_string(outer.input_dim) +
                           ", inner outputs " + std::to_string(inner.output_dim()));
    const AffineLayer& readout = inner.layers.back();
    const AffineLayer& first = outer.layers.front();

    ReluNetwork net;
    net.input_dim = inner.input_dim;
    net.layers.assign(inner.layers.begin(), inner.layers.end() - 1);
    // Fuse the inner identity readout into the outer first stage.
    AffineLayer fused;
    fused.weights = first.weights * readout.weights;
    fused.biases = first.weights * readout.biases + first.biases;
    fused.activation = first.activation;
    net.layers.push_back(std::move(fused));
    net.layers.insert(net.layers.end(), outer.layers.begin() + 1, outer.layers.end());
    validate(net);
    return net;
}

namespace {

// Shared body of add() and parallel(): stack hidden layers block-diagonally,
// then either sum or concatenate the readouts.
ReluNetwork stack(const std::vector<ReluNetwork>& nets, bool sum_outputs) {
    if (nets.empty()) throw config_error("stack: need at least one network");
    const Eigen::Index in_dim = nets.front().input_dim;
    const Eigen::Index out_dim = nets.front().output_dim();
    int depth = 0;
    for (const ReluNetwork& n : nets) {
        if (n.input_dim != in_dim) throw config_error("stack: input widths differ");
        if (sum_outputs && n.output_dim() != out_dim) throw config_error("stack: output widths differ");
        depth = std::max(depth, static_cast<int>(n.layers.size()));
    }

    std::vector<ReluNetwork> padded;
    padded.reserve(nets.size());
    for (const ReluNetwork& n : nets) padded.push_back(pad_to_depth(n, depth));

    ReluNetwork net;
    net.input_dim = in_dim;
    for (int li = 0; li + 1 < depth; ++li) {
        Eigen::Index rows = 0, cols = 0;
        for (const ReluNetwork& n : padded) {
            rows += n.layers[li].out_width();
            cols += n.layers[li].in_width();
        }
        if (li == 0) cols = in_dim;
        AffineLayer layer;
        layer.weights = Eigen::MatrixXd::Zero(rows, cols);
        layer.biases = Eigen::VectorXd::Zero(rows);
        layer.activation = Activation::Relu;
        Eigen::Index r0 = 0, c0 = 0;
        for (const ReluNetwork& n : padded) {
            const AffineLayer& src = n.layers[li];
            if (li == 0) {
                layer.weights.block(r0, 0, src.out_width(), in_dim) = src.weights;
            } else {
                layer.weights.block(r0, c0, src.out_width(), src.in_width()) = src.weights;
                c0 += src.in_width();
            }
            layer.biases.segment(r0, src.out_width()) = src.biases;
            r0 += src.out_width();
        }
        net.layers.push_back(std::move(layer));
    }

    Eigen::Index total_out = 0;
    for (const ReluNetwork& n : padded) total_out += n.output_dim();
    Eigen::Index cols = 0;
    for (const ReluNetwork& n : padded) cols += n.layers.back().in_width();
    AffineLayer out;
    out.weights = Eigen::MatrixXd::Zero(sum_outputs ? out_dim : total_out, depth == 1 ? in_dim : cols);
    out.biases = Eigen::VectorXd::Zero(sum_outputs ? out_dim : total_out);
    out.activation = Activation::Identity;
    Eigen::Index r0 = 0, c0 = 0;
    for (const ReluNetwork& n : padded) {
        const AffineLayer& src = n.layers.back();
        const Eigen::Index row = sum_outputs ? 0 : r0;
        if (depth == 1) {
            out.weights.block(row, 0, src.out_width(), in_dim) += src.weights;
        } else {
            out.weights.block(row, c0, src.out_width(), src.in_width()) = src.weights;
            c0 += src.in_width();
        }
        out.biases.segment(row, src.out_width()) += src.biases;
        r0 += src.out_width();
    }
    net.layers.push_back(std::move(out));
    validate(net);
    return net;
}

}  // namespace

ReluNetwork add(const ReluNetwork& f, const ReluNetwork& g) { return stack({f, g}, true); }

ReluNetwork parallel(const std::vector<ReluNetwork>& nets) { return stack(nets, false); }

ReluNetwork pad_to_depth(const ReluNetwork& net, int depth) {
    const int have = static_cast<int>(net.layers.size());
    if (depth < have) throw config_error("pad_to_depth: cannot reduce depth");
    if (depth == have) return net;

    const Eigen::Index w = net.output_dim();
    ReluNetwork out;
    out.input_dim = net.input_dim;
    out.layers.assign(net.layers.begin(), net.layers.end() - 1);

    // Replace the readout by a splitting stage y -> (relu(y), relu(-y)); the
    // nonnegative pair then passes unchanged through identity stages.
    const AffineLayer& readout = net.layers.back();
    AffineLayer split;
    split.weights.resize(2 * w, readout.in_width());
    split.weights << readout.weights, -readout.weights;
    split.biases.resize(2 * w);
    split.biases << readout.biases, -readout.biases;
    split.activation = Activation::Relu;
    out.layers.push_back(std::move(split));

    for (int li = have + 1; li < depth; ++li) {
        AffineLayer pass;
        pass.weights = Eigen::MatrixXd::Identity(2 * w, 2 * w);
        pass.biases = Eigen::VectorXd::Zero(2 * w);
        pass.activation = Activation::Relu;
        out.layers.push_back(std::move(pass));
    }

    AffineLayer merge;
    merge.weights.resize(w, 2 * w);
    merge.weights << Eigen::MatrixXd::Identity(w, w), -Eigen::MatrixXd::Identity(w, w);
    merge.biases = Eigen::VectorXd::Zero(w);
    merge.activation = Activation::Identity;
    out.layers.push_back(std::move(merge));
    validate(out);
    return out;
}

ReluNetwork maximum(const std::vector<ReluNetwork>& nets) {
    if (nets.size() < 2) throw config_error("maximum: need at least two networks");
    for (const ReluNetwork& n : nets)
        if (n.output_dim() != 1) throw config_error("maximum: operands must have scalar output");

    ReluNetwork net = parallel(nets);
    while (net.output_dim() > 1) {
        const Eigen::Index m = net.output_dim();
        const Eigen::Index pairs = m / 2;
        const bool carry = (m % 2) != 0;
        const AffineLayer& readout = net.layers.back();

        AffineLayer gadget;
        gadget.weights = Eigen::MatrixXd::Zero(4 * pairs + (carry ? 2 : 0), readout.in_width());
        gadget.biases = Eigen::VectorXd::Zero(gadget.weights.rows());
        gadget.activation = Activation::Relu;
        AffineLayer next;
        next.weights = Eigen::MatrixXd::Zero(pairs + (carry ? 1 : 0), gadget.weights.rows());
        next.biases = Eigen::VectorXd::Zero(next.weights.rows());
        next.activation = Activation::Identity;

        for (Eigen::Index p = 0; p < pairs; ++p) {
            const Eigen::VectorXd wa = readout.weights.row(2 * p).transpose();
            const Eigen::VectorXd wb = readout.weights.row(2 * p + 1).transpose();
            const double ba = readout.biases(2 * p), bb = readout.biases(2 * p + 1);
            // units: relu(a+b), relu(-a-b), relu(a-b), relu(b-a)
            gadget.weights.row(4 * p + 0) = (wa + wb).transpose();
            gadget.weights.row(4 * p + 1) = -(wa + wb).transpose();
            gadget.weights.row(4 * p + 2) = (wa - wb).transpose();
            gadget.weights.row(4 * p + 3) = (wb - wa).transpose();
            gadget.biases(4 * p + 0) = ba + bb;
            gadget.biases(4 * p + 1) = -(ba + bb);
            gadget.biases(4 * p + 2) = ba - bb;
            gadget.biases(4 * p + 3) = bb - ba;
            // max(a,b) = ((a+b) + |a-b|)/2
            next.weights(p, 4 * p + 0) = 0.5;
            next.weights(p, 4 * p + 1) = -0.5;
            next.weights(p, 4 * p + 2) = 0.5;
            next.weights(p, 4 * p + 3) = 0.5;
        }
        if (carry) {
            const Eigen::Index base = 4 * pairs;
            gadget.weights.row(base) = readout.weights.row(m - 1);
            gadget.weights.row(base + 1) = -readout.weights.row(m - 1);
            gadget.biases(base) = readout.biases(m - 1);
            gadget.biases(base + 1) = -readout.biases(m - 1);
            next.weights(pairs, base) = 1.0;
            next.weights(pairs, base + 1) = -1.0;
        }
        net.layers.back() = std::move(gadget);
        net.layers.push_back(std::move(next));
    }
    validate(net);
    return net;
}

namespace {

nlohmann::json layer_to_json(const AffineLayer& layer) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) row.push_back(layer.weights(i, j));
        rows.push_back(std::move(row));
    }
    nlohmann::json biases = nlohmann::json::array();
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) biases.push_back(layer.biases(i));
    return {{"weights", std::move(rows)},
            {"biases", std::move(biases)},
            {"activation", layer.activation == Activation::Relu ? "relu" : "identity"}};
}

AffineLayer layer_from_json(const nlohmann::json& j, Eigen::Index in_width) {
    AffineLayer layer;
    const auto& rows = j.at("weights");
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index c = r > 0 ? static_cast<Eigen::Index>(rows[0].size()) : in_width;
    layer.weights.resize(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index jj = 0; jj < c; ++jj) layer.weights(i, jj) = rows[i][jj].get<double>();
    const auto& biases = j.at("biases");
    layer.biases.resize(static_cast<Eigen::Index>(biases.size()));
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) layer.biases(i) = biases[i].get<double>();
    const std::string act = j.at("activation").get<std::string>();
    if (act == "relu") layer.activation = Activation::Relu;
    else if (act == "identity") layer.activation = Activation::Identity;
    else throw config_error("unknown activation: " + act);
    return layer;
}

}  // namespace

std::string to_json_string(const ReluNetwork& net) {
    nlohmann::json j;
    j["input_dim"] = net.input_dim;
    j["layers"] = nlohmann::json::array();
    for (const AffineLayer& layer : net.layers) j["layers"].push_back(layer_to_json(layer));
    return j.dump(2);
}

ReluNetwork network_from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ReluNetwork net;
    net.input_dim = j.at("input_dim").get<Eigen::Index>();
    Eigen::Index width = net.input_dim;
    for (const auto& lj : j.at("layers")) {
        net.layers.push_back(layer_from_json(lj, width));
        width = net.layers.back().out_width();
    }
    validate(net);
    return net;
}

void save_network(const ReluNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path + " for writing");
    out << to_json_string(net) << "\n";
}

ReluNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return network_from_json_string(text);
}

}  // namespace topnet
