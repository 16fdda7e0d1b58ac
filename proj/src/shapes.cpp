#include "topnet/shapes.hpp"

#include <cmath>
#include <json.hpp>

#include "topnet/errors.hpp"

namespace topnet {

int RepresentativeSpec::dim() const {
    if (!balls.empty()) return balls.front().d;
    if (!tori.empty()) return tori.front().d;
    throw config_error("representative has no components");
}

void validate(const EmbeddedSpec& spec) {
    if (spec.rotation.rows() < spec.rotation.cols())
        throw config_error("embedding must not reduce dimension");
    const Eigen::MatrixXd gram = spec.rotation.transpose() * spec.rotation;
    const double err = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).norm();
    if (err > 1e-9) throw config_error("rotation columns are not orthonormal (error " + std::to_string(err) + ")");
    if (spec.offset.size() != spec.rotation.rows())
        throw config_error("offset length must equal ambient dimension");
    if (spec.tau_input <= 0.0 || spec.volume_input <= 0.0)
        throw config_error("declared reach and volume must be positive");
}

MeasureSpec MeasureSpec::uniform_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    if (lo.size() != hi.size()) throw config_error("box bounds must have equal length");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        if (!(lo(i) < hi(i))) throw config_error("box bounds must satisfy lo < hi");
    MeasureSpec m;
    m.kind = Kind::UniformBox;
    m.lo = lo;
    m.hi = hi;
    return m;
}

MeasureSpec MeasureSpec::uniform_on_shapes() {
    MeasureSpec m;
    m.kind = Kind::UniformOnShapes;
    return m;
}

double MeasureSpec::box_volume() const {
    if (kind != Kind::UniformBox) throw config_error("box_volume: measure is not a box");
    return (hi - lo).prod();
}

bool contains(const BallSpec& shape, const Eigen::VectorXd& x) {
    if (x.size() != shape.d) throw config_error("contains: dimension mismatch");
    return (x - shape.c).squaredNorm() <= shape.r * shape.r;
}

double torus_quadratic(const TorusSpec& shape, const Eigen::VectorXd& x) {
    if (x.size() != shape.d) throw config_error("torus_quadratic: dimension mismatch");
    const Eigen::VectorXd y = x - shape.c;
    const double rho = y.head(shape.d - 1).norm();
    const double axial = y(shape.d - 1);
    return axial * axial + (rho - shape.R) * (rho - shape.R);
}

bool contains(const TorusSpec& shape, const Eigen::VectorXd& x) {
    return torus_quadratic(shape, x) <= shape.r * shape.r;
}

bool contains(const RepresentativeSpec& shape, const Eigen::VectorXd& x) {
    for (const BallSpec& b : shape.balls)
        if (contains(b, x)) return true;
    for (const TorusSpec& t : shape.tori)
        if (contains(t, x)) return true;
    return false;
}

Box bounding_box(const BallSpec& shape) {
    return {shape.c.array() - shape.r, shape.c.array() + shape.r};
}

Box bounding_box(const TorusSpec& shape) {
    Eigen::VectorXd lo = shape.c, hi = shape.c;
    lo.head(shape.d - 1).array() -= shape.R + shape.r;
    hi.head(shape.d - 1).array() += shape.R + shape.r;
    lo(shape.d - 1) -= shape.r;
    hi(shape.d - 1) += shape.r;
    return {lo, hi};
}

Box merge(const Box& a, const Box& b) {
    return {a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
}

Box bounding_box(const RepresentativeSpec& shape) {
    bool first = true;
    Box box;
    for (const BallSpec& b : shape.balls) {
        box = first ? bounding_box(b) : merge(box, bounding_box(b));
        first = false;
    }
    for (const TorusSpec& t : shape.tori) {
        box = first ? bounding_box(t) : merge(box, bounding_box(t));
        first = false;
    }
    if (first) throw config_error("bounding_box: empty representative");
    return box;
}

double ball_volume(int d, double r) {
    if (d < 1 || r <= 0.0) throw config_error("ball_volume: need d >= 1 and r > 0");
    const double half = static_cast<double>(d) / 2.0;
    return std::pow(M_PI, half) * std::pow(r, d) / std::tgamma(half + 1.0);
}

double torus_volume_3d(const TorusSpec& shape) {
    if (shape.d != 3) throw config_error("torus_volume_3d: exact volume only for d = 3");
    return 2.0 * M_PI * M_PI * shape.R * shape.r * shape.r;
}

RepresentativeSpec single_ball(int d, double r, const Eigen::VectorXd& c) {
    if (d < 1 || r <= 0.0 || c.size() != d) throw config_error("single_ball: bad parameters");
    RepresentativeSpec spec;
    spec.balls.push_back({d, r, c});
    std::vector<long long> betti(static_cast<std::size_t>(d) + 1, 0);
    betti[0] = 1;
    spec.betti = betti;
    return spec;
}

RepresentativeSpec single_torus(int d, double r, double R, const Eigen::VectorXd& c) {
    if (d < 2 || r <= 0.0 || R <= r || c.size() != d) throw config_error("single_torus: bad parameters");
    RepresentativeSpec spec;
    spec.tori.push_back({d, r, R, c});
    std::vector<long long> betti(static_cast<std::size_t>(d) + 1, 0);
    betti[0] = 1;
    if (d == 3) betti[1] = 1;      // deformation-retracts to the spine circle
    else if (d == 2) betti[0] = 2; // the d = 2 set is a pair of disks
    else betti[static_cast<std::size_t>(d) - 2] = 1;
    spec.betti = betti;
    return spec;
}

RepresentativeSpec disjoint_balls_on_line(int d, int m, double r, double spacing) {
    if (m < 1 || spacing <= 2.0 * r) throw config_error("disjoint_balls_on_line: balls would overlap");
    RepresentativeSpec spec;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
        c(0) = spacing * static_cast<double>(i);
        spec.balls.push_back({d, r, c});
    }
    std::vector<long long> betti(static_cast<std::size_t>(d) + 1, 0);
    betti[0] = m;
    spec.betti = betti;
    return spec;
}

RepresentativeSpec ball_ring_annulus(int m, double ring_radius, double ball_radius) {
    if (m < 3) throw config_error("ball_ring_annulus: need at least three balls");
    const double gap = 2.0 * ring_radius * std::sin(M_PI / static_cast<double>(m));
    if (gap >= 2.0 * ball_radius)
        throw config_error("ball_ring_annulus: adjacent balls do not overlap, ring would disconnect");
    if (ball_radius >= ring_radius)
        throw config_error("ball_ring_annulus: balls swallow the hole");
    RepresentativeSpec spec;
    for (int i = 0; i < m; ++i) {
        const double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
        Eigen::VectorXd c(2);
        c << ring_radius * std::cos(angle), ring_radius * std::sin(angle);
        spec.balls.push_back({2, ball_radius, c});
    }
    spec.betti = std::vector<long long>{1, 1, 0};
    return spec;
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = arr[i].get<double>();
    return v;
}

}  // namespace

std::string to_json_string(const RepresentativeSpec& spec) {
    nlohmann::json j;
    j["label"] = spec.label;
    j["balls"] = nlohmann::json::array();
    for (const BallSpec& b : spec.balls)
        j["balls"].push_back({{"d", b.d}, {"r", b.r}, {"c", vector_to_json(b.c)}});
    j["tori"] = nlohmann::json::array();
    for (const TorusSpec& t : spec.tori)
        j["tori"].push_back({{"d", t.d}, {"r", t.r}, {"R", t.R}, {"c", vector_to_json(t.c)}});
    if (spec.betti) j["betti"] = *spec.betti;
    return j.dump(2);
}

RepresentativeSpec representative_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RepresentativeSpec spec;
    spec.label = j.value("label", 1);
    for (const auto& bj : j.value("balls", nlohmann::json::array()))
        spec.balls.push_back({bj.at("d").get<int>(), bj.at("r").get<double>(), vector_from_json(bj.at("c"))});
    for (const auto& tj : j.value("tori", nlohmann::json::array()))
        spec.tori.push_back({tj.at("d").get<int>(), tj.at("r").get<double>(), tj.at("R").get<double>(),
                             vector_from_json(tj.at("c"))});
    if (j.contains("betti")) spec.betti = j.at("betti").get<std::vector<long long>>();
    if (spec.components() == 0) throw config_error("representative needs at least one component");
    return spec;
}

}  // namespace topnet
