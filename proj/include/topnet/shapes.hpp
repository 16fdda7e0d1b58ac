#ifndef TOPNET_SHAPES_HPP
#define TOPNET_SHAPES_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace topnet {

/** Solid ball { x : ||x - c|| <= r } in R^d. */
struct BallSpec {
    int d = 0;
    double r = 0.0;
    Eigen::VectorXd c;
};

/**
 * Solid torus { x : (x_d - c_d)^2 + (sqrt(sum_{i<d}(x_i - c_i)^2) - R)^2 <= r^2 }.
 * The last coordinate is the tube axis; R > r > 0 keeps the spine reach positive.
 */
struct TorusSpec {
    int d = 0;
    double r = 0.0;
    double R = 0.0;
    Eigen::VectorXd c;
};

/**
 * Union of balls and solid tori standing in for one class of a
 * classification problem. `betti` optionally declares the ground-truth
 * Betti vector of the union (set by the built-in constructors).
 */
struct RepresentativeSpec {
    std::vector<BallSpec> balls;
    std::vector<TorusSpec> tori;
    int label = 1;
    std::optional<std::vector<long long>> betti;

    int components() const { return static_cast<int>(balls.size() + tori.size()); }
    int dim() const;
};

/**
 * Two-class problem rigidly embedded in R^D: y = rotation * x + offset with
 * orthonormal rotation columns. Reach and d-volume of the union are declared
 * inputs (analytic for the built-ins), not estimated.
 */
struct EmbeddedSpec {
    RepresentativeSpec class1;
    RepresentativeSpec class0;
    Eigen::MatrixXd rotation;  // D x d, orthonormal columns
    Eigen::VectorXd offset;    // length D
    double tau_input = 0.0;
    double volume_input = 0.0;

    int base_dim() const { return static_cast<int>(rotation.cols()); }
    int ambient_dim() const { return static_cast<int>(rotation.rows()); }
    Eigen::VectorXd embed(const Eigen::VectorXd& x) const { return rotation * x + offset; }
    Eigen::VectorXd invert(const Eigen::VectorXd& y) const { return rotation.transpose() * (y - offset); }
};

/** Throws config_error unless rotation columns are orthonormal within 1e-9. */
void validate(const EmbeddedSpec& spec);

/** Sampling / integration measure: uniform on a box, or uniform on the problem shapes. */
struct MeasureSpec {
    enum class Kind { UniformBox, UniformOnShapes };
    Kind kind = Kind::UniformBox;
    Eigen::VectorXd lo, hi;  // box bounds (UniformBox only)

    static MeasureSpec uniform_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
    static MeasureSpec uniform_on_shapes();
    double box_volume() const;
};

bool contains(const BallSpec& shape, const Eigen::VectorXd& x);
bool contains(const TorusSpec& shape, const Eigen::VectorXd& x);
bool contains(const RepresentativeSpec& shape, const Eigen::VectorXd& x);

/** Squared tube distance (x_d-c_d)^2 + (sqrt(sum(x_i-c_i)^2) - R)^2. */
double torus_quadratic(const TorusSpec& shape, const Eigen::VectorXd& x);

struct Box {
    Eigen::VectorXd lo, hi;
};

Box bounding_box(const BallSpec& shape);
Box bounding_box(const TorusSpec& shape);
Box bounding_box(const RepresentativeSpec& shape);
Box merge(const Box& a, const Box& b);

/** Volume pi^{d/2} r^d / Gamma(d/2 + 1) of the d-ball of radius r. */
double ball_volume(int d, double r);

/** Exact volume 2 pi^2 R r^2 of the d = 3 solid torus. */
double torus_volume_3d(const TorusSpec& shape);

// Built-in representatives with declared Betti ground truth.
RepresentativeSpec single_ball(int d, double r, const Eigen::VectorXd& c);
RepresentativeSpec single_torus(int d, double r, double R, const Eigen::VectorXd& c);
RepresentativeSpec disjoint_balls_on_line(int d, int m, double r, double spacing);
/** m overlapping balls centered on a circle of radius ring_radius: an annulus up to homotopy. */
RepresentativeSpec ball_ring_annulus(int m, double ring_radius, double ball_radius);

// JSON (de)serialization of shape specs and measures.
std::string to_json_string(const RepresentativeSpec& spec);
RepresentativeSpec representative_from_json(const std::string& text);

}  // namespace topnet

#endif  // TOPNET_SHAPES_HPP
