#ifndef TOPNET_GEOMETRY_HPP
#define TOPNET_GEOMETRY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "topnet/homology.hpp"

namespace topnet {

/**
 * Simplicial complex realized in R^D: vertex id i sits at coords.col(i).
 * Simplices must be geometrically non-degenerate (affinely independent
 * vertex sets, checked through the Gram determinant).
 */
struct GeometricComplex {
    SimplicialComplex complex;
    Eigen::MatrixXd coords;  // D x V

    int ambient_dim() const { return static_cast<int>(coords.rows()); }
};

void validate(const GeometricComplex& K);

/**
 * Barycentric coordinates of x with respect to the given simplex vertex
 * coordinates (columns). x is least-squares projected onto the affine hull
 * first; coefficients sum to one exactly by construction.
 */
Eigen::VectorXd barycentric(const Eigen::VectorXd& x, const Eigen::MatrixXd& simplex_coords);

/** Closest point on the convex hull of the columns, by active-set over faces. */
struct SimplexProjection {
    Eigen::VectorXd point;
    double distance = 0.0;
};
SimplexProjection project_to_simplex(const Eigen::VectorXd& x, const Eigen::MatrixXd& simplex_coords);

/**
 * Nearest-point projection onto |K| over all simplices; ties broken by the
 * lowest simplex id in (dimension, lexicographic) enumeration order.
 * Idempotent: projecting the result returns the same id and point.
 */
struct ComplexProjection {
    Eigen::VectorXd point;
    double distance = 0.0;
    int simplex_dim = 0;
    long long simplex_index = 0;  // index within its dimension
    long long simplex_id = 0;     // global enumeration id, dimension-major
};
ComplexProjection project_to_complex(const Eigen::VectorXd& x, const GeometricComplex& K);

/**
 * Reusable projector that precomputes vertex tables, simplex coordinate
 * blocks and the maximum simplex diameter used by the vertex-distance
 * prefilter. Worth it when projecting many points onto the same complex.
 */
class ComplexProjector {
public:
    explicit ComplexProjector(const GeometricComplex& K);
    ComplexProjection operator()(const Eigen::VectorXd& x) const;
    const GeometricComplex& complex() const { return *K_; }

private:
    const GeometricComplex* K_;
    double diam_max_ = 0.0;
    std::vector<int> vertices_;
    struct Cell {
        int dim;
        long long index;
        std::vector<int> verts;
        Eigen::MatrixXd coords;
    };
    std::vector<Cell> cells_;  // dimension-major enumeration; position = simplex id
};

/**
 * Vertex map of a simplicial map phi: vertex id v of K goes to mapping[v]
 * in L. Valid iff the image vertex set of every simplex of K spans a
 * simplex of L.
 */
struct VertexMap {
    std::vector<int> mapping;
};

void validate(const VertexMap& phi, const GeometricComplex& K, const GeometricComplex& L);

/**
 * phi(x) = sum_i b_i(x) coords_L(phi(v_i)) on the carrier simplex of x; x is
 * projected onto |K| first. Piecewise linear and continuous across faces.
 */
Eigen::VectorXd simplicial_map_eval(const Eigen::VectorXd& x, const GeometricComplex& K,
                                    const VertexMap& phi, const GeometricComplex& L);

/** Two-hidden-layer simplicial-map network size D + d + k(D+1) + l(d+1). */
long long simplicial_net_size(long long D, long long d, long long k, long long l);

/**
 * Geometric complex file: the complex format (maximal simplices, one per
 * line) followed by a line "coords" and one "id x0 ... x{D-1}" line per
 * vertex. Vertex map file: one "k_id l_id" pair per line.
 */
GeometricComplex load_geometric_complex(const std::string& path);
void save_geometric_complex(const GeometricComplex& K, const std::string& path);
VertexMap load_vertex_map(const std::string& path);
void save_vertex_map(const VertexMap& phi, const std::string& path);

}  // namespace topnet

#endif  // TOPNET_GEOMETRY_HPP
