#include "topnet/geometry.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "topnet/errors.hpp"

namespace topnet {

void validate(const GeometricComplex& K) {
    for (int v : K.complex.vertex_ids())
        if (v < 0 || v >= K.coords.cols())
            throw config_error("geometric complex: vertex " + std::to_string(v) + " has no coordinates");
    for (int k = 1; k <= K.complex.max_dim(); ++k) {
        for (const Simplex& s : K.complex.simplices(k)) {
            Eigen::MatrixXd edges(K.coords.rows(), k);
            for (int i = 0; i < k; ++i)
                edges.col(i) = K.coords.col(s.vertices[i + 1]) - K.coords.col(s.vertices[0]);
            const double gram_det = (edges.transpose() * edges).determinant();
            if (gram_det <= 1e-12)
                throw config_error("geometric complex: degenerate simplex (Gram determinant " +
                                   std::to_string(gram_det) + ")");
        }
    }
}

Eigen::VectorXd barycentric(const Eigen::VectorXd& x, const Eigen::MatrixXd& simplex_coords) {
    const Eigen::Index k = simplex_coords.cols() - 1;
    if (k < 0) throw config_error("barycentric: empty simplex");
    Eigen::VectorXd coeff(k + 1);
    if (k == 0) {
        coeff(0) = 1.0;
        return coeff;
    }
    Eigen::MatrixXd edges(simplex_coords.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i)
        edges.col(i) = simplex_coords.col(i + 1) - simplex_coords.col(0);
    const Eigen::MatrixXd gram = edges.transpose() * edges;
    if (std::abs(gram.determinant()) <= 1e-12) throw config_error("barycentric: degenerate simplex");
    // Least squares on the affine system projects x onto the hull's affine span.
    const Eigen::VectorXd alpha = gram.ldlt().solve(edges.transpose() * (x - simplex_coords.col(0)));
    coeff.tail(k) = alpha;
    coeff(0) = 1.0 - alpha.sum();
    return coeff;
}

SimplexProjection project_to_simplex(const Eigen::VectorXd& x, const Eigen::MatrixXd& simplex_coords) {
    const Eigen::Index nv = simplex_coords.cols();
    SimplexProjection best;
    best.distance = std::numeric_limits<double>::infinity();
    // Enumerate faces; the unconstrained affine minimizer of a face is kept
    // when its barycentric coordinates are feasible. Exact for the small
    // simplex dimensions a nerve complex produces.
    for (unsigned mask = 1; mask < (1u << nv); ++mask) {
        std::vector<Eigen::Index> face;
        for (Eigen::Index i = 0; i < nv; ++i)
            if (mask & (1u << i)) face.push_back(i);
        Eigen::MatrixXd sub(simplex_coords.rows(), static_cast<Eigen::Index>(face.size()));
        for (std::size_t i = 0; i < face.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = simplex_coords.col(face[i]);
        Eigen::VectorXd coeff;
        try {
            coeff = barycentric(x, sub);
        } catch (const config_error&) {
            continue;  // degenerate sub-face of a degenerate input
        }
        if ((coeff.array() < -1e-9).any()) continue;
        const Eigen::VectorXd p = sub * coeff;
        const double dist = (x - p).norm();
        if (dist < best.distance) {
            best.distance = dist;
            best.point = p;
        }
    }
    return best;
}

ComplexProjector::ComplexProjector(const GeometricComplex& K) : K_(&K) {
    if (K.complex.max_dim() < 0) throw config_error("ComplexProjector: empty complex");
    vertices_ = K.complex.vertex_ids();
    for (int k = 0; k <= K.complex.max_dim(); ++k) {
        const auto& list = K.complex.simplices(k);
        for (long long idx = 0; idx < static_cast<long long>(list.size()); ++idx) {
            const Simplex& s = list[static_cast<std::size_t>(idx)];
            Cell cell;
            cell.dim = k;
            cell.index = idx;
            cell.verts = s.vertices;
            cell.coords.resize(K.coords.rows(), static_cast<Eigen::Index>(s.vertices.size()));
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                cell.coords.col(static_cast<Eigen::Index>(i)) = K.coords.col(s.vertices[i]);
            for (std::size_t a = 0; a < s.vertices.size(); ++a)
                for (std::size_t b = a + 1; b < s.vertices.size(); ++b)
                    diam_max_ = std::max(diam_max_, (cell.coords.col(static_cast<Eigen::Index>(a)) -
                                                     cell.coords.col(static_cast<Eigen::Index>(b)))
                                                        .norm());
            cells_.push_back(std::move(cell));
        }
    }
}

ComplexProjection ComplexProjector::operator()(const Eigen::VectorXd& x) const {
    // Vertex-distance prefilter: a simplex can only reach under the current
    // best if one of its vertices is within best + max simplex diameter.
    std::vector<double> dist_by_id(static_cast<std::size_t>(K_->coords.cols()),
                                   std::numeric_limits<double>::infinity());
    double best_vertex = std::numeric_limits<double>::infinity();
    for (int v : vertices_) {
        const double d = (x - K_->coords.col(v)).norm();
        dist_by_id[static_cast<std::size_t>(v)] = d;
        best_vertex = std::min(best_vertex, d);
    }

    ComplexProjection best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t id = 0; id < cells_.size(); ++id) {
        const Cell& cell = cells_[id];
        double nearest_vertex = std::numeric_limits<double>::infinity();
        for (int v : cell.verts)
            nearest_vertex = std::min(nearest_vertex, dist_by_id[static_cast<std::size_t>(v)]);
        const double cutoff = std::min(best.distance, best_vertex);
        if (nearest_vertex > cutoff + diam_max_) continue;
        const SimplexProjection proj = project_to_simplex(x, cell.coords);
        if (proj.distance < best.distance) {
            best.distance = proj.distance;
            best.point = proj.point;
            best.simplex_dim = cell.dim;
            best.simplex_index = cell.index;
            best.simplex_id = static_cast<long long>(id);
        }
    }
    return best;
}

ComplexProjection project_to_complex(const Eigen::VectorXd& x, const GeometricComplex& K) {
    return ComplexProjector(K)(x);
}

void validate(const VertexMap& phi, const GeometricComplex& K, const GeometricComplex& L) {
    for (int v : K.complex.vertex_ids()) {
        if (v >= static_cast<int>(phi.mapping.size()) || phi.mapping[static_cast<std::size_t>(v)] < 0)
            throw config_error("vertex map: vertex " + std::to_string(v) + " has no image");
        const Simplex image = make_simplex({phi.mapping[static_cast<std::size_t>(v)]});
        if (!L.complex.contains(image))
            throw config_error("vertex map: image vertex " + std::to_string(image.vertices[0]) +
                               " is not in L");
    }
    for (int k = 1; k <= K.complex.max_dim(); ++k) {
        for (const Simplex& s : K.complex.simplices(k)) {
            std::vector<int> image;
            image.reserve(s.vertices.size());
            for (int v : s.vertices) image.push_back(phi.mapping[static_cast<std::size_t>(v)]);
            if (!L.complex.contains(make_simplex(image)))
                throw config_error("vertex map: a simplex of K does not map onto a simplex of L");
        }
    }
}

Eigen::VectorXd simplicial_map_eval(const Eigen::VectorXd& x, const GeometricComplex& K,
                                    const VertexMap& phi, const GeometricComplex& L) {
    const ComplexProjection carrier = project_to_complex(x, K);
    const auto& s = K.complex.simplices(carrier.simplex_dim)[static_cast<std::size_t>(carrier.simplex_index)];
    Eigen::MatrixXd sub(K.coords.rows(), static_cast<Eigen::Index>(s.vertices.size()));
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        sub.col(static_cast<Eigen::Index>(i)) = K.coords.col(s.vertices[i]);
    const Eigen::VectorXd coeff = barycentric(carrier.point, sub);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(L.coords.rows());
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        out += coeff(static_cast<Eigen::Index>(i)) *
               L.coords.col(phi.mapping[static_cast<std::size_t>(s.vertices[i])]);
    return out;
}

long long simplicial_net_size(long long D, long long d, long long k, long long l) {
    if (D < 0 || d < 0 || k < 0 || l < 0) throw config_error("simplicial_net_size: negative input");
    return D + d + k * (D + 1) + l * (d + 1);
}

GeometricComplex load_geometric_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    GeometricComplex K;
    std::string line;
    std::vector<std::pair<int, Eigen::VectorXd>> coords;
    bool in_coords = false;
    Eigen::Index dim = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line == "coords") {
            in_coords = true;
            continue;
        }
        std::stringstream ss(line);
        if (!in_coords) {
            std::vector<int> verts;
            int v;
            while (ss >> v) verts.push_back(v);
            if (!verts.empty()) K.complex.insert(make_simplex(verts));
        } else {
            int id;
            ss >> id;
            std::vector<double> vals;
            double v;
            while (ss >> v) vals.push_back(v);
            if (dim < 0) dim = static_cast<Eigen::Index>(vals.size());
            Eigen::VectorXd x(dim);
            for (Eigen::Index i = 0; i < dim; ++i) x(i) = vals[static_cast<std::size_t>(i)];
            coords.emplace_back(id, x);
        }
    }
    int max_id = -1;
    for (const auto& [id, x] : coords) max_id = std::max(max_id, id);
    K.coords = Eigen::MatrixXd::Zero(dim, max_id + 1);
    for (const auto& [id, x] : coords) K.coords.col(id) = x;
    validate(K);
    return K;
}

void save_geometric_complex(const GeometricComplex& K, const std::string& path) {
    save_complex(K.complex, path);
    std::ofstream out(path, std::ios::app);
    out << "coords\n";
    out.precision(17);
    for (int v : K.complex.vertex_ids()) {
        out << v;
        for (Eigen::Index i = 0; i < K.coords.rows(); ++i) out << " " << K.coords(i, v);
        out << "\n";
    }
}

VertexMap load_vertex_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    VertexMap phi;
    int from, to;
    while (in >> from >> to) {
        if (from >= static_cast<int>(phi.mapping.size())) phi.mapping.resize(from + 1, -1);
        phi.mapping[static_cast<std::size_t>(from)] = to;
    }
    return phi;
}

void save_vertex_map(const VertexMap& phi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path + " for writing");
    for (std::size_t v = 0; v < phi.mapping.size(); ++v)
        if (phi.mapping[v] >= 0) out << v << " " << phi.mapping[v] << "\n";
}

}  // namespace topnet
