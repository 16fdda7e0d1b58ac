#ifndef TOPNET_HOMOLOGY_HPP
#define TOPNET_HOMOLOGY_HPP

#include <map>
#include <string>
#include <vector>

#include "topnet/gf2.hpp"

namespace topnet {

/** A k-simplex as its sorted list of vertex ids. */
struct Simplex {
    std::vector<int> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool operator<(const Simplex& o) const { return vertices < o.vertices; }
    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
};

/** Sorted, deduplicated simplex from an arbitrary vertex list. */
Simplex make_simplex(std::vector<int> vertices);

/**
 * Abstract simplicial complex, stored per dimension with lexicographic
 * ordering inside each dimension. insert() closes under faces, so any
 * complex assembled through it is face-closed by construction.
 */
class SimplicialComplex {
public:
    /** Insert a simplex together with all of its faces. */
    void insert(const Simplex& s);

    bool contains(const Simplex& s) const;
    int max_dim() const { return static_cast<int>(sets_.size()) - 1; }
    long long count(int dim) const;
    const std::vector<Simplex>& simplices(int dim) const;
    /** Index of s inside its dimension's lexicographic order; -1 if absent. */
    long long index_of(const Simplex& s) const;
    long long total_simplices() const;
    std::vector<int> vertex_ids() const;

    /** True iff every face of every stored simplex is stored. */
    bool is_face_closed() const;

private:
    void refresh(int dim) const;

    // Ordered set per dimension is the primary store; the position values and
    // the flat vector are caches rebuilt lazily after insertions.
    mutable std::vector<std::map<Simplex, long long>> sets_;
    mutable std::vector<std::vector<Simplex>> flat_;
    mutable std::vector<bool> dirty_;
};

/** Betti numbers beta_0..beta_{max_dim} with the Euler characteristic. */
struct BettiVector {
    std::vector<long long> betti;
    long long euler = 0;

    bool operator==(const BettiVector& o) const { return betti == o.betti; }
};

/**
 * Boundary operator matrix over GF(2): rows are (k-1)-simplices, columns are
 * k-simplices (both in lexicographic order), entry 1 iff face. k >= 1.
 */
GF2Matrix boundary_matrix(const SimplicialComplex& K, int k);

/**
 * beta_k = |K^k| - rank d_k - rank d_{k+1} by packed GF(2) elimination.
 * Throws config_error if the complex fails face-closure validation.
 */
BettiVector betti_numbers(const SimplicialComplex& K);

/** Sum of all computed Betti numbers. */
long long topological_complexity(const SimplicialComplex& K);
long long topological_complexity(const BettiVector& b);
/** Variant truncated at dimension max_dim - 1, matching the manifold-form sum. */
long long topological_complexity_truncated(const BettiVector& b, int max_dim);

/**
 * Complex file format: one maximal simplex per line, vertex ids separated by
 * spaces; the face closure is computed on load.
 */
SimplicialComplex load_complex(const std::string& path);
void save_complex(const SimplicialComplex& K, const std::string& path);
SimplicialComplex complex_from_maximal(const std::vector<std::vector<int>>& maximal);

}  // namespace topnet

#endif  // TOPNET_HOMOLOGY_HPP
