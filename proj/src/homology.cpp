#include "topnet/homology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "topnet/errors.hpp"

namespace topnet {

Simplex make_simplex(std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw config_error("simplex needs at least one vertex");
    return Simplex{std::move(vertices)};
}

void SimplicialComplex::insert(const Simplex& s) {
    const int k = s.dim();
    if (k >= static_cast<int>(sets_.size())) {
        sets_.resize(k + 1);
        flat_.resize(k + 1);
        dirty_.resize(k + 1, true);
    }
    if (!sets_[k].emplace(s, 0).second) return;
    dirty_[k] = true;
    if (k > 0) {
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            Simplex face;
            face.vertices.reserve(s.vertices.size() - 1);
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                if (i != skip) face.vertices.push_back(s.vertices[i]);
            insert(face);
        }
    }
}

void SimplicialComplex::refresh(int dim) const {
    if (!dirty_[dim]) return;
    flat_[dim].clear();
    flat_[dim].reserve(sets_[dim].size());
    long long pos = 0;
    for (auto& entry : sets_[dim]) {
        entry.second = pos++;
        flat_[dim].push_back(entry.first);
    }
    dirty_[dim] = false;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    const int k = s.dim();
    return k < static_cast<int>(sets_.size()) && sets_[k].count(s) > 0;
}

long long SimplicialComplex::count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(sets_.size())) return 0;
    return static_cast<long long>(sets_[dim].size());
}

long long SimplicialComplex::total_simplices() const {
    long long total = 0;
    for (const auto& s : sets_) total += static_cast<long long>(s.size());
    return total;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int dim) const {
    static const std::vector<Simplex> empty;
    if (dim < 0 || dim >= static_cast<int>(sets_.size())) return empty;
    refresh(dim);
    return flat_[dim];
}

long long SimplicialComplex::index_of(const Simplex& s) const {
    const int k = s.dim();
    if (k < 0 || k >= static_cast<int>(sets_.size())) return -1;
    refresh(k);
    const auto it = sets_[k].find(s);
    return it == sets_[k].end() ? -1 : it->second;
}

std::vector<int> SimplicialComplex::vertex_ids() const {
    std::vector<int> ids;
    for (const Simplex& s : simplices(0)) ids.push_back(s.vertices[0]);
    return ids;
}

bool SimplicialComplex::is_face_closed() const {
    for (int k = 1; k <= max_dim(); ++k) {
        for (const Simplex& s : by_dim_[k]) {
            for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
                Simplex face;
                for (std::size_t i = 0; i < s.vertices.size(); ++i)
                    if (i != skip) face.vertices.push_back(s.vertices[i]);
                if (!contains(face)) return false;
            }
        }
    }
    return true;
}

GF2Matrix boundary_matrix(const SimplicialComplex& K, int k) {
    if (k < 1 || k > K.max_dim()) throw config_error("boundary_matrix: k out of range");
    const auto& rows = K.simplices(k - 1);
    const auto& cols = K.simplices(k);
    GF2Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Simplex& s = cols[c];
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            Simplex face;
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                if (i != skip) face.vertices.push_back(s.vertices[i]);
            const long long r = K.index_of(face);
            if (r < 0) throw config_error("boundary_matrix: complex is not face-closed");
            m.set(static_cast<int>(r), static_cast<int>(c), true);
        }
    }
    return m;
}

namespace {

/**
 * Rank of the k-th boundary operator by sparse column reduction (the
 * persistence-style algorithm): columns are XOR-merged until their lowest
 * rows are distinct; nonzero reduced columns are independent. Much faster
 * than dense elimination on nerve complexes, whose columns start 4-sparse.
 */
long long boundary_rank_sparse(const SimplicialComplex& K, int k) {
    const auto& cols = K.simplices(k);
    std::vector<std::vector<long long>> reduced;
    reduced.reserve(cols.size());
    std::vector<long long> low_to_col(static_cast<std::size_t>(K.count(k - 1)), -1);
    long long rank = 0;
    std::vector<long long> column, merged;
    for (const Simplex& s : cols) {
        column.clear();
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            Simplex face;
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                if (i != skip) face.vertices.push_back(s.vertices[i]);
            const long long r = K.index_of(face);
            if (r < 0) throw config_error("betti_numbers: complex is not face-closed");
            column.push_back(r);
            face.vertices.clear();
        }
        std::sort(column.begin(), column.end());
        while (!column.empty()) {
            const long long low = column.back();
            const long long other = low_to_col[static_cast<std::size_t>(low)];
            if (other < 0) break;
            // Symmetric difference with the column sharing this low row.
            const std::vector<long long>& pivot = reduced[static_cast<std::size_t>(other)];
            merged.clear();
            std::set_symmetric_difference(column.begin(), column.end(), pivot.begin(), pivot.end(),
                                          std::back_inserter(merged));
            column.swap(merged);
        }
        if (!column.empty()) {
            low_to_col[static_cast<std::size_t>(column.back())] = rank;
            reduced.push_back(column);
            ++rank;
        }
    }
    return rank;
}

}  // namespace

BettiVector betti_numbers(const SimplicialComplex& K) {
    if (K.max_dim() < 0) throw config_error("betti_numbers: empty complex");
    if (!K.is_face_closed()) throw config_error("betti_numbers: complex is not face-closed");
    const int dmax = K.max_dim();
    std::vector<long long> rank(dmax + 2, 0);  // rank[k] = rank of boundary_k; rank[0] = 0
    for (int k = 1; k <= dmax; ++k) rank[k] = boundary_rank_sparse(K, k);
    BettiVector out;
    out.betti.resize(dmax + 1);
    for (int k = 0; k <= dmax; ++k) {
        out.betti[k] = K.count(k) - rank[k] - rank[k + 1];
        out.euler += (k % 2 == 0 ? 1 : -1) * K.count(k);
    }
    return out;
}

long long topological_complexity(const BettiVector& b) {
    long long total = 0;
    for (long long v : b.betti) total += v;
    return total;
}

long long topological_complexity(const SimplicialComplex& K) {
    return topological_complexity(betti_numbers(K));
}

long long topological_complexity_truncated(const BettiVector& b, int max_dim) {
    long long total = 0;
    for (int k = 0; k < max_dim && k < static_cast<int>(b.betti.size()); ++k) total += b.betti[k];
    return total;
}

SimplicialComplex complex_from_maximal(const std::vector<std::vector<int>>& maximal) {
    SimplicialComplex K;
    for (const auto& verts : maximal) K.insert(make_simplex(verts));
    return K;
}

SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    SimplicialComplex K;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::vector<int> verts;
        int v;
        while (ss >> v) verts.push_back(v);
        if (!verts.empty()) K.insert(make_simplex(verts));
    }
    if (K.max_dim() < 0) throw config_error("complex file is empty: " + path);
    return K;
}

void save_complex(const SimplicialComplex& K, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path + " for writing");
    // Save maximal simplices only: those not a face of any stored cofacet.
    for (int k = K.max_dim(); k >= 0; --k) {
        for (const Simplex& s : K.simplices(k)) {
            bool maximal = true;
            if (k < K.max_dim()) {
                for (const Simplex& t : K.simplices(k + 1)) {
                    if (std::includes(t.vertices.begin(), t.vertices.end(), s.vertices.begin(),
                                      s.vertices.end())) {
                        maximal = false;
                        break;
                    }
                }
            }
            if (!maximal) continue;
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                out << s.vertices[i] << (i + 1 < s.vertices.size() ? ' ' : '\n');
        }
    }
}

}  // namespace topnet
