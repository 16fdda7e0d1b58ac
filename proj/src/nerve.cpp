#include "topnet/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "topnet/errors.hpp"
#include "topnet/rng.hpp"
#include "topnet/sampling.hpp"

namespace topnet {

namespace {

/** Smallest ball with every support point on its boundary (affine circumball). */
Miniball circumball(const Eigen::MatrixXd& pts, const std::vector<int>& support) {
    Miniball b;
    if (support.empty()) {
        b.center = Eigen::VectorXd::Zero(pts.rows());
        b.radius = -1.0;
        return b;
    }
    const Eigen::VectorXd p0 = pts.col(support[0]);
    const int k = static_cast<int>(support.size()) - 1;
    if (k == 0) {
        b.center = p0;
        b.radius = 0.0;
        return b;
    }
    Eigen::MatrixXd u(pts.rows(), k);
    Eigen::VectorXd rhs(k);
    for (int i = 0; i < k; ++i) {
        u.col(i) = pts.col(support[i + 1]) - p0;
        rhs(i) = u.col(i).squaredNorm();
    }
    const Eigen::MatrixXd gram = 2.0 * u.transpose() * u;
    const Eigen::VectorXd alpha = gram.colPivHouseholderQr().solve(rhs);
    b.center = p0 + u * alpha;
    b.radius = (b.center - p0).norm();
    return b;
}

Miniball welzl(const Eigen::MatrixXd& pts, std::vector<int>& order, int n, std::vector<int>& support,
               int max_support) {
    if (n == 0 || static_cast<int>(support.size()) == max_support) return circumball(pts, support);
    const int p = order[n - 1];
    Miniball b = welzl(pts, order, n - 1, support, max_support);
    if (b.radius >= 0.0 &&
        (pts.col(p) - b.center).norm() <= b.radius + 1e-10 * std::max(1.0, b.radius))
        return b;
    support.push_back(p);
    b = welzl(pts, order, n - 1, support, max_support);
    support.pop_back();
    // Move-to-front keeps the expected recursion shallow.
    std::rotate(order.begin(), order.begin() + (n - 1), order.begin() + n);
    return b;
}

}  // namespace

Miniball miniball(const Eigen::MatrixXd& points) {
    if (points.cols() == 0) throw config_error("miniball: empty point set");
    std::vector<int> order(static_cast<std::size_t>(points.cols()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<int> support;
    return welzl(points, order, static_cast<int>(points.cols()), support,
                 static_cast<int>(points.rows()) + 1);
}

namespace {

std::vector<std::vector<int>> proximity_graph(const Eigen::MatrixXd& pts, double r) {
    const int n = static_cast<int>(pts.cols());
    std::vector<std::vector<int>> adj(n);
    const double limit_sq = 4.0 * r * r;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((pts.col(i) - pts.col(j)).squaredNorm() <= limit_sq) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b,
                                     int above) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::remove_if(out.begin(), out.end(), [above](int v) { return v <= above; }),
              out.end());
    return out;
}

SimplicialComplex clique_expansion(const Eigen::MatrixXd& pts, double r, int max_dim,
                                   bool cech_filter) {
    const int n = static_cast<int>(pts.cols());
    SimplicialComplex K;
    for (int i = 0; i < n; ++i) K.insert(Simplex{{i}});
    if (max_dim < 1) return K;

    std::vector<std::vector<int>> adj = proximity_graph(pts, r);
    for (auto& a : adj) std::sort(a.begin(), a.end());

    struct Frontier {
        std::vector<int> verts;
        std::vector<int> candidates;
    };
    std::vector<Frontier> level;
    for (int i = 0; i < n; ++i)
        for (int j : adj[i])
            if (j > i) {
                K.insert(Simplex{{i, j}});
                level.push_back({{i, j}, sorted_intersection(adj[i], adj[j], j)});
            }

    Eigen::MatrixXd coords(pts.rows(), max_dim + 1);
    for (int dim = 2; dim <= max_dim && !level.empty(); ++dim) {
        std::vector<Frontier> next;
        for (const Frontier& f : level) {
            for (int v : f.candidates) {
                std::vector<int> verts = f.verts;
                verts.push_back(v);
                if (cech_filter) {
                    for (std::size_t c = 0; c < verts.size(); ++c) coords.col(c) = pts.col(verts[c]);
                    if (miniball(coords.leftCols(static_cast<Eigen::Index>(verts.size()))).radius > r)
                        continue;
                }
                K.insert(make_simplex(verts));
                if (dim < max_dim)
                    next.push_back({verts, sorted_intersection(f.candidates, adj[v], v)});
            }
        }
        level = std::move(next);
    }
    return K;
}

}  // namespace

SimplicialComplex cech_complex(const Eigen::MatrixXd& points, double r, int max_dim) {
    if (r <= 0.0) throw config_error("cech_complex: radius must be positive");
    if (max_dim < 0) throw config_error("cech_complex: max_dim must be nonnegative");
    return clique_expansion(points, r, max_dim, true);
}

SimplicialComplex rips_complex(const Eigen::MatrixXd& points, double r, int max_dim) {
    if (r <= 0.0) throw config_error("rips_complex: radius must be positive");
    return clique_expansion(points, r, max_dim, false);
}

namespace {

struct Triangle {
    int a, b, c;  // CCW
    bool alive = true;
};

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

struct DegenerateInput {};

/** Positive iff d lies inside the circumcircle of CCW triangle (a,b,c). */
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d, double tie_tol) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                       (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    if (std::abs(det) < tie_tol) throw DegenerateInput{};
    return det;
}

struct CircumCircle {
    Eigen::Vector2d center;
    double radius;
};

CircumCircle circumcircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          const Eigen::Vector2d& c) {
    const double den = 2.0 * orient2d(a, b, c);
    const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
    CircumCircle cc;
    cc.center.x() = (a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / den;
    cc.center.y() = (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / den;
    cc.radius = (cc.center - a).norm();
    return cc;
}

std::vector<Triangle> bowyer_watson(const std::vector<Eigen::Vector2d>& pts, double tie_tol) {
    const int n = static_cast<int>(pts.size());
    Eigen::Vector2d lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const Eigen::Vector2d mid = 0.5 * (lo + hi);
    const double span = std::max({(hi - lo).x(), (hi - lo).y(), 1.0});
    // Super-triangle well outside the data.
    std::vector<Eigen::Vector2d> v = pts;
    v.push_back(mid + Eigen::Vector2d(-20.0 * span, -10.0 * span));
    v.push_back(mid + Eigen::Vector2d(20.0 * span, -10.0 * span));
    v.push_back(mid + Eigen::Vector2d(0.0, 25.0 * span));

    std::vector<Triangle> tris;
    tris.push_back({n, n + 1, n + 2, true});
    for (int p = 0; p < n; ++p) {
        // Collect triangles whose circumcircle contains the new point.
        std::vector<int> bad;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            if (incircle(v[tris[t].a], v[tris[t].b], v[tris[t].c], v[p], tie_tol) > 0.0)
                bad.push_back(static_cast<int>(t));
        }
        // Boundary of the carved cavity = edges appearing exactly once.
        std::vector<std::pair<int, int>> edges;
        for (int t : bad) {
            const Triangle& tr = tris[t];
            edges.emplace_back(tr.a, tr.b);
            edges.emplace_back(tr.b, tr.c);
            edges.emplace_back(tr.c, tr.a);
            tris[t].alive = false;
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            bool shared = false;
            for (std::size_t j = 0; j < edges.size(); ++j) {
                if (i == j) continue;
                if ((edges[i].first == edges[j].second && edges[i].second == edges[j].first) ||
                    (edges[i].first == edges[j].first && edges[i].second == edges[j].second)) {
                    shared = true;
                    break;
                }
            }
            if (shared) continue;
            Triangle fresh{edges[i].first, edges[i].second, p, true};
            if (orient2d(v[fresh.a], v[fresh.b], v[fresh.c]) < 0.0) std::swap(fresh.b, fresh.c);
            tris.push_back(fresh);
        }
    }
    std::vector<Triangle> out;
    for (const Triangle& t : tris)
        if (t.alive && t.a < n && t.b < n && t.c < n) out.push_back(t);
    return out;
}

}  // namespace

SimplicialComplex alpha_complex_2d(const Eigen::MatrixXd& points, double r) {
    if (points.rows() != 2)
        throw config_error("alpha_complex_2d: only 2-dimensional point clouds are supported");
    if (points.cols() < 3) throw config_error("alpha_complex_2d: need at least three points");
    if (r <= 0.0) throw config_error("alpha_complex_2d: radius must be positive");

    const int n = static_cast<int>(points.cols());
    std::vector<Eigen::Vector2d> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = points.col(i);

    double span = 0.0;
    for (const auto& p : pts) span = std::max(span, (p - pts[0]).norm());
    span = std::max(span, 1.0);

    std::vector<Triangle> tris;
    try {
        tris = bowyer_watson(pts, 1e-12 * span * span * span * span);
    } catch (const DegenerateInput&) {
        // Deterministic symbolic-style perturbation, 1e-9 scaled by point index.
        std::vector<Eigen::Vector2d> shifted = pts;
        for (int i = 0; i < n; ++i) {
            const double angle = 2.39996322972865332 * static_cast<double>(i + 1);
            shifted[i] += 1e-9 * static_cast<double>(i + 1) *
                          Eigen::Vector2d(std::cos(angle), std::sin(angle));
        }
        tris = bowyer_watson(shifted, 0.0);
        pts = shifted;
    }

    SimplicialComplex K;
    for (int i = 0; i < n; ++i) K.insert(Simplex{{i}});

    // Alpha value per edge: half-length if the diametral disk is empty of the
    // attached apexes (Gabriel), otherwise the smallest attached circumradius.
    std::map<std::pair<int, int>, std::vector<double>> edge_attached;
    std::map<std::pair<int, int>, std::vector<int>> edge_apex;
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (const Triangle& t : tris) {
        const CircumCircle cc = circumcircle(pts[t.a], pts[t.b], pts[t.c]);
        if (cc.radius <= r) K.insert(make_simplex({t.a, t.b, t.c}));
        for (auto [e, apex] : {std::make_pair(key(t.a, t.b), t.c), std::make_pair(key(t.b, t.c), t.a),
                               std::make_pair(key(t.c, t.a), t.b)}) {
            edge_attached[e].push_back(cc.radius);
            edge_apex[e].push_back(apex);
        }
    }
    for (const auto& [e, radii] : edge_attached) {
        const Eigen::Vector2d mid = 0.5 * (pts[e.first] + pts[e.second]);
        const double half = 0.5 * (pts[e.first] - pts[e.second]).norm();
        bool gabriel = true;
        for (int apex : edge_apex[e])
            if ((pts[apex] - mid).norm() < half) gabriel = false;
        const double value = gabriel ? half : *std::min_element(radii.begin(), radii.end());
        if (value <= r) K.insert(make_simplex({e.first, e.second}));
    }
    return K;
}

SampleBoundReport sample_size_bound(double vol, int d, double tau, double eps, double delta) {
    if (vol <= 0.0 || d < 1 || tau <= 0.0) throw config_error("sample_size_bound: bad geometry inputs");
    if (!(eps > 0.0 && eps < tau / 2.0))
        throw config_error("sample_size_bound: requires 0 < eps < tau/2");
    if (!(delta > 0.0 && delta < 1.0)) throw config_error("sample_size_bound: requires 0 < delta < 1");
    SampleBoundReport rep;
    rep.vol = vol;
    rep.d = d;
    rep.tau = tau;
    rep.eps = eps;
    rep.delta = delta;
    rep.theta1 = std::asin(eps / (8.0 * tau));
    rep.theta2 = std::asin(eps / (16.0 * tau));
    rep.lambda1 = vol / (std::pow(std::cos(rep.theta1), d) * ball_volume(d, eps / 4.0));
    rep.lambda2 = vol / (std::pow(std::cos(rep.theta2), d) * ball_volume(d, eps / 8.0));
    rep.n_required =
        static_cast<long long>(std::ceil(rep.lambda1 * (std::log(rep.lambda2) + std::log(1.0 / delta))));
    return rep;
}

ManifoldSampler ManifoldSampler::circle(double radius) {
    ManifoldSampler m;
    m.kind = Kind::Circle;
    m.circle_radius = radius;
    m.intrinsic_dim = 1;
    m.betti_truth = {1, 1};
    return m;
}

ManifoldSampler ManifoldSampler::from_representative(const RepresentativeSpec& spec,
                                                     int intrinsic_dim) {
    if (!spec.betti) throw config_error("ManifoldSampler: representative lacks declared Betti numbers");
    ManifoldSampler m;
    m.kind = Kind::Solid;
    m.solid = spec;
    m.intrinsic_dim = intrinsic_dim;
    m.betti_truth = *spec.betti;
    return m;
}

Eigen::MatrixXd sample_manifold(const ManifoldSampler& m, long long n, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_manifold: need n >= 1");
    if (m.kind == ManifoldSampler::Kind::Circle) {
        SplitMix64 rng(seed);
        Eigen::MatrixXd pts(2, n);
        for (long long j = 0; j < n; ++j) {
            const double angle = 2.0 * M_PI * rng.uniform();
            pts.col(j) = m.circle_center +
                         m.circle_radius * Eigen::Vector2d(std::cos(angle), std::sin(angle));
        }
        return pts;
    }
    return sample_uniform(*m.solid, n, seed).points;
}

namespace {

bool betti_match(const std::vector<long long>& a, const std::vector<long long>& b) {
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        const long long va = i < a.size() ? a[i] : 0;
        const long long vb = i < b.size() ? b[i] : 0;
        if (va != vb) return false;
    }
    return true;
}

}  // namespace

RecoveryTrial homology_recovery_trial(const ManifoldSampler& m, long long n, double r,
                                      std::uint64_t seed) {
    if (r <= 0.0) throw config_error("homology_recovery_trial: radius must be positive");
    const Eigen::MatrixXd pts = sample_manifold(m, n, seed);
    const SimplicialComplex K = cech_complex(pts, r, m.intrinsic_dim + 1);
    RecoveryTrial trial;
    trial.betti = betti_numbers(K);
    trial.success = betti_match(trial.betti.betti, m.betti_truth);
    return trial;
}

}  // namespace topnet
