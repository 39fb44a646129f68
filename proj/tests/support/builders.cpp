#include "builders.hpp"

#include "plforge/subdivide.hpp"

namespace testing {

using namespace plforge;

Scalar q(long a, long b) { return Scalar(mpq_class(a, b)); }
Scalar eps() { return Scalar::epsilon(); }

Vec vec(std::initializer_list<Scalar> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return v;
}

SimplicialComplex make_complex(const std::vector<Vec>& points, const std::vector<Simplex>& simplices) {
    Backend b = Backend::Rational;
    for (const auto& p : points) {
        if (!all_rational(p)) b = Backend::Epsilon;
    }
    SimplicialComplex k(static_cast<int>(points[0].size()), b);
    for (std::size_t i = 0; i < points.size(); ++i) k.add_vertex(static_cast<VertexId>(i), with_backend(points[i], b));
    for (const auto& s : simplices) k.add_simplex(make_simplex(s));
    return k;
}

namespace {
std::vector<Vec> simplex_points(int n) {
    std::vector<Vec> pts;
    pts.push_back(zero_vec(n));
    for (int i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e(i) = Scalar(1);
        pts.push_back(e);
    }
    return pts;
}
}  // namespace

SimplicialComplex standard_simplex(int n) {
    Simplex all;
    for (int i = 0; i <= n; ++i) all.push_back(i);
    return make_complex(simplex_points(n), {all});
}

SimplicialComplex simplex_boundary(int n) {
    Simplex all;
    for (int i = 0; i <= n; ++i) all.push_back(i);
    return make_complex(simplex_points(n), facets(all));
}

SimplicialComplex square(bool main_diagonal) {
    std::vector<Vec> pts{vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(0), q(1)}), vec({q(1), q(1)})};
    if (main_diagonal) return make_complex(pts, {{0, 1, 3}, {0, 2, 3}});
    return make_complex(pts, {{0, 1, 2}, {1, 2, 3}});
}

SimplicialComplex on_basis(int n, const std::vector<Simplex>& simplices) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e(i) = Scalar(1);
        pts.push_back(e);
    }
    return make_complex(pts, simplices);
}

SimplicialComplex torus7() {
    std::vector<Simplex> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return on_basis(7, tris);
}

unsigned long Rng::next() {
    state_ = state_ * 6364136223846793005UL + 1442695040888963407UL;
    return state_ >> 33;
}

long Rng::uniform(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<unsigned long>(hi - lo + 1)); }

std::vector<Scalar> Rng::weights(std::size_t n, long max_num) {
    std::vector<long> w(n);
    long total = 0;
    for (auto& x : w) {
        x = uniform(1, max_num);
        total += x;
    }
    std::vector<Scalar> out;
    for (auto x : w) out.push_back(q(x, total));
    return out;
}

std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({"boundary-delta2", simplex_boundary(2)});
    out.push_back({"boundary-delta3", simplex_boundary(3)});
    out.push_back({"boundary-delta4", simplex_boundary(4)});
    out.push_back({"delta1", standard_simplex(1)});
    out.push_back({"delta2", standard_simplex(2)});
    out.push_back({"delta3", standard_simplex(3)});
    out.push_back({"torus7", torus7()});
    out.push_back({"projective-plane6", on_basis(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                     {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}})});
    out.push_back({"moebius5", on_basis(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 3, 4}, {0, 1, 4}})});
    out.push_back({"wedge-triangles",
                   make_complex({vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(0), q(1)}), vec({q(-1), q(0)}),
                                 vec({q(0), q(-1)})},
                                {{0, 1, 2}, {0, 3, 4}})});
    out.push_back({"wedge-circles", make_complex({vec({q(0), q(0)}), vec({q(1), q(1)}), vec({q(2), q(0)}),
                                                  vec({q(-1), q(1)}), vec({q(-2), q(0)})},
                                                 {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}})});
    out.push_back({"two-edges", make_complex({vec({q(0)}), vec({q(1)}), vec({q(2)}), vec({q(3)})}, {{0, 1}, {2, 3}})});
    out.push_back({"path-on-basis", on_basis(3, {{0, 1}, {1, 2}})});
    out.push_back({"square", square(true)});
    out.push_back({"square-other-diagonal", square(false)});
    out.push_back({"cone-boundary-delta2", cone(vec({q(1, 3), q(1, 3), q(1)}),
                                                [] {
                                                    SimplicialComplex b = simplex_boundary(2);
                                                    SimplicialComplex k(3, Backend::Rational);
                                                    for (const auto& [id, p] : b.vertices()) {
                                                        k.add_vertex(id, vec({p(0), p(1), q(0)}));
                                                    }
                                                    for (const auto& s : b.simplices()) k.add_simplex(s);
                                                    return k;
                                                }())
                                               .complex});
    out.push_back({"cone-torus", cone(zero_vec(7), torus7())
                                     .complex});
    out.push_back({"prism-delta1", prism_triangulated(standard_simplex(1))});
    out.push_back({"prism-delta2", prism_triangulated(standard_simplex(2))});
    out.push_back({"annulus", prism_triangulated(simplex_boundary(2))});
    out.push_back({"octahedron", make_complex({vec({q(1), q(0), q(0)}), vec({q(-1), q(0), q(0)}), vec({q(0), q(1), q(0)}),
                                               vec({q(0), q(-1), q(0)}), vec({q(0), q(0), q(1)}), vec({q(0), q(0), q(-1)})},
                                              {{0, 2, 4}, {0, 3, 4}, {1, 2, 4}, {1, 3, 4}, {0, 2, 5}, {0, 3, 5},
                                               {1, 2, 5}, {1, 3, 5}})});
    out.push_back({"barycentric-delta2", barycentric(standard_simplex(2))});
    out.push_back({"torus-times-interval", prism_triangulated(torus7())});
    return out;
}

}  // namespace testing

namespace testing {

Vec epsilon_point(const SimplicialComplex& k, const Simplex& s, Rng& rng) {
    auto w = rng.weights(s.size());
    Vec p = zero_vec(k.ambient_dim(), Backend::Epsilon);
    long drift = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        // infinitesimal shift along the simplex, coefficients summing to zero;
        // the first is nonzero so the point is not rational by accident
        long c = rng.uniform(-2, 2);
        if (i == 0 && c == 0) c = 1;
        if (i + 1 == s.size()) c = -drift;
        drift += c;
        p += k.point(s[i]) * (w[i] + eps() * Scalar(c));
    }
    return p;
}

SimplicialComplex random_epsilon_subdivision(const SimplicialComplex& k, Rng& rng, int starrings) {
    SimplicialComplex m = k.with_backend(Backend::Epsilon);
    for (int i = 0; i < starrings; ++i) {
        std::vector<Simplex> cells;
        for (const auto& s : m.simplices()) {
            if (s.size() > 1) cells.push_back(s);
        }
        const auto& s = cells[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(cells.size()) - 1))];
        m = star_at(m, epsilon_point(m, s, rng));
    }
    return m;
}

}  // namespace testing
