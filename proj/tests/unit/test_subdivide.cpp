#include <doctest.h>

#include "builders.hpp"
#include "plforge/subdivide.hpp"

using namespace plforge;
using namespace testing;

namespace {

long face_count_euler(const SimplicialComplex& k) {
    long chi = 0;
    for (const auto& s : k.simplices()) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
}

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::set<VertexId> vertex_ids(const SimplicialComplex& k) {
    std::set<VertexId> out;
    for (const auto& [id, p] : k.vertices()) out.insert(id);
    return out;
}

}  // namespace

TEST_CASE("barycentric subdivision") {
    auto b1 = barycentric(standard_simplex(1));
    CHECK(b1.simplices_of_dim(1).size() == 2);
    CHECK(b1.vertices().size() == 3);
    for (int n = 1; n <= 4; ++n) {
        auto k = standard_simplex(n);
        auto b = barycentric(k);
        CHECK(b.simplices_of_dim(n).size() == static_cast<std::size_t>(factorial(n + 1)));
        CHECK(is_subdivision(b, k));
        CHECK(total_volume(b) == total_volume(k));
        if (n >= 1) CHECK_FALSE(is_subdivision(k, b));
    }
    for (const auto& e : corpus()) {
        if (e.complex.size() > 400) continue;
        INFO(e.name);
        auto b = barycentric(e.complex);
        CHECK(face_count_euler(b) == face_count_euler(e.complex));
        CHECK(is_subdivision(b, e.complex));
    }
}

TEST_CASE("starring") {
    auto tri = standard_simplex(2);
    auto s = star_at(tri, vec({q(1, 3), q(1, 3)}));
    CHECK(s.simplices_of_dim(2).size() == 3);
    auto e = star_at(tri, vec({q(1, 2), q(0)}));
    CHECK(e.simplices_of_dim(2).size() == 2);
    CHECK(e.simplices_of_dim(1).size() == 5);
    CHECK_FALSE(e.contains({0, 1}));
    auto se = star_at(tri.with_backend(Backend::Epsilon), vec({eps(), eps()}));
    CHECK(se.simplices_of_dim(2).size() == 3);
    CHECK(se.backend() == Backend::Epsilon);
    int eps_vertices = 0;
    for (const auto& [id, p] : se.vertices()) eps_vertices += all_rational(p) ? 0 : 1;
    CHECK(eps_vertices == 1);
    CHECK(total_volume(se) == q(1, 2));
    Scalar direct;
    for (const auto& t : se.simplices_of_dim(2)) direct += simplex_volume(se.points(t));
    CHECK(direct == q(1, 2));
    CHECK(is_subdivision(se, tri.with_backend(Backend::Epsilon)));
    CHECK(validate(se).ok());
    CHECK_THROWS_AS(star_at(tri, vec({q(1), q(0)})), Error);
    CHECK_THROWS_AS(star_at(tri, vec({q(1), q(1)})), Error);
}

TEST_CASE("pulling triangulation") {
    std::vector<Vec> sq{vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(0), q(1)}), vec({q(1), q(1)})};
    auto s = simplicialize(CellComplex::from_polytope(sq, Backend::Rational));
    CHECK(s.simplices_of_dim(2).size() == 2);
    CHECK(s.vertices().size() == 4);

    std::vector<Vec> cube;
    for (int i = 0; i < 8; ++i) cube.push_back(vec({q(i & 1), q((i >> 1) & 1), q((i >> 2) & 1)}));
    auto c = simplicialize(CellComplex::from_polytope(cube, Backend::Rational));
    CHECK(c.simplices_of_dim(3).size() == 6);
    CHECK(c.vertices().size() == 8);
    CHECK(total_volume(c) == q(1));
    CHECK(validate(c).ok());
    // every tetrahedron of the pulling triangulation contains the least vertex
    for (const auto& t : c.simplices_of_dim(3)) CHECK(t[0] == 0);

    auto tri = standard_simplex(2);
    CHECK(simplicialize(CellComplex::from_simplicial(tri)) == tri);
}

TEST_CASE("prisms") {
    auto edge = prism_triangulated(standard_simplex(1));
    CHECK(edge.simplices_of_dim(2).size() == 2);

    auto k = standard_simplex(2);
    auto p = prism_triangulated(k);
    // staircase oracle: {v0..vi at level 0} + {vi..vn at level 1}
    const VertexId off = k.next_vertex_id();
    std::set<Simplex> stairs;
    for (int i = 0; i <= 2; ++i) {
        Simplex s;
        for (int j = 0; j <= i; ++j) s.push_back(j);
        for (int j = i; j <= 2; ++j) s.push_back(j + off);
        stairs.insert(make_simplex(s));
    }
    auto tets = p.simplices_of_dim(3);
    CHECK(std::set<Simplex>(tets.begin(), tets.end()) == stairs);
    CHECK(total_volume(p) == q(1, 2));
    CHECK(vertex_ids(p).size() == 6);

    for (const auto& e : corpus()) {
        if (e.complex.size() > 300) continue;
        INFO(e.name);
        auto pt = prism_triangulated(e.complex);
        CHECK(pt.vertices().size() == 2 * e.complex.vertices().size());
        CHECK(validate(pt).ok());
        std::set<VertexId> bottom;
        for (const auto& [id, x] : e.complex.vertices()) bottom.insert(id);
        auto base = induced_subcomplex(pt, bottom);
        CHECK(base.simplices() == e.complex.simplices());
        CHECK(face_count_euler(pt) == face_count_euler(e.complex));
    }
}

TEST_CASE("hyperplane cuts") {
    SimplicialComplex seg = make_complex({vec({q(0)}), vec({q(1)})}, {{0, 1}});
    auto cut = hyperplane_cut(seg, vec({q(1)}), q(1, 2));
    CHECK(cut.simplices_of_dim(1).size() == 2);
    CHECK(cut.point(2) == vec({q(1, 2)}));

    auto tri = standard_simplex(2).with_backend(Backend::Epsilon);
    auto sliver = hyperplane_cut(tri, vec({q(1), q(0)}), eps());
    CHECK(sliver.simplices_of_dim(2).size() == 3);
    CHECK(total_volume(sliver) == q(1, 2));
    CHECK(is_subdivision(sliver, tri));
    for (const auto& [id, p] : sliver.vertices()) {
        if (id >= 3) CHECK(p(0) == eps());
    }

    auto same = hyperplane_cut(standard_simplex(2), vec({q(1), q(0)}), q(0));
    CHECK(same == standard_simplex(2));
    // degenerate: simplex inside the hyperplane stays uncut
    auto edge_in = hyperplane_cut(square(true), vec({q(1), q(-1)}), q(0));
    CHECK(edge_in == square(true));

    Rng rng(7);
    for (const auto& e : corpus()) {
        if (e.complex.size() > 300) continue;
        INFO(e.name);
        const int n = e.complex.ambient_dim();
        Vec l(n);
        for (int i = 0; i < n; ++i) l(i) = q(rng.uniform(-3, 3));
        Scalar c = q(rng.uniform(-2, 4), 5);
        auto out = hyperplane_cut(e.complex, l, c);
        CHECK(is_subdivision(out, e.complex));
        CHECK(face_count_euler(out) == face_count_euler(e.complex));
        for (const auto& [id, p] : out.vertices()) {
            if (!e.complex.has_vertex(id)) CHECK(dot(l, p) == c);
        }
    }
}

TEST_CASE("common refinement") {
    SimplicialComplex seg = make_complex({vec({q(0)}), vec({q(1)})}, {{0, 1}}).with_backend(Backend::Epsilon);
    SimplicialComplex split = make_complex({vec({q(0)}), vec({eps()}), vec({q(1)})}, {{0, 1}, {1, 2}});
    auto r = common_refinement(seg, split, RefineMode::Equal);
    CHECK(r.simplices_of_dim(1).size() == 2);
    CHECK(is_subdivision(r, seg));

    auto a = square(true), b = square(false);
    auto ab = common_refinement(a, b, RefineMode::Equal);
    CHECK(ab.simplices_of_dim(2).size() == 4);
    bool center = false;
    for (const auto& [id, p] : ab.vertices()) center |= p == vec({q(1, 2), q(1, 2)});
    CHECK(center);
    CHECK(is_subdivision(ab, a));
    CHECK(is_subdivision(ab, b));

    CHECK(common_refinement(a, a) == a);

    auto big = make_complex({vec({q(0)}), vec({q(2)})}, {{0, 1}});
    CHECK_THROWS_AS(common_refinement(seg.with_backend(Backend::Rational), big), Error);
    CHECK_NOTHROW(common_refinement(big, seg.with_backend(Backend::Rational)));
    CHECK_THROWS_AS(common_refinement(big, seg.with_backend(Backend::Rational), RefineMode::Equal), Error);
}

TEST_CASE("random stellar subdivisions keep volume") {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        int n = static_cast<int>(rng.uniform(1, 3));
        auto k = standard_simplex(n).with_backend(Backend::Epsilon);
        auto cur = k;
        for (int step = 0; step < 4; ++step) {
            auto tops = cur.simplices_of_dim(n);
            const auto& s = tops[rng.next() % tops.size()];
            auto w = rng.weights(s.size());
            Vec p = zero_vec(n, Backend::Epsilon);
            for (std::size_t i = 0; i < s.size(); ++i) p += cur.point(s[i]) * w[i];
            if (rng.uniform(0, 1)) p(0) += eps() * q(rng.uniform(-1, 1), 7);
            cur = star_at(cur, p);
        }
        CHECK(total_volume(cur) == total_volume(k));
        CHECK(is_subdivision(cur, k));
        CHECK(face_count_euler(cur) == 1);
        CHECK(validate(cur).ok());
    }
}
