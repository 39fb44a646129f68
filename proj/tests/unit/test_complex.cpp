#include <doctest.h>

#include "builders.hpp"

using namespace plforge;
using namespace testing;

TEST_CASE("validate") {
    auto two = make_complex({vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(0), q(1)}), vec({q(1), q(1)})},
                            {{0, 1, 2}, {1, 2, 3}});
    CHECK(validate(two).ok());

    auto crossing = make_complex({vec({q(0), q(0)}), vec({q(1), q(1)}), vec({q(0), q(1)}), vec({q(1), q(0)})},
                                 {{0, 1}, {2, 3}});
    auto r = validate(crossing);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::BadIntersection);

    auto collinear = make_complex({vec({q(0), q(0)}), vec({q(1), q(1)}), vec({q(2), q(2)})}, {{0, 1, 2}});
    r = validate(collinear);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::Degenerate);

    SimplicialComplex missing(1, Backend::Rational);
    missing.add_vertex(0, vec({q(0)}));
    missing.add_vertex(1, vec({q(1)}));
    missing.add_simplex_raw({0, 1});
    missing.add_simplex_raw({0});
    r = validate(missing);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::MissingFace);

    // overlapping triangles sharing an edge but folding onto each other
    auto fold = make_complex({vec({q(0), q(0)}), vec({q(2), q(0)}), vec({q(1), q(1)}), vec({q(1), q(2)})},
                             {{0, 1, 2}, {0, 1, 3}});
    CHECK_FALSE(validate(fold).ok());
    // touching at a vertex of one and an edge interior of the other
    auto t = make_complex({vec({q(0), q(0)}), vec({q(2), q(0)}), vec({q(1), q(1)}), vec({q(1), q(-1)}),
                           vec({q(2), q(-1)})},
                          {{0, 1, 2}, {3, 4}, {1, 3}});
    CHECK(validate(t).ok());
    auto t2 = make_complex({vec({q(0), q(0)}), vec({q(2), q(0)}), vec({q(1), q(1)}), vec({q(1), q(0)}),
                            vec({q(1), q(-1)})},
                           {{0, 1, 2}, {3, 4}});
    CHECK_FALSE(validate(t2).ok());
}

TEST_CASE("star and link") {
    // cone over the boundary of a square
    auto k = make_complex({vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(0), q(1)}), vec({q(-1), q(0)}),
                           vec({q(0), q(-1)})},
                          {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
    auto lk = link(k, 0);
    CHECK(lk.simplices_of_dim(1).size() == 4);
    CHECK(lk.simplices_of_dim(0).size() == 4);
    CHECK(lk.dim() == 1);

    auto edge = standard_simplex(1);
    auto l1 = link(edge, 0);
    CHECK(l1.size() == 1);
    CHECK(l1.contains({1}));

    auto b3 = simplex_boundary(3);
    auto l3 = link(b3, 0);
    CHECK(l3.simplices_of_dim(1).size() == 3);
    CHECK(l3.simplices_of_dim(0).size() == 3);
    CHECK(l3.dim() == 1);
    CHECK_THROWS_AS(star(b3, 17), Error);

    for (const auto& s : l3.simplices()) {
        CHECK_FALSE(std::binary_search(s.begin(), s.end(), VertexId{0}));
        CHECK(star(b3, 0).contains(s));
    }
}

TEST_CASE("carrier") {
    auto tri = standard_simplex(2);
    CHECK(carrier(tri, vec({q(1, 2), q(0)})) == Simplex{0, 1});
    CHECK(carrier(tri, vec({q(1), q(0)})) == Simplex{1});
    auto teps = tri.with_backend(Backend::Epsilon);
    CHECK(carrier(teps, vec({eps(), eps()})) == Simplex{0, 1, 2});
    CarrierIndex idx(teps);
    auto loc = idx.locate(vec({eps(), eps()}));
    REQUIRE(loc);
    CHECK(loc->second[0] == q(1) - q(2) * eps());
    CHECK(loc->second[1] == eps());
    CHECK_THROWS_AS(carrier(tri, vec({q(1), q(1)})), Error);
    CHECK(in_open_star(tri, 0, vec({q(1, 4), q(1, 4)})));
    CHECK_FALSE(in_open_star(tri, 0, vec({q(1, 2), q(1, 2)})));
}

TEST_CASE("fullness") {
    auto tri = standard_simplex(2);
    CHECK(is_full(tri.generated_by({{0, 1}}), tri));
    CHECK_FALSE(is_full(tri.generated_by({{0}, {1}}), tri));
    CHECK_FALSE(is_full(simplex_boundary(2), tri));
    CHECK_THROWS_AS(is_full(simplex_boundary(3), tri), Error);
}

TEST_CASE("join and cone") {
    SimplicialComplex pts = make_complex({vec({q(0), q(0)}), vec({q(1), q(0)}), vec({q(2), q(0)})}, {{0}, {1}, {2}});
    CHECK(join(pts, {0}, {1}) == Simplex{0, 1});
    auto k = make_complex({vec({q(0), q(0)}), vec({q(2), q(0)}), vec({q(1), q(0)})}, {{0, 1}, {2}});
    CHECK_THROWS_AS(join(k, {2}, {0, 1}), Error);

    SimplicialComplex base(3, Backend::Rational);
    base.add_vertex(0, vec({q(0), q(0), q(0)}));
    base.add_vertex(1, vec({q(1), q(0), q(0)}));
    base.add_vertex(2, vec({q(0), q(1), q(0)}));
    base.add_simplex({0, 1});
    base.add_simplex({1, 2});
    base.add_simplex({0, 2});
    auto c = cone(vec({q(0), q(0), q(1)}), base);
    CHECK(c.complex.simplices_of_dim(2).size() == 3);
    CHECK(c.complex.simplices_of_dim(1).size() == 6);
    CHECK(c.complex.simplices_of_dim(0).size() == 4);
    CHECK(validate(c.complex).ok());
    CHECK_THROWS_AS(cone(vec({q(1, 2), q(0), q(0)}), base), Error);
}

TEST_CASE("skeleton") {
    auto tri = standard_simplex(2);
    auto s1 = skeleton(tri, 1);
    CHECK(s1.size() == 6);
    CHECK(skeleton(tri, 2) == tri);
    CHECK(skeleton(simplex_boundary(3), 0).size() == 4);
}

TEST_CASE("corpus is valid") {
    auto all = corpus();
    CHECK(all.size() >= 20);
    for (const auto& e : all) {
        INFO(e.name);
        CHECK(validate(e.complex).ok());
    }
}

TEST_CASE("fullness is invariant under relabeling") {
    auto k = simplex_boundary(3);
    auto y = k.generated_by({{0, 1}, {1, 2}});
    SimplicialComplex k2(k.ambient_dim(), k.backend()), y2(k.ambient_dim(), k.backend());
    auto relabel = [](VertexId v) { return 10 - 3 * v; };
    for (const auto& [id, p] : k.vertices()) k2.add_vertex(relabel(id), p);
    for (const auto& s : k.simplices()) {
        Simplex t;
        for (auto v : s) t.push_back(relabel(v));
        k2.add_simplex(make_simplex(t));
    }
    for (const auto& s : y.simplices()) {
        Simplex t;
        for (auto v : s) t.push_back(relabel(v));
        for (auto v : t) y2.add_vertex(v, k2.point(v));
        y2.add_simplex(make_simplex(t));
    }
    CHECK(is_full(y, k) == is_full(y2, k2));
}

TEST_CASE("cell complex from polytope") {
    std::vector<Vec> cube;
    for (int i = 0; i < 8; ++i) cube.push_back(vec({q(i & 1), q((i >> 1) & 1), q((i >> 2) & 1)}));
    auto c = CellComplex::from_polytope(cube, Backend::Rational);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& cell : c.cells()) counts[cell.dim]++;
    CHECK(counts[0] == 8);
    CHECK(counts[1] == 12);
    CHECK(counts[2] == 6);
    CHECK(counts[3] == 1);
    std::vector<Vec> with_inner = cube;
    with_inner.push_back(vec({q(1, 2), q(1, 2), q(1, 2)}));
    CHECK(CellComplex::from_polytope(with_inner, Backend::Rational).cells().size() == 27);
}
