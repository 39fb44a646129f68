#include <doctest.h>

#include "builders.hpp"
#include "plforge/invariant.hpp"
#include "plforge/neighborhood.hpp"

using namespace plforge;
using namespace testing;

namespace {

OpenCellSet cells(std::initializer_list<Simplex> xs) {
    OpenCellSet out;
    for (const auto& s : xs) out.cells.insert(s);
    return out;
}

OpenCellSet all_but(const SimplicialComplex& k, const std::vector<Simplex>& missing) {
    OpenCellSet out;
    for (const auto& s : k.simplices()) {
        if (std::find(missing.begin(), missing.end(), s) == missing.end()) out.cells.insert(s);
    }
    return out;
}

// Open simplexes of K not lying in the boundary complex.
OpenCellSet interior(const SimplicialComplex& k) {
    auto bd = boundary_complex(k);
    OpenCellSet out;
    for (const auto& s : k.simplices()) {
        if (!bd.contains(s)) out.cells.insert(s);
    }
    return out;
}

Vec random_point(const SimplicialComplex& k, const Simplex& s, Rng& rng) {
    auto w = rng.weights(s.size());
    Vec p = zero_vec(k.ambient_dim());
    for (std::size_t i = 0; i < s.size(); ++i) p += k.point(s[i]) * w[i];
    return p;
}

// Homology with trailing zero groups dropped, so complexes of different dimension compare.
HomologyProfile trimmed(const SimplicialComplex& k) {
    auto h = homology(k);
    while (!h.betti.empty() && h.betti.back() == 0 && h.torsion.back().empty()) {
        h.betti.pop_back();
        h.torsion.pop_back();
    }
    return h;
}

SimplicialComplex drop_height(const SimplicialComplex& k) {
    const int n = k.ambient_dim() - 1;
    SimplicialComplex out(n, k.backend());
    for (const auto& [id, p] : k.vertices()) out.add_vertex(id, p.head(n));
    for (const auto& s : k.simplices()) out.add_simplex(s);
    return out;
}

}  // namespace

TEST_CASE("derived_full") {
    auto tri = standard_simplex(2);
    auto bd = boundary_complex(tri);
    CHECK_FALSE(is_full(bd, tri));
    auto d = derived_full(tri, bd);
    CHECK(is_full(d.y, d.sub.complex));
    CHECK(d.y.simplices_of_dim(1).size() == 6);

    Rng rng(9);
    for (const auto& e : corpus()) {
        if (e.complex.size() > 300) continue;
        auto sk = skeleton(e.complex, std::max(0, e.complex.dim() - 1));
        auto df = derived_full(e.complex, sk);
        CHECK_MESSAGE(is_full(df.y, df.sub.complex), e.name);
        CHECK_MESSAGE(trimmed(df.y) == trimmed(sk), e.name);
    }
}

TEST_CASE("regular neighborhoods") {
    auto tri = standard_simplex(2);
    auto v = regular_neighborhood(tri, tri.generated_by({{0}}));
    CHECK(v.u == star(v.sub.complex, 0));
    CHECK(euler(v.u) == 1);

    auto sphere = simplex_boundary(3);
    auto edge = sphere.generated_by({{0, 1}});
    auto ue = regular_neighborhood(sphere, edge);
    CHECK(trimmed(ue.u) == trimmed(edge));

    auto whole = regular_neighborhood(tri, tri);
    CHECK(whole.u == whole.sub.complex);
    CHECK(whole.frontier.empty());

    CHECK_THROWS_AS(regular_neighborhood(tri, boundary_complex(tri)), Error);

    Rng rng(21);
    for (const auto& e : corpus()) {
        if (e.complex.size() > 250) continue;
        std::set<VertexId> keep;
        for (const auto& [id, p] : e.complex.vertices()) {
            if (rng.uniform(0, 2) == 0) keep.insert(id);
        }
        if (keep.empty()) keep.insert(e.complex.vertices().begin()->first);
        auto y = induced_subcomplex(e.complex, keep);
        auto rn = regular_neighborhood(e.complex, y);
        CHECK_MESSAGE(trimmed(rn.u) == trimmed(y), e.name);
        // Y lies in the interior: its vertices' stars are inside U and miss the frontier
        for (const auto& [id, p] : rn.y.vertices()) {
            CHECK(is_subcomplex(star(rn.sub.complex, id), rn.u));
            CHECK_FALSE(rn.frontier.has_vertex(id));
        }
    }
}

TEST_CASE("xi map") {
    auto seg = standard_simplex(1);
    auto xi = xi_map(seg, seg.generated_by({{0}}));
    CHECK(eval(xi.map, vec({q(2, 7)})) == vec({q(2, 7)}));
    CHECK(xi.zero_set == seg.generated_by({{0}}));

    SimplicialComplex two(1, Backend::Rational);
    two.add_vertex(0, seg.point(0));
    two.add_vertex(1, seg.point(1));
    two.add_simplex({0});
    two.add_simplex({1});
    CHECK_THROWS_AS(xi_map(seg, two), Error);

    Rng rng(4);
    for (const auto& e : corpus()) {
        if (e.complex.size() > 250) continue;
        std::set<VertexId> keep;
        for (const auto& [id, p] : e.complex.vertices()) {
            if (rng.uniform(0, 1) == 0) keep.insert(id);
        }
        if (keep.empty()) continue;
        auto u1 = induced_subcomplex(e.complex, keep);
        auto x = xi_map(e.complex, u1);
        CHECK_MESSAGE(x.zero_set == u1, e.name);
        // xi^{-1}([0,1/2]) contains the half-way point of every edge leaving U1
        auto band = level_set(x.map, {}, {{0, q(1, 2)}}).bands.at(0);
        CarrierIndex bi(band);
        for (const auto& s : e.complex.simplices_of_dim(1)) {
            if (keep.count(s[0]) + keep.count(s[1]) != 1) continue;
            VertexId in = keep.count(s[0]) ? s[0] : s[1], out = in == s[0] ? s[1] : s[0];
            Vec quarter = e.complex.point(in) * q(3, 4) + e.complex.point(out) * q(1, 4);
            CHECK(bi.find(quarter).has_value());
        }
    }
}

TEST_CASE("standardize on a segment") {
    auto seg = standard_simplex(1);
    auto s = standardize(seg, cells({{0, 1}, {1}}), {cells({{1}})});
    REQUIRE(s.deleted == std::vector<Simplex>{{0}});
    // closure of Y is [1/4, 1] and V the point 1/4
    std::set<Scalar> vs;
    for (const auto& c : s.v.cells) {
        REQUIRE(c.size() == 1);
        vs.insert(s.q.point(c[0])(0));
    }
    CHECK(vs == std::set<Scalar>{q(1, 4)});
    Scalar lo = 1;
    for (const auto& c : closure(s.y)) {
        for (auto v : c) lo = std::min(lo, s.q.point(v)(0));
    }
    CHECK(lo == q(1, 4));
    CHECK(s.pieces.at(0).cells.size() == 1);

    // t0 = 1/2 at v_sigma with far mass 1/2 -> 1/4 and 3/4
    CHECK(tau(s, vec({q(1, 4)})) == vec({q(3, 8)}));
    CHECK(tau(s, vec({1})) == vec({1}));
    CHECK(tau(s, vec({q(3, 4)})) == vec({q(3, 4)}));
    CHECK_THROWS_AS(tau(s, vec({0})), Error);

    // in one dimension the complement formula is exact
    CHECK(total_volume(s.formula_closure) == q(3, 4));

    auto id = standardize(seg, all_but(seg, {}));
    CHECK(id.deleted.empty());
    CHECK(id.v.cells.empty());
    CHECK(tau(id, vec({q(1, 3)})) == vec({q(1, 3)}));
    CHECK(id.y.cells.size() == id.q.size());

    CHECK_THROWS_AS(standardize(seg, cells({{1}})), Error);
}

TEST_CASE("standardize open simplexes") {
    Rng rng(99);
    std::vector<std::pair<SimplicialComplex, OpenCellSet>> families{
        {standard_simplex(2), interior(standard_simplex(2))},
        {square(), interior(square())},
        {standard_simplex(2), all_but(standard_simplex(2), {{0}})},
        {standard_simplex(2), all_but(standard_simplex(2), {{0, 1}})},
    };
    for (const auto& [k, x] : families) {
        auto s = standardize(k, x, {x});
        // vertex level: a K'' vertex is in the closure of Im tau iff it is not inside a deleted simplex
        for (const auto& [v, p] : s.k2.complex.vertices()) {
            CHECK(in_image_closure(s, p) == s.formula_closure.has_vertex(v));
        }
        for (const auto& c : s.formula_closure.simplices()) CHECK(in_image_closure(s, barycenter(s.formula_closure.points(c))));
        auto cy = closure(s.y);
        CHECK(total_volume(s.formula_closure) <= total_volume(s.q.generated_by(std::vector<Simplex>(cy.begin(), cy.end()))));
        // V avoids the deleted simplexes; Y and V are the exact image and frontier
        CarrierIndex kin(k);
        for (const auto& c : s.v.cells) {
            Vec b = barycenter(s.q.points(c));
            CHECK(x.contains(*kin.find(b)));
            CHECK(in_image_closure(s, b));
            CHECK_FALSE(in_image(s, b));
        }
        for (const auto& c : s.y.cells) CHECK(in_image(s, barycenter(s.q.points(c))));
        CarrierIndex qi(s.q);
        auto xs = std::vector<Simplex>(x.cells.begin(), x.cells.end());
        for (int i = 0; i < 100; ++i) {
            const auto& c = xs[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(xs.size()) - 1))];
            Vec p = random_point(k, c, rng);
            Vec t = tau(s, p);
            CHECK(*kin.find(t) == c);
            CHECK(s.y.contains(*qi.find(t)));
            CHECK(s.pieces[0].contains(*qi.find(t)));
        }
    }
}

TEST_CASE("standardize departs from the complement formula in dimension two") {
    auto tri = standard_simplex(2);
    auto s = standardize(tri, all_but(tri, {{0}}));
    // a point of Im tau inside the open K''-star of the deleted vertex
    Vec p = s.k1.complex.point(0) * q(49, 100) + s.k1.complex.point(s.k1.barycenter_of.at({0, 1})) * q(20, 100) +
            s.k1.complex.point(s.k1.barycenter_of.at({0, 1, 2})) * q(31, 100);
    CHECK(in_image(s, p));
    CHECK_FALSE(CarrierIndex(s.formula_closure).find(p).has_value());
}

TEST_CASE("f_K") {
    auto seg = standard_simplex(1);
    auto f = fk_function(seg, cells({{0}}));
    // on [v0, m]: f(t v0 + (1 - t) m) = 1 - t
    CHECK(fk_eval(f, vec({q(3, 8)})) == q(3, 4));
    CHECK(fk_eval(f, vec({0})) == 0);
    CHECK(fk_eval(f, vec({q(3, 4)})) == 1);
    CHECK(fk_zero_set_is_w(f));
    auto lv = fk_levels(f, {q(1, 2)});
    CHECK(lv.levels[0].cells.size() == 1);
    Vec half = lv.complex.point(lv.levels[0].cells.begin()->at(0));
    CHECK(half == vec({q(1, 4)}));

    auto empty = fk_function(seg, OpenCellSet{});
    CHECK(fk_eval(empty, vec({q(1, 3)})) == 1);

    auto open = fk_function(seg, cells({{0, 1}}));
    CHECK_THROWS_AS(fk_eval(open, vec({0})), Error);
    CHECK(fk_eval(open, vec({q(1, 2)})) == 0);

    Rng rng(8);
    for (const auto& e : corpus()) {
        if (e.complex.size() > 120) continue;
        OpenCellSet w;
        for (const auto& s : e.complex.simplices()) {
            if (rng.uniform(0, 3) == 0) w.cells.insert(s);
        }
        auto fk = fk_function(e.complex, w);
        auto levels = fk_levels(fk, {q(1, 2), q(1, 3)});
        CHECK(validate(levels.complex).ok());
        for (const auto& lvl : levels.levels) {
            for (const auto& c : closure(lvl)) CHECK((lvl.contains(c) || levels.undefined.contains(c)));
        }
        // f_K >= 0, and the sublevel set is where it is below c
        for (const auto& c : levels.sublevels[0].cells) {
            Scalar v = fk_eval(fk, barycenter(levels.complex.points(c)));
            CHECK(v.sign() >= 0);
            CHECK(v < q(1, 2));
        }
    }
}

TEST_CASE("collars") {
    auto seg = standard_simplex(1);
    auto c = collar(seg, cells({{0, 1}, {1}}));
    CHECK(c.designated == std::set<VertexId>{0});
    CHECK(c.z.simplices_of_dim(1).size() == 4 + 1);
    CHECK(c.z.point(c.top_offset) == vec({0, 1}));
    auto slice = collar_slice(c, q(1, 2));
    CHECK(slice.vertices().size() == 1);
    CHECK(trimmed(slice) == trimmed(collar_core(c)));

    auto closed = collar(seg, all_but(seg, {}));
    CHECK(closed.z == closed.base);

    auto sq = square();
    auto open_square = collar(sq, interior(sq));
    CHECK(validate(open_square.z).ok());
    CHECK(trimmed(open_square.z) == trimmed(open_square.base));
    for (const auto& delta : {q(1, 3), q(1, 7)}) {
        auto sl = collar_slice(open_square, delta);
        auto core = collar_core(open_square);
        CHECK(trimmed(sl) == trimmed(core));
        // every vertex of closure(V) is designated, so Z is a product there
        CHECK(is_subdivision(drop_height(sl), core));
    }
    // base equals closure(Y) x {0}
    CHECK(open_square.base.simplices() == open_square.k2.complex.simplices());

    auto tri = standard_simplex(2);
    CHECK_THROWS_AS(collar(tri, all_but(tri, {{0}})), Error);

    auto st = standardize(tri, interior(tri));
    auto cs = collar(st);
    CHECK(validate(cs.z).ok());
    CHECK(trimmed(collar_slice(cs, q(1, 2))) == trimmed(collar_core(cs)));
}
