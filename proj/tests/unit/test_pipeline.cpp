#include <doctest.h>

#include "builders.hpp"
#include "plforge/pipeline.hpp"
#include "plforge/subdivide.hpp"

using namespace plforge;
using namespace testing;

TEST_CASE("hauptcheck certificates") {
    auto sq = square();
    auto same = hauptcheck(sq, sq);
    CHECK(same.outcome == HauptOutcome::Certificate);
    CHECK_FALSE(same.rectified.has_value());

    auto starred = star_at(sq, vec({q(1, 3), q(1, 2)}));
    CHECK(hauptcheck(sq, starred).outcome == HauptOutcome::Certificate);
    CHECK(hauptcheck(barycentric(sq), starred).outcome == HauptOutcome::Certificate);

    auto eps_star = star_at(extend_field(sq), vec({q(1, 2) + eps(), q(1, 3)}));
    auto r = hauptcheck(sq, eps_star);
    CHECK(r.outcome == HauptOutcome::Certificate);
    REQUIRE(r.rectified.has_value());
    CHECK(non_rational_vertices(r.rectified->complex) == 0);
    CHECK(!r.rectified->schedule.steps.empty());

    auto sphere = simplex_boundary(3);
    CHECK(hauptcheck(sphere, barycentric(sphere)).outcome == HauptOutcome::Certificate);
}

TEST_CASE("hauptcheck refutations") {
    auto r = hauptcheck(simplex_boundary(3), standard_simplex(3));
    CHECK(r.outcome == HauptOutcome::Refutation);
    CHECK(r.reason.rfind("homology mismatch", 0) == 0);
    CHECK(hauptcheck(square(), standard_simplex(1)).outcome == HauptOutcome::Refutation);
    // same homology, different polyhedra
    CHECK(hauptcheck(boundary_complex(square()), simplex_boundary(2)).outcome == HauptOutcome::Inconclusive);
}

TEST_CASE("verify_complex on the corpus") {
    for (const auto& e : corpus()) {
        for (const auto& line : verify_complex(e.complex)) CHECK_MESSAGE(line.pass, e.name << " " << line.name);
    }
}
