#include <doctest.h>

#include "plforge/linalg.hpp"
#include "plforge/scalar.hpp"

using namespace plforge;

namespace {
Scalar q(long a, long b = 1) { return Scalar(mpq_class(a, b)); }
Scalar eps() { return Scalar::epsilon(); }
}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
    CHECK(q(2, 3) * q(3, 4) == q(1, 2));
    CHECK(q(1) / q(3) - q(1, 3) == q(0));
    CHECK_THROWS_AS(q(1) / q(0), Error);
    try {
        (void)(q(1) / q(0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
}

TEST_CASE("epsilon field") {
    CHECK(eps() * eps() == Scalar::from_polys({0, 0, 1}, {1}));
    Scalar lhs = (q(1) - eps() * eps()) / (q(1) - eps());
    CHECK(lhs == q(1) + eps());
    CHECK(lhs.backend() == Backend::Epsilon);
    CHECK(sign((q(1) - q(1000) * eps()) / (q(1) + eps())) == 1);
    CHECK(sign(eps()) == 1);
    CHECK(sign(-eps() * eps()) == -1);
    CHECK(eps() < q(1, 1000000));
    CHECK(eps() * eps() < eps());
    CHECK(standard_part((q(1) + eps()) / (q(2) - eps())) == mpq_class(1, 2));
    CHECK_FALSE(standard_part(q(1) / eps()).has_value());
    CHECK(standard_part(eps()) == mpq_class(0));
}

TEST_CASE("backend checks") {
    Scalar a = q(1);
    Scalar b = Scalar(mpq_class(1), Backend::Epsilon);
    CHECK(a == b);
    CHECK_THROWS_AS(arith(a, b, ArithOp::Add), Error);
    CHECK(arith(b, eps(), ArithOp::Add) == q(1) + eps());
    CHECK((a + eps()).backend() == Backend::Epsilon);
    CHECK_THROWS_AS(eps().rational_value(), Error);
    CHECK_THROWS_AS(eps().with_backend(Backend::Rational), Error);
    CHECK(b.with_backend(Backend::Rational).backend() == Backend::Rational);
}

TEST_CASE("degree cap") {
    std::size_t old = degree_cap();
    set_degree_cap(3);
    Scalar x = eps() * eps() * eps();
    CHECK_THROWS_AS(x * eps(), Error);
    set_degree_cap(old);
    CHECK_NOTHROW(x * eps());
}

TEST_CASE("parse and print") {
    CHECK(Scalar::parse("1/2", Backend::Rational) == q(1, 2));
    CHECK(Scalar::parse("-3", Backend::Rational) == q(-3));
    CHECK(Scalar::parse("1/2+3*e", Backend::Epsilon) == q(1, 2) + q(3) * eps());
    CHECK(Scalar::parse("e^2", Backend::Epsilon) == eps() * eps());
    CHECK(Scalar::parse("(1+e)/(2-e)", Backend::Epsilon) == (q(1) + eps()) / (q(2) - eps()));
    CHECK_THROWS_AS(Scalar::parse("e", Backend::Rational), Error);
    CHECK_THROWS_AS(Scalar::parse("1/", Backend::Rational), Error);
    for (const Scalar& s : {q(1, 2), q(-7, 3), eps(), q(1) - eps() / q(3), (q(1) + eps()) / (q(2) - eps()),
                            -eps() * eps()}) {
        CHECK(Scalar::parse(s.str(), Backend::Epsilon) == s);
    }
}

TEST_CASE("field axioms on random values") {
    // fixed-seed linear congruential stream of small Q(e) values
    unsigned long state = 12345;
    auto next = [&](long range) {
        state = state * 6364136223846793005UL + 1442695040888963407UL;
        return static_cast<long>((state >> 33) % (2 * range + 1)) - range;
    };
    auto random_scalar = [&] {
        Poly num{mpq_class(next(5), 1 + std::labs(next(4))), mpq_class(next(3)), mpq_class(next(2))};
        Poly den{mpq_class(1 + std::labs(next(4))), mpq_class(next(3))};
        poly::trim(num);
        return Scalar::from_polys(num, den);
    };
    for (int i = 0; i < 200; ++i) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(sign(a - b) == -sign(b - a));
        CHECK(sign(a * b) == sign(a) * sign(b));
        if (a < b && b < c) CHECK(a < c);
    }
}

TEST_CASE("linear algebra") {
    Mat m(3, 3);
    m << q(2), q(1), q(0), q(1), q(3), q(1), q(0), q(1), q(4);
    CHECK(determinant(m) == q(18));
    CHECK(rank(m) == 3);
    Mat s(2, 3);
    s << q(1), q(2), q(3), q(2), q(4), q(6);
    CHECK(rank(s) == 1);
    auto ns = nullspace(s);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) CHECK(dot(s.row(0).transpose(), v) == q(0));

    Vec a(2), b(2), c(2), p(2);
    a << q(0), q(0);
    b << q(1), q(0);
    c << q(0), q(1);
    p << q(1, 4), q(1, 2);
    auto lam = barycentric({a, b, c}, p);
    REQUIRE(lam);
    CHECK((*lam)[0] == q(1, 4));
    CHECK((*lam)[1] == q(1, 4));
    CHECK((*lam)[2] == q(1, 2));
    Vec off(2);
    off << q(1), q(1);
    CHECK(barycentric({a, b}, off) == std::nullopt);
}

TEST_CASE("exact lp") {
    // maximize x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    Mat a(2, 4);
    a << q(1), q(2), q(1), q(0), q(3), q(1), q(0), q(1);
    Vec b(2), c(4);
    b << q(4), q(6);
    c << q(1), q(1), q(0), q(0);
    auto r = lp_maximize(a, b, c);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.value == q(14, 5));
    Mat inf(1, 1);
    inf << q(1);
    Vec nb(1);
    nb << q(-1);
    Vec c1(1);
    c1 << q(1);
    CHECK(lp_maximize(inf, nb, c1).status == LpResult::Status::Infeasible);
    // epsilon-valued bound
    Vec be(2);
    be << q(4), q(6) + eps();
    auto re = lp_maximize(a, be, c);
    REQUIRE(re.status == LpResult::Status::Optimal);
    CHECK(re.value == q(14, 5) + eps() / q(5));
}
