#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "builders.hpp"
#include "plforge/extend.hpp"
#include "plforge/io.hpp"

using namespace plforge;
using namespace testing;

namespace {

ScxFile from_text(const std::string& text) {
    std::istringstream in(text);
    return read_scx(in);
}

ErrorCode code_of(const std::string& text) {
    try {
        from_text(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::SyntaxError;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "plforge-io-test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("scx parsing") {
    auto tri = from_text(
        "scx 1\n"
        "# the standard triangle\n"
        "field Q\n"
        "ambient 2\n"
        "vertex 0 0 0\n"
        "vertex 1 1 0\n"
        "vertex 2 0 1   # apex\n"
        "simplex 0 1 2\n"
        "set inside open 0,1,2 {1,2}\n");
    CHECK(tri.complex.size() == 7);
    CHECK(tri.complex == standard_simplex(2));
    CHECK(tri.sets.at("inside").cells.size() == 2);

    const std::string eps_vertex = "ambient 1\nvertex 0 1/2+e\nsimplex 0\n";
    auto e = from_text("scx 1\nfield QEPS\n" + eps_vertex);
    CHECK(e.complex.point(0)(0) == q(1, 2) + eps());
    CHECK(code_of("scx 1\nfield Q\n" + eps_vertex) == ErrorCode::FieldMismatch);

    CHECK(code_of("scx 1\nfield Q\nambient 1\nvertex 0 0\nvertex 0 1\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 2\nfield Q\nambient 1\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 1\nfield R\nambient 1\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 1\nfield Q\nambient 1\nvertex 0 0 1\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 1\nfield Q\nambient 1\nvertex 0 0\nsimplex 0 3\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 1\nfield Q\nambient 1\nvertex 0 0\nsimplex 0\nset a open 0,1\n") == ErrorCode::SyntaxError);
    CHECK(code_of("scx 1\nfield Q\nambient 1\nvertex 0 0\nvertex 1 1\nvertex 2 1/2\nsimplex 0 1\nsimplex 2\n") ==
          ErrorCode::ValidationError);

    try {
        from_text("scx 1\nfield Q\nambient 1\n\nvertex 0 x\n");
        FAIL("expected a syntax error");
    } catch (const Error& err) {
        CHECK(std::string(err.what()).find("line 5") != std::string::npos);
    }
}

TEST_CASE("scx roundtrip") {
    for (const auto& e : corpus()) {
        auto text = scx_string(e.complex);
        auto back = from_text(text);
        CHECK_MESSAGE(back.complex == e.complex, e.name);
        CHECK(scx_string(back.complex) == text);
    }
    auto k = extend_field(square());
    OpenCellSet diag;
    diag.cells.insert({0, 3});
    diag.cells.insert({0, 1, 3});
    auto text = scx_string(k, {{"y", diag}, {"empty", {}}});
    auto back = from_text(text);
    CHECK(back.complex == k);
    CHECK(back.sets.at("y") == diag);
    CHECK(back.sets.at("empty").cells.empty());
    CHECK(parse_simplex_spec(simplex_spec({2, 5, 9})) == Simplex{2, 5, 9});
    CHECK_THROWS_AS(parse_simplex_spec("1,,2"), Error);
}

TEST_CASE("plm files") {
    auto seg = standard_simplex(1);
    save_scx(scratch("seg.scx"), seg);
    PLMap flip{seg, seg, {{0, vec({1})}, {1, vec({0})}}};
    {
        std::ofstream out(scratch("flip.plm"));
        write_plm(out, flip, "seg.scx", "seg.scx");
    }
    auto f = parse_plm(scratch("flip.plm"));
    CHECK(f.image == flip.image);
    CHECK(f.domain == seg);

    {
        std::ofstream out(scratch("bad.plm"));
        out << "plm 1\ndomain seg.scx\ntarget seg.scx\nimage 0 1\nimage 7 0\n";
    }
    CHECK_THROWS_AS(parse_plm(scratch("bad.plm")), Error);

    IsotopySchedule s;
    s.steps.push_back({2, vec({eps()}), vec({q(1, 2)}), seg});
    std::ostringstream out;
    write_schedule(out, s);
    CHECK(out.str() == "move 2 from 1*e to 1/2\n");
}
