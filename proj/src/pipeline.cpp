#include "plforge/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "plforge/error.hpp"
#include "plforge/io.hpp"
#include "plforge/subdivide.hpp"

namespace plforge {

namespace {

HomologyProfile trimmed(HomologyProfile h) {
    while (!h.betti.empty() && h.betti.back() == 0 && h.torsion.back().empty()) {
        h.betti.pop_back();
        h.torsion.pop_back();
    }
    return h;
}

std::string one_line(const HomologyProfile& h) {
    std::string s = h.str();
    std::replace(s.begin(), s.end(), '\n', ';');
    return s.empty() ? "(empty)" : s;
}

bool is_full_dimensional(const SimplicialComplex& k) {
    if (k.dim() != k.ambient_dim()) return false;
    for (const auto& s : k.maximal_simplices()) {
        if (simplex_dim(s) != k.dim()) return false;
    }
    return true;
}

}  // namespace

HauptResult hauptcheck(const SimplicialComplex& a, const SimplicialComplex& b) {
    HauptResult r;
    r.homology_a = homology(a);
    r.homology_b = homology(b);
    if (trimmed(r.homology_a) != trimmed(r.homology_b)) {
        r.outcome = HauptOutcome::Refutation;
        r.reason = "homology mismatch: " + one_line(r.homology_a) + " vs " + one_line(r.homology_b);
        return r;
    }
    if (a.dim() != b.dim()) {
        r.outcome = HauptOutcome::Refutation;
        r.reason = "dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim());
        return r;
    }
    if (a.ambient_dim() != b.ambient_dim()) {
        r.reason = "different ambient spaces; invariants agree";
        return r;
    }
    try {
        r.refinement = common_refinement(a, b, RefineMode::Equal);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompatibleCarriers) throw;
        r.reason = "the polyhedra differ; invariants agree but no map is searched for";
        return r;
    }
    if (non_rational_vertices(*r.refinement) > 0) {
        const SimplicialComplex* base = nullptr;
        if (non_rational_vertices(a) == 0) base = &a;
        else if (non_rational_vertices(b) == 0) base = &b;
        if (base) {
            r.rectified = rectify(*r.refinement, base->with_backend(r.refinement->backend()));
            if (!is_subdivision(r.rectified->complex, *base) ||
                to_abstract(r.rectified->complex) != to_abstract(*r.refinement)) {
                r.reason = "rectified refinement failed its audit";
                return r;
            }
        }
    }
    PLMap id{a, b, {}};
    for (const auto& [v, p] : a.vertices()) id.image.emplace(v, p);
    r.check = is_pl_homeomorphism(id);
    if (r.check->homeomorphism) {
        r.outcome = HauptOutcome::Certificate;
        r.reason = "identity is a PL homeomorphism: " + r.check->reason;
    } else {
        r.reason = "identity check failed: " + r.check->reason;
    }
    return r;
}

std::vector<CheckLine> verify_complex(const SimplicialComplex& k) {
    std::vector<CheckLine> out;
    auto add = [&](std::string name, bool pass, std::string detail = {}) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };

    auto report = validate(k);
    add("valid", report.ok(), report.ok() ? "" : report.violations.front().describe());
    if (!report.ok()) return out;

    auto chains = boundary_matrices(k);
    bool dd = true;
    for (std::size_t d = 2; d < chains.boundary.size(); ++d) {
        dd = dd && is_zero(multiply(chains.boundary[d - 1], chains.boundary[d]));
    }
    add("boundary-squared", dd);

    auto h = homology(k);
    add("snf-vs-rank", h.betti == rational_betti(k));
    long chi = 0;
    for (std::size_t d = 0; d < h.betti.size(); ++d) chi += (d % 2 ? -1 : 1) * h.betti[d];
    add("euler-betti", chi == euler(k), std::to_string(euler(k)));

    auto ext = extend_field(k);
    add("field-extension", homology(ext) == h && components(ext) == components(k));

    if (k.size() <= 1500) {
        auto bk = barycentric(k);
        add("barycentric-homology", homology(bk) == h && euler(bk) == euler(k));
        if (is_full_dimensional(k)) add("barycentric-volume", total_volume(bk) == total_volume(k));
    }

    std::istringstream in(scx_string(k));
    add("roundtrip", read_scx(in).complex == k);
    return out;
}

std::vector<FixtureReport> verify_directory(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".scx") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<FixtureReport> out;
    for (const auto& f : files) {
        FixtureReport r{f.filename().string(), {}};
        try {
            r.checks = verify_complex(parse_scx(f).complex);
        } catch (const Error& e) {
            r.checks.push_back({"load", false, e.what()});
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace plforge
