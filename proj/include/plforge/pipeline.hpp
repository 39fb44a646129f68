#pragma once

// End-to-end checks used by the CLI and the acceptance suite: the
// triangulation comparison behind `hauptcheck` and the per-fixture
// invariant replay behind `verify`.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plforge/extend.hpp"
#include "plforge/invariant.hpp"
#include "plforge/plmap.hpp"

namespace plforge {

enum class HauptOutcome { Certificate, Refutation, Inconclusive };

struct HauptResult {
    HauptOutcome outcome = HauptOutcome::Inconclusive;
    HomologyProfile homology_a, homology_b;
    std::optional<SimplicialComplex> refinement;  // common subdivision of A and B
    std::optional<Rectification> rectified;       // when the refinement has non-rational vertices
    std::optional<HomeomorphismCheck> check;      // the identity |A| -> |B|
    std::string reason;
};

/// Refutes on a homology or dimension mismatch. Otherwise refines A and B in common,
/// rectifies over Q when needed, and certifies the identity map A -> B. Pairs whose
/// polyhedra differ but whose invariants agree are reported Inconclusive.
HauptResult hauptcheck(const SimplicialComplex& a, const SimplicialComplex& b);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Invariant replay on one complex: validity, boundary-of-boundary, SNF against
/// rational ranks, Euler characteristic, barycentric and field-extension invariance,
/// volume conservation and the text roundtrip.
std::vector<CheckLine> verify_complex(const SimplicialComplex& k);

struct FixtureReport {
    std::string file;
    std::vector<CheckLine> checks;
};

/// Every *.scx file in the directory, in name order.
std::vector<FixtureReport> verify_directory(const std::filesystem::path& dir);

}  // namespace plforge
