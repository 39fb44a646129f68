#pragma once

// Text formats: SCX complexes with named open-cell sets, PLM maps and
// isotopy schedules. Printing is deterministic so outputs diff cleanly.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "plforge/complex.hpp"
#include "plforge/plmap.hpp"

namespace plforge {

struct ScxFile {
    SimplicialComplex complex;
    std::map<std::string, OpenCellSet> sets;
};

/// Throws SyntaxError (with the line number), FieldMismatch, ValidationError.
ScxFile read_scx(std::istream& in);
ScxFile parse_scx(const std::filesystem::path& path);
/// Vertices in id order, then maximal simplexes, then sets.
void write_scx(std::ostream& out, const SimplicialComplex& k, const std::map<std::string, OpenCellSet>& sets = {});
void save_scx(const std::filesystem::path& path, const SimplicialComplex& k,
              const std::map<std::string, OpenCellSet>& sets = {});
std::string scx_string(const SimplicialComplex& k, const std::map<std::string, OpenCellSet>& sets = {});

/// Domain and target paths are resolved against the PLM file's directory.
PLMap parse_plm(const std::filesystem::path& path);
void write_plm(std::ostream& out, const PLMap& f, const std::string& domain_path, const std::string& target_path);

/// One `move <id> from <scalars> to <scalars>` line per step.
void write_schedule(std::ostream& out, const IsotopySchedule& s);

/// `0,1,2`; braces around the list are accepted on input.
Simplex parse_simplex_spec(const std::string& text);
std::string simplex_spec(const Simplex& s);

}  // namespace plforge
