// plforge: command-line front end over the library.
// Exit codes: 0 success, 1 operational error, 2 refutation found.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "plforge/error.hpp"
#include "plforge/extend.hpp"
#include "plforge/invariant.hpp"
#include "plforge/io.hpp"
#include "plforge/neighborhood.hpp"
#include "plforge/pipeline.hpp"
#include "plforge/plmap.hpp"
#include "plforge/subdivide.hpp"

using namespace plforge;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kRefuted = 2;

Vec parse_point(const std::string& text, Backend b) {
    std::vector<Scalar> xs;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) xs.push_back(Scalar::parse(part, b));
    Vec p(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) p(static_cast<Eigen::Index>(i)) = xs[i];
    return p;
}

Vec point_for(const SimplicialComplex& k, const std::string& text) {
    // epsilon scalars are accepted on a rational complex; the backends promote
    Vec p = parse_point(text, Backend::Epsilon);
    if (p.size() != k.ambient_dim()) {
        throw Error(ErrorCode::SyntaxError, "point '" + text + "' has " + std::to_string(p.size()) +
                                                " coordinates, expected " + std::to_string(k.ambient_dim()));
    }
    bool rational = true;
    for (Eigen::Index i = 0; i < p.size(); ++i) rational = rational && p(i).is_rational_value();
    if (rational && k.backend() == Backend::Rational) {
        for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = p(i).with_backend(Backend::Rational);
    }
    return p;
}

const OpenCellSet& named_set(const ScxFile& f, const std::string& name) {
    auto it = f.sets.find(name);
    if (it == f.sets.end()) throw Error(ErrorCode::SyntaxError, "no set named '" + name + "'");
    return it->second;
}

SimplicialComplex closure_complex(const SimplicialComplex& k, const OpenCellSet& x) {
    auto c = closure(x);
    return k.generated_by(std::vector<Simplex>(c.begin(), c.end()));
}

OpenCellSet all_cells(const SimplicialComplex& k) {
    OpenCellSet out;
    out.cells = k.simplices();
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::SyntaxError, "cannot write " + path.string());
    out << text;
}

// Writes domain/target next to the map and refers to them by file name.
void save_map(const std::string& prefix, const PLMap& f) {
    fs::path base(prefix);
    auto stem = base.filename().string();
    save_scx(base.parent_path() / (stem + "-domain.scx"), f.domain);
    save_scx(base.parent_path() / (stem + "-target.scx"), f.target);
    std::ostringstream ss;
    write_plm(ss, f, stem + "-domain.scx", stem + "-target.scx");
    write_text(base.parent_path() / (stem + ".plm"), ss.str());
}

std::vector<Scalar> parse_values(const std::vector<std::string>& xs) {
    std::vector<Scalar> out;
    for (const auto& x : xs) out.push_back(Scalar::parse(x, Backend::Epsilon));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"plforge: exact PL topology over Q and Q(e)"};
    app.require_subcommand(1);
    std::function<int()> action;
    bool table = false;

    auto file_arg = [](CLI::App* sc, const std::string& name, std::string& dest) {
        sc->add_option(name, dest, "input file")->required()->check(CLI::ExistingPath);
    };

    // ---- complexes ----------------------------------------------------------
    std::string in_a, in_b, out, set_name, base_path, fixed_path, schedule_path, at, normal, offset;
    int times = 1;
    bool equal = false;
    std::vector<std::string> values, intervals, pieces, subsets;
    std::string apex_pre, apex_img;

    auto* validate_cmd = app.add_subcommand("validate", "check a complex file");
    file_arg(validate_cmd, "complex", in_a);
    validate_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            std::cout << "valid: " << f.complex.size() << " simplexes, dim " << f.complex.dim() << ", field "
                      << (f.complex.backend() == Backend::Rational ? "Q" : "QEPS") << "\n";
            for (const auto& [name, s] : f.sets) std::cout << "set " << name << ": " << s.cells.size() << " cells\n";
            return kOk;
        };
    });

    auto* subdivide_cmd = app.add_subcommand("subdivide", "barycentric subdivision");
    file_arg(subdivide_cmd, "complex", in_a);
    subdivide_cmd->add_option("--times", times, "number of rounds")->check(CLI::Range(0, 4));
    subdivide_cmd->add_option("--out", out)->required();
    subdivide_cmd->callback([&] {
        action = [&] {
            auto k = parse_scx(in_a).complex;
            for (int i = 0; i < times; ++i) k = barycentric(k);
            save_scx(out, k);
            std::cout << k.size() << " simplexes\n";
            return kOk;
        };
    });

    auto* star_cmd = app.add_subcommand("star", "star the complex at a point");
    file_arg(star_cmd, "complex", in_a);
    star_cmd->add_option("--at", at, "comma-separated coordinates")->required();
    star_cmd->add_option("--out", out)->required();
    star_cmd->callback([&] {
        action = [&] {
            auto k = parse_scx(in_a).complex;
            auto s = star_at(k, point_for(k, at));
            save_scx(out, s);
            std::cout << "new vertex " << s.vertices().rbegin()->first << "\n";
            return kOk;
        };
    });

    auto* cut_cmd = app.add_subcommand("cut", "cut by the hyperplane <normal, x> = offset");
    file_arg(cut_cmd, "complex", in_a);
    cut_cmd->add_option("--normal", normal)->required();
    cut_cmd->add_option("--offset", offset)->required();
    cut_cmd->add_option("--out", out)->required();
    cut_cmd->callback([&] {
        action = [&] {
            auto k = parse_scx(in_a).complex;
            auto c = hyperplane_cut(k, point_for(k, normal), Scalar::parse(offset, Backend::Epsilon));
            save_scx(out, c);
            std::cout << c.size() << " simplexes\n";
            return kOk;
        };
    });

    auto* refine_cmd = app.add_subcommand("refine", "common refinement of two complexes");
    file_arg(refine_cmd, "k", in_a);
    file_arg(refine_cmd, "l", in_b);
    refine_cmd->add_flag("--equal", equal, "require |K| = |L|");
    refine_cmd->add_option("--out", out)->required();
    refine_cmd->callback([&] {
        action = [&] {
            auto r = common_refinement(parse_scx(in_a).complex, parse_scx(in_b).complex,
                                       equal ? RefineMode::Equal : RefineMode::Contains);
            save_scx(out, r);
            std::cout << r.size() << " simplexes\n";
            return kOk;
        };
    });

    auto* extend_cmd = app.add_subcommand("extendfield", "re-tag a rational complex over Q(e)");
    file_arg(extend_cmd, "complex", in_a);
    extend_cmd->add_option("--out", out)->required();
    extend_cmd->callback([&] {
        action = [&] {
            save_scx(out, extend_field(parse_scx(in_a).complex));
            return kOk;
        };
    });

    auto* rectify_cmd = app.add_subcommand("rectify", "move Q(e) vertices to rational points");
    file_arg(rectify_cmd, "complex", in_a);
    rectify_cmd->add_option("--base", base_path, "rational complex subdivided by the input")->required();
    rectify_cmd->add_option("--fixed", fixed_path, "subcomplex whose vertices stay put");
    rectify_cmd->add_option("--out", out)->required();
    rectify_cmd->add_option("--schedule", schedule_path);
    rectify_cmd->callback([&] {
        action = [&] {
            auto m = parse_scx(in_a).complex;
            auto k = parse_scx(base_path).complex;
            std::optional<SimplicialComplex> fixed;
            if (!fixed_path.empty()) fixed = parse_scx(fixed_path).complex;
            auto r = rectify(m, k, fixed);
            save_scx(out, r.complex);
            std::ostringstream ss;
            write_schedule(ss, r.schedule);
            if (!schedule_path.empty()) write_text(schedule_path, ss.str());
            std::cout << r.schedule.steps.size() << " moves\n";
            return kOk;
        };
    });

    // ---- maps ---------------------------------------------------------------
    auto* level_cmd = app.add_subcommand("levelset", "level and band sets of a map to R");
    file_arg(level_cmd, "map", in_a);
    level_cmd->add_option("--value", values, "cut value (repeatable)");
    level_cmd->add_option("--interval", intervals, "a:b (repeatable)");
    level_cmd->add_option("--out", out)->required();
    level_cmd->callback([&] {
        action = [&] {
            auto f = parse_plm(in_a);
            std::vector<Interval> ivs;
            for (const auto& s : intervals) {
                auto colon = s.find(':');
                if (colon == std::string::npos) throw Error(ErrorCode::SyntaxError, "interval '" + s + "' needs a:b");
                ivs.push_back({Scalar::parse(s.substr(0, colon), Backend::Epsilon),
                               Scalar::parse(s.substr(colon + 1), Backend::Epsilon)});
            }
            auto vals = parse_values(values);
            auto ls = level_set(f, vals, ivs);
            std::map<std::string, OpenCellSet> sets;
            for (std::size_t i = 0; i < ls.levels.size(); ++i) {
                sets["level" + std::to_string(i)] = all_cells(ls.levels[i]);
                std::cout << "level " << vals[i] << ": " << ls.levels[i].size() << " simplexes, euler "
                          << euler(ls.levels[i]) << "\n";
            }
            for (std::size_t i = 0; i < ls.bands.size(); ++i) {
                sets["band" + std::to_string(i)] = all_cells(ls.bands[i]);
                std::cout << "band " << intervals[i] << ": " << ls.bands[i].size() << " simplexes, euler "
                          << euler(ls.bands[i]) << "\n";
            }
            save_scx(out, ls.complex, sets);
            return kOk;
        };
    });

    auto* alex_cmd = app.add_subcommand("alexander", "cone a boundary homeomorphism over an apex");
    alex_cmd->add_option("--piece", pieces, "boundary map piece (repeatable)")->required()->check(CLI::ExistingFile);
    alex_cmd->add_option("--apex-pre", apex_pre)->required();
    alex_cmd->add_option("--apex-img", apex_img)->required();
    alex_cmd->add_option("--out", out, "output prefix")->required();
    alex_cmd->callback([&] {
        action = [&] {
            std::vector<PLMap> maps;
            for (const auto& p : pieces) maps.push_back(parse_plm(p));
            auto ext = alexander_extend(maps, point_for(maps.front().domain, apex_pre),
                                        point_for(maps.front().target, apex_img));
            save_map(out, ext.map);
            auto check = is_pl_homeomorphism(ext.map);
            std::cout << "apex " << ext.apex << "\n"
                      << "homeomorphism " << (check.homeomorphism ? "yes" : "no") << ": " << check.reason << "\n";
            return check.homeomorphism ? kOk : kRefuted;
        };
    });

    auto* approx_cmd = app.add_subcommand("approx", "simplicial approximation on barycentric subdivisions");
    file_arg(approx_cmd, "map", in_a);
    approx_cmd->add_option("--out", out, "output prefix")->required();
    approx_cmd->callback([&] {
        action = [&] {
            auto a = simplicial_approximation(parse_plm(in_a));
            save_map(out, a.f1);
            bool ok = check_witness(a);
            std::cout << a.witness.size() << " carrier witnesses, " << (ok ? "all hold" : "FAILED") << "\n";
            return ok ? kOk : kError;
        };
    });

    // ---- neighborhoods -----------------------------------------------------
    auto* reg_cmd = app.add_subcommand("regneigh", "derived neighborhood of a full subcomplex");
    file_arg(reg_cmd, "complex", in_a);
    reg_cmd->add_option("--set", set_name, "named set whose closure is Y")->required();
    reg_cmd->add_option("--out", out)->required();
    reg_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            auto rn = regular_neighborhood(f.complex, closure_complex(f.complex, named_set(f, set_name)));
            save_scx(out, rn.sub.complex, {{"u", all_cells(rn.u)}, {"y", all_cells(rn.y)},
                                           {"frontier", all_cells(rn.frontier)}});
            std::cout << "U: " << rn.u.size() << " simplexes, euler " << euler(rn.u) << "\n"
                      << homology(rn.u).str();
            return kOk;
        };
    });

    auto* xi_cmd = app.add_subcommand("xi", "the map to [0,1] vanishing on a full subcomplex");
    file_arg(xi_cmd, "complex", in_a);
    xi_cmd->add_option("--set", set_name, "named set whose closure is U1")->required();
    xi_cmd->add_option("--out", out, "output prefix")->required();
    xi_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            auto x = xi_map(f.complex, closure_complex(f.complex, named_set(f, set_name)));
            save_map(out, x.map);
            std::cout << "zero set: " << x.zero_set.size() << " simplexes\n";
            return kOk;
        };
    });

    auto* std_cmd = app.add_subcommand("standardize", "standard image of an open-cell set");
    file_arg(std_cmd, "complex", in_a);
    std_cmd->add_option("--set", set_name, "named set X")->required();
    std_cmd->add_option("--subset", subsets, "named subsets of X (repeatable)");
    std_cmd->add_option("--out", out)->required();
    std_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            std::vector<OpenCellSet> subs;
            for (const auto& n : subsets) subs.push_back(named_set(f, n));
            auto s = standardize(f.complex, named_set(f, set_name), subs);
            std::map<std::string, OpenCellSet> sets{{"y", s.y}, {"v", s.v}};
            for (std::size_t i = 0; i < s.pieces.size(); ++i) sets["piece" + std::to_string(i)] = s.pieces[i];
            save_scx(out, s.q, sets);
            for (const auto& d : s.deleted) std::cout << "deleted " << simplex_spec(d) << "\n";
            std::cout << "Y: " << s.y.cells.size() << " cells, V: " << s.v.cells.size() << " cells\n";
            return kOk;
        };
    });

    auto* fk_cmd = app.add_subcommand("fk", "level sets of the function vanishing on W");
    file_arg(fk_cmd, "complex", in_a);
    fk_cmd->add_option("--set", set_name, "named set W")->required();
    fk_cmd->add_option("--value", values, "level (repeatable)");
    fk_cmd->add_option("--out", out)->required();
    fk_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            auto fk = fk_function(f.complex, named_set(f, set_name));
            auto vals = parse_values(values);
            auto lv = fk_levels(fk, vals);
            std::map<std::string, OpenCellSet> sets{{"undefined", lv.undefined}};
            for (std::size_t i = 0; i < vals.size(); ++i) {
                sets["level" + std::to_string(i)] = lv.levels[i];
                sets["sublevel" + std::to_string(i)] = lv.sublevels[i];
                std::cout << "level " << vals[i] << ": " << lv.levels[i].cells.size() << " cells\n";
            }
            save_scx(out, lv.complex, sets);
            std::cout << "zero set equals W: " << (fk_zero_set_is_w(fk) ? "yes" : "no") << "\n";
            return kOk;
        };
    });

    auto* collar_cmd = app.add_subcommand("collar", "collar Z over the frontier of a standard set");
    file_arg(collar_cmd, "complex", in_a);
    collar_cmd->add_option("--set", set_name, "named set Y")->required();
    collar_cmd->add_option("--out", out, "output prefix")->required();
    collar_cmd->callback([&] {
        action = [&] {
            auto f = parse_scx(in_a);
            auto c = collar(f.complex, named_set(f, set_name));
            std::set<VertexId> base_ids;
            for (const auto& [v, p] : c.base.vertices()) base_ids.insert(v);
            save_scx(out + "-z.scx", c.z, {{"base", all_cells(c.base)}});
            save_scx(out + "-y.scx", c.k2.complex, {{"y", c.y}, {"v", c.v}});
            std::ostringstream corr;
            for (const auto& [s, zs] : c.correspondence) {
                corr << simplex_spec(s) << "\t" << simplex_spec(make_simplex(zs)) << "\n";
            }
            write_text(out + "-corr.tsv", corr.str());
            std::cout << "Z: " << c.z.size() << " simplexes, " << c.designated.size() << " designated vertices\n";
            return kOk;
        };
    });

    // ---- invariants --------------------------------------------------------
    auto* hom_cmd = app.add_subcommand("homology", "integral homology");
    file_arg(hom_cmd, "complex", in_a);
    hom_cmd->add_flag("--table", table, "tab-separated output");
    hom_cmd->callback([&] {
        action = [&] {
            auto h = homology(parse_scx(in_a).complex);
            std::cout << (table ? h.table() : h.str());
            return kOk;
        };
    });

    auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
    file_arg(euler_cmd, "complex", in_a);
    euler_cmd->callback([&] {
        action = [&] {
            std::cout << euler(parse_scx(in_a).complex) << "\n";
            return kOk;
        };
    });

    auto* link_cmd = app.add_subcommand("linkcheck", "vertex links are homology spheres or balls");
    file_arg(link_cmd, "complex", in_a);
    link_cmd->callback([&] {
        action = [&] {
            auto r = link_condition(parse_scx(in_a).complex);
            if (r.pass) {
                std::cout << "link condition holds\n";
                return kOk;
            }
            std::cout << "link condition fails";
            if (r.vertex) std::cout << " at vertex " << *r.vertex;
            std::cout << ": " << r.reason << "\n";
            return kRefuted;
        };
    });

    auto* haupt_cmd = app.add_subcommand("hauptcheck", "certify or refute that two triangulations are PL homeomorphic");
    file_arg(haupt_cmd, "a", in_a);
    file_arg(haupt_cmd, "b", in_b);
    haupt_cmd->add_option("--refinement", out, "write the common refinement here");
    haupt_cmd->add_option("--schedule", schedule_path, "write the rectification schedule here");
    haupt_cmd->add_flag("--table", table, "tab-separated output");
    haupt_cmd->callback([&] {
        action = [&] {
            auto r = hauptcheck(parse_scx(in_a).complex, parse_scx(in_b).complex);
            const char* verdict = r.outcome == HauptOutcome::Certificate   ? "certificate"
                                  : r.outcome == HauptOutcome::Refutation ? "refutation"
                                                                          : "inconclusive";
            if (!out.empty() && r.refinement) save_scx(out, r.refinement->backend() == Backend::Epsilon && r.rectified
                                                                ? r.rectified->complex
                                                                : *r.refinement);
            if (!schedule_path.empty() && r.rectified) {
                std::ostringstream ss;
                write_schedule(ss, r.rectified->schedule);
                write_text(schedule_path, ss.str());
            }
            if (table) {
                std::cout << "verdict\t" << verdict << "\nreason\t" << r.reason << "\n";
                if (r.refinement) std::cout << "refinement\t" << r.refinement->size() << "\n";
                if (r.rectified) std::cout << "moves\t" << r.rectified->schedule.steps.size() << "\n";
            } else {
                std::cout << verdict << ": " << r.reason << "\n";
                if (r.refinement) std::cout << "common refinement: " << r.refinement->size() << " simplexes\n";
                if (r.rectified) std::cout << "rectified with " << r.rectified->schedule.steps.size() << " moves\n";
            }
            if (r.outcome == HauptOutcome::Certificate) return kOk;
            return r.outcome == HauptOutcome::Refutation ? kRefuted : kError;
        };
    });

    auto* verify_cmd = app.add_subcommand("verify", "replay the invariant suite over a fixture directory");
    verify_cmd->add_option("dir", in_a)->required()->check(CLI::ExistingDirectory);
    verify_cmd->add_flag("--table", table, "tab-separated output");
    verify_cmd->callback([&] {
        action = [&] {
            bool all = true;
            std::size_t n = 0;
            for (const auto& f : verify_directory(in_a)) {
                for (const auto& c : f.checks) {
                    all = all && c.pass;
                    ++n;
                    if (table) {
                        std::cout << (c.pass ? "PASS" : "FAIL") << "\t" << f.file << "\t" << c.name << "\t" << c.detail
                                  << "\n";
                    } else if (!c.pass) {
                        std::cout << "FAIL " << f.file << " " << c.name << (c.detail.empty() ? "" : ": ") << c.detail
                                  << "\n";
                    }
                }
            }
            if (!table) std::cout << n << " checks, " << (all ? "all passed" : "some failed") << "\n";
            return all ? kOk : kError;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }
    try {
        return action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
