#include "plforge/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "plforge/error.hpp"

namespace plforge {

namespace {

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

VertexId parse_id(const std::string& t, std::size_t line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(t, &used);
        if (used != t.size()) syntax(line, "bad vertex id '" + t + "'");
        return v;
    } catch (const std::logic_error&) {
        syntax(line, "bad vertex id '" + t + "'");
    }
}

Vec parse_coords(const std::vector<std::string>& toks, std::size_t from, std::size_t n, Backend b,
                 std::size_t line) {
    if (toks.size() != from + n) {
        syntax(line, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(toks.size() - from));
    }
    Vec p(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        try {
            p(static_cast<Eigen::Index>(i)) = Scalar::parse(toks[from + i], b);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::FieldMismatch) {
                throw Error(ErrorCode::FieldMismatch, "line " + std::to_string(line) + ": scalar '" + toks[from + i] + "' is not in Q");
            }
            syntax(line, "bad scalar '" + toks[from + i] + "'");
        }
    }
    return p;
}

std::string coords(const Vec& p) {
    std::string out;
    for (Eigen::Index i = 0; i < p.size(); ++i) out += (i ? " " : "") + p(i).str();
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SyntaxError, "cannot open " + path.string());
    return in;
}

}  // namespace

Simplex parse_simplex_spec(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '{') t.erase(0, 1);
    if (!t.empty() && t.back() == '}') t.pop_back();
    std::vector<VertexId> ids;
    std::stringstream ss(t);
    for (std::string part; std::getline(ss, part, ',');) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw Error(ErrorCode::SyntaxError, "bad simplex '" + text + "'");
        ids.push_back(v);
    }
    if (ids.empty()) throw Error(ErrorCode::SyntaxError, "empty simplex");
    Simplex s = make_simplex(ids);
    if (s.size() != ids.size()) throw Error(ErrorCode::SyntaxError, "repeated vertex in '" + text + "'");
    return s;
}

std::string simplex_spec(const Simplex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

ScxFile read_scx(std::istream& in) {
    ScxFile out;
    std::size_t lineno = 0;
    int header = 0;
    Backend backend = Backend::Rational;
    std::size_t n = 0;
    std::vector<std::pair<Simplex, std::size_t>> simplices;
    std::vector<std::pair<std::string, std::pair<Simplex, std::size_t>>> members;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (header == 0) {
            if (t != std::vector<std::string>{"scx", "1"}) syntax(lineno, "expected 'scx 1'");
        } else if (header == 1) {
            if (t.size() != 2 || t[0] != "field" || (t[1] != "Q" && t[1] != "QEPS")) {
                syntax(lineno, "expected 'field Q' or 'field QEPS'");
            }
            backend = t[1] == "Q" ? Backend::Rational : Backend::Epsilon;
        } else if (header == 2) {
            if (t.size() != 2 || t[0] != "ambient") syntax(lineno, "expected 'ambient <n>'");
            long long d = parse_id(t[1], lineno);
            if (d < 0) syntax(lineno, "negative ambient dimension");
            n = static_cast<std::size_t>(d);
            out.complex = SimplicialComplex(static_cast<int>(n), backend);
        } else if (t[0] == "vertex") {
            if (t.size() < 2) syntax(lineno, "missing vertex id");
            VertexId id = parse_id(t[1], lineno);
            if (out.complex.has_vertex(id)) syntax(lineno, "duplicate vertex id " + t[1]);
            out.complex.add_vertex(id, parse_coords(t, 2, n, backend, lineno));
        } else if (t[0] == "simplex") {
            std::vector<VertexId> ids;
            for (std::size_t i = 1; i < t.size(); ++i) ids.push_back(parse_id(t[i], lineno));
            if (ids.empty()) syntax(lineno, "empty simplex");
            Simplex s = make_simplex(ids);
            if (s.size() != ids.size()) syntax(lineno, "repeated vertex in simplex");
            simplices.emplace_back(s, lineno);
        } else if (t[0] == "set") {
            if (t.size() < 3 || t[2] != "open") syntax(lineno, "expected 'set <name> open <simplex> ...'");
            out.sets[t[1]];
            for (std::size_t i = 3; i < t.size(); ++i) {
                try {
                    members.push_back({t[1], {parse_simplex_spec(t[i]), lineno}});
                } catch (const Error&) {
                    syntax(lineno, "bad simplex '" + t[i] + "'");
                }
            }
        } else {
            syntax(lineno, "unknown directive '" + t[0] + "'");
        }
        if (header < 3) ++header;
    }
    if (header < 3) syntax(lineno, "truncated header");
    for (const auto& [s, at] : simplices) {
        for (auto v : s) {
            if (!out.complex.has_vertex(v)) syntax(at, "unknown vertex " + std::to_string(v));
        }
        out.complex.add_simplex(s);
    }
    for (const auto& [name, m] : members) {
        if (!out.complex.contains(m.first)) {
            syntax(m.second, "set '" + name + "' names " + to_string(m.first) + ", which is not in the complex");
        }
        out.sets[name].cells.insert(m.first);
    }
    auto report = validate(out.complex);
    if (!report.ok()) {
        std::string msg;
        for (const auto& v : report.violations) msg += "\n  " + v.describe();
        throw Error(ErrorCode::ValidationError, std::to_string(report.violations.size()) + " violation(s)" + msg);
    }
    return out;
}

ScxFile parse_scx(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_scx(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + std::string(e.what()).substr(std::string(to_string(e.code())).size() + 2));
    }
}

void write_scx(std::ostream& out, const SimplicialComplex& k, const std::map<std::string, OpenCellSet>& sets) {
    out << "scx 1\n";
    out << "field " << (k.backend() == Backend::Rational ? "Q" : "QEPS") << "\n";
    out << "ambient " << k.ambient_dim() << "\n";
    for (const auto& [id, p] : k.vertices()) {
        out << "vertex " << id;
        if (p.size() > 0) out << " " << coords(p);
        out << "\n";
    }
    auto maxes = k.maximal_simplices();
    std::sort(maxes.begin(), maxes.end(), DimLess{});
    for (const auto& s : maxes) {
        out << "simplex";
        for (auto v : s) out << " " << v;
        out << "\n";
    }
    for (const auto& [name, set] : sets) {
        out << "set " << name << " open";
        for (const auto& c : set.cells) out << " " << simplex_spec(c);
        out << "\n";
    }
}

void save_scx(const std::filesystem::path& path, const SimplicialComplex& k,
              const std::map<std::string, OpenCellSet>& sets) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::SyntaxError, "cannot write " + path.string());
    write_scx(out, k, sets);
}

std::string scx_string(const SimplicialComplex& k, const std::map<std::string, OpenCellSet>& sets) {
    std::ostringstream ss;
    write_scx(ss, k, sets);
    return ss.str();
}

PLMap parse_plm(const std::filesystem::path& path) {
    auto in = open_in(path);
    const auto dir = path.parent_path();
    std::size_t lineno = 0;
    bool header = false;
    std::optional<ScxFile> domain, target;
    std::vector<std::pair<std::vector<std::string>, std::size_t>> images;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (!header) {
            if (t != std::vector<std::string>{"plm", "1"}) syntax(lineno, "expected 'plm 1'");
            header = true;
        } else if (t[0] == "domain" || t[0] == "target") {
            if (t.size() != 2) syntax(lineno, "expected '" + t[0] + " <scx-file>'");
            auto& slot = t[0] == "domain" ? domain : target;
            if (slot) syntax(lineno, "repeated " + t[0]);
            slot = parse_scx(dir / t[1]);
        } else if (t[0] == "image") {
            images.emplace_back(t, lineno);
        } else {
            syntax(lineno, "unknown directive '" + t[0] + "'");
        }
    }
    if (!domain || !target) syntax(lineno, "missing domain or target");
    PLMap f{domain->complex, target->complex, {}};
    for (const auto& [t, at] : images) {
        if (t.size() < 2) syntax(at, "missing vertex id");
        VertexId id = parse_id(t[1], at);
        if (!f.domain.has_vertex(id)) syntax(at, "unknown domain vertex " + t[1]);
        if (f.image.count(id)) syntax(at, "duplicate image for vertex " + t[1]);
        f.image.emplace(id, parse_coords(t, 2, static_cast<std::size_t>(f.target.ambient_dim()),
                                         f.target.backend(), at));
    }
    check_map(f);
    return f;
}

void write_plm(std::ostream& out, const PLMap& f, const std::string& domain_path, const std::string& target_path) {
    out << "plm 1\n";
    out << "domain " << domain_path << "\n";
    out << "target " << target_path << "\n";
    for (const auto& [id, p] : f.image) out << "image " << id << " " << coords(p) << "\n";
}

void write_schedule(std::ostream& out, const IsotopySchedule& s) {
    for (const auto& step : s.steps) {
        out << "move " << step.vertex << " from " << coords(step.from) << " to " << coords(step.to) << "\n";
    }
}

}  // namespace plforge
