#include "centerfocus/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace centerfocus {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += v[i];
    }
    return s;
}

}  // namespace

std::string point_to_text(const Point& p) {
    std::ostringstream os;
    os << (p.empty() ? 53 : p[0].prec());
    for (const auto& c : p) os << " (" << c.re.to_hex_string() << "," << c.im.to_hex_string() << ")";
    return os.str();
}

Point point_from_text(const std::string& line) {
    std::istringstream is(line);
    long prec;
    is >> prec;
    Point p;
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')')
            throw std::runtime_error("bad point token: " + tok);
        auto comma = tok.find(',');
        MpComplex c(static_cast<mpfr_prec_t>(prec));
        c.re = MpReal::from_hex_string(tok.substr(1, comma - 1), static_cast<mpfr_prec_t>(prec));
        c.im = MpReal::from_hex_string(tok.substr(comma + 1, tok.size() - comma - 2),
                                       static_cast<mpfr_prec_t>(prec));
        p.push_back(std::move(c));
    }
    return p;
}

void write_system(std::ostream& os, const std::vector<Poly>& polys,
                  const std::vector<std::string>& vars) {
    os << "# vars " << join(vars) << "\n";
    os << "# count " << polys.size() << "\n";
    for (const auto& p : polys) os << poly_to_string(p) << "\n";
}

SystemFile read_system(std::istream& is) {
    SystemFile out;
    std::string line;
    std::map<std::string, std::string> pending;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto tk = tokens(line.substr(1));
            if (tk.empty()) continue;
            if (tk[0] == "vars") {
                out.vars.assign(tk.begin() + 1, tk.end());
            } else if (tk[0] == "count") {
                // informational
            } else {
                std::string key = tk[0];
                tk.erase(tk.begin());
                pending[key] = join(tk);
            }
            continue;
        }
        if (out.vars.empty()) throw std::runtime_error("system file has no vars header");
        out.polys.push_back(poly_from_string(line, out.vars));
        out.annotations.push_back(pending);
        pending.clear();
    }
    return out;
}

void write_points(std::ostream& os, const std::vector<Point>& pts,
                  const std::vector<std::string>& vars) {
    os << "# vars " << join(vars) << "\n";
    os << "# points " << pts.size() << "\n";
    for (const auto& p : pts) os << point_to_text(p) << "\n";
}

std::vector<Point> read_points(std::istream& is) {
    std::vector<Point> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(point_from_text(line));
    }
    return out;
}

void write_path_results(std::ostream& os, const std::vector<PathResult>& results,
                        const std::vector<std::string>& vars) {
    os << "# vars " << join(vars) << "\n";
    os << "# endpoints " << results.size() << "\n";
    os << "# columns status winding residual condition steps point\n";
    for (const auto& r : results) {
        const char* st = r.status == PathStatus::Converged
                             ? "converged"
                             : (r.status == PathStatus::Diverged ? "diverged" : "failed");
        os << st << " " << r.winding << " " << r.residual << " " << r.condition << " " << r.steps
           << " " << point_to_text(r.endpoint) << "\n";
    }
}

void write_witness_set(std::ostream& os, const WitnessSet& ws) {
    os << "# witness\n";
    os << "# vars " << join(ws.vars) << "\n";
    os << "# dim " << ws.dim << "\n";
    os << "# degree " << ws.degree << "\n";
    os << "# multiplicity " << ws.multiplicity << "\n";
    os << "# ambient " << (ws.ambient == Ambient::Projective ? "projective" : "affine_chart")
       << "\n";
    if (!ws.infinity_var.empty()) os << "# infinity_var " << ws.infinity_var << "\n";
    os << "# slice_seed " << ws.slice.seed << "\n";
    os << "# patch " << poly_to_string(ws.patch) << "\n";
    os << "# system " << ws.system.size() << "\n";
    for (const auto& p : ws.system) os << poly_to_string(p) << "\n";
    os << "# randomized " << ws.randomized.size() << "\n";
    for (const auto& p : ws.randomized) os << poly_to_string(p) << "\n";
    os << "# slice " << ws.slice.forms.size() << "\n";
    for (const auto& p : ws.slice.forms) os << poly_to_string(p) << "\n";
    os << "# points " << ws.points.size() << "\n";
    for (const auto& p : ws.points) os << point_to_text(p) << "\n";
}

WitnessSet read_witness_set(std::istream& is) {
    WitnessSet ws;
    std::string line;
    enum class Section { None, System, Randomized, Slice, Points } sec = Section::None;
    long remaining = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto tk = tokens(line.substr(1));
            if (tk.empty()) continue;
            const std::string& k = tk[0];
            if (k == "vars")
                ws.vars.assign(tk.begin() + 1, tk.end());
            else if (k == "dim")
                ws.dim = std::stoi(tk.at(1));
            else if (k == "degree")
                ws.degree = std::stol(tk.at(1));
            else if (k == "multiplicity")
                ws.multiplicity = std::stoi(tk.at(1));
            else if (k == "ambient")
                ws.ambient = tk.at(1) == "projective" ? Ambient::Projective : Ambient::AffineChart;
            else if (k == "infinity_var")
                ws.infinity_var = tk.at(1);
            else if (k == "slice_seed")
                ws.slice.seed = std::stoull(tk.at(1));
            else if (k == "patch")
                ws.patch = poly_from_string(line.substr(line.find("patch") + 6), ws.vars);
            else if (k == "system") {
                sec = Section::System;
                remaining = std::stol(tk.at(1));
            } else if (k == "randomized") {
                sec = Section::Randomized;
                remaining = std::stol(tk.at(1));
            } else if (k == "slice") {
                sec = Section::Slice;
                remaining = std::stol(tk.at(1));
            } else if (k == "points") {
                sec = Section::Points;
                remaining = std::stol(tk.at(1));
            }
            continue;
        }
        if (remaining <= 0) continue;
        switch (sec) {
            case Section::System:
                ws.system.push_back(poly_from_string(line, ws.vars));
                break;
            case Section::Randomized:
                ws.randomized.push_back(poly_from_string(line, ws.vars));
                break;
            case Section::Slice:
                ws.slice.forms.push_back(poly_from_string(line, ws.vars));
                break;
            case Section::Points:
                ws.points.push_back(point_from_text(line));
                break;
            default:
                break;
        }
        remaining--;
    }
    return ws;
}

void write_component(std::ostream& os, const ComponentRecord& rec) {
    os << "# component " << rec.id << "\n";
    os << "# parent " << (rec.parent_id.empty() ? "-" : rec.parent_id) << "\n";
    os << "# level " << rec.level << "\n";
    os << "# real "
       << (rec.real_flag == ComponentRecord::RealFlag::Yes
               ? "yes"
               : (rec.real_flag == ComponentRecord::RealFlag::No ? "no" : "unknown"))
       << "\n";
    os << "# contained_in_next " << (rec.contained_in_next ? 1 : 0) << "\n";
    std::ostringstream pc, wd;
    for (auto c : rec.path_counts) pc << c << " ";
    for (auto w : rec.windings) wd << w << " ";
    os << "# path_counts " << pc.str() << "\n";
    os << "# windings " << wd.str() << "\n";
    write_witness_set(os, rec.ws);
    os << "# endcomponent\n";
}

ComponentRecord read_component(std::istream& is) {
    ComponentRecord rec;
    std::ostringstream wsbuf;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# endcomponent", 0) == 0) break;
        auto tk = line.empty() || line[0] != '#' ? std::vector<std::string>{} : tokens(line.substr(1));
        if (!tk.empty() && tk[0] == "component")
            rec.id = tk.size() > 1 ? tk[1] : "";
        else if (!tk.empty() && tk[0] == "parent")
            rec.parent_id = tk.at(1) == "-" ? "" : tk.at(1);
        else if (!tk.empty() && tk[0] == "level")
            rec.level = std::stoi(tk.at(1));
        else if (!tk.empty() && tk[0] == "real")
            rec.real_flag = tk.at(1) == "yes" ? ComponentRecord::RealFlag::Yes
                                              : (tk.at(1) == "no" ? ComponentRecord::RealFlag::No
                                                                  : ComponentRecord::RealFlag::Unknown);
        else if (!tk.empty() && tk[0] == "contained_in_next")
            rec.contained_in_next = tk.at(1) == "1";
        else if (!tk.empty() && tk[0] == "path_counts")
            for (std::size_t i = 1; i < tk.size(); ++i) rec.path_counts.push_back(std::stoi(tk[i]));
        else if (!tk.empty() && tk[0] == "windings")
            for (std::size_t i = 1; i < tk.size(); ++i) rec.windings.push_back(std::stoi(tk[i]));
        else {
            wsbuf << line << "\n";
        }
    }
    std::istringstream wsin(wsbuf.str());
    rec.ws = read_witness_set(wsin);
    return rec;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto key = line.substr(0, eq), val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r\n");
            if (a == std::string::npos) return std::string();
            auto b = s.find_last_not_of(" \t\r\n");
            return s.substr(a, b - a + 1);
        };
        out[trim(key)] = trim(val);
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

}  // namespace centerfocus
