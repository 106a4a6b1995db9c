#include "halomd/gro.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace halomd {

GroParseError::GroParseError(const std::string& what, int line_)
    : std::runtime_error(what + " (line " + std::to_string(line_) + ")"), line(line_) {}

namespace {

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_field(const std::string& line, std::size_t pos, std::size_t width, int lineno,
                   const char* what) {
    if (line.size() < pos + width) throw GroParseError(std::string("truncated ") + what, lineno);
    const std::string field = strip(line.substr(pos, width));
    if (field.empty()) throw GroParseError(std::string("empty ") + what + " field", lineno);
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw GroParseError(std::string("bad ") + what + " field '" + field + "'", lineno);
    }
}

int parse_int_field(const std::string& line, std::size_t pos, std::size_t width, int lineno,
                    const char* what) {
    if (line.size() < pos + width) throw GroParseError(std::string("truncated ") + what, lineno);
    const std::string field = strip(line.substr(pos, width));
    if (field.empty()) return 0; // GROMACS tolerates blank numbers
    try {
        std::size_t used = 0;
        const int v = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw GroParseError(std::string("bad ") + what + " field '" + field + "'", lineno);
    }
}

} // namespace

GroFrame read_gro(std::istream& in) {
    GroFrame frame;
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw GroParseError("missing title line", 1);
    ++lineno;
    frame.title = rstrip(line);

    if (!std::getline(in, line)) throw GroParseError("missing atom-count line", 2);
    ++lineno;
    int n_atoms = 0;
    try {
        n_atoms = std::stoi(strip(line));
    } catch (const std::exception&) {
        throw GroParseError("bad atom-count line '" + strip(line) + "'", lineno);
    }
    if (n_atoms < 0) throw GroParseError("negative atom count", lineno);

    frame.atoms.resize(n_atoms);
    frame.state.resize(n_atoms);

    for (int i = 0; i < n_atoms; ++i) {
        if (!std::getline(in, line))
            throw GroParseError("expected " + std::to_string(n_atoms) + " atom lines, got " +
                                    std::to_string(i),
                                lineno + 1);
        ++lineno;
        if (line.size() < 44) throw GroParseError("atom line too short", lineno);
        GroAtom& a = frame.atoms[i];
        a.residue_number = parse_int_field(line, 0, 5, lineno, "residue number");
        a.residue_name = strip(line.substr(5, 5));
        a.atom_name = strip(line.substr(10, 5));
        (void)parse_int_field(line, 15, 5, lineno, "atom number");
        Vec3 r;
        r.x = parse_field(line, 20, 8, lineno, "x");
        r.y = parse_field(line, 28, 8, lineno, "y");
        r.z = parse_field(line, 36, 8, lineno, "z");
        frame.state.positions[i] = r;
        const bool line_has_v = line.size() >= 68 && !strip(line.substr(44)).empty();
        if (i == 0) frame.has_velocities = line_has_v;
        if (frame.has_velocities) {
            if (!line_has_v) throw GroParseError("velocity columns missing", lineno);
            Vec3 v;
            v.x = parse_field(line, 44, 8, lineno, "vx");
            v.y = parse_field(line, 52, 8, lineno, "vy");
            v.z = parse_field(line, 60, 8, lineno, "vz");
            frame.state.velocities[i] = v;
        }
    }

    if (!std::getline(in, line)) throw GroParseError("missing box line", lineno + 1);
    ++lineno;
    std::istringstream bs(line);
    Vec3 lengths;
    if (!(bs >> lengths.x >> lengths.y >> lengths.z))
        throw GroParseError("bad box line '" + strip(line) + "'", lineno);
    frame.state.box = SimBox(lengths.x, lengths.y, lengths.z);
    return frame;
}

GroFrame read_gro_string(const std::string& text) {
    std::istringstream in(text);
    return read_gro(in);
}

GroFrame read_gro_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_gro(in);
}

std::string write_gro(const GroFrame& frame) {
    std::string out;
    out.reserve(80 * (frame.atoms.size() + 3));
    out += frame.title.empty() ? "halomd frame" : frame.title;
    out += '\n';

    char buf[128];
    std::snprintf(buf, sizeof(buf), "%5d\n", frame.state.n_atoms());
    out += buf;

    for (int i = 0; i < frame.state.n_atoms(); ++i) {
        const GroAtom& a = frame.atoms[i];
        const Vec3& r = frame.state.positions[i];
        std::snprintf(buf, sizeof(buf), "%5d%-5.5s%-5.5s%5d%8.3f%8.3f%8.3f",
                      a.residue_number % 100000, a.residue_name.c_str(), a.atom_name.c_str(),
                      (i + 1) % 100000, r.x, r.y, r.z);
        out += buf;
        if (frame.has_velocities) {
            const Vec3& v = frame.state.velocities[i];
            std::snprintf(buf, sizeof(buf), "%8.4f%8.4f%8.4f", v.x, v.y, v.z);
            out += buf;
        }
        out += '\n';
    }

    std::snprintf(buf, sizeof(buf), "%10.5f%10.5f%10.5f\n", frame.state.box.lengths.x,
                  frame.state.box.lengths.y, frame.state.box.lengths.z);
    out += buf;
    return out;
}

void write_gro_file(const std::string& path, const GroFrame& frame) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << write_gro(frame);
}

GroFrame make_frame(const State& state, const Topology& topo, const std::string& title) {
    GroFrame frame;
    frame.title = title;
    frame.state = state;
    frame.state.wrap_all();
    frame.has_velocities = true;
    frame.atoms.resize(state.n_atoms());
    const auto group = topo.groups.find("protein");
    std::vector<bool> in_group(state.n_atoms(), false);
    if (group != topo.groups.end())
        for (int idx : group->second) in_group[idx] = true;
    for (int i = 0; i < state.n_atoms(); ++i) {
        GroAtom& a = frame.atoms[i];
        a.residue_number = i + 1;
        a.residue_name = in_group[i] ? "PRO" : "SOL";
        a.atom_name = in_group[i] ? "P" : "W";
    }
    return frame;
}

} // namespace halomd
