#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "diametral/solid.hpp"

namespace diametral::solid {

namespace {

// next non-blank, non-comment line; returns false at end of stream
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (const char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) return true;
    }
    return false;
}

}  // namespace

ConvexPolytope read_off(std::istream& in, double tol_abs) {
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError("line 1: empty file");

    {
        std::istringstream head(line);
        std::string word;
        head >> word;
        if (word == "OFF") {
            if (!next_line(in, line, lineno))
                throw ParseError("line " + std::to_string(lineno) + ": missing counts line");
        }
    }

    long nv = 0, nf = 0, ne = 0;
    {
        std::istringstream counts(line);
        if (!(counts >> nv >> nf >> ne) || nv <= 0 || nf <= 0)
            throw ParseError("line " + std::to_string(lineno) + ": expected counts 'V F E'");
    }

    std::vector<Point3> verts;
    verts.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!next_line(in, line, lineno))
            throw ParseError("line " + std::to_string(lineno + 1) + ": missing vertex " +
                             std::to_string(i));
        std::istringstream row(line);
        Point3 p;
        if (!(row >> p.x >> p.y >> p.z))
            throw ParseError("line " + std::to_string(lineno) + ": expected 3 coordinates");
        verts.push_back(p);
    }

    std::vector<std::vector<int>> faces;
    std::vector<int> face_lines;
    faces.reserve(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        if (!next_line(in, line, lineno))
            throw ParseError("line " + std::to_string(lineno + 1) + ": missing face " +
                             std::to_string(i));
        std::istringstream row(line);
        long k = 0;
        if (!(row >> k) || k < 3)
            throw ParseError("line " + std::to_string(lineno) + ": bad face vertex count");
        std::vector<int> cyc;
        for (long j = 0; j < k; ++j) {
            long idx;
            if (!(row >> idx))
                throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(k) + " vertex indices");
            if (idx < 0 || idx >= nv)
                throw ParseError("line " + std::to_string(lineno) + ": vertex index " +
                                 std::to_string(idx) + " out of range");
            cyc.push_back(static_cast<int>(idx));
        }
        faces.push_back(std::move(cyc));
        face_lines.push_back(lineno);
    }

    try {
        return ConvexPolytope(std::move(verts), std::move(faces), tol_abs);
    } catch (const DegenerateInput& e) {
        throw ParseError("lines " + std::to_string(face_lines.empty() ? lineno : face_lines.front()) +
                         "-" + std::to_string(lineno) + ": invalid polytope: " + e.what());
    }
}

ConvexPolytope load_off(const std::string& path, double tol_abs) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_off(in, tol_abs);
}

void write_off(std::ostream& out, const ConvexPolytope& T) {
    out << "OFF\n"
        << T.vertex_count() << ' ' << T.face_count() << ' ' << T.edge_count() << '\n';
    char buf[96];
    for (const auto& v : T.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& f : T.faces()) {
        out << f.size();
        for (const int v : f) out << ' ' << v;
        out << '\n';
    }
}

std::string to_off(const ConvexPolytope& T) {
    std::ostringstream out;
    write_off(out, T);
    return out.str();
}

}  // namespace diametral::solid
