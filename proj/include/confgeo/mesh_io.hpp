/*
* Copyright (C) 2026 The confgeo authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#pragma once

#include "confgeo/surface.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace confgeo {

namespace detail {

inline std::string next_content_line(std::istream& in)
{
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return line.substr(pos);
    }
    return {};
}

} // namespace detail

// ASCII OFF, triangles only.
inline RawMesh read_off(std::istream& in)
{
    std::string header = detail::next_content_line(in);
    if (header.substr(0, 3) != "OFF") throw MeshError("OFF: missing header");
    // counts may share the header line ("OFF 8 12 18") or follow it
    std::string counts = header.size() > 3 ? header.substr(3) : detail::next_content_line(in);
    if (counts.find_first_not_of(" \t\r") == std::string::npos)
        counts = detail::next_content_line(in);
    std::istringstream cs(counts);
    long nv = 0, nf = 0, ne = 0;
    if (!(cs >> nv >> nf >> ne)) throw MeshError("OFF: bad counts line");
    if (nv <= 0 || nf <= 0) throw MeshError("OFF: empty mesh");

    RawMesh mesh;
    mesh.positions.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        std::istringstream ls(detail::next_content_line(in));
        double x, y, z;
        if (!(ls >> x >> y >> z)) throw MeshError("OFF: bad vertex line " + std::to_string(i));
        mesh.positions.emplace_back(x, y, z);
    }
    mesh.triangles.reserve(nf);
    for (long f = 0; f < nf; ++f) {
        std::istringstream ls(detail::next_content_line(in));
        int k, a, b, c;
        if (!(ls >> k >> a >> b >> c) || k != 3)
            throw MeshError("OFF: face " + std::to_string(f) + " is not a triangle");
        mesh.triangles.push_back({a, b, c});
    }
    return mesh;
}

// ASCII OBJ, v/f records only; f indices may carry /vt/vn suffixes.
inline RawMesh read_obj(std::istream& in)
{
    RawMesh mesh;
    std::string line;
    long fline = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) throw MeshError("OBJ: bad vertex line");
            mesh.positions.emplace_back(x, y, z);
        }
        else if (tag == "f") {
            ++fline;
            std::array<int, 3> tri;
            std::string tok;
            int got = 0;
            while (ls >> tok) {
                if (got >= 3) throw MeshError("OBJ: face " + std::to_string(fline) +
                                              " is not a triangle");
                const int idx = std::stoi(tok.substr(0, tok.find('/')));
                if (idx == 0) throw MeshError("OBJ: zero face index");
                tri[got++] = idx > 0 ? idx - 1 : static_cast<int>(mesh.positions.size()) + idx;
            }
            if (got != 3) throw MeshError("OBJ: face " + std::to_string(fline) +
                                          " is not a triangle");
            mesh.triangles.push_back(tri);
        }
    }
    if (mesh.positions.empty() || mesh.triangles.empty())
        throw MeshError("OBJ: no triangle data found");
    return mesh;
}

enum class MeshFormat { Off, Obj };

inline MeshFormat format_from_path(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(ch));
    if (ext == "off") return MeshFormat::Off;
    if (ext == "obj") return MeshFormat::Obj;
    throw MeshError("unrecognized mesh extension: " + path);
}

inline DiscreteSurface load_mesh(std::istream& in, MeshFormat fmt, CurvatureMode mode)
{
    return build_surface(fmt == MeshFormat::Off ? read_off(in) : read_obj(in), mode);
}

inline DiscreteSurface load_mesh_file(const std::string& path, CurvatureMode mode)
{
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file: " + path);
    return load_mesh(in, format_from_path(path), mode);
}

inline void write_off(std::ostream& out, const RawMesh& mesh)
{
    out << "OFF\n" << mesh.positions.size() << " " << mesh.triangles.size() << " 0\n";
    out << std::setprecision(17);
    for (const auto& p : mesh.positions) out << p.x() << " " << p.y() << " " << p.z() << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

inline RawMesh icosphere_raw(int level)
{
    const DiscreteSurface s = build_icosphere(level);
    return RawMesh{s.positions, s.triangles};
}

// Genus-2 fixture: two triangulated tori bridged by a square tube. One grid
// quad is removed from the facing side of each torus and the two 4-cycles are
// joined by eight triangles, giving a closed oriented surface with chi = -2.
inline RawMesh make_genus2(int nu = 16, int nv = 8, double ring_radius = 1.0,
                           double tube_radius = 0.45, double gap = 0.4)
{
    if (nu < 6 || nv < 6) throw std::invalid_argument("make_genus2: grid too coarse");
    RawMesh mesh;
    const double cx = ring_radius + tube_radius + 0.5 * gap;

    // torus 0 centered at -cx, torus 1 at +cx; u winds around the ring,
    // v around the tube
    auto vid = [&](int torus, int iu, int iv) {
        return torus * nu * nv + ((iu % nu + nu) % nu) * nv + ((iv % nv + nv) % nv);
    };
    for (int torus = 0; torus < 2; ++torus) {
        const double center = torus == 0 ? -cx : cx;
        for (int iu = 0; iu < nu; ++iu) {
            const double u = 2.0 * kPi * iu / nu;
            for (int iv = 0; iv < nv; ++iv) {
                const double v = 2.0 * kPi * iv / nv;
                const double rad = ring_radius + tube_radius * std::cos(v);
                mesh.positions.emplace_back(center + rad * std::cos(u), rad * std::sin(u),
                                            tube_radius * std::sin(v));
            }
        }
    }

    // remove the quad facing the other torus: torus 0 at u-cell 0, torus 1 at
    // the cell just before u = pi; both straddle v = 0 so the holes line up
    const int hole_u0 = 0, hole_u1 = nu / 2 - 1;
    const int hole_v = nv - 1; // cell [nv-1, 0] straddles v = 0
    auto keep = [&](int torus, int iu, int iv) {
        const int hu = torus == 0 ? hole_u0 : hole_u1;
        return !(iu == hu && iv == hole_v);
    };
    for (int torus = 0; torus < 2; ++torus) {
        for (int iu = 0; iu < nu; ++iu) {
            for (int iv = 0; iv < nv; ++iv) {
                if (!keep(torus, iu, iv)) continue;
                const int a = vid(torus, iu, iv), b = vid(torus, iu + 1, iv);
                const int c = vid(torus, iu + 1, iv + 1), d = vid(torus, iu, iv + 1);
                mesh.triangles.push_back({a, b, c});
                mesh.triangles.push_back({a, c, d});
            }
        }
    }

    // bridge: boundary 4-cycles of the removed quads. The tube triangles
    // below traverse loop A backward and loop B forward, so A takes the
    // removed cell's cycle reversed and B the cycle rotated to start at the
    // vertex geometrically nearest la[0].
    const int a0 = vid(0, hole_u0, hole_v), b0 = vid(0, hole_u0 + 1, hole_v);
    const int c0 = vid(0, hole_u0 + 1, hole_v + 1), d0 = vid(0, hole_u0, hole_v + 1);
    const int a1 = vid(1, hole_u1, hole_v), b1 = vid(1, hole_u1 + 1, hole_v);
    const int c1 = vid(1, hole_u1 + 1, hole_v + 1), d1 = vid(1, hole_u1, hole_v + 1);
    const std::array<int, 4> la = {a0, d0, c0, b0};
    const std::array<int, 4> lb = {b1, c1, d1, a1};
    for (int k = 0; k < 4; ++k) {
        const int pa = la[k], qa = la[(k + 1) % 4];
        const int pb = lb[k], qb = lb[(k + 1) % 4];
        mesh.triangles.push_back({pa, pb, qb});
        mesh.triangles.push_back({pa, qb, qa});
    }
    return mesh;
}

} // namespace confgeo
