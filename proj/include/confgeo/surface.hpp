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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confgeo {

using VertexField = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

enum class CurvatureMode { AngleDefect, Constant };

enum class Cone { Positive, Negative, Unconstrained };

inline const char* cone_name(Cone c)
{
    switch (c) {
    case Cone::Positive:
        return "positive";
    case Cone::Negative:
        return "negative";
    default:
        return "unconstrained";
    }
}

inline Cone cone_from_name(const std::string& s)
{
    if (s == "positive") return Cone::Positive;
    if (s == "negative") return Cone::Negative;
    if (s == "unconstrained") return Cone::Unconstrained;
    throw std::invalid_argument("unknown cone: " + s);
}

struct RawMesh {
    std::vector<Eigen::Vector3d> positions;
    std::vector<std::array<int, 3>> triangles;
};

// Background data of a closed triangulated surface (M, g0): cotangent
// stiffness, lumped vertex areas, per-face P1 shape gradients and the
// background curvature density. Immutable after construction; all operations
// below are pure functions of it. Assembly runs in face-index order, so
// results are deterministic.
struct DiscreteSurface {
    int vertex_count = 0;
    int edge_count = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Eigen::Vector3d> positions;
    Eigen::SparseMatrix<double> stiffness; // positive semidefinite cotangent form, zero row sums
    VertexField area_masses;               // a_i > 0, barycentric one-third lumping
    VertexField background_curvature;      // K0_i
    Eigen::VectorXd face_areas;
    std::vector<std::array<Eigen::Vector3d, 3>> face_gradients; // grad of the P1 hat per corner
    int euler_characteristic = 0;

    int face_count() const { return static_cast<int>(triangles.size()); }
    double total_area() const { return area_masses.sum(); }
};

namespace detail {

inline void check_field(const DiscreteSurface& s, const VertexField& phi, const char* who)
{
    if (phi.size() != s.vertex_count)
        throw std::invalid_argument(std::string(who) + ": field length " +
                                    std::to_string(phi.size()) + " != vertex count " +
                                    std::to_string(s.vertex_count));
}

// Validates closed oriented manifold combinatorics and counts edges.
inline int validate_and_count_edges(const RawMesh& mesh)
{
    const int nv = static_cast<int>(mesh.positions.size());
    std::map<std::pair<int, int>, int> directed;
    for (size_t f = 0; f < mesh.triangles.size(); ++f) {
        const auto& t = mesh.triangles[f];
        for (int c = 0; c < 3; ++c) {
            if (t[c] < 0 || t[c] >= nv)
                throw MeshError("face " + std::to_string(f) + ": vertex index out of range");
        }
        if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
            throw MeshError("face " + std::to_string(f) + ": repeated vertex");
        for (int c = 0; c < 3; ++c) {
            const int a = t[c], b = t[(c + 1) % 3];
            auto ins = directed.emplace(std::make_pair(a, b), 1);
            if (!ins.second)
                throw MeshError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                ") has two coherently oriented faces: mesh is non-manifold or "
                                "non-orientable (face " + std::to_string(f) + ")");
        }
    }
    int edges = 0;
    for (const auto& [e, cnt] : directed) {
        (void)cnt;
        if (e.first < e.second) {
            ++edges;
            if (directed.find(std::make_pair(e.second, e.first)) == directed.end())
                throw MeshError("edge (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") is open: mesh has a boundary");
        }
        else if (directed.find(std::make_pair(e.second, e.first)) == directed.end()) {
            throw MeshError("edge (" + std::to_string(e.second) + "," + std::to_string(e.first) +
                            ") is open: mesh has a boundary");
        }
    }
    std::vector<char> used(nv, 0);
    for (const auto& t : mesh.triangles)
        for (int c = 0; c < 3; ++c) used[t[c]] = 1;
    for (int v = 0; v < nv; ++v)
        if (!used[v]) throw MeshError("vertex " + std::to_string(v) + " is isolated");
    return edges;
}

// Cotangent weights, areas, lumped masses and shape gradients from positions.
// `scale` multiplies all lengths (areas by scale^2, gradients by 1/scale);
// cotangents are scale invariant.
inline void build_geometry(DiscreteSurface& s, const RawMesh& mesh, double scale)
{
    const int nv = static_cast<int>(mesh.positions.size());
    const int nf = static_cast<int>(mesh.triangles.size());
    s.face_areas.resize(nf);
    s.face_gradients.resize(nf);
    s.area_masses = VertexField::Zero(nv);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(nf) * 12);

    const double s2 = scale * scale;
    for (int f = 0; f < nf; ++f) {
        const auto& t = mesh.triangles[f];
        const Eigen::Vector3d p0 = mesh.positions[t[0]];
        const Eigen::Vector3d p1 = mesh.positions[t[1]];
        const Eigen::Vector3d p2 = mesh.positions[t[2]];
        const Eigen::Vector3d n = (p1 - p0).cross(p2 - p0);
        const double doubled = n.norm();
        const double lmax = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()});
        if (!(doubled > 1e-14 * lmax * lmax) || lmax == 0.0)
            throw MeshError("face " + std::to_string(f) + " is degenerate (zero area)");
        s.face_areas[f] = 0.5 * doubled * s2;
        const Eigen::Vector3d nhat = n / doubled;
        // edge opposite corner c, oriented with the face
        const std::array<Eigen::Vector3d, 3> opp = {p2 - p1, p0 - p2, p1 - p0};
        for (int c = 0; c < 3; ++c) {
            s.face_gradients[f][c] = nhat.cross(opp[c]) / (doubled * scale);
            s.area_masses[t[c]] += s.face_areas[f] / 3.0;
        }
        for (int c = 0; c < 3; ++c) {
            const int a = t[(c + 1) % 3], b = t[(c + 2) % 3];
            const Eigen::Vector3d e1 = mesh.positions[a] - mesh.positions[t[c]];
            const Eigen::Vector3d e2 = mesh.positions[b] - mesh.positions[t[c]];
            const double cot = e1.dot(e2) / doubled;
            trip.emplace_back(a, b, -0.5 * cot);
            trip.emplace_back(b, a, -0.5 * cot);
            trip.emplace_back(a, a, 0.5 * cot);
            trip.emplace_back(b, b, 0.5 * cot);
        }
    }
    s.stiffness.resize(nv, nv);
    s.stiffness.setFromTriplets(trip.begin(), trip.end());
    s.stiffness.makeCompressed();

    for (int v = 0; v < nv; ++v)
        if (!(s.area_masses[v] > 0.0))
            throw MeshError("vertex " + std::to_string(v) + " has nonpositive lumped area");
}

inline Eigen::VectorXd angle_defects(const RawMesh& mesh)
{
    Eigen::VectorXd defect =
        Eigen::VectorXd::Constant(static_cast<int>(mesh.positions.size()), 2.0 * kPi);
    for (const auto& t : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            const Eigen::Vector3d e1 = mesh.positions[t[(c + 1) % 3]] - mesh.positions[t[c]];
            const Eigen::Vector3d e2 = mesh.positions[t[(c + 2) % 3]] - mesh.positions[t[c]];
            defect[t[c]] -= std::atan2(e1.cross(e2).norm(), e1.dot(e2));
        }
    }
    return defect;
}

} // namespace detail

inline DiscreteSurface build_surface(const RawMesh& mesh, CurvatureMode mode)
{
    DiscreteSurface s;
    s.vertex_count = static_cast<int>(mesh.positions.size());
    if (s.vertex_count < 4 || mesh.triangles.size() < 4)
        throw MeshError("mesh too small to be a closed surface");
    s.edge_count = detail::validate_and_count_edges(mesh);
    s.triangles = mesh.triangles;
    s.positions = mesh.positions;
    s.euler_characteristic = s.vertex_count - s.edge_count + s.face_count();
    detail::build_geometry(s, mesh, 1.0);

    const double chi_term = 2.0 * kPi * s.euler_characteristic;
    if (mode == CurvatureMode::AngleDefect) {
        s.background_curvature =
            detail::angle_defects(mesh).cwiseQuotient(s.area_masses);
    }
    else {
        s.background_curvature =
            VertexField::Constant(s.vertex_count, chi_term / s.total_area());
    }
    const double gb = s.area_masses.dot(s.background_curvature);
    if (std::abs(gb - chi_term) > 1e-10 * std::max(1.0, std::abs(chi_term)))
        throw MeshError("discrete Gauss-Bonnet violated at construction: sum a K0 = " +
                        std::to_string(gb) + ", 2 pi chi = " + std::to_string(chi_term));
    return s;
}

// Icosphere with K0 == 1. Vertices stay on the unit sphere; the metric is
// uniformly rescaled so the total area is exactly 4*pi, which makes
// Gauss-Bonnet hold to rounding rather than to discretization error.
inline DiscreteSurface build_icosphere(int level)
{
    if (level < 0 || level > 8)
        throw std::invalid_argument("icosphere level must be in [0, 8]");

    RawMesh mesh;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double inorm = 1.0 / std::sqrt(1.0 + phi * phi);
    auto add = [&](double x, double y, double z) {
        mesh.positions.emplace_back(x * inorm, y * inorm, z * inorm);
    };
    add(-1, phi, 0); add(1, phi, 0); add(-1, -phi, 0); add(1, -phi, 0);
    add(0, -1, phi); add(0, 1, phi); add(0, -1, -phi); add(0, 1, -phi);
    add(phi, 0, -1); add(phi, 0, 1); add(-phi, 0, -1); add(-phi, 0, 1);
    mesh.triangles = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const Eigen::Vector3d m = (mesh.positions[a] + mesh.positions[b]).normalized();
            mesh.positions.push_back(m);
            const int idx = static_cast<int>(mesh.positions.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(mesh.triangles.size() * 4);
        for (const auto& t : mesh.triangles) {
            const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
            next.push_back({t[0], a, c});
            next.push_back({t[1], b, a});
            next.push_back({t[2], c, b});
            next.push_back({a, b, c});
        }
        mesh.triangles = std::move(next);
    }

    DiscreteSurface s;
    s.vertex_count = static_cast<int>(mesh.positions.size());
    s.edge_count = detail::validate_and_count_edges(mesh);
    s.triangles = mesh.triangles;
    s.positions = mesh.positions;
    s.euler_characteristic = s.vertex_count - s.edge_count + s.face_count();

    detail::build_geometry(s, mesh, 1.0);
    const double scale = std::sqrt(4.0 * kPi / s.total_area());
    detail::build_geometry(s, mesh, scale);
    s.background_curvature = VertexField::Ones(s.vertex_count);
    return s;
}

// (Delta0 phi)_i = (1/a_i) sum_j w_ij (phi_j - phi_i). Negative semidefinite
// in the a-weighted inner product (geometer's sign).
inline VertexField laplacian_apply(const DiscreteSurface& s, const VertexField& phi)
{
    detail::check_field(s, phi, "laplacian_apply");
    return (-(s.stiffness * phi).array() / s.area_masses.array()).matrix();
}

// Dirichlet energy via the double sum over edges; agrees with
// sum_f A_f |grad phi|_f^2 up to reassociation.
inline double dirichlet_energy(const DiscreteSurface& s, const VertexField& phi)
{
    detail::check_field(s, phi, "dirichlet_energy");
    double e = 0.0;
    for (int col = 0; col < s.stiffness.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(s.stiffness, col); it; ++it) {
            if (it.row() < col) {
                const double d = phi[it.row()] - phi[col];
                e += -it.value() * d * d;
            }
        }
    }
    return e;
}

inline Eigen::Vector3d face_gradient(const DiscreteSurface& s, int f, const VertexField& phi)
{
    const auto& t = s.triangles[f];
    return phi[t[0]] * s.face_gradients[f][0] + phi[t[1]] * s.face_gradients[f][1] +
           phi[t[2]] * s.face_gradients[f][2];
}

inline double face_mean(const DiscreteSurface& s, int f, const VertexField& phi)
{
    const auto& t = s.triangles[f];
    return (phi[t[0]] + phi[t[1]] + phi[t[2]]) / 3.0;
}

// One-third lift of the per-face inner product <grad phi, grad psi> to
// vertices. With phi == psi this is the pointwise |grad phi|^2 whose
// a-weighted sum reproduces dirichlet_energy exactly.
inline VertexField gradient_dot(const DiscreteSurface& s, const VertexField& phi,
                                const VertexField& psi)
{
    detail::check_field(s, phi, "gradient_dot");
    detail::check_field(s, psi, "gradient_dot");
    VertexField out = VertexField::Zero(s.vertex_count);
    for (int f = 0; f < s.face_count(); ++f) {
        const double d = face_gradient(s, f, phi).dot(face_gradient(s, f, psi));
        const double w = s.face_areas[f] / 3.0;
        const auto& t = s.triangles[f];
        out[t[0]] += w * d;
        out[t[1]] += w * d;
        out[t[2]] += w * d;
    }
    return (out.array() / s.area_masses.array()).matrix();
}

inline VertexField gradient_norm_sq(const DiscreteSurface& s, const VertexField& phi)
{
    return gradient_dot(s, phi, phi);
}

} // namespace confgeo
