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

#include <limits>

namespace confgeo {

struct ConformalFactor {
    VertexField u;
    Cone cone = Cone::Unconstrained;
};

// K_u = e^{-2u} (K0 - Delta0 u)
inline VertexField curvature(const DiscreteSurface& s, const VertexField& u)
{
    detail::check_field(s, u, "curvature");
    return ((s.background_curvature - laplacian_apply(s, u)).array() * (-2.0 * u.array()).exp())
        .matrix();
}

// K_u e^{2u}, i.e. K0 - Delta0 u. This is the curvature density against the
// background masses: sum_i kappa_i a_i = 2 pi chi for every u.
inline VertexField curvature_density(const DiscreteSurface& s, const VertexField& u)
{
    detail::check_field(s, u, "curvature_density");
    return s.background_curvature - laplacian_apply(s, u);
}

struct Admissibility {
    bool ok = false;
    double margin = 0.0; // min_i |K_u| when ok, 0 otherwise
};

inline Admissibility admissible(const DiscreteSurface& s, const VertexField& u, Cone cone)
{
    if (cone == Cone::Unconstrained)
        throw std::invalid_argument("admissible: cone must be positive or negative");
    const VertexField k = curvature(s, u);
    const double sign = cone == Cone::Positive ? 1.0 : -1.0;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k.size(); ++i) {
        const double v = sign * k[i];
        if (!(v > 0.0)) return {false, 0.0};
        margin = std::min(margin, v);
    }
    return {true, margin};
}

namespace detail {

inline void require_admissible(const DiscreteSurface& s, const VertexField& u, Cone cone,
                               const char* who)
{
    if (!admissible(s, u, cone).ok)
        throw std::invalid_argument(std::string(who) + ": conformal factor is not admissible for "
                                    "the " + cone_name(cone) + " cone");
}

} // namespace detail

struct MetricSnapshot {
    VertexField curvature;   // K_u
    VertexField masses;      // e^{2u_i} a_i
    double total_area = 0.0;
    double mean_curvature = 0.0; // 2 pi chi / area
};

inline MetricSnapshot snapshot(const DiscreteSurface& s, const VertexField& u)
{
    MetricSnapshot snap;
    snap.curvature = curvature(s, u);
    snap.masses = ((2.0 * u.array()).exp() * s.area_masses.array()).matrix();
    snap.total_area = snap.masses.sum();
    const double chi_term = 2.0 * kPi * s.euler_characteristic;
    snap.mean_curvature = chi_term / snap.total_area;
    const double gb = snap.curvature.dot(snap.masses);
    if (std::abs(gb - chi_term) > 1e-10 * std::max(1.0, std::abs(chi_term)))
        throw std::runtime_error("snapshot: conformal Gauss-Bonnet violated (sum K dA = " +
                                 std::to_string(gb) + ")");
    return snap;
}

// J[u] = int |grad u|^2 dA0 + 2 int K0 u dA0
inline double liouville_energy(const DiscreteSurface& s, const VertexField& u)
{
    return dirichlet_energy(s, u) +
           2.0 * (u.array() * s.background_curvature.array() * s.area_masses.array()).sum();
}

// F[u] = J[u] - 2 pi chi log( avg of e^{2u} against dA0 ); invariant under
// u -> u + const.
inline double normalized_energy(const DiscreteSurface& s, const VertexField& u)
{
    const double area_u = ((2.0 * u.array()).exp() * s.area_masses.array()).sum();
    return liouville_energy(s, u) -
           2.0 * kPi * s.euler_characteristic * std::log(area_u / s.total_area());
}

// log det ratio of the conformal Laplacians, -J/(12 pi)
inline double polyakov_logdet_ratio(const DiscreteSurface& s, const VertexField& u)
{
    return -liouville_energy(s, u) / (12.0 * kPi);
}

// <<a, b>>_u = sum_i a_i b_i |K_u| e^{2u_i} m_i; positive definite on both
// cones. The weight equals |K0 - Delta0 u| m_i pointwise.
inline double weighted_inner(const DiscreteSurface& s, const VertexField& u,
                             const VertexField& alpha, const VertexField& beta, Cone cone)
{
    detail::check_field(s, alpha, "weighted_inner");
    detail::check_field(s, beta, "weighted_inner");
    detail::require_admissible(s, u, cone, "weighted_inner");
    const double sign = cone == Cone::Positive ? 1.0 : -1.0;
    const VertexField density = curvature_density(s, u);
    return sign * (alpha.array() * beta.array() * density.array() * s.area_masses.array()).sum();
}

// Riesz representative of dF in the weighted metric:
//   positive cone  2 (K - Kbar)/K,   negative cone  2 (Kbar - K)/K,
// so that <<grad, v>>_u equals the first variation of F in direction v.
inline VertexField energy_gradient(const DiscreteSurface& s, const VertexField& u, Cone cone)
{
    detail::require_admissible(s, u, cone, "energy_gradient");
    const MetricSnapshot snap = snapshot(s, u);
    const double sign = cone == Cone::Positive ? 1.0 : -1.0;
    return (sign * 2.0 * (1.0 - snap.mean_curvature / snap.curvature.array())).matrix();
}

// Sectional curvature of the plane spanned by phi, psi. Face quadrature with
// vertex-averaged u and K_u; the integrand is a negated Cauchy-Schwarz
// deficit, so the result is <= 0 up to roundoff on both cones.
inline double sectional_curvature(const DiscreteSurface& s, const VertexField& u,
                                  const VertexField& phi, const VertexField& psi,
                                  Cone cone = Cone::Positive)
{
    detail::check_field(s, phi, "sectional_curvature");
    detail::check_field(s, psi, "sectional_curvature");
    detail::require_admissible(s, u, cone, "sectional_curvature");
    const VertexField k = curvature(s, u);
    const double sign = cone == Cone::Positive ? 1.0 : -1.0;
    double total = 0.0;
    for (int f = 0; f < s.face_count(); ++f) {
        const Eigen::Vector3d gp = face_gradient(s, f, phi);
        const Eigen::Vector3d gq = face_gradient(s, f, psi);
        const double cross = gp.squaredNorm() * gq.squaredNorm() - std::pow(gp.dot(gq), 2);
        const double uf = face_mean(s, f, u);
        const double kf = sign * face_mean(s, f, k);
        total -= s.face_areas[f] * std::exp(-2.0 * uf) * cross / kf;
    }
    return total;
}

} // namespace confgeo
