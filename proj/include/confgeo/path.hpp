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

#include "confgeo/conformal.hpp"

namespace confgeo {

// A path in the cone sampled on the uniform grid t_k = k/N over [0, 1].
struct TimePath {
    std::vector<VertexField> nodes; // N+1 conformal factors
    Cone cone = Cone::Positive;

    int segments() const { return static_cast<int>(nodes.size()) - 1; }
    double step() const { return 1.0 / segments(); }
    double time(int k) const { return static_cast<double>(k) / segments(); }
    int vertex_count() const { return nodes.empty() ? 0 : static_cast<int>(nodes.front().size()); }
};

inline void validate_path(const DiscreteSurface& s, const TimePath& p, const char* who)
{
    if (p.segments() < 2)
        throw std::invalid_argument(std::string(who) + ": path needs at least 2 segments");
    for (const auto& node : p.nodes) detail::check_field(s, node, who);
}

namespace detail {

inline void require_admissible_path(const DiscreteSurface& s, const TimePath& p, const char* who)
{
    validate_path(s, p, who);
    for (size_t k = 0; k < p.nodes.size(); ++k) {
        if (!admissible(s, p.nodes[k], p.cone).ok)
            throw std::invalid_argument(std::string(who) + ": node " + std::to_string(k) +
                                        " is not admissible");
    }
}

} // namespace detail

// Second-order time derivative samples: central differences inside, one-sided
// three-point stencils at the endpoints. Exact on quadratics in t.
inline std::vector<VertexField> velocity(const TimePath& p)
{
    const int n = p.segments();
    const double h = p.step();
    std::vector<VertexField> v(n + 1);
    v[0] = (-3.0 * p.nodes[0] + 4.0 * p.nodes[1] - p.nodes[2]) / (2.0 * h);
    for (int k = 1; k < n; ++k) v[k] = (p.nodes[k + 1] - p.nodes[k - 1]) / (2.0 * h);
    v[n] = (3.0 * p.nodes[n] - 4.0 * p.nodes[n - 1] + p.nodes[n - 2]) / (2.0 * h);
    return v;
}

// E_u(t_k) = <<du/dt, du/dt>>_{u_k}
inline std::vector<double> energy_density(const DiscreteSurface& s, const TimePath& p)
{
    detail::require_admissible_path(s, p, "energy_density");
    const auto v = velocity(p);
    std::vector<double> e(p.nodes.size());
    for (size_t k = 0; k < p.nodes.size(); ++k)
        e[k] = weighted_inner(s, p.nodes[k], v[k], v[k], p.cone);
    return e;
}

// E = 1/2 int_0^1 <<du/dt, du/dt>>_u dt, trapezoid rule in t
inline double path_energy(const DiscreteSurface& s, const TimePath& p)
{
    const auto e = energy_density(s, p);
    const double h = p.step();
    double total = 0.5 * (e.front() + e.back());
    for (size_t k = 1; k + 1 < e.size(); ++k) total += e[k];
    return 0.5 * h * total;
}

// L = int_0^1 <<du/dt, du/dt>>_u^{1/2} dt
inline double path_length(const DiscreteSurface& s, const TimePath& p)
{
    const auto e = energy_density(s, p);
    const double h = p.step();
    double total = 0.5 * (std::sqrt(e.front()) + std::sqrt(e.back()));
    for (size_t k = 1; k + 1 < e.size(); ++k) total += std::sqrt(e[k]);
    return h * total;
}

// Residual of u_tt + |grad0 du/dt|^2 / (K0 - Delta0 u) = 0 at interior nodes.
inline std::vector<VertexField> geodesic_residual(const DiscreteSurface& s, const TimePath& p)
{
    validate_path(s, p, "geodesic_residual");
    const int n = p.segments();
    const double h = p.step();
    const double sign = p.cone == Cone::Negative ? -1.0 : 1.0;
    std::vector<VertexField> r(n - 1);
    for (int k = 1; k < n; ++k) {
        const VertexField utt =
            (p.nodes[k + 1] - 2.0 * p.nodes[k] + p.nodes[k - 1]) / (h * h);
        const VertexField udot = (p.nodes[k + 1] - p.nodes[k - 1]) / (2.0 * h);
        const VertexField kappa = curvature_density(s, p.nodes[k]);
        if ((sign * kappa.array() <= 0.0).any())
            throw std::invalid_argument("geodesic_residual: node " + std::to_string(k) +
                                        " is not admissible (K0 - Delta0 u crosses zero)");
        r[k - 1] = utt + (gradient_norm_sq(s, udot).array() / kappa.array()).matrix();
    }
    return r;
}

inline double residual_inf_norm(const std::vector<VertexField>& r)
{
    double m = 0.0;
    for (const auto& field : r) m = std::max(m, field.cwiseAbs().maxCoeff());
    return m;
}

// D alpha / dt = d alpha/dt + <grad alpha, grad du/dt>_u / K_u. The cross
// inner product uses the one-third face lift, and e^{-2u}/K_u collapses to
// 1/(K0 - Delta0 u).
inline std::vector<VertexField> covariant_derivative(const DiscreteSurface& s, const TimePath& p,
                                                     const std::vector<VertexField>& alpha)
{
    detail::require_admissible_path(s, p, "covariant_derivative");
    if (alpha.size() != p.nodes.size())
        throw std::invalid_argument("covariant_derivative: field must be given on every node");
    const int n = p.segments();
    const double h = p.step();
    const auto udot = velocity(p);

    std::vector<VertexField> out(n + 1);
    auto alpha_dot = [&](int k) -> VertexField {
        if (k == 0) return (-3.0 * alpha[0] + 4.0 * alpha[1] - alpha[2]) / (2.0 * h);
        if (k == n) return (3.0 * alpha[n] - 4.0 * alpha[n - 1] + alpha[n - 2]) / (2.0 * h);
        return (alpha[k + 1] - alpha[k - 1]) / (2.0 * h);
    };
    for (int k = 0; k <= n; ++k) {
        const VertexField kappa = curvature_density(s, p.nodes[k]);
        out[k] = alpha_dot(k) +
                 (gradient_dot(s, alpha[k], udot[k]).array() / kappa.array()).matrix();
    }
    return out;
}

// I_p(t_k) = sum_i (du/dt)_i^p |K_u| e^{2u} m_i; constant in t along geodesics.
inline std::vector<double> conserved_functional(const DiscreteSurface& s, const TimePath& p,
                                                int exponent)
{
    if (exponent != 1 && exponent != 2)
        throw std::invalid_argument("conserved_functional: exponent must be 1 or 2");
    detail::require_admissible_path(s, p, "conserved_functional");
    const auto v = velocity(p);
    const double sign = p.cone == Cone::Negative ? -1.0 : 1.0;
    std::vector<double> out(p.nodes.size());
    for (size_t k = 0; k < p.nodes.size(); ++k) {
        const VertexField density = curvature_density(s, p.nodes[k]);
        Eigen::ArrayXd vp = v[k].array();
        if (exponent == 2) vp = vp.square();
        out[k] = sign * (vp * density.array() * s.area_masses.array()).sum();
    }
    return out;
}

} // namespace confgeo
