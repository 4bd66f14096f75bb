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

#include "confgeo/path.hpp"

namespace confgeo {

// One-parameter family of sphere dilations pulled back through stereographic
// projection: alpha(t) = e^{lambda t}, xi the third coordinate. Exact
// geodesics of the positive cone on the round sphere.
struct DilationFamily {
    const DiscreteSurface* surface = nullptr;
    double lambda = 0.0;
    VertexField xi;
};

inline DilationFamily make_dilation(const DiscreteSurface& s, double lambda)
{
    if (s.positions.empty() || static_cast<int>(s.positions.size()) != s.vertex_count)
        throw std::invalid_argument("make_dilation: surface lacks vertex positions");
    if (s.euler_characteristic != 2)
        throw std::invalid_argument("make_dilation: surface is not a sphere");
    DilationFamily fam;
    fam.surface = &s;
    fam.lambda = lambda;
    fam.xi.resize(s.vertex_count);
    for (int i = 0; i < s.vertex_count; ++i) {
        if (std::abs(s.positions[i].norm() - 1.0) > 1e-9)
            throw std::invalid_argument("make_dilation: vertex " + std::to_string(i) +
                                        " is not on the unit sphere");
        fam.xi[i] = s.positions[i].z();
    }
    return fam;
}

// u(t) = log(2 alpha) - log[(1 + xi) + alpha^2 (1 - xi)]
inline VertexField dilation_factor(const DilationFamily& fam, double t)
{
    const double alpha = std::exp(fam.lambda * t);
    const Eigen::ArrayXd denom = (1.0 + fam.xi.array()) + alpha * alpha * (1.0 - fam.xi.array());
    return (std::log(2.0 * alpha) - denom.log()).matrix();
}

struct DilationKinematics {
    VertexField velocity;     // du/dt
    VertexField acceleration; // d2u/dt2 = -4 lambda^2 alpha^2 (1 - xi^2) / denom^2
    VertexField grad_sq;      // |grad_u du/dt|^2_u, equals -d2u/dt2 since K_u = 1
};

inline DilationKinematics dilation_kinematics(const DilationFamily& fam, double t)
{
    const double alpha = std::exp(fam.lambda * t);
    const double a2 = alpha * alpha;
    const Eigen::ArrayXd xi = fam.xi.array();
    const Eigen::ArrayXd denom = (1.0 + xi) + a2 * (1.0 - xi);
    DilationKinematics kin;
    kin.velocity = (fam.lambda - 2.0 * fam.lambda * a2 * (1.0 - xi) / denom).matrix();
    kin.acceleration =
        (-4.0 * fam.lambda * fam.lambda * a2 * (1.0 - xi.square()) / denom.square()).matrix();
    kin.grad_sq = -kin.acceleration;
    return kin;
}

inline TimePath sample_dilation(const DilationFamily& fam, int n_segments, double t0 = 0.0,
                                double t1 = 1.0)
{
    TimePath p;
    p.cone = Cone::Positive;
    p.nodes.resize(n_segments + 1);
    for (int k = 0; k <= n_segments; ++k)
        p.nodes[k] = dilation_factor(fam, t0 + (t1 - t0) * k / n_segments);
    return p;
}

// u_k = u0 + (k/N) c: u_tt = 0 and grad du/dt = 0, so the geodesic equation
// holds exactly; length is |c| sqrt(2 pi chi).
inline TimePath shift_geodesic(const VertexField& u0, double c, int n_segments,
                               Cone cone = Cone::Positive)
{
    TimePath p;
    p.cone = cone;
    p.nodes.resize(n_segments + 1);
    for (int k = 0; k <= n_segments; ++k)
        p.nodes[k] = (u0.array() + c * static_cast<double>(k) / n_segments).matrix();
    return p;
}

} // namespace confgeo
