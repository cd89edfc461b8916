#pragma once

// Riemannian structure of SU(2) induced by the gate distance, its
// three-sphere picture, Haar sampling and the state-averaged fidelity.

#include <array>
#include <cstdint>
#include <vector>

#include "gatedist/gates.hpp"

namespace gatedist {

/// Coordinate increments (d theta1, d theta2, d theta3) at a parameter point.
struct TangentIncrement {
    double dtheta1 = 0.0;
    double dtheta2 = 0.0;
    double dtheta3 = 0.0;
};

/// (Re alpha, Im alpha, Re beta, Im beta) for U = [[alpha, beta], [-beta*, alpha*]].
struct SphereCoords {
    std::array<double, 4> x{};

    [[nodiscard]] double norm() const;
};

/// (1/4)(2 tr(dU dU^dag) - |tr(U^dag dU)|^2). The tangent condition on dU is
/// not enforced; see tangent_residual.
double metric_form_matrix(const Gate& u, const ComplexMatrix& du);

/// ||U^dag dU + (U^dag dU)^dag||_max / max(||dU||_max, tiny): zero for an
/// exact tangent vector of U(2).
double tangent_residual(const Gate& u, const ComplexMatrix& du);

/// d theta1^2 + cos^2 theta1 d theta2^2 + sin^2 theta1 d theta3^2.
double metric_form_coords(const GateSU2Params& p, const TangentIncrement& t);

/// Exact directional derivative of su2_matrix at p along t.
ComplexMatrix su2_differential(const GateSU2Params& p, const TangentIncrement& t);

SphereCoords sphere_embed(const Gate& u);

/// Linear part of sphere_embed: the top row of any 2x2 matrix as a 4-vector.
SphereCoords top_row_coords(const ComplexMatrix& m);

/// theta1 = arcsin(sqrt(u)) (density sin 2 theta1 on [0, pi/2]) and
/// theta2, theta3 uniform on [0, 2 pi). Deterministic in `seed`.
std::vector<GateSU2Params> haar_sample_su2(std::uint64_t seed, std::size_t n);

/// CDF of the Haar theta1 marginal: sin^2 theta1.
double haar_theta1_cdf(double theta1);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Average of |<psi|U1^dag U2|psi>|^2 over uniformly random pure states,
/// drawn as normalized complex Gaussian vectors.
MonteCarloEstimate avg_fidelity_mc(const Gate& u1, const Gate& u2, std::size_t samples,
                                   std::uint64_t seed);

/// 1/3 + (2/3) gate_fidelity_su2 for 2x2 gates.
double avg_fidelity_su2_closed(const Gate& u1, const Gate& u2);

}  // namespace gatedist
