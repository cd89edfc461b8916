#include "gatedist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gatedist/errors.hpp"
#include "gatedist/random.hpp"

namespace gatedist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_qubit(const Gate& u, const char* what) {
    if (u.dim() != 2) {
        std::ostringstream msg;
        msg << what << ": requires a 2x2 gate, got dimension " << u.dim();
        throw DimensionError(msg.str());
    }
}

}  // namespace

double SphereCoords::norm() const {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
}

double metric_form_matrix(const Gate& u, const ComplexMatrix& du) {
    require_qubit(u, "metric_form_matrix");
    if (du.rows() != 2 || du.cols() != 2) {
        throw DimensionError("metric_form_matrix: increment must be 2x2");
    }
    const double frobenius = (du * du.adjoint()).trace().real();
    const double projected = std::norm((u.matrix().adjoint() * du).trace());
    return std::max(0.0, (2.0 * frobenius - projected) / 4.0);
}

double tangent_residual(const Gate& u, const ComplexMatrix& du) {
    const ComplexMatrix generator = u.matrix().adjoint() * du;
    const double scale = std::max(max_abs(du), std::numeric_limits<double>::min());
    return max_abs(generator + generator.adjoint()) / scale;
}

double metric_form_coords(const GateSU2Params& p, const TangentIncrement& t) {
    const double c = std::cos(p.theta1);
    const double s = std::sin(p.theta1);
    return t.dtheta1 * t.dtheta1 + c * c * t.dtheta2 * t.dtheta2 + s * s * t.dtheta3 * t.dtheta3;
}

ComplexMatrix su2_differential(const GateSU2Params& p, const TangentIncrement& t) {
    const double c = std::cos(p.theta1);
    const double s = std::sin(p.theta1);
    const Complex i_unit(0.0, 1.0);
    const Complex a = std::polar(1.0, p.theta2);
    const Complex b = std::polar(1.0, p.theta3);
    ComplexMatrix d(2, 2);
    d(0, 0) = (-s * t.dtheta1 + i_unit * c * t.dtheta2) * a;
    d(0, 1) = (c * t.dtheta1 + i_unit * s * t.dtheta3) * b;
    d(1, 0) = -(c * t.dtheta1 - i_unit * s * t.dtheta3) * std::conj(b);
    d(1, 1) = (-s * t.dtheta1 - i_unit * c * t.dtheta2) * std::conj(a);
    return d;
}

SphereCoords top_row_coords(const ComplexMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw DimensionError("top_row_coords: expected a 2x2 matrix");
    }
    return SphereCoords{{m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()}};
}

SphereCoords sphere_embed(const Gate& u) {
    require_qubit(u, "sphere_embed");
    const ComplexMatrix& m = u.matrix();
    const bool su2_form = std::abs(m(1, 0) + std::conj(m(0, 1))) <= 1e-10 &&
                          std::abs(m(1, 1) - std::conj(m(0, 0))) <= 1e-10;
    if (!su2_form) {
        throw ValidationError("sphere_embed: gate is not special-unitary");
    }
    return top_row_coords(m);
}

std::vector<GateSU2Params> haar_sample_su2(std::uint64_t seed, std::size_t n) {
    if (n == 0) {
        throw ValidationError("haar_sample_su2: sample count must be at least 1");
    }
    Rng rng(seed);
    std::vector<GateSU2Params> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        GateSU2Params p;
        p.theta1 = std::asin(std::sqrt(uniform01(rng)));
        p.theta2 = kTwoPi * uniform01(rng);
        p.theta3 = kTwoPi * uniform01(rng);
        // Rounding of 2 pi * u can land on 2 pi itself.
        if (p.theta2 >= kTwoPi) {
            p.theta2 = 0.0;
        }
        if (p.theta3 >= kTwoPi) {
            p.theta3 = 0.0;
        }
        out.push_back(p);
    }
    return out;
}

double haar_theta1_cdf(double theta1) {
    const double s = std::sin(std::clamp(theta1, 0.0, std::numbers::pi / 2.0));
    return s * s;
}

MonteCarloEstimate avg_fidelity_mc(const Gate& u1, const Gate& u2, std::size_t samples,
                                   std::uint64_t seed) {
    if (u1.dim() != u2.dim()) {
        throw DimensionError("avg_fidelity_mc: gate dimensions differ");
    }
    if (samples == 0) {
        throw ValidationError("avg_fidelity_mc: sample count must be at least 1");
    }
    const ComplexMatrix rel = u1.matrix().adjoint() * u2.matrix();
    Rng rng(seed);
    // Welford running mean and variance.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const ComplexVector psi = random_state(rng, u1.dim());
        const double value = std::norm(psi.dot(rel * psi));
        const double delta = value - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (value - mean);
    }
    MonteCarloEstimate out;
    out.estimate = mean;
    out.samples = samples;
    out.std_error = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) /
                                            static_cast<double>(samples))
                                : 0.0;
    return out;
}

double avg_fidelity_su2_closed(const Gate& u1, const Gate& u2) {
    require_qubit(u1, "avg_fidelity_su2_closed");
    require_qubit(u2, "avg_fidelity_su2_closed");
    return 1.0 / 3.0 + 2.0 / 3.0 * gate_fidelity_su2(u1, u2);
}

}  // namespace gatedist
