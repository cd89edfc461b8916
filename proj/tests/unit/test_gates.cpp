#include <gtest/gtest.h>

#include <cmath>

#include "gatedist/errors.hpp"
#include "gatedist/gates.hpp"
#include "gatedist/random.hpp"
#include "oracles.hpp"

using namespace gatedist;
using namespace gatedist::testing;

namespace {

Gate su2_with_half_angle(double alpha) {
    return Gate(diag_phases({alpha, -alpha}), true);
}

Gate random_su2(Rng& rng) {
    return Gate(random_special_unitary(rng, 2), true);
}

Gate i_pauli_x() {
    return Gate(Complex(0.0, 1.0) * pauli_x(), true);
}

// |<Psi| U (x) 1 |Psi>|^2 by plain matrix-vector products.
double direct_overlap(const ComplexMatrix& u, const ComplexVector& psi) {
    const ComplexMatrix full = kron(u, ComplexMatrix::Identity(u.rows(), u.rows()));
    return std::norm(psi.dot(full * psi));
}

}  // namespace

TEST(Su2FromParams, Examples) {
    EXPECT_LE(max_abs(su2_from_params({0, 0, 0}).matrix() - ComplexMatrix::Identity(2, 2)), 0.0);
    ComplexMatrix anti = ComplexMatrix::Zero(2, 2);
    anti(0, 1) = 1.0;
    anti(1, 0) = -1.0;
    EXPECT_LE(max_abs(su2_from_params({kPi / 2.0, 0, 0}).matrix() - anti), 1e-16);
    const Gate g = su2_from_params({0.3, 1.1, 2.0});
    EXPECT_TRUE(validate_unitary(g.matrix(), 1e-12));
    EXPECT_NEAR(std::abs(g.matrix().determinant() - 1.0), 0.0, 1e-12);
    EXPECT_TRUE(g.is_special());
}

TEST(Su2FromParams, RejectsOutOfRange) {
    EXPECT_THROW(su2_from_params({-0.1, 0, 0}), ValidationError);
    EXPECT_THROW(su2_from_params({kPi / 2.0 + 1e-9, 0, 0}), ValidationError);
    EXPECT_THROW(su2_from_params({0, 2.0 * kPi, 0}), ValidationError);
    EXPECT_THROW(su2_from_params({0, 0, -1e-3}), ValidationError);
}

TEST(Gate, ValidatesConstruction) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 0) = 1.1;
    EXPECT_THROW(Gate{m}, ValidationError);
    EXPECT_THROW(Gate(diag_phases({0.1, 0.2}), true), ValidationError);
    EXPECT_NO_THROW(Gate(diag_phases({0.1, 0.2})));
    EXPECT_THROW(Gate(ComplexMatrix::Identity(2, 3)), DimensionError);
}

TEST(RelativeGate, Examples) {
    Rng rng(1);
    const Gate u = random_su2(rng);
    EXPECT_LE(max_abs(relative_gate(u, u).matrix() - ComplexMatrix::Identity(2, 2)), 1e-14);
    EXPECT_LE(max_abs(relative_gate(Gate::identity(2), u).matrix() - u.matrix()), 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Gate rel = relative_gate(random_su2(rng), random_su2(rng));
        EXPECT_TRUE(validate_unitary(rel.matrix(), 1e-10));
    }
    EXPECT_THROW(relative_gate(Gate::identity(2), Gate::identity(3)), DimensionError);
}

TEST(GateFidelitySu2, Examples) {
    Rng rng(2);
    const Gate u = random_su2(rng);
    EXPECT_NEAR(gate_fidelity_su2(u, u), 1.0, 1e-14);
    EXPECT_NEAR(gate_fidelity_su2(Gate::identity(2), su2_with_half_angle(kPi / 3.0)), 0.25, 1e-15);
    EXPECT_NEAR(gate_fidelity_su2(Gate::identity(2), i_pauli_x()), 0.0, 1e-30);
    EXPECT_THROW(gate_fidelity_su2(Gate::identity(3), Gate::identity(3)), DimensionError);
}

TEST(MinimalCoveringArc, Examples) {
    EXPECT_DOUBLE_EQ(minimal_covering_arc(std::vector<double>{0.0}).delta, 0.0);

    const ArcResult pair = minimal_covering_arc(std::vector<double>{kPi / 3.0, -kPi / 3.0});
    EXPECT_NEAR(pair.delta, kPi / 3.0, 1e-15);
    EXPECT_NEAR(pair.extremes.first, -kPi / 3.0, 1e-15);
    EXPECT_NEAR(pair.extremes.second, kPi / 3.0, 1e-15);
    EXPECT_NEAR(pair.center, 0.0, 1e-15);

    const std::vector<double> square{0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
    EXPECT_NEAR(arc_half_width_enumerated(square), 3.0 * kPi / 4.0, 1e-15);
    EXPECT_NEAR(minimal_covering_arc(square).delta, 3.0 * kPi / 4.0, 1e-15);

    EXPECT_THROW(minimal_covering_arc(std::vector<double>{}), ValidationError);
}

TEST(MinimalCoveringArc, ArcAcrossTheBranchCut) {
    const ArcResult arc = minimal_covering_arc(std::vector<double>{3.0, -3.0});
    EXPECT_NEAR(arc.delta, kPi - 3.0, 1e-14);
    EXPECT_NEAR(std::abs(arc.center), kPi, 1e-14);
    EXPECT_NEAR(arc.extremes.first, 3.0, 1e-14);
    EXPECT_NEAR(arc.extremes.second, -3.0, 1e-14);
}

TEST(MinimalCoveringArc, TieBrokenBySmallestCenter) {
    // Two gaps of equal length: arcs centred at 0 and at pi are equally short.
    const ArcResult arc = minimal_covering_arc(std::vector<double>{-0.5, 0.5, kPi - 0.5, 0.5 - kPi});
    const ArcResult again = minimal_covering_arc(std::vector<double>{0.5 - kPi, kPi - 0.5, 0.5, -0.5});
    EXPECT_NEAR(arc.delta, again.delta, 0.0);
    EXPECT_DOUBLE_EQ(arc.center, again.center);
}

TEST(MinimalCoveringArc, MatchesEnumerationAndCoversAllPhases) {
    Rng rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 7;
        std::vector<double> phases;
        for (int k = 0; k < n; ++k) {
            phases.push_back(principal_phase(2.0 * kPi * uniform01(rng)));
        }
        const ArcResult arc = minimal_covering_arc(phases);
        EXPECT_NEAR(arc.delta, arc_half_width_enumerated(phases), 1e-12);
        EXPECT_GE(arc.delta, 0.0);
        EXPECT_LE(arc.delta, kPi);
        for (double phi : phases) {
            EXPECT_TRUE(arc_contains(arc, phi));
        }
        EXPECT_NEAR(angle_gap(arc.center - arc.delta, arc.extremes.first), 0.0, 1e-12);
        EXPECT_NEAR(angle_gap(arc.center + arc.delta, arc.extremes.second), 0.0, 1e-12);
    }
}

TEST(GateDistance, Examples) {
    Rng rng(4);
    const Gate u = random_su2(rng);
    EXPECT_NEAR(gate_distance(u, u), 0.0, 1e-12);
    EXPECT_NEAR(gate_distance(Gate::identity(2), i_pauli_x()), kPi / 2.0, 1e-15);
    EXPECT_NEAR(gate_distance(Gate::identity(2), su2_with_half_angle(kPi / 3.0)), kPi / 3.0, 1e-14);
}

TEST(GateDistance, QubitArccosAgreement) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        const double trace = std::abs((a.matrix().adjoint() * b.matrix()).trace());
        const double d = gate_distance(a, b);
        EXPECT_NEAR(d, std::acos(std::min(1.0, trace / 2.0)), 1e-10);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, kPi / 2.0);
    }
}

TEST(GateFidelitySud, Examples) {
    const Gate su3 = su3_example_gate(kPi / 4.0, kPi / 4.0, {0, 0, 0, 0, 0});
    EXPECT_EQ(gate_fidelity_sud(Gate::identity(3), su3), 0.0);

    const Gate diag(diag_phases({0.2, 0.5, -0.7}), true);
    EXPECT_NEAR(gate_fidelity_sud(Gate::identity(3), diag), 0.6811788772383368, 1e-15);
    // Chord-midpoint minimum from the grid oracle.
    EXPECT_NEAR(simplex_grid_min({0.2, 0.5, -0.7}, 600), 0.6811788772383368, 1e-5);
    EXPECT_NEAR(convex_min_overlap(std::vector<double>{0.2, 0.5, -0.7}), 0.6811788772383368, 1e-15);
}

TEST(GateFidelitySud, EqualsQubitFormula) {
    Rng rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        EXPECT_NEAR(gate_fidelity_sud(a, b), gate_fidelity_su2(a, b), 1e-10);
    }
}

TEST(GateFidelitySud, LeftAndRightInvariance) {
    Rng rng(7);
    for (int d = 2; d <= 4; ++d) {
        for (int trial = 0; trial < 40; ++trial) {
            const Gate a(random_special_unitary(rng, d), true);
            const Gate b(random_special_unitary(rng, d), true);
            const ComplexMatrix v = random_unitary(rng, d);
            const ComplexMatrix w = random_unitary(rng, d);
            const double f = gate_fidelity_sud(a, b);
            EXPECT_NEAR(f, gate_fidelity_sud(Gate(a.matrix() * v), Gate(b.matrix() * v)), 1e-10);
            EXPECT_NEAR(f, gate_fidelity_sud(Gate(w * a.matrix()), Gate(w * b.matrix())), 1e-10);
            if (d == 2) {
                const Gate av(a.matrix() * v);
                const Gate bv(b.matrix() * v);
                EXPECT_NEAR(gate_fidelity_su2(a, b), std::norm((av.matrix().adjoint() * bv.matrix()).trace()) / 4.0,
                            1e-10);
            }
        }
    }
}

TEST(GateFidelitySud, DegeneracyInvariance) {
    Rng rng(8);
    const std::vector<double> phases{0.3, 0.3, -0.9, -0.9, 1.1};
    const ComplexMatrix diag = diag_phases(phases);
    double reference = -1.0;
    for (int trial = 0; trial < 10; ++trial) {
        // Rotations inside the degenerate blocks only.
        ComplexMatrix block = ComplexMatrix::Identity(5, 5);
        block.block(0, 0, 2, 2) = random_unitary(rng, 2);
        block.block(2, 2, 2, 2) = random_unitary(rng, 2);
        const ComplexMatrix v = random_unitary(rng, 5);
        const Gate g(v * block * diag * block.adjoint() * v.adjoint());
        const double f = gate_fidelity_sud(Gate::identity(5), g);
        if (reference < 0.0) {
            reference = f;
        }
        EXPECT_NEAR(f, reference, 1e-9);
        EXPECT_NEAR(gate_distance(Gate::identity(5), g), 1.0, 1e-9);
    }
}

TEST(GateDistance, GlobalPhaseIsIndistinguishable) {
    const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
    const Gate scaled(omega * ComplexMatrix::Identity(3, 3), true);
    EXPECT_NEAR(gate_distance(Gate::identity(3), scaled), 0.0, 1e-12);
    EXPECT_THROW(min_copies(Gate::identity(3), scaled), IdenticalGatesError);
}

TEST(ConvexMinOverlap, Examples) {
    EXPECT_DOUBLE_EQ(convex_min_overlap(std::vector<double>{0.0}), 1.0);
    EXPECT_NEAR(convex_min_overlap(std::vector<double>{kPi / 3.0, -kPi / 3.0}), 0.25, 1e-15);
    EXPECT_NEAR(simplex_grid_min({0.0, kPi / 4.0, kPi / 3.0}, 600), 0.75, 1e-6);
    EXPECT_NEAR(convex_min_overlap(std::vector<double>{0.0, kPi / 4.0, kPi / 3.0}), 0.75, 1e-15);
    EXPECT_DOUBLE_EQ(convex_min_overlap(std::vector<double>{0.0, 2.0, 4.0}), 0.0);
}

TEST(ConvexMinOverlap, AgreesWithGridOracle) {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 2;
        std::vector<double> phases;
        for (int k = 0; k < n; ++k) {
            phases.push_back(principal_phase(2.0 * kPi * uniform01(rng)));
        }
        const double closed = convex_min_overlap(phases);
        const double grid = simplex_grid_min(phases, n == 2 ? 20000 : 400);
        EXPECT_LE(closed, grid + 1e-12);
        EXPECT_NEAR(closed, grid, n == 2 ? 1e-6 : 2e-4);
    }
}

TEST(MinCopies, Examples) {
    EXPECT_EQ(min_copies(Gate::identity(2), i_pauli_x()), 1);
    EXPECT_EQ(min_copies(Gate::identity(2), su2_with_half_angle(kPi / 5.0)), 3);
    EXPECT_EQ(min_copies(Gate::identity(2), su2_with_half_angle(kPi / 4.0)), 2);
    EXPECT_EQ(min_copies_for_distance(kPi / 6.0), 3);
    EXPECT_EQ(min_copies_for_distance(kPi / 6.0 + 1e-9), 3);
    EXPECT_EQ(min_copies_for_distance(kPi / 6.0 - 1e-9), 4);
    EXPECT_THROW(min_copies_for_distance(0.0), IdenticalGatesError);
    EXPECT_THROW(min_copies(Gate::identity(2), Gate::identity(2)), IdenticalGatesError);
}

TEST(MinCopies, FoldsObtuseHalfAngles) {
    // alpha and pi - alpha give the same relative arc.
    for (double alpha : {0.3, 0.7, 1.2}) {
        EXPECT_EQ(min_copies(Gate::identity(2), su2_with_half_angle(alpha)),
                  min_copies(Gate::identity(2), su2_with_half_angle(kPi - alpha)));
    }
}

TEST(MinCopies, Sharpness) {
    Rng rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        const double d = gate_distance(a, b);
        if (d < 0.05) {
            continue;
        }
        const std::int64_t n = min_copies(a, b);
        const std::vector<double> base = relative_gate(a, b).spectral().phases;
        if (n > 1) {
            EXPECT_GT(convex_min_overlap(tensor_power_phases(base, static_cast<int>(n - 1))), 1e-6);
        }
        EXPECT_DOUBLE_EQ(convex_min_overlap(tensor_power_phases(base, static_cast<int>(n))), 0.0);
    }
}

TEST(TensorPowerPhases, QubitSums) {
    const std::vector<double> phases = tensor_power_phases(std::vector<double>{-0.4, 0.4}, 3);
    EXPECT_TRUE(same_phase_multiset(phases, {-1.2, -0.4, 0.4, 1.2}, 1e-14));
    EXPECT_THROW(tensor_power_phases(std::vector<double>{0.1}, 0), ValidationError);
}

TEST(OptimalProbeSingle, EntangledMatchesTraceFormula) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        const ProbeState probe = optimal_probe_single(a, b, true);
        const ComplexMatrix u = a.matrix().adjoint() * b.matrix();
        EXPECT_NEAR(direct_overlap(u, probe.vector()), std::norm(u.trace()) / 4.0, 1e-12);
        EXPECT_NEAR(probe_overlap(a, b, probe, 1), gate_fidelity_su2(a, b), 1e-12);
        EXPECT_FALSE(probe.separable());
    }
}

TEST(OptimalProbeSingle, SeparableInComputationalEigenbasis) {
    const Gate z = su2_with_half_angle(0.8);
    const ProbeState probe = optimal_probe_single(Gate::identity(2), z, false);
    ComplexVector expected = ComplexVector::Zero(4);
    expected(0) = expected(2) = 1.0 / std::sqrt(2.0);
    EXPECT_LE((probe.vector() - expected).norm(), 1e-14);
    EXPECT_TRUE(probe.separable());
}

TEST(OptimalProbeSingle, HalfPopulationAndOptimality) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        for (bool entangled : {true, false}) {
            const ProbeState probe = optimal_probe_single(a, b, entangled);
            EXPECT_NEAR(probe.vector().norm(), 1.0, 1e-10);
            const ComplexMatrix rho = partial_trace_b(probe.vector());
            const Gate rel = relative_gate(a, b);
            const UnitaryEigen& eig = rel.spectral();
            EXPECT_NEAR(eig.vector(0).dot(rho * eig.vector(0)).real(), 0.5, 1e-10);
            EXPECT_NEAR(probe_overlap(a, b, probe, 1), gate_fidelity_su2(a, b), 1e-10);
        }
        const ProbeState same = optimal_probe_single(a, a, false);
        EXPECT_NEAR(probe_overlap(a, a, same, 1), 1.0, 1e-12);
    }
    EXPECT_THROW(optimal_probe_single(Gate::identity(3), Gate::identity(3), true), DimensionError);
}

TEST(OptimalProbeWeight, Examples) {
    EXPECT_NEAR(optimal_probe_weight(kPi / 4.0, 2), 0.5, 1e-15);
    const double q = optimal_probe_weight(kPi / 5.0, 3);
    EXPECT_NEAR(q, 0.36180339887498947, 1e-15);
    EXPECT_NEAR(2.0 * q * std::cos(3.0 * kPi / 5.0) + (1.0 - 2.0 * q) * std::cos(kPi / 5.0), 0.0,
                1e-12);
    EXPECT_DOUBLE_EQ(optimal_probe_weight(kPi / 2.0, 1), 0.5);
    EXPECT_THROW(optimal_probe_weight(0.3, 1), ConsistencyError);
    EXPECT_THROW(optimal_probe_weight(0.3, 0), ValidationError);
}

TEST(OptimalProbeWeight, StaysInRangeAtMinimalCopyCount) {
    for (int k = 1; k <= 4000; ++k) {
        const double delta = 1e-3 + (kPi / 2.0 - 1e-3) * k / 4000.0;
        const std::int64_t n = min_copies_for_distance(delta);
        const double q = optimal_probe_weight(delta, n);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, 0.5);
        // The even/odd cancellation identity.
        const double nd = static_cast<double>(n) * delta;
        const double rest = n % 2 == 0 ? 1.0 : std::cos(delta);
        const double weight = n == 1 ? 0.0 : 1.0 - 2.0 * q;
        EXPECT_NEAR(2.0 * q * std::cos(nd) + weight * rest, 0.0, 1e-9) << delta;
    }
}

TEST(OptimalProbeNcopies, Examples) {
    const Gate quarter = su2_with_half_angle(kPi / 4.0);
    const ProbeState two = optimal_probe_ncopies(Gate::identity(2), quarter);
    EXPECT_EQ(two.copies(), 2);
    // q = 1/2 leaves only the two extreme products.
    EXPECT_EQ(two.terms().size(), 2u);
    EXPECT_LE(probe_overlap(Gate::identity(2), quarter, two, 2), 1e-16);

    const Gate fifth = su2_with_half_angle(kPi / 5.0);
    const ProbeState three = optimal_probe_ncopies(Gate::identity(2), fifth);
    EXPECT_EQ(three.copies(), 3);
    EXPECT_NEAR(three.vector().norm(), 1.0, 1e-10);
    EXPECT_LE(probe_overlap(Gate::identity(2), fifth, three, 3), 1e-16);
    // Dense evaluation on the explicit Kronecker power.
    EXPECT_LE(direct_overlap(tensor_power(fifth.matrix(), 3), three.vector()), 1e-16);

    EXPECT_THROW(optimal_probe_ncopies(fifth, fifth), IdenticalGatesError);
}

TEST(OptimalProbeNcopies, OrthogonalOutputsForRandomPairs) {
    Rng rng(13);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        if (gate_distance(a, b) < 0.05) {
            continue;
        }
        const ProbeState probe = optimal_probe_ncopies(a, b);
        const int n = probe.copies();
        EXPECT_EQ(n, min_copies(a, b));
        EXPECT_LE(probe_overlap(a, b, probe, n), 1e-16);
        if (n <= 5) {
            const ComplexMatrix out1 = tensor_power(a.matrix(), n) * probe.system_vector();
            const ComplexMatrix out2 = tensor_power(b.matrix(), n) * probe.system_vector();
            EXPECT_LE(std::abs(out1.col(0).dot(out2.col(0))), 1e-8);
        }
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(ProbeOverlap, Examples) {
    Rng rng(14);
    const Gate a = random_su2(rng);
    const ProbeState probe = ProbeState::dense(random_state(rng, 16), 2, 2, false);
    EXPECT_NEAR(probe_overlap(a, a, probe, 2), 1.0, 1e-12);
    EXPECT_THROW(probe_overlap(a, a, probe, 1), DimensionError);
    EXPECT_THROW(probe_overlap(Gate::identity(3), Gate::identity(3), probe, 2), DimensionError);
}

TEST(ProbeOverlap, DirectAndSpectralRoutesAgree) {
    Rng rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 2;
        const int n = 1 + trial % 3;
        if (std::pow(d, n) > 27) {
            continue;
        }
        const Gate a(random_unitary(rng, d));
        const Gate b(random_unitary(rng, d));
        const auto system = static_cast<Eigen::Index>(std::pow(d, n));
        const ProbeState probe = ProbeState::dense(random_state(rng, system * system), n, d, false);
        const double direct = direct_overlap(tensor_power(relative_gate(a, b).matrix(), n), probe.vector());
        EXPECT_NEAR(probe_overlap(a, b, probe, n), direct, 1e-10);
        EXPECT_NEAR(probe_overlap_spectral(a, b, probe, n), direct, 1e-10);
        // A random probe never beats the closed form.
        const std::vector<double> phases = tensor_power_phases(relative_gate(a, b).spectral().phases, n);
        EXPECT_GE(direct, convex_min_overlap(phases) - 1e-10);
    }
}

TEST(ProbeOverlap, NoAncillaProbeUsesFixedReference) {
    Rng rng(16);
    const Gate a(random_unitary(rng, 3));
    const Gate b(random_unitary(rng, 3));
    const ComplexVector psi = random_state(rng, 3);
    const ProbeState bare = ProbeState::dense(psi, 1, 3, true, false);
    const ProbeState padded = ProbeState::dense(kron(psi, ComplexVector::Unit(3, 0)), 1, 3, true);
    EXPECT_NEAR(probe_overlap(a, b, bare, 1), probe_overlap(a, b, padded, 1), 1e-14);
}

TEST(ProbeState, RejectsMalformedInput) {
    EXPECT_THROW(ProbeState::dense(ComplexVector::Unit(5, 0), 1, 2, false), DimensionError);
    EXPECT_THROW(ProbeState::dense(ComplexVector::Ones(4), 1, 2, false), ValidationError);
    std::vector<ProductTerm> terms{{Complex(1.0, 0.0), {ComplexVector::Unit(2, 0)}}};
    EXPECT_THROW(ProbeState::product_sum(terms, 2, 2, true), DimensionError);
    terms[0].amplitude = 2.0;
    EXPECT_THROW(ProbeState::product_sum(terms, 1, 2, true), ValidationError);
}

TEST(ProbeState, ProductFormExpandsToDenseVector) {
    Rng rng(17);
    const ComplexVector x = random_state(rng, 2);
    const ComplexVector y = random_state(rng, 2);
    const ProbeState p = ProbeState::product_sum({{Complex(1.0, 0.0), {x, y}}}, 2, 2, true);
    EXPECT_LE((p.system_vector() - kron(x, y)).norm(), 1e-15);
    EXPECT_LE((p.vector() - kron(kron(x, y), ComplexVector::Unit(4, 0))).norm(), 1e-15);
}

TEST(SimplexMinOverlap, MatchesClosedForm) {
    Rng rng(18);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 8;
        std::vector<double> phases;
        for (int k = 0; k < n; ++k) {
            phases.push_back(principal_phase(2.0 * kPi * uniform01(rng)));
        }
        const OracleResult r = simplex_min_overlap(phases, 8, static_cast<std::uint64_t>(trial));
        EXPECT_NEAR(r.minimum, convex_min_overlap(phases), 1e-6);
    }
    EXPECT_THROW(simplex_min_overlap(std::vector<double>{0.1}, 0, 1), ValidationError);
}

TEST(OracleMinOverlap, Examples) {
    Rng rng(19);
    const Gate a = random_su2(rng);
    for (int n = 1; n <= 3; ++n) {
        EXPECT_NEAR(oracle_min_overlap(a, a, n, 4, 1), 1.0, 1e-12);
    }
    const Gate b = random_su2(rng);
    EXPECT_NEAR(oracle_min_overlap(a, b, 1, 16, 2), gate_fidelity_su2(a, b), 1e-6);
    EXPECT_NEAR(oracle_min_overlap(Gate::identity(2), i_pauli_x(), 1, 16, 3), 0.0, 1e-8);
    EXPECT_THROW(oracle_min_overlap(a, b, 1, 0, 0), ValidationError);
    EXPECT_THROW(oracle_min_overlap(a, b, 13, 1, 0), SizeError);
}

TEST(OracleMinOverlap, ReproducibleForFixedSeed) {
    Rng rng(20);
    const Gate a = random_su2(rng);
    const Gate b = random_su2(rng);
    const OracleResult first = oracle_min_overlap_detailed(a, b, 2, 8, 42);
    const OracleResult second = oracle_min_overlap_detailed(a, b, 2, 8, 42);
    EXPECT_EQ(first.minimum, second.minimum);
    EXPECT_EQ(first.random_probe_minimum, second.random_probe_minimum);
    EXPECT_GE(first.random_probe_minimum, first.minimum - 1e-8);
}

TEST(OracleMinOverlap, AgreesWithClosedFormOnRandomPairs) {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const Gate a = random_su2(rng);
        const Gate b = random_su2(rng);
        const double d = gate_distance(a, b);
        for (int n = 1; n <= 3; ++n) {
            const double closed = n * d >= kPi / 2.0 ? 0.0 : std::pow(std::cos(n * d), 2);
            EXPECT_NEAR(oracle_min_overlap(a, b, n, 8, static_cast<std::uint64_t>(trial)), closed, 1e-6);
        }
    }
}

TEST(Su3Example, ExplicitMatrixAtQuarterAngles) {
    const Gate g = su3_example_gate(kPi / 4.0, kPi / 4.0, {0, 0, 0, 0, 0});
    const double h = std::sqrt(2.0) / 2.0;
    ComplexMatrix expected(3, 3);
    expected << 0.0, h, h, h, 0.5, -0.5, -h, 0.5, -0.5;
    EXPECT_LE(max_abs(g.matrix() - expected), 1e-15);
    EXPECT_TRUE(validate_unitary(g.matrix(), 1e-12));
}

TEST(Su3Example, AlwaysPerfectlyDistinguishableFromIdentity) {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 5> phi{};
        for (auto& p : phi) {
            p = 2.0 * kPi * uniform01(rng);
        }
        const double g1 = kPi / 2.0 * uniform01(rng);
        const double g2 = kPi / 2.0 * uniform01(rng);
        const Gate g = su3_example_gate(g1, g2, phi);
        EXPECT_TRUE(validate_unitary(g.matrix(), 1e-10));
        EXPECT_NEAR(std::abs(std::abs(g.matrix().determinant()) - 1.0), 0.0, 1e-12);
        EXPECT_EQ(std::abs(g.matrix()(0, 0)), 0.0);
        EXPECT_EQ(gate_fidelity_sud(Gate::identity(3), g), 0.0);
        const ProbeState e1 = ProbeState::dense(ComplexVector::Unit(3, 0), 1, 3, true, false);
        EXPECT_NEAR(probe_overlap(Gate::identity(3), g, e1, 1), 0.0, 1e-30);
    }
}

TEST(Su3Example, RejectsOutOfRange) {
    EXPECT_THROW(su3_example_gate(-0.1, 0.2, {0, 0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(su3_example_gate(0.1, 2.0, {0, 0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(su3_example_gate(0.1, 0.2, {0, 0, 2.0 * kPi, 0, 0}), ValidationError);
}
