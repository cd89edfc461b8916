#pragma once

// Distinguishability of unitary operations: single-shot fidelity, minimal
// covering arc of eigenphases, minimal copy count for perfect
// discrimination, optimal probe states and a brute-force oracle.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gatedist/linalg.hpp"

namespace gatedist {

/// A validated unitary matrix. The spectral decomposition is computed on
/// first use and shared between copies; Gate is safe to share across threads.
class Gate {
  public:
    /// Throws ValidationError unless `m` is unitary within `tol`. With
    /// `special` set, also requires |det - 1| <= 1e-8.
    explicit Gate(ComplexMatrix m, bool special = false, double tol = kStructuralTol);

    static Gate identity(Eigen::Index dim);

    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }
    [[nodiscard]] bool is_special() const { return special_; }
    [[nodiscard]] const UnitaryEigen& spectral() const;

  private:
    struct SpectralCache;

    ComplexMatrix m_;
    bool special_ = false;
    std::shared_ptr<SpectralCache> cache_;
};

/// Euler-type angles of an SU(2) element: theta1 in [0, pi/2],
/// theta2 and theta3 in [0, 2 pi).
struct GateSU2Params {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
};

void validate_params(const GateSU2Params& p);

/// [[cos t1 e^{i t2}, sin t1 e^{i t3}], [-sin t1 e^{-i t3}, cos t1 e^{-i t2}]]
ComplexMatrix su2_matrix(const GateSU2Params& p);
Gate su2_from_params(const GateSU2Params& p);

/// U1^dag U2.
Gate relative_gate(const Gate& u1, const Gate& u2);

Gate tensor_power(const Gate& u, int copies, std::size_t cap = kDefaultSizeCap);

/// |tr(U1^dag U2)|^2 / 4 for two-dimensional gates.
double gate_fidelity_su2(const Gate& u1, const Gate& u2);

/// Shortest arc of the unit circle containing a set of phases.
struct ArcResult {
    double delta = 0.0;   ///< half-width, in [0, pi]
    double center = 0.0;  ///< midpoint phase, principal value
    /// Arc ends (start, end), with end reached from start counterclockwise.
    std::pair<double, double> extremes{0.0, 0.0};
};

ArcResult minimal_covering_arc(std::span<const double> phases);

/// True iff `phase` lies on the arc within `tol`.
bool arc_contains(const ArcResult& arc, double phase, double tol = 1e-12);

/// min(delta, pi/2) for the eigenphases of U1^dag U2.
double gate_distance(const Gate& u1, const Gate& u2);

/// cos^2(gate_distance).
double gate_fidelity_sud(const Gate& u1, const Gate& u2);

/// Minimum over simplex weights of |sum_k lambda_k e^{i phi_k}|^2 in closed
/// form: zero when the covering arc reaches half the circle, otherwise the
/// squared distance from the origin to the chord between the arc ends.
double convex_min_overlap(std::span<const double> phases);

/// Distinct eigenphases of U^{(x) n} given the eigenphases of U.
std::vector<double> tensor_power_phases(std::span<const double> phases, int copies);

/// Smallest N with N * distance >= pi/2; an exact integer ratio is honoured
/// to 1e-12. Throws IdenticalGatesError for distance <= 1e-12.
std::int64_t min_copies_for_distance(double distance);
std::int64_t min_copies(const Gate& u1, const Gate& u2);

/// One product state in a probe expansion: amplitude times the tensor
/// product of one local vector per copy.
struct ProductTerm {
    Complex amplitude;
    std::vector<ComplexVector> factors;
};

/// Input state of a discrimination experiment on C^D (x) C^D, D = d^N.
///
/// Stored either as a dense vector, or as a sum of product states on the
/// system factor with the ancilla fixed to |0...0>. The product form lets the
/// N-copy probes exist for N far beyond the dense size cap.
class ProbeState {
  public:
    /// `vector` has length D*D (system (x) ancilla, ancilla fastest) or, when
    /// `with_ancilla` is false, length D.
    static ProbeState dense(ComplexVector vector, int copies, Eigen::Index local_dim,
                            bool separable, bool with_ancilla = true);

    static ProbeState product_sum(std::vector<ProductTerm> terms, int copies,
                                  Eigen::Index local_dim, bool separable);

    [[nodiscard]] int copies() const { return copies_; }
    [[nodiscard]] Eigen::Index local_dim() const { return local_dim_; }
    [[nodiscard]] bool separable() const { return separable_; }
    [[nodiscard]] bool is_dense() const { return terms_.empty(); }
    [[nodiscard]] bool has_ancilla() const { return with_ancilla_; }
    [[nodiscard]] const std::vector<ProductTerm>& terms() const { return terms_; }

    /// Dense vector on system (x) ancilla. Throws SizeError when D^2 exceeds `cap`.
    [[nodiscard]] ComplexVector vector(std::size_t cap = kDefaultSizeCap) const;

    /// System-only vector for probes whose ancilla is a fixed product state.
    [[nodiscard]] ComplexVector system_vector(std::size_t cap = kDefaultSizeCap) const;

  private:
    ProbeState() = default;

    ComplexVector dense_;
    std::vector<ProductTerm> terms_;
    int copies_ = 1;
    Eigen::Index local_dim_ = 0;
    bool separable_ = false;
    bool with_ancilla_ = true;
};

/// d = 2 single-copy optimum. Entangled: (|00> + |11>)/sqrt 2, optimal for
/// every pair. Separable: (|u> + |u_perp>)/sqrt 2 (x) |0> in the eigenbasis
/// of U1^dag U2.
ProbeState optimal_probe_single(const Gate& u1, const Gate& u2, bool entangled);

/// Weight q placed on the two extreme eigenvectors of U^{(x) N} so that the
/// probe overlap cancels. Throws ConsistencyError outside [0, 1/2].
double optimal_probe_weight(double delta, std::int64_t copies);

/// Separable probe that makes U1^{(x) N} probe and U2^{(x) N} probe
/// orthogonal at N = min_copies(u1, u2). d = 2 only.
ProbeState optimal_probe_ncopies(const Gate& u1, const Gate& u2);

/// |<probe| (U1^dag U2)^{(x) N} (x) 1 |probe>|^2, evaluated directly.
double probe_overlap(const Gate& u1, const Gate& u2, const ProbeState& probe, int copies);

/// The same quantity as |sum_i lambda_i u_i^N|^2 with lambda_i the
/// populations of tr_B |probe><probe| in the eigenbasis of (U1^dag U2)^{(x) N}.
/// Dense probes only.
double probe_overlap_spectral(const Gate& u1, const Gate& u2, const ProbeState& probe,
                              int copies, std::size_t cap = 1024);

struct OracleResult {
    double minimum = 1.0;               ///< projected-gradient optimum over weights
    double random_probe_minimum = 1.0;  ///< best overlap among random probes
    std::int64_t iterations = 0;
    bool converged = false;
};

/// Minimum of |sum lambda_k e^{i phi_k}|^2 over the simplex by projected
/// gradient descent with `restarts` random starts.
OracleResult simplex_min_overlap(std::span<const double> phases, int restarts,
                                 std::uint64_t seed);

/// Brute-force estimate of the minimum probe overlap for N copies, from the
/// explicit Kronecker power. Independent of the closed forms above.
OracleResult oracle_min_overlap_detailed(const Gate& u1, const Gate& u2, int copies, int budget,
                                         std::uint64_t seed, std::size_t cap = kDefaultSizeCap);
double oracle_min_overlap(const Gate& u1, const Gate& u2, int copies, int budget,
                          std::uint64_t seed);

/// Five-phase family of SU(3)-type gates with a zero (1,1) entry; all of
/// them are perfectly distinguishable from the identity with the probe e_1.
Gate su3_example_gate(double gamma1, double gamma2, const std::array<double, 5>& phi);

}  // namespace gatedist
