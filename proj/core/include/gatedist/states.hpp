#pragma once

// Fidelity and statistical distance between quantum states, and the map from
// a POVM to outcome probabilities.

#include <vector>

#include "gatedist/classical.hpp"
#include "gatedist/linalg.hpp"

namespace gatedist {

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m, double tol = kStructuralTol);

    /// |psi><psi| for a normalized psi.
    static DensityMatrix pure(const ComplexVector& psi, double tol = kStructuralTol);

    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

  private:
    ComplexMatrix m_;
};

/// Positive operators summing to the identity.
class Povm {
  public:
    explicit Povm(std::vector<ComplexMatrix> elements, double tol = kStructuralTol);

    [[nodiscard]] const std::vector<ComplexMatrix>& elements() const { return elements_; }
    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] Eigen::Index dim() const { return elements_.front().rows(); }

  private:
    std::vector<ComplexMatrix> elements_;
};

/// Born rule: p_i = tr(M_i rho).
ProbDist povm_probabilities(const DensityMatrix& rho, const Povm& m);

/// Throws ValidationError unless ||psi|| = 1 within `tol`.
void require_normalized(const ComplexVector& psi, double tol = kStructuralTol);

/// |<psi1|psi2>|^2.
double pure_fidelity(const ComplexVector& psi1, const ComplexVector& psi2);

/// (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, squared so that it reduces to
/// pure_fidelity on rank-one inputs.
double mixed_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// arccos(sqrt(mixed_fidelity)).
double state_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// <dpsi|dpsi> - |<dpsi|psi>|^2.
double fubini_study_form(const ComplexVector& psi, const ComplexVector& dpsi);

}  // namespace gatedist
