#include "gatedist/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gatedist/errors.hpp"

namespace gatedist {

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    require_finite(m_, "DensityMatrix");
    if (!is_hermitian(m_, tol)) {
        throw ValidationError("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0, 0.0)) > tol) {
        throw ValidationError("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw ValidationError("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, double tol) {
    require_normalized(psi, tol);
    return DensityMatrix(psi * psi.adjoint(), tol);
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw ValidationError("Povm: no elements");
    }
    const auto d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : elements_) {
        require_square(e, "Povm element");
        require_finite(e, "Povm element");
        if (e.rows() != d) {
            throw DimensionError("Povm: elements have different dimensions");
        }
        if (!is_hermitian(e, tol)) {
            throw ValidationError("Povm: element is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(e, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -tol) {
            throw ValidationError("Povm: element is not positive semidefinite");
        }
        sum += e;
    }
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > 1e-9) {
        throw ValidationError("Povm: elements do not sum to the identity");
    }
}

ProbDist povm_probabilities(const DensityMatrix& rho, const Povm& m) {
    if (rho.dim() != m.dim()) {
        std::ostringstream msg;
        msg << "povm_probabilities: state dimension " << rho.dim() << " vs POVM dimension "
            << m.dim();
        throw DimensionError(msg.str());
    }
    std::vector<double> p;
    p.reserve(m.size());
    double sum = 0.0;
    for (const auto& e : m.elements()) {
        const double value = std::max(0.0, (e * rho.matrix()).trace().real());
        p.push_back(value);
        sum += value;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConsistencyError("povm_probabilities: probabilities do not sum to 1");
    }
    for (double& v : p) {
        v /= sum;
    }
    return ProbDist(std::move(p));
}

void require_normalized(const ComplexVector& psi, double tol) {
    if (psi.size() == 0 || !psi.allFinite()) {
        throw ValidationError("state vector is empty or non-finite");
    }
    if (std::abs(psi.norm() - 1.0) > tol) {
        std::ostringstream msg;
        msg << "state vector has norm " << psi.norm();
        throw ValidationError(msg.str());
    }
}

double pure_fidelity(const ComplexVector& psi1, const ComplexVector& psi2) {
    if (psi1.size() != psi2.size()) {
        throw DimensionError("pure_fidelity: dimension mismatch");
    }
    require_normalized(psi1);
    require_normalized(psi2);
    return std::clamp(std::norm(psi1.dot(psi2)), 0.0, 1.0);
}

double mixed_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw DimensionError("mixed_fidelity: dimension mismatch");
    }
    const ComplexMatrix root1 = sqrt_psd(rho1.matrix());
    ComplexMatrix inner = root1 * rho2.matrix() * root1;
    inner = (inner + inner.adjoint()) / 2.0;
    const double root_fidelity = sqrt_psd(inner).trace().real();
    return std::clamp(root_fidelity * root_fidelity, 0.0, 1.0);
}

double state_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return std::acos(std::clamp(std::sqrt(mixed_fidelity(rho1, rho2)), 0.0, 1.0));
}

double fubini_study_form(const ComplexVector& psi, const ComplexVector& dpsi) {
    if (psi.size() != dpsi.size()) {
        throw DimensionError("fubini_study_form: dimension mismatch");
    }
    require_normalized(psi);
    const double value = dpsi.squaredNorm() - std::norm(dpsi.dot(psi));
    return std::max(0.0, value);
}

}  // namespace gatedist
