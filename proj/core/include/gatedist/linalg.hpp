#pragma once

// Dense complex linear algebra used by every other module: validation,
// spectral decomposition of unitaries, PSD square roots, Kronecker products
// and the partial trace over the ancilla factor.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace gatedist {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;
/// Largest matrix dimension any operation will materialize.
inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 12;

/// Maps an angle to its principal value in (-pi, pi].
double principal_phase(double angle);

bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// True iff ||M^dag M - 1||_max <= tol. Throws DimensionError on non-square.
bool validate_unitary(const ComplexMatrix& m, double tol = kStructuralTol);

bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);

/// Eigenphases and orthonormal eigenvectors (columns of `vectors`) of a
/// unitary matrix. Phases are principal values, sorted ascending.
struct UnitaryEigen {
    std::vector<double> phases;
    ComplexMatrix vectors;

    [[nodiscard]] std::size_t size() const { return phases.size(); }
    [[nodiscard]] ComplexVector vector(std::size_t k) const {
        return vectors.col(static_cast<Eigen::Index>(k));
    }
};

struct EigOptions {
    /// Residual and orthonormality tolerance of the returned pairs.
    double tol = kStructuralTol;
    /// Accepted deviation from unitarity of the input.
    double unitarity_tol = 1e-9;
    int max_attempts = 8;
    /// Seed for the mixing coefficients; any value gives a valid basis.
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Spectral decomposition of a unitary through the commuting Hermitian pair
/// H1 = (U + U^dag)/2, H2 = (U - U^dag)/(2i). Throws ValidationError if the
/// input is not unitary, ConvergenceError if the residual test keeps failing.
UnitaryEigen eig_unitary(const ComplexMatrix& u, const EigOptions& opts = {});

/// Sum_k e^{i phi_k} v_k v_k^dag.
ComplexMatrix reconstruct(const UnitaryEigen& eig);

/// Max over k of ||U v_k - e^{i phi_k} v_k||.
double eigen_residual(const ComplexMatrix& u, const UnitaryEigen& eig);

/// Hermitian PSD square root. Eigenvalues in [-1e-8, 0) and those below the
/// rounding floor of the spectrum are clamped to zero; anything more
/// negative raises DomainError.
ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol = kStructuralTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// d^n computed with an overflow check against `cap`; throws SizeError.
std::size_t checked_power(std::size_t d, int n, std::size_t cap);

/// U^{(x) n}. Throws SizeError when d^n exceeds `cap`.
ComplexMatrix tensor_power(const ComplexMatrix& u, int n, std::size_t cap = kDefaultSizeCap);

/// tr_B |psi><psi| for psi on C^D (x) C^D with the ancilla as the fast index.
ComplexMatrix partial_trace_b(const ComplexVector& psi, double tol = kStructuralTol);

}  // namespace gatedist
