#include "gatedist/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "gatedist/errors.hpp"

namespace gatedist {

namespace {

using HermitianSolver = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;

// Multiply each column by a phase so that its largest-magnitude entry is
// real and positive. Fixes the otherwise arbitrary eigenvector gauge.
void fix_gauge(ComplexMatrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const double mag = std::abs(vectors(r, c));
            if (mag > best + 1e-12) {
                best = mag;
                arg = r;
            }
        }
        if (best > 0.0) {
            vectors.col(c) *= std::conj(vectors(arg, c)) / best;
        }
    }
}

double orthonormality_defect(const ComplexMatrix& v) {
    const auto n = v.cols();
    return max_abs(v.adjoint() * v - ComplexMatrix::Identity(n, n));
}

}  // namespace

double principal_phase(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::remainder(angle, two_pi);  // [-pi, pi]
    if (a <= -std::numbers::pi) {
        a += two_pi;
    }
    return a;
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (m.size() == 0) {
        throw DimensionError(std::string(what) + ": empty matrix");
    }
    if (!all_finite(m)) {
        throw ValidationError(std::string(what) + ": non-finite entry");
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(msg.str());
    }
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool validate_unitary(const ComplexMatrix& m, double tol) {
    require_square(m, "validate_unitary");
    if (!all_finite(m)) {
        return false;
    }
    const auto n = m.rows();
    return max_abs(m.adjoint() * m - ComplexMatrix::Identity(n, n)) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m - m.adjoint()) <= tol;
}

UnitaryEigen eig_unitary(const ComplexMatrix& u, const EigOptions& opts) {
    require_square(u, "eig_unitary");
    require_finite(u, "eig_unitary");
    if (!validate_unitary(u, opts.unitarity_tol)) {
        throw ValidationError("eig_unitary: matrix is not unitary within tolerance");
    }
    const auto n = u.rows();
    const Complex i_unit(0.0, 1.0);
    const ComplexMatrix h1 = (u + u.adjoint()) / 2.0;
    const ComplexMatrix h2 = (u - u.adjoint()) / (2.0 * i_unit);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> coeff(0.3, 1.7);

    // Eigenvalue gap below which two eigenvalues of the mixed operator are
    // treated as one cluster and separated again with a second mixture.
    constexpr double cluster_gap = 1e-4;

    double last_residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const double gamma = coeff(rng) * (attempt % 2 == 0 ? 1.0 : -1.0);
        const double gamma2 = coeff(rng);
        HermitianSolver solver(h1 + gamma * h2);
        if (solver.info() != Eigen::Success) {
            continue;
        }
        ComplexMatrix vectors = solver.eigenvectors();
        const Eigen::VectorXd& values = solver.eigenvalues();

        const ComplexMatrix h_sub = h2 + gamma2 * h1;
        Eigen::Index start = 0;
        while (start < n) {
            Eigen::Index stop = start + 1;
            while (stop < n && values(stop) - values(stop - 1) <= cluster_gap) {
                ++stop;
            }
            const Eigen::Index width = stop - start;
            if (width > 1) {
                const ComplexMatrix basis = vectors.middleCols(start, width);
                ComplexMatrix reduced = basis.adjoint() * h_sub * basis;
                reduced = (reduced + reduced.adjoint()) / 2.0;
                HermitianSolver inner(reduced);
                ComplexMatrix rotated = basis * inner.eigenvectors();
                // Restore orthonormality lost to rounding in the rotation.
                Eigen::HouseholderQR<ComplexMatrix> qr(rotated);
                ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, width);
                // QR may flip phases column by column; that is harmless.
                vectors.middleCols(start, width) = q;
            }
            start = stop;
        }

        fix_gauge(vectors);

        UnitaryEigen out;
        out.phases.resize(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            const Complex rayleigh = vectors.col(k).dot(u * vectors.col(k));
            out.phases[static_cast<std::size_t>(k)] = principal_phase(std::arg(rayleigh));
        }
        // Sort by phase, carrying the eigenvectors along.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            order[static_cast<std::size_t>(k)] = k;
        }
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return out.phases[static_cast<std::size_t>(a)] < out.phases[static_cast<std::size_t>(b)];
        });
        UnitaryEigen sorted;
        sorted.vectors.resize(n, n);
        sorted.phases.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto src = order[static_cast<std::size_t>(k)];
            sorted.phases.push_back(out.phases[static_cast<std::size_t>(src)]);
            sorted.vectors.col(k) = vectors.col(src);
        }

        last_residual = eigen_residual(u, sorted);
        if (last_residual <= opts.tol && orthonormality_defect(sorted.vectors) <= opts.tol) {
            return sorted;
        }
    }
    std::ostringstream msg;
    msg << "eig_unitary: residual " << last_residual << " above tolerance " << opts.tol
        << " after " << opts.max_attempts << " attempts";
    throw ConvergenceError(msg.str());
}

ComplexMatrix reconstruct(const UnitaryEigen& eig) {
    const auto n = eig.vectors.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const ComplexVector v = eig.vector(k);
        out += std::polar(1.0, eig.phases[k]) * (v * v.adjoint());
    }
    return out;
}

double eigen_residual(const ComplexMatrix& u, const UnitaryEigen& eig) {
    double worst = 0.0;
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const ComplexVector v = eig.vector(k);
        worst = std::max(worst, (u * v - std::polar(1.0, eig.phases[k]) * v).norm());
    }
    return worst;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol) {
    require_square(m, "sqrt_psd");
    require_finite(m, "sqrt_psd");
    if (!is_hermitian(m, tol * std::max(1.0, max_abs(m)))) {
        throw DomainError("sqrt_psd: matrix is not Hermitian");
    }
    const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
    HermitianSolver solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("sqrt_psd: Hermitian eigensolver failed");
    }
    Eigen::VectorXd values = solver.eigenvalues();
    const double top = std::max(0.0, values.maxCoeff());
    const double floor =
        16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(m.rows()) * top;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (values(k) < -1e-8) {
            std::ostringstream msg;
            msg << "sqrt_psd: eigenvalue " << values(k) << " is negative";
            throw DomainError(msg.str());
        }
        values(k) = values(k) <= floor ? 0.0 : std::sqrt(values(k));
    }
    const ComplexMatrix& v = solver.eigenvectors();
    return v * values.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

std::size_t checked_power(std::size_t d, int n, std::size_t cap) {
    if (n < 1) {
        throw ValidationError("copy count must be at least 1");
    }
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) {
        if (d != 0 && total > cap / d) {
            std::ostringstream msg;
            msg << "dimension " << d << "^" << n << " exceeds size cap " << cap;
            throw SizeError(msg.str());
        }
        total *= d;
    }
    if (total > cap) {
        std::ostringstream msg;
        msg << "dimension " << total << " exceeds size cap " << cap;
        throw SizeError(msg.str());
    }
    return total;
}

ComplexMatrix tensor_power(const ComplexMatrix& u, int n, std::size_t cap) {
    require_square(u, "tensor_power");
    checked_power(static_cast<std::size_t>(u.rows()), n, cap);
    ComplexMatrix out = u;
    for (int k = 1; k < n; ++k) {
        out = kron(out, u);
    }
    return out;
}

ComplexMatrix partial_trace_b(const ComplexVector& psi, double tol) {
    const auto total = psi.size();
    const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(total))));
    if (total == 0 || side * side != total) {
        std::ostringstream msg;
        msg << "partial_trace_b: length " << total << " is not D*D";
        throw DimensionError(msg.str());
    }
    if (!psi.allFinite() || std::abs(psi.norm() - 1.0) > tol) {
        throw ValidationError("partial_trace_b: state is not normalized");
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> amplitudes(psi.data(), side, side);
    return amplitudes * amplitudes.adjoint();
}

}  // namespace gatedist
