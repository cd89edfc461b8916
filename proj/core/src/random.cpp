#include "gatedist/random.hpp"

#include <cmath>

namespace gatedist {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ComplexVector random_state(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase of each column so the distribution is exactly Haar.
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Complex diag = r(k, k);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(k) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix random_special_unitary(Rng& rng, Eigen::Index dim) {
    ComplexMatrix u = random_unitary(rng, dim);
    const Complex det = u.determinant();
    const double phase = std::arg(det) / static_cast<double>(dim);
    return u * std::polar(1.0, -phase);
}

}  // namespace gatedist
