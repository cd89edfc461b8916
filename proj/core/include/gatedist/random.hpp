#pragma once

// Seeded sampling helpers shared by the oracle, the Monte-Carlo estimators
// and the protocol simulator.

#include <cstdint>
#include <random>

#include "gatedist/linalg.hpp"

namespace gatedist {

using Rng = std::mt19937_64;

/// Sub-seed for stream `index` of a computation seeded with `seed`
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Complex standard-Gaussian vector normalized to one; uniform on the unit
/// sphere of C^dim.
ComplexVector random_state(Rng& rng, Eigen::Index dim);

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim);

/// Haar-distributed special unitary (random_unitary with the determinant
/// phase divided out).
ComplexMatrix random_special_unitary(Rng& rng, Eigen::Index dim);

}  // namespace gatedist
