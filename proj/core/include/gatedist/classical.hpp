#pragma once

// Distances and divergences between finite probability distributions.

#include <functional>
#include <span>
#include <vector>

namespace gatedist {

/// A probability vector: non-negative weights summing to one.
class ProbDist {
  public:
    static constexpr double kSumTol = 1e-12;

    /// Throws ValidationError on an empty list, a negative or non-finite
    /// weight, or a sum off by more than `sum_tol`.
    explicit ProbDist(std::vector<double> weights, double sum_tol = kSumTol);

    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }
    [[nodiscard]] std::span<const double> weights() const { return weights_; }

  private:
    std::vector<double> weights_;
};

/// (sum_i sqrt(p_i q_i))^2.
double classical_fidelity(const ProbDist& p, const ProbDist& q);

/// arccos(sqrt(F)), the Fisher-metric geodesic distance, in [0, pi/2].
double classical_distance(const ProbDist& p, const ProbDist& q);

/// sum_i p_i g(p_i / q_i). Terms with p_i = 0 contribute nothing; p_i > 0
/// with q_i = 0 yields +infinity. `g` must satisfy g(1) = 0.
double relative_entropy(const ProbDist& p, const ProbDist& q,
                        const std::function<double(double)>& g);

/// Kullback information (g = natural log).
double kullback_entropy(const ProbDist& p, const ProbDist& q);

/// (1/4) sum_i v_i^2 / p_i: the Fisher line element for a displacement v.
double fisher_form(const ProbDist& p, std::span<const double> v);

}  // namespace gatedist
