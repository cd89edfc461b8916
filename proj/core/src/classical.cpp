#include "gatedist/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gatedist/errors.hpp"

namespace gatedist {

namespace {

void require_same_length(const ProbDist& p, const ProbDist& q) {
    if (p.size() != q.size()) {
        std::ostringstream msg;
        msg << "distribution lengths differ: " << p.size() << " vs " << q.size();
        throw DimensionError(msg.str());
    }
}

}  // namespace

ProbDist::ProbDist(std::vector<double> weights, double sum_tol) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw ValidationError("probability distribution is empty");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError("probability weights must be finite and non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > sum_tol) {
        std::ostringstream msg;
        msg << "probability weights sum to " << sum;
        throw ValidationError(msg.str());
    }
}

double classical_fidelity(const ProbDist& p, const ProbDist& q) {
    require_same_length(p, q);
    double overlap = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        overlap += std::sqrt(p[i] * q[i]);
    }
    return std::clamp(overlap * overlap, 0.0, 1.0);
}

double classical_distance(const ProbDist& p, const ProbDist& q) {
    require_same_length(p, q);
    // arccos(sum sqrt(p q)) rewritten through h = sum (sqrt p - sqrt q)^2,
    // since 1 - cos d = h / 2. Each difference is formed without cancellation,
    // which keeps nearby distributions accurate.
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double denom = std::sqrt(p[i]) + std::sqrt(q[i]);
        if (denom > 0.0) {
            const double diff = (p[i] - q[i]) / denom;
            h += diff * diff;
        }
    }
    return 2.0 * std::asin(std::min(1.0, std::sqrt(h) / 2.0));
}

double relative_entropy(const ProbDist& p, const ProbDist& q,
                        const std::function<double(double)>& g) {
    require_same_length(p, q);
    if (!g) {
        throw ValidationError("relative_entropy: no generator function");
    }
    if (std::abs(g(1.0)) > 1e-12) {
        throw ValidationError("relative_entropy: generator must satisfy g(1) = 0");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) {
            continue;
        }
        if (q[i] == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        total += p[i] * g(p[i] / q[i]);
    }
    return total;
}

double kullback_entropy(const ProbDist& p, const ProbDist& q) {
    return relative_entropy(p, q, [](double t) { return std::log(t); });
}

double fisher_form(const ProbDist& p, std::span<const double> v) {
    if (v.size() != p.size()) {
        throw DimensionError("fisher_form: displacement length differs from distribution");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) {
            if (v[i] != 0.0) {
                return std::numeric_limits<double>::infinity();
            }
            continue;
        }
        total += v[i] * v[i] / p[i];
    }
    return total / 4.0;
}

}  // namespace gatedist
