#include "gatedist/protocol.hpp"

#include <algorithm>
#include <sstream>

#include "gatedist/errors.hpp"
#include "gatedist/random.hpp"

namespace gatedist {

namespace {

// Born probabilities this close to 0 or 1 are rounding of exact values.
constexpr double kSnap = 1e-12;

SimResult run_elimination(const TestPlan& plan, const HypothesisSet& h, const Gate& truth,
                          std::uint64_t seed, bool in_set) {
    if (truth.dim() != h[0].dim()) {
        throw DimensionError("simulate_elimination: true gate has the wrong dimension");
    }
    for (const auto& test : plan.tests) {
        if (test.first >= h.size() || test.second >= h.size()) {
            throw ValidationError("simulate_elimination: plan does not match hypothesis set");
        }
    }
    Rng rng(seed);
    std::vector<std::size_t> survivors(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        survivors[i] = i;
    }

    SimResult result;
    result.verified = in_set;
    std::size_t step = 0;
    while (survivors.size() > 1) {
        const auto [i, j] = most_distant_pair(h, survivors);
        const bool planned = step < plan.tests.size() && plan.tests[step].first == i &&
                             plan.tests[step].second == j;
        const PairTest test = planned ? plan.tests[step] : make_pair_test(h, i, j);

        double p = test.projector_probability(h, truth);
        if (p < kSnap) {
            p = 0.0;
        } else if (p > 1.0 - kSnap) {
            p = 1.0;
        }
        const bool projector = uniform01(rng) < p;
        const std::size_t discarded = projector ? test.second : test.first;

        result.total_runs += test.copies;
        result.trace.push_back({test.first, test.second, test.copies, projector, discarded});
        survivors.erase(std::find(survivors.begin(), survivors.end(), discarded));
        ++step;
    }
    result.identified_index = survivors.front();
    return result;
}

}  // namespace

HypothesisSet::HypothesisSet(std::vector<Gate> gates) : gates_(std::move(gates)) {
    if (gates_.size() < 2) {
        throw ValidationError("HypothesisSet: need at least two gates");
    }
    const auto d = gates_.front().dim();
    for (const auto& g : gates_) {
        if (g.dim() != d) {
            throw DimensionError("HypothesisSet: gates have different dimensions");
        }
    }
    if (d != 2) {
        throw DimensionError("HypothesisSet: pairwise probes are available for 2x2 gates only");
    }
    const std::size_t k = gates_.size();
    distances_.assign(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double dist = gate_distance(gates_[i], gates_[j]);
            if (dist <= 1e-12) {
                std::ostringstream msg;
                msg << "HypothesisSet: gates " << i << " and " << j << " are indistinguishable";
                throw IdenticalGatesError(msg.str());
            }
            distances_[i * k + j] = dist;
            distances_[j * k + i] = dist;
        }
    }
}

double PairTest::projector_probability(const HypothesisSet& h, const Gate& truth) const {
    return probe_overlap(h[first], truth, probe, static_cast<int>(copies));
}

Povm PairTest::measurement(const HypothesisSet& h, std::size_t cap) const {
    const ComplexVector psi = probe.vector(cap);
    const auto total = psi.size();
    if (static_cast<std::size_t>(total) > cap) {
        throw SizeError("PairTest::measurement: operator dimension exceeds cap");
    }
    const ComplexMatrix power = tensor_power(h[first].matrix(), static_cast<int>(copies), cap);
    const ComplexMatrix full = kron(power, ComplexMatrix::Identity(power.rows(), power.rows()));
    const ComplexVector image = full * psi;
    const ComplexMatrix projector = image * image.adjoint();
    return Povm({projector, ComplexMatrix::Identity(total, total) - projector});
}

PairTest make_pair_test(const HypothesisSet& h, std::size_t first, std::size_t second) {
    if (first >= h.size() || second >= h.size() || first == second) {
        throw ValidationError("make_pair_test: invalid hypothesis indices");
    }
    ProbeState probe = optimal_probe_ncopies(h[first], h[second]);
    const std::int64_t copies = probe.copies();
    return PairTest{first, second, copies, h.distance(first, second), std::move(probe)};
}

std::int64_t TestPlan::planned_runs() const {
    std::int64_t total = 0;
    for (const auto& t : tests) {
        total += t.copies;
    }
    return total;
}

std::pair<std::size_t, std::size_t> most_distant_pair(const HypothesisSet& h,
                                                      const std::vector<std::size_t>& survivors) {
    if (survivors.size() < 2) {
        throw ValidationError("most_distant_pair: fewer than two survivors");
    }
    std::pair<std::size_t, std::size_t> best{survivors[0], survivors[1]};
    double best_distance = -1.0;
    for (std::size_t a = 0; a < survivors.size(); ++a) {
        for (std::size_t b = a + 1; b < survivors.size(); ++b) {
            const double dist = h.distance(survivors[a], survivors[b]);
            if (dist > best_distance + 1e-12) {
                best_distance = dist;
                best = {survivors[a], survivors[b]};
            }
        }
    }
    return best;
}

TestPlan plan_elimination(const HypothesisSet& h) {
    std::vector<std::size_t> survivors(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        survivors[i] = i;
    }
    TestPlan plan;
    while (survivors.size() > 1) {
        const auto [i, j] = most_distant_pair(h, survivors);
        plan.tests.push_back(make_pair_test(h, i, j));
        survivors.erase(std::find(survivors.begin(), survivors.end(), j));
    }
    return plan;
}

SimResult simulate_elimination(const TestPlan& plan, const HypothesisSet& h,
                               std::size_t true_index, std::uint64_t seed) {
    if (true_index >= h.size()) {
        std::ostringstream msg;
        msg << "simulate_elimination: true index " << true_index << " out of range";
        throw ValidationError(msg.str());
    }
    return run_elimination(plan, h, h[true_index], seed, true);
}

SimResult simulate_elimination(const TestPlan& plan, const HypothesisSet& h,
                               const Gate& true_gate, std::uint64_t seed) {
    return run_elimination(plan, h, true_gate, seed, false);
}

}  // namespace gatedist
