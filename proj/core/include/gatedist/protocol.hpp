#pragma once

// Sequential elimination among k candidate gates: every test perfectly
// discriminates one pair, so k - 1 tests single out the unknown gate.

#include <cstdint>
#include <vector>

#include "gatedist/gates.hpp"
#include "gatedist/states.hpp"

namespace gatedist {

/// k >= 2 qubit gates of equal dimension, pairwise distinguishable.
class HypothesisSet {
  public:
    explicit HypothesisSet(std::vector<Gate> gates);

    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] const Gate& operator[](std::size_t i) const { return gates_[i]; }
    [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
    [[nodiscard]] double distance(std::size_t i, std::size_t j) const {
        return distances_[i * gates_.size() + j];
    }

  private:
    std::vector<Gate> gates_;
    std::vector<double> distances_;
};

/// One pairwise test: N copies of the unknown gate act on `probe`, then the
/// projector onto U_first^{(x) N} probe is measured. The projector outcome is
/// impossible under `second`, the complement impossible under `first`.
struct PairTest {
    std::size_t first = 0;
    std::size_t second = 0;
    std::int64_t copies = 0;
    double distance = 0.0;
    ProbeState probe;

    /// Born probability of the projector outcome when `truth` is applied.
    [[nodiscard]] double projector_probability(const HypothesisSet& h, const Gate& truth) const;

    /// The two-outcome measurement {P, 1 - P} as dense operators on
    /// system (x) ancilla. Throws SizeError beyond `cap`.
    [[nodiscard]] Povm measurement(const HypothesisSet& h, std::size_t cap = 64) const;
};

PairTest make_pair_test(const HypothesisSet& h, std::size_t first, std::size_t second);

struct TestPlan {
    std::vector<PairTest> tests;

    [[nodiscard]] std::int64_t planned_runs() const;
};

/// Most distant pair among `survivors` (sorted indices); ties go to the
/// lexicographically smallest pair.
std::pair<std::size_t, std::size_t> most_distant_pair(const HypothesisSet& h,
                                                      const std::vector<std::size_t>& survivors);

/// Greedy schedule of k - 1 tests, each on the most distant surviving pair,
/// following the branch where the second member of every pair is discarded.
TestPlan plan_elimination(const HypothesisSet& h);

struct TraceEntry {
    std::size_t first = 0;
    std::size_t second = 0;
    std::int64_t copies = 0;
    bool projector_outcome = false;
    std::size_t discarded = 0;
};

struct SimResult {
    std::size_t identified_index = 0;
    std::int64_t total_runs = 0;
    std::vector<TraceEntry> trace;
    /// False when the simulated gate was not one of the hypotheses.
    bool verified = true;
};

/// Runs the elimination with outcomes sampled by the Born rule, re-planning
/// the most distant surviving pair after every discard.
SimResult simulate_elimination(const TestPlan& plan, const HypothesisSet& h,
                               std::size_t true_index, std::uint64_t seed);

/// Same, for a gate that need not belong to the set; the result is flagged
/// unverified.
SimResult simulate_elimination(const TestPlan& plan, const HypothesisSet& h,
                               const Gate& true_gate, std::uint64_t seed);

}  // namespace gatedist
