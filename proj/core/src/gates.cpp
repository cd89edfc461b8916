#include "gatedist/gates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "gatedist/errors.hpp"
#include "gatedist/random.hpp"

namespace gatedist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Gates derived from validated ones (products, Kronecker powers) carry the
// rounding of every factor.
constexpr double kDerivedTol = 1e-9;
// Largest copy count for which a product-form probe is built.
constexpr std::int64_t kMaxProbeCopies = 1'000'000;

void require_same_dim(const Gate& u1, const Gate& u2, const char* what) {
    if (u1.dim() != u2.dim()) {
        std::ostringstream msg;
        msg << what << ": gate dimensions differ (" << u1.dim() << " vs " << u2.dim() << ")";
        throw DimensionError(msg.str());
    }
}

void require_qubit(const Gate& u, const char* what) {
    if (u.dim() != 2) {
        std::ostringstream msg;
        msg << what << ": requires 2x2 gates, got dimension " << u.dim();
        throw DimensionError(msg.str());
    }
}

ComplexVector basis_vector(Eigen::Index dim, Eigen::Index k) {
    ComplexVector e = ComplexVector::Zero(dim);
    e(k) = 1.0;
    return e;
}

// Applies `u` to tensor factor `position` (0 = most significant) of every
// column of `a`, whose rows index a d^copies dimensional product space.
void apply_on_factor(const ComplexMatrix& u, ComplexMatrix& a, int position, int copies) {
    const Eigen::Index d = u.rows();
    Eigen::Index stride = 1;
    for (int k = position + 1; k < copies; ++k) {
        stride *= d;
    }
    const Eigen::Index block = stride * d;
    ComplexMatrix gathered(d, a.cols());
    for (Eigen::Index base = 0; base < a.rows(); base += block) {
        for (Eigen::Index s = 0; s < stride; ++s) {
            for (Eigen::Index j = 0; j < d; ++j) {
                gathered.row(j) = a.row(base + j * stride + s);
            }
            const ComplexMatrix mixed = u * gathered;
            for (Eigen::Index j = 0; j < d; ++j) {
                a.row(base + j * stride + s) = mixed.row(j);
            }
        }
    }
}

Complex product_sum_expectation(const ComplexMatrix& u, const std::vector<ProductTerm>& terms) {
    Complex total(0.0, 0.0);
    for (const auto& left : terms) {
        for (const auto& right : terms) {
            Complex value = std::conj(left.amplitude) * right.amplitude;
            for (std::size_t k = 0; k < left.factors.size() && value != Complex(0.0, 0.0); ++k) {
                value *= left.factors[k].dot(u * right.factors[k]);
            }
            total += value;
        }
    }
    return total;
}

ComplexVector expand_terms(const std::vector<ProductTerm>& terms) {
    ComplexVector out;
    for (const auto& term : terms) {
        ComplexVector v = term.factors.front();
        for (std::size_t k = 1; k < term.factors.size(); ++k) {
            v = kron(v, term.factors[k]);
        }
        v *= term.amplitude;
        if (out.size() == 0) {
            out = v;
        } else {
            out += v;
        }
    }
    return out;
}

// Euclidean projection onto the probability simplex (sort-based).
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
    std::vector<double> sorted(v.data(), v.data() + v.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double threshold = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            threshold = candidate;
        }
    }
    return (v.array() - threshold).max(0.0).matrix();
}

}  // namespace

// ---------------------------------------------------------------------------
// Gate

struct Gate::SpectralCache {
    std::once_flag once;
    UnitaryEigen eig;
};

Gate::Gate(ComplexMatrix m, bool special, double tol)
    : m_(std::move(m)), special_(special), cache_(std::make_shared<SpectralCache>()) {
    require_square(m_, "Gate");
    require_finite(m_, "Gate");
    if (!validate_unitary(m_, tol)) {
        throw ValidationError("Gate: matrix is not unitary within tolerance");
    }
    if (special_ && std::abs(m_.determinant() - Complex(1.0, 0.0)) > 1e-8) {
        throw ValidationError("Gate: declared special-unitary but det != 1");
    }
}

Gate Gate::identity(Eigen::Index dim) {
    return Gate(ComplexMatrix::Identity(dim, dim), true);
}

const UnitaryEigen& Gate::spectral() const {
    std::call_once(cache_->once, [this] { cache_->eig = eig_unitary(m_); });
    return cache_->eig;
}

// ---------------------------------------------------------------------------
// SU(2) construction and single-copy measures

void validate_params(const GateSU2Params& p) {
    const bool ok = std::isfinite(p.theta1) && std::isfinite(p.theta2) &&
                    std::isfinite(p.theta3) && p.theta1 >= 0.0 && p.theta1 <= kPi / 2.0 &&
                    p.theta2 >= 0.0 && p.theta2 < kTwoPi && p.theta3 >= 0.0 && p.theta3 < kTwoPi;
    if (!ok) {
        std::ostringstream msg;
        msg << "SU(2) angles out of range: (" << p.theta1 << ", " << p.theta2 << ", " << p.theta3
            << ")";
        throw ValidationError(msg.str());
    }
}

ComplexMatrix su2_matrix(const GateSU2Params& p) {
    const double c = std::cos(p.theta1);
    const double s = std::sin(p.theta1);
    ComplexMatrix m(2, 2);
    m << c * std::polar(1.0, p.theta2), s * std::polar(1.0, p.theta3),
        -s * std::polar(1.0, -p.theta3), c * std::polar(1.0, -p.theta2);
    return m;
}

Gate su2_from_params(const GateSU2Params& p) {
    validate_params(p);
    return Gate(su2_matrix(p), true);
}

Gate relative_gate(const Gate& u1, const Gate& u2) {
    require_same_dim(u1, u2, "relative_gate");
    return Gate(u1.matrix().adjoint() * u2.matrix(), u1.is_special() && u2.is_special(),
                kDerivedTol);
}

Gate tensor_power(const Gate& u, int copies, std::size_t cap) {
    return Gate(tensor_power(u.matrix(), copies, cap), u.is_special(), kDerivedTol);
}

double gate_fidelity_su2(const Gate& u1, const Gate& u2) {
    require_qubit(u1, "gate_fidelity_su2");
    require_qubit(u2, "gate_fidelity_su2");
    const Complex trace = (u1.matrix().adjoint() * u2.matrix()).trace();
    return std::clamp(std::norm(trace) / 4.0, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Covering arc, distance and convex minimum

ArcResult minimal_covering_arc(std::span<const double> phases) {
    if (phases.empty()) {
        throw ValidationError("minimal_covering_arc: empty phase list");
    }
    std::vector<double> sorted;
    sorted.reserve(phases.size());
    for (double phi : phases) {
        if (!std::isfinite(phi)) {
            throw ValidationError("minimal_covering_arc: non-finite phase");
        }
        sorted.push_back(principal_phase(phi));
    }
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    ArcResult best;
    double best_gap = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        // Gap between sorted[k] and its counterclockwise successor; the arc
        // is the complement, running from the successor round to sorted[k].
        const double gap = k + 1 < n ? sorted[k + 1] - sorted[k] : sorted[0] + kTwoPi - sorted[k];
        const double start = sorted[(k + 1) % n];
        const double end = sorted[k];
        const double delta = std::max(0.0, (kTwoPi - gap) / 2.0);
        const double center = principal_phase(start + delta);
        const bool wider = gap > best_gap + 1e-12;
        const bool tie = std::abs(gap - best_gap) <= 1e-12 && center < best.center;
        if (best_gap < 0.0 || wider || tie) {
            best_gap = std::max(gap, best_gap);
            best.delta = delta;
            best.center = center;
            best.extremes = {start, end};
        }
    }
    return best;
}

bool arc_contains(const ArcResult& arc, double phase, double tol) {
    double offset = principal_phase(phase - arc.extremes.first);
    if (offset < 0.0) {
        offset += kTwoPi;
    }
    return offset <= 2.0 * arc.delta + tol || offset >= kTwoPi - tol;
}

double gate_distance(const Gate& u1, const Gate& u2) {
    require_same_dim(u1, u2, "gate_distance");
    const Gate rel = relative_gate(u1, u2);
    const ArcResult arc = minimal_covering_arc(rel.spectral().phases);
    return std::min(arc.delta, kPi / 2.0);
}

double gate_fidelity_sud(const Gate& u1, const Gate& u2) {
    const double d = gate_distance(u1, u2);
    // A half-circle arc puts the origin in the hull: exactly orthogonal.
    if (d >= kPi / 2.0) {
        return 0.0;
    }
    const double c = std::cos(d);
    return std::clamp(c * c, 0.0, 1.0);
}

double convex_min_overlap(std::span<const double> phases) {
    const ArcResult arc = minimal_covering_arc(phases);
    if (arc.delta >= kPi / 2.0) {
        return 0.0;
    }
    const double c = std::cos(arc.delta);
    return c * c;
}

std::vector<double> tensor_power_phases(std::span<const double> phases, int copies) {
    if (phases.empty()) {
        throw ValidationError("tensor_power_phases: empty phase list");
    }
    if (copies < 1) {
        throw ValidationError("tensor_power_phases: copy count must be at least 1");
    }
    std::vector<double> current{0.0};
    for (int k = 0; k < copies; ++k) {
        std::vector<double> next;
        next.reserve(current.size() * phases.size());
        for (double a : current) {
            for (double b : phases) {
                next.push_back(principal_phase(a + b));
            }
        }
        std::sort(next.begin(), next.end());
        std::vector<double> distinct;
        for (double v : next) {
            if (distinct.empty() || v - distinct.back() > 1e-12) {
                distinct.push_back(v);
            }
        }
        if (distinct.size() > 1 && distinct.front() + kTwoPi - distinct.back() <= 1e-12) {
            distinct.pop_back();
        }
        current = std::move(distinct);
    }
    return current;
}

std::int64_t min_copies_for_distance(double distance) {
    if (!std::isfinite(distance) || distance <= 1e-12) {
        throw IdenticalGatesError("gates are indistinguishable: statistical distance is zero");
    }
    const double ratio = kPi / (2.0 * std::min(distance, kPi / 2.0));
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio)) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::ceil(ratio));
}

std::int64_t min_copies(const Gate& u1, const Gate& u2) {
    return min_copies_for_distance(gate_distance(u1, u2));
}

// ---------------------------------------------------------------------------
// Probe states

ProbeState ProbeState::dense(ComplexVector vector, int copies, Eigen::Index local_dim,
                             bool separable, bool with_ancilla) {
    if (copies < 1 || local_dim < 1) {
        throw ValidationError("ProbeState: copies and local dimension must be positive");
    }
    const auto system = static_cast<Eigen::Index>(checked_power(
        static_cast<std::size_t>(local_dim), copies, std::numeric_limits<std::size_t>::max()));
    const Eigen::Index expected = with_ancilla ? system * system : system;
    if (vector.size() != expected) {
        std::ostringstream msg;
        msg << "ProbeState: vector length " << vector.size() << ", expected " << expected;
        throw DimensionError(msg.str());
    }
    if (!vector.allFinite() || std::abs(vector.norm() - 1.0) > kStructuralTol) {
        throw ValidationError("ProbeState: vector is not normalized");
    }
    ProbeState out;
    out.dense_ = std::move(vector);
    out.copies_ = copies;
    out.local_dim_ = local_dim;
    out.separable_ = separable;
    out.with_ancilla_ = with_ancilla;
    return out;
}

ProbeState ProbeState::product_sum(std::vector<ProductTerm> terms, int copies,
                                   Eigen::Index local_dim, bool separable) {
    if (copies < 1 || local_dim < 1) {
        throw ValidationError("ProbeState: copies and local dimension must be positive");
    }
    if (terms.empty()) {
        throw ValidationError("ProbeState: no product terms");
    }
    for (const auto& term : terms) {
        if (term.factors.size() != static_cast<std::size_t>(copies)) {
            throw DimensionError("ProbeState: product term has the wrong number of factors");
        }
        for (const auto& f : term.factors) {
            if (f.size() != local_dim || !f.allFinite()) {
                throw DimensionError("ProbeState: product factor has the wrong dimension");
            }
        }
    }
    const Complex norm2 = product_sum_expectation(ComplexMatrix::Identity(local_dim, local_dim),
                                                  terms);
    if (std::abs(norm2 - Complex(1.0, 0.0)) > kStructuralTol) {
        throw ValidationError("ProbeState: product expansion is not normalized");
    }
    ProbeState out;
    out.terms_ = std::move(terms);
    out.copies_ = copies;
    out.local_dim_ = local_dim;
    out.separable_ = separable;
    out.with_ancilla_ = true;
    return out;
}

ComplexVector ProbeState::vector(std::size_t cap) const {
    const auto system =
        static_cast<Eigen::Index>(checked_power(static_cast<std::size_t>(local_dim_), copies_, cap));
    if (is_dense() && with_ancilla_) {
        return dense_;
    }
    return kron(system_vector(cap), basis_vector(system, 0));
}

ComplexVector ProbeState::system_vector(std::size_t cap) const {
    checked_power(static_cast<std::size_t>(local_dim_), copies_, cap);
    if (!is_dense()) {
        return expand_terms(terms_);
    }
    if (!with_ancilla_) {
        return dense_;
    }
    throw ValidationError("ProbeState: dense probe with ancilla has no system-only vector");
}

ProbeState optimal_probe_single(const Gate& u1, const Gate& u2, bool entangled) {
    require_qubit(u1, "optimal_probe_single");
    require_qubit(u2, "optimal_probe_single");
    if (entangled) {
        ComplexVector v = ComplexVector::Zero(4);
        v(0) = v(3) = 1.0 / std::sqrt(2.0);
        return ProbeState::dense(std::move(v), 1, 2, false);
    }
    const Gate rel = relative_gate(u1, u2);
    const UnitaryEigen& eig = rel.spectral();
    const ComplexVector local = (eig.vector(0) + eig.vector(1)) / std::sqrt(2.0);
    return ProbeState::dense(kron(local, basis_vector(2, 0)), 1, 2, true);
}

double optimal_probe_weight(double delta, std::int64_t copies) {
    if (copies < 1) {
        throw ValidationError("optimal_probe_weight: copy count must be at least 1");
    }
    const double n = static_cast<double>(copies);
    double q = 0.0;
    if (copies == 1) {
        // Both branches coincide; only a half-circle arc cancels.
        if (delta < kPi / 2.0 - 1e-12) {
            throw ConsistencyError("optimal_probe_weight: one copy cannot cancel the overlap");
        }
        q = 0.5;
    } else if (copies % 2 == 0) {
        q = 1.0 / (2.0 * (1.0 - std::cos(n * delta)));
    } else {
        const double c1 = std::cos(delta);
        q = c1 / (2.0 * (c1 - std::cos(n * delta)));
    }
    if (!std::isfinite(q) || q < -1e-12 || q > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "optimal_probe_weight: q = " << q << " outside [0, 1/2]";
        throw ConsistencyError(msg.str());
    }
    return std::clamp(q, 0.0, 0.5);
}

ProbeState optimal_probe_ncopies(const Gate& u1, const Gate& u2) {
    require_qubit(u1, "optimal_probe_ncopies");
    require_qubit(u2, "optimal_probe_ncopies");
    const Gate rel = relative_gate(u1, u2);
    const UnitaryEigen& eig = rel.spectral();
    const ArcResult arc = minimal_covering_arc(eig.phases);
    const double delta = std::min(arc.delta, kPi / 2.0);
    const std::int64_t copies = min_copies_for_distance(delta);
    if (copies > kMaxProbeCopies) {
        throw SizeError("optimal_probe_ncopies: copy count too large");
    }
    const int n = static_cast<int>(copies);

    // `down` sits at the arc start, `up` at its end: up to a common phase the
    // eigenvalues are e^{-i delta} and e^{+i delta}.
    auto circular = [](double a, double b) { return std::abs(principal_phase(a - b)); };
    const std::size_t down_index =
        circular(eig.phases[0], arc.extremes.first) <= circular(eig.phases[1], arc.extremes.first)
            ? 0
            : 1;
    const ComplexVector down = eig.vector(down_index);
    const ComplexVector up = eig.vector(1 - down_index);

    auto product = [&](int ups, int downs) {
        std::vector<ComplexVector> factors;
        factors.reserve(static_cast<std::size_t>(ups + downs));
        factors.insert(factors.end(), static_cast<std::size_t>(ups), up);
        factors.insert(factors.end(), static_cast<std::size_t>(downs), down);
        return factors;
    };

    const double q = optimal_probe_weight(delta, copies);
    std::vector<ProductTerm> terms;
    terms.push_back({Complex(std::sqrt(q), 0.0), product(n, 0)});
    terms.push_back({Complex(std::sqrt(q), 0.0), product(0, n)});
    if (n > 1 && n % 2 == 0) {
        const double weight = 1.0 - 2.0 * q;
        if (weight > 0.0) {
            terms.push_back({Complex(std::sqrt(weight), 0.0), product(n / 2, n / 2)});
        }
    } else if (n > 1) {
        const double weight = 0.5 - q;
        if (weight > 0.0) {
            terms.push_back({Complex(std::sqrt(weight), 0.0), product((n + 1) / 2, (n - 1) / 2)});
            terms.push_back({Complex(std::sqrt(weight), 0.0), product((n - 1) / 2, (n + 1) / 2)});
        }
    }
    ProbeState probe = ProbeState::product_sum(std::move(terms), n, 2, true);

    const double overlap = probe_overlap(u1, u2, probe, n);
    if (std::sqrt(overlap) > 1e-8) {
        std::ostringstream msg;
        msg << "optimal_probe_ncopies: residual overlap " << overlap;
        throw ConsistencyError(msg.str());
    }
    return probe;
}

double probe_overlap(const Gate& u1, const Gate& u2, const ProbeState& probe, int copies) {
    require_same_dim(u1, u2, "probe_overlap");
    if (probe.local_dim() != u1.dim() || probe.copies() != copies) {
        std::ostringstream msg;
        msg << "probe_overlap: probe is for " << probe.copies() << " copies of dimension "
            << probe.local_dim() << ", gates need " << copies << " copies of dimension "
            << u1.dim();
        throw DimensionError(msg.str());
    }
    const ComplexMatrix rel = u1.matrix().adjoint() * u2.matrix();

    if (!probe.is_dense()) {
        return std::clamp(std::norm(product_sum_expectation(rel, probe.terms())), 0.0, 1.0);
    }

    const ComplexVector psi = probe.has_ancilla() ? probe.vector(std::numeric_limits<std::size_t>::max())
                                                  : probe.system_vector(std::numeric_limits<std::size_t>::max());
    const auto system = static_cast<Eigen::Index>(checked_power(
        static_cast<std::size_t>(u1.dim()), copies, std::numeric_limits<std::size_t>::max()));
    const Eigen::Index ancilla = probe.has_ancilla() ? system : 1;
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const ComplexMatrix amplitudes = Eigen::Map<const RowMajor>(psi.data(), system, ancilla);
    ComplexMatrix moved = amplitudes;
    for (int k = 0; k < copies; ++k) {
        apply_on_factor(rel, moved, k, copies);
    }
    const Complex expectation = (amplitudes.conjugate().cwiseProduct(moved)).sum();
    const double overlap = std::clamp(std::norm(expectation), 0.0, 1.0);

    if (system <= 64) {
        const double spectral = probe_overlap_spectral(u1, u2, probe, copies);
        if (std::abs(spectral - overlap) > 1e-9) {
            std::ostringstream msg;
            msg << "probe_overlap: direct " << overlap << " vs spectral " << spectral;
            throw ConsistencyError(msg.str());
        }
    }
    return overlap;
}

double probe_overlap_spectral(const Gate& u1, const Gate& u2, const ProbeState& probe,
                              int copies, std::size_t cap) {
    require_same_dim(u1, u2, "probe_overlap_spectral");
    if (probe.local_dim() != u1.dim() || probe.copies() != copies) {
        throw DimensionError("probe_overlap_spectral: probe does not match the gates");
    }
    checked_power(static_cast<std::size_t>(u1.dim()), copies, cap);
    const Gate rel = relative_gate(u1, u2);
    const UnitaryEigen& eig = rel.spectral();

    ComplexMatrix reduced;
    if (probe.has_ancilla()) {
        reduced = partial_trace_b(probe.vector(cap));
    } else {
        const ComplexVector psi = probe.system_vector(cap);
        reduced = psi * psi.adjoint();
    }

    ComplexMatrix basis = eig.vectors;
    std::vector<double> phases = eig.phases;
    for (int k = 1; k < copies; ++k) {
        basis = kron(basis, eig.vectors);
        std::vector<double> next;
        next.reserve(phases.size() * eig.phases.size());
        for (double a : phases) {
            for (double b : eig.phases) {
                next.push_back(a + b);
            }
        }
        phases = std::move(next);
    }

    Complex total(0.0, 0.0);
    for (Eigen::Index i = 0; i < basis.cols(); ++i) {
        const double population = basis.col(i).dot(reduced * basis.col(i)).real();
        total += population * std::polar(1.0, phases[static_cast<std::size_t>(i)]);
    }
    return std::clamp(std::norm(total), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Brute-force oracle

OracleResult simplex_min_overlap(std::span<const double> phases, int restarts,
                                 std::uint64_t seed) {
    if (phases.empty()) {
        throw ValidationError("simplex_min_overlap: empty phase list");
    }
    if (restarts < 1) {
        throw ValidationError("simplex_min_overlap: restart budget must be at least 1");
    }
    const auto n = static_cast<Eigen::Index>(phases.size());
    Eigen::VectorXd cosines(n);
    Eigen::VectorXd sines(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        cosines(k) = std::cos(phases[static_cast<std::size_t>(k)]);
        sines(k) = std::sin(phases[static_cast<std::size_t>(k)]);
    }
    auto objective = [&](const Eigen::VectorXd& w) {
        const double re = cosines.dot(w);
        const double im = sines.dot(w);
        return re * re + im * im;
    };
    auto gradient = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd {
        return 2.0 * (cosines.dot(w) * cosines + sines.dot(w) * sines);
    };

    constexpr int kMaxIterations = 10'000;
    constexpr double kStationarity = 1e-10;

    OracleResult result;
    result.minimum = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd w(n);
        if (r == 0) {
            w.setConstant(1.0 / static_cast<double>(n));
        } else {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            std::exponential_distribution<double> expo(1.0);
            for (Eigen::Index k = 0; k < n; ++k) {
                w(k) = expo(rng);
            }
            w /= w.sum();
        }

        double step = 1.0;
        double value = objective(w);
        bool converged = false;
        for (int it = 0; it < kMaxIterations; ++it) {
            ++result.iterations;
            const Eigen::VectorXd g = gradient(w);
            Eigen::VectorXd candidate;
            Eigen::VectorXd move;
            double candidate_value = value;
            while (true) {
                candidate = project_to_simplex(w - step * g);
                move = candidate - w;
                candidate_value = objective(candidate);
                if (candidate_value <= value + g.dot(move) + move.squaredNorm() / (2.0 * step) ||
                    step < 1e-30) {
                    break;
                }
                step /= 2.0;
            }
            const double mapping = move.norm() / step;
            w = candidate;
            value = candidate_value;
            if (mapping <= kStationarity) {
                converged = true;
                break;
            }
            step *= 2.0;
        }
        if (value < result.minimum) {
            result.minimum = value;
            result.converged = converged;
        }
    }
    result.minimum = std::clamp(result.minimum, 0.0, 1.0);
    return result;
}

OracleResult oracle_min_overlap_detailed(const Gate& u1, const Gate& u2, int copies, int budget,
                                         std::uint64_t seed, std::size_t cap) {
    require_same_dim(u1, u2, "oracle_min_overlap");
    if (budget < 1) {
        throw ValidationError("oracle_min_overlap: budget must be at least 1");
    }
    const Gate rel = relative_gate(u1, u2);
    const ComplexMatrix power = tensor_power(rel.matrix(), copies, cap);
    const UnitaryEigen eig = eig_unitary(power, EigOptions{.tol = kStructuralTol,
                                                           .unitarity_tol = kDerivedTol});
    OracleResult result = simplex_min_overlap(eig.phases, budget, seed);

    // Random probes never beat the true minimum; one that does exposes an
    // unconverged descent.
    const Eigen::Index system = power.rows();
    if (system <= 64) {
        Rng rng(derive_seed(seed, 0xA5A5'0000'0000ULL));
        for (int k = 0; k < budget; ++k) {
            const ProbeState probe =
                ProbeState::dense(random_state(rng, system * system), copies, u1.dim(), false);
            result.random_probe_minimum =
                std::min(result.random_probe_minimum, probe_overlap(u1, u2, probe, copies));
        }
        if (result.random_probe_minimum < result.minimum - 1e-8) {
            std::ostringstream msg;
            msg << "oracle_min_overlap: random probe reached " << result.random_probe_minimum
                << " below descent optimum " << result.minimum;
            throw ConvergenceError(msg.str());
        }
    }
    return result;
}

double oracle_min_overlap(const Gate& u1, const Gate& u2, int copies, int budget,
                          std::uint64_t seed) {
    return oracle_min_overlap_detailed(u1, u2, copies, budget, seed).minimum;
}

// ---------------------------------------------------------------------------
// SU(3) example family

Gate su3_example_gate(double gamma1, double gamma2, const std::array<double, 5>& phi) {
    const auto in_range = [](double v, double hi, bool closed) {
        return std::isfinite(v) && v >= 0.0 && (closed ? v <= hi : v < hi);
    };
    if (!in_range(gamma1, kPi / 2.0, true) || !in_range(gamma2, kPi / 2.0, true)) {
        throw ValidationError("su3_example_gate: gamma must lie in [0, pi/2]");
    }
    for (double p : phi) {
        if (!in_range(p, kTwoPi, false)) {
            throw ValidationError("su3_example_gate: phases must lie in [0, 2 pi)");
        }
    }
    const double s1 = std::sin(gamma1);
    const double c1 = std::cos(gamma1);
    const double s2 = std::sin(gamma2);
    const double c2 = std::cos(gamma2);
    const auto [p1, p2, p3, p4, p5] = phi;
    (void)p1;  // the family does not depend on the first phase
    const auto e = [](double angle) { return std::polar(1.0, angle); };

    ComplexMatrix m(3, 3);
    m(0, 0) = 0.0;
    m(0, 1) = s1 * e(p3);
    m(0, 2) = c1 * e(p4);
    m(1, 0) = s2 * e(-(p4 + p5));
    m(1, 1) = c1 * c2 * e(p2);
    m(1, 2) = -s1 * c2 * e(p2 - p3 + p4);
    m(2, 0) = -c2 * e(-(p2 + p4));
    m(2, 1) = c1 * s2 * e(p5);
    m(2, 2) = -s1 * s2 * e(-(p3 - p4 - p5));
    return Gate(std::move(m));
}

}  // namespace gatedist
