#include "gatedist/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "gatedist/gatedist.hpp"
#include "gatedist/json_io.hpp"

namespace gatedist::cli {

namespace {

using io::Json;

struct Globals {
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    double tol = kStructuralTol;
    int budget = 32;
    std::string emit_plot;
};

struct GatePair {
    std::string u1;
    std::string u2;
};

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json vector_json(const ComplexVector& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_json(v(k)));
    }
    return out;
}

Json params_json(const GateSU2Params& p) {
    Json out;
    out["theta1"] = p.theta1;
    out["theta2"] = p.theta2;
    out["theta3"] = p.theta3;
    return out;
}

Gate load_gate(const std::string& path, const Globals& g) {
    return Gate(io::read_matrix_file(path), false, g.tol);
}

// Product factors with consecutive repeats folded into {"vector", "repeat"}.
Json factors_json(const std::vector<ComplexVector>& factors) {
    Json out = Json::array();
    std::size_t k = 0;
    while (k < factors.size()) {
        std::size_t stop = k + 1;
        while (stop < factors.size() && factors[stop] == factors[k]) {
            ++stop;
        }
        Json run;
        run["vector"] = vector_json(factors[k]);
        run["repeat"] = stop - k;
        out.push_back(std::move(run));
        k = stop;
    }
    return out;
}

double ks_against(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max({worst, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return worst;
}

void require_no_plot(const Globals& g, const std::string& command) {
    if (!g.emit_plot.empty()) {
        throw ValidationError("--emit-plot has no series for " + command +
                              "; use haar-sample, avg-fidelity or metric-check");
    }
}

Json echo_pair(const GatePair& p, const Globals& g) {
    Json in;
    in["u1"] = p.u1;
    in["u2"] = p.u2;
    in["tol"] = g.tol;
    return in;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distinguishability of quantum gates: fidelities, copy counts, probes, sampling"};
    app.name("gatedist");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--samples", g.samples, "Monte-Carlo sample count")->capture_default_str();
    app.add_option("--tol", g.tol, "Unitarity tolerance for input gates")->capture_default_str();
    app.add_option("--budget", g.budget, "Oracle restart budget")->capture_default_str();
    app.add_option("--emit-plot", g.emit_plot, "Write an x,y CSV series to this path");

    auto add_pair = [](CLI::App* sub, GatePair& p, bool required) {
        auto* a = sub->add_option("--u1", p.u1, "First gate (matrix file)");
        auto* b = sub->add_option("--u2", p.u2, "Second gate (matrix file)");
        if (required) {
            a->required();
            b->required();
        }
    };

    GatePair pair;
    auto* fidelity = app.add_subcommand("fidelity", "Gate fidelity cos^2 d(U1, U2)");
    add_pair(fidelity, pair, true);
    auto* distance = app.add_subcommand("distance", "Statistical distance between two gates");
    add_pair(distance, pair, true);
    auto* ncopies = app.add_subcommand("ncopies", "Copies needed for perfect discrimination");
    add_pair(ncopies, pair, true);

    auto* probe = app.add_subcommand("probe", "Optimal probe state for a pair of qubit gates");
    add_pair(probe, pair, true);
    bool single = false;
    bool entangled = false;
    probe->add_flag("--single", single, "Single-copy separable probe");
    probe->add_flag("--entangled", entangled, "Single-copy maximally entangled probe");

    auto* arc = app.add_subcommand("arc", "Minimal covering arc of eigenphases");
    add_pair(arc, pair, false);
    std::string phases_text;
    arc->add_option("--phases", phases_text, "Comma-separated phases instead of --u1/--u2");

    auto* oracle = app.add_subcommand("oracle", "Brute-force minimum probe overlap");
    add_pair(oracle, pair, true);
    int copies = 1;
    oracle->add_option("--copies", copies, "Number of copies N")->capture_default_str();

    auto* state_fid = app.add_subcommand("state-fidelity", "Fidelity of two density matrices");
    std::string rho_path;
    std::string sigma_path;
    state_fid->add_option("--rho", rho_path, "First density matrix (matrix file)")->required();
    state_fid->add_option("--sigma", sigma_path, "Second density matrix (matrix file)")->required();

    auto* classical = app.add_subcommand("classical-distance", "Distance of two distributions");
    std::string p_text;
    std::string q_text;
    classical->add_option("--p", p_text, "Comma-separated probabilities")->required();
    classical->add_option("--q", q_text, "Comma-separated probabilities")->required();

    auto* avg = app.add_subcommand("avg-fidelity", "State-averaged fidelity by Monte Carlo");
    add_pair(avg, pair, true);

    auto* haar = app.add_subcommand("haar-sample", "Haar-random SU(2) parameters");
    int bins = 50;
    haar->add_option("--bins", bins, "Histogram bins for --emit-plot")->capture_default_str();

    auto* metric = app.add_subcommand("metric-check", "Compare the SU(2) metric forms at one point");
    std::optional<double> th1;
    std::optional<double> th2;
    std::optional<double> th3;
    std::optional<double> d1;
    std::optional<double> d2;
    std::optional<double> d3;
    double eps = 1e-4;
    metric->add_option("--theta1", th1);
    metric->add_option("--theta2", th2);
    metric->add_option("--theta3", th3);
    metric->add_option("--d1", d1, "Increment of theta1");
    metric->add_option("--d2", d2, "Increment of theta2");
    metric->add_option("--d3", d3, "Increment of theta3");
    metric->add_option("--eps", eps, "Finite step for the distance ratio")->capture_default_str();

    auto* su3 = app.add_subcommand("su3-example", "Three-level gate orthogonal to the identity");
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::string phi_text = "0,0,0,0,0";
    std::string su3_out;
    su3->add_option("--gamma1", gamma1)->required();
    su3->add_option("--gamma2", gamma2)->required();
    su3->add_option("--phi", phi_text, "Five comma-separated phases")->capture_default_str();
    su3->add_option("--out", su3_out, "Also write the matrix to this file");

    auto* discriminate = app.add_subcommand("discriminate", "Simulate sequential elimination");
    std::string set_path;
    std::optional<std::size_t> true_index;
    std::string true_gate_path;
    discriminate->add_option("--set", set_path, "Gate set file")->required();
    auto* true_opt = discriminate->add_option("--true", true_index, "Index of the applied gate");
    auto* true_gate_opt =
        discriminate->add_option("--true-gate", true_gate_path, "Applied gate (matrix file)");
    true_opt->excludes(true_gate_opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "gatedist: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        Json inputs = Json::object();
        Json result;

        if (sub == fidelity || sub == distance || sub == ncopies) {
            require_no_plot(g, command);
            inputs = echo_pair(pair, g);
            const Gate u1 = load_gate(pair.u1, g);
            const Gate u2 = load_gate(pair.u2, g);
            if (sub == fidelity) {
                result = u1.dim() == 2 && u2.dim() == 2 ? gate_fidelity_su2(u1, u2)
                                                        : gate_fidelity_sud(u1, u2);
            } else if (sub == distance) {
                result = gate_distance(u1, u2);
            } else {
                result = min_copies(u1, u2);
            }
        } else if (sub == probe) {
            require_no_plot(g, command);
            if (single && entangled) {
                throw ValidationError("--single and --entangled are exclusive");
            }
            inputs = echo_pair(pair, g);
            inputs["mode"] = entangled ? "entangled" : single ? "single" : "ncopies";
            const Gate u1 = load_gate(pair.u1, g);
            const Gate u2 = load_gate(pair.u2, g);
            if (single || entangled) {
                const ProbeState ps = optimal_probe_single(u1, u2, entangled);
                result["copies"] = 1;
                result["separable"] = ps.separable();
                result["vector"] = vector_json(ps.vector());
                result["overlap"] = probe_overlap(u1, u2, ps, 1);
            } else {
                const ProbeState ps = optimal_probe_ncopies(u1, u2);
                result["copies"] = ps.copies();
                result["separable"] = ps.separable();
                result["q"] = optimal_probe_weight(gate_distance(u1, u2), ps.copies());
                Json terms = Json::array();
                for (const auto& t : ps.terms()) {
                    Json term;
                    term["amplitude"] = complex_json(t.amplitude);
                    term["factors"] = factors_json(t.factors);
                    terms.push_back(std::move(term));
                }
                result["terms"] = std::move(terms);
                result["overlap"] = probe_overlap(u1, u2, ps, ps.copies());
            }
        } else if (sub == arc) {
            require_no_plot(g, command);
            std::vector<double> phases;
            if (!phases_text.empty()) {
                if (!pair.u1.empty() || !pair.u2.empty()) {
                    throw ValidationError("give either --phases or --u1/--u2");
                }
                inputs["phases"] = phases_text;
                phases = io::parse_real_list(phases_text, "--phases");
            } else {
                if (pair.u1.empty() || pair.u2.empty()) {
                    throw ValidationError("arc needs --phases or both --u1 and --u2");
                }
                inputs = echo_pair(pair, g);
                phases = relative_gate(load_gate(pair.u1, g), load_gate(pair.u2, g)).spectral().phases;
                result["phases"] = phases;
            }
            const ArcResult a = minimal_covering_arc(phases);
            result["delta"] = a.delta;
            result["center"] = a.center;
            result["extremes"] = Json::array({a.extremes.first, a.extremes.second});
            result["distance"] = std::min(a.delta, std::numbers::pi / 2.0);
        } else if (sub == oracle) {
            require_no_plot(g, command);
            inputs = echo_pair(pair, g);
            inputs["copies"] = copies;
            inputs["budget"] = g.budget;
            inputs["seed"] = g.seed;
            const Gate u1 = load_gate(pair.u1, g);
            const Gate u2 = load_gate(pair.u2, g);
            const OracleResult r = oracle_min_overlap_detailed(u1, u2, copies, g.budget, g.seed);
            const Gate rel = relative_gate(u1, u2);
            result["minimum"] = r.minimum;
            result["closed_form"] = convex_min_overlap(tensor_power_phases(rel.spectral().phases, copies));
            if (r.random_probe_minimum < 1.0) {
                result["random_probe_minimum"] = r.random_probe_minimum;
            }
            result["iterations"] = r.iterations;
            result["converged"] = r.converged;
        } else if (sub == state_fid) {
            require_no_plot(g, command);
            inputs["rho"] = rho_path;
            inputs["sigma"] = sigma_path;
            inputs["tol"] = g.tol;
            const DensityMatrix rho(io::read_matrix_file(rho_path), g.tol);
            const DensityMatrix sigma(io::read_matrix_file(sigma_path), g.tol);
            result["fidelity"] = mixed_fidelity(rho, sigma);
            result["distance"] = state_distance(rho, sigma);
        } else if (sub == classical) {
            require_no_plot(g, command);
            inputs["p"] = p_text;
            inputs["q"] = q_text;
            const ProbDist p(io::parse_real_list(p_text, "--p"));
            const ProbDist q(io::parse_real_list(q_text, "--q"));
            result["fidelity"] = classical_fidelity(p, q);
            result["distance"] = classical_distance(p, q);
            result["kullback"] = kullback_entropy(p, q);
        } else if (sub == avg) {
            inputs = echo_pair(pair, g);
            inputs["samples"] = g.samples;
            inputs["seed"] = g.seed;
            const Gate u1 = load_gate(pair.u1, g);
            const Gate u2 = load_gate(pair.u2, g);
            const MonteCarloEstimate mc = avg_fidelity_mc(u1, u2, g.samples, g.seed);
            result["estimate"] = mc.estimate;
            result["std_error"] = mc.std_error;
            result["samples"] = mc.samples;
            if (u1.dim() == 2) {
                result["closed_form"] = avg_fidelity_su2_closed(u1, u2);
            }
            if (!g.emit_plot.empty()) {
                // Estimate against sample count at decade checkpoints.
                std::vector<double> x;
                std::vector<double> y;
                for (std::size_t n = 10; n < g.samples; n *= 10) {
                    x.push_back(static_cast<double>(n));
                    y.push_back(avg_fidelity_mc(u1, u2, n, g.seed).estimate);
                }
                x.push_back(static_cast<double>(g.samples));
                y.push_back(mc.estimate);
                io::write_csv(g.emit_plot, x, y);
            }
        } else if (sub == haar) {
            inputs["samples"] = g.samples;
            inputs["seed"] = g.seed;
            if (bins < 1) {
                throw ValidationError("--bins must be at least 1");
            }
            const std::vector<GateSU2Params> draws = haar_sample_su2(g.seed, g.samples);
            std::vector<double> theta1;
            theta1.reserve(draws.size());
            double trace_sq = 0.0;
            for (const auto& p : draws) {
                theta1.push_back(p.theta1);
                trace_sq += std::norm(su2_matrix(p).trace());
            }
            result["samples"] = draws.size();
            result["ks_theta1"] = ks_against(theta1, haar_theta1_cdf);
            result["mean_abs_trace_sq"] = trace_sq / static_cast<double>(draws.size());
            Json head = Json::array();
            for (std::size_t k = 0; k < std::min<std::size_t>(5, draws.size()); ++k) {
                head.push_back(params_json(draws[k]));
            }
            result["head"] = std::move(head);
            if (!g.emit_plot.empty()) {
                inputs["bins"] = bins;
                const double width = std::numbers::pi / 2.0 / bins;
                std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
                for (double t : theta1) {
                    const auto b = std::min(static_cast<std::size_t>(t / width),
                                            static_cast<std::size_t>(bins - 1));
                    counts[b] += 1.0;
                }
                std::vector<double> x;
                std::vector<double> y;
                for (int b = 0; b < bins; ++b) {
                    x.push_back((b + 0.5) * width);
                    y.push_back(counts[static_cast<std::size_t>(b)] /
                                (static_cast<double>(theta1.size()) * width));
                }
                io::write_csv(g.emit_plot, x, y);
            }
        } else if (sub == metric) {
            Rng rng(g.seed);
            auto pick = [&](const std::optional<double>& v, double lo, double hi) {
                const double draw = lo + (hi - lo) * uniform01(rng);
                return v.value_or(draw);
            };
            const GateSU2Params p{pick(th1, 0.1, std::numbers::pi / 2.0 - 0.1),
                                  pick(th2, 0.0, 2.0 * std::numbers::pi),
                                  pick(th3, 0.0, 2.0 * std::numbers::pi)};
            const TangentIncrement t{pick(d1, -0.5, 0.5), pick(d2, -0.5, 0.5), pick(d3, -0.5, 0.5)};
            validate_params(p);
            inputs["point"] = params_json(p);
            inputs["increment"] = Json::array({t.dtheta1, t.dtheta2, t.dtheta3});
            inputs["eps"] = eps;
            inputs["seed"] = g.seed;

            const double coords = metric_form_coords(p, t);
            const ComplexMatrix du = su2_differential(p, t);
            const SphereCoords embedded = top_row_coords(du);
            double euclid = 0.0;
            for (double c : embedded.x) {
                euclid += c * c;
            }
            auto ratio_at = [&](double h) {
                GateSU2Params q{p.theta1 + h * t.dtheta1, p.theta2 + h * t.dtheta2,
                                p.theta3 + h * t.dtheta3};
                const double two_pi = 2.0 * std::numbers::pi;
                q.theta2 = std::fmod(std::fmod(q.theta2, two_pi) + two_pi, two_pi);
                q.theta3 = std::fmod(std::fmod(q.theta3, two_pi) + two_pi, two_pi);
                const double d = gate_distance(su2_from_params(p), su2_from_params(q));
                return d * d / (h * h * coords);
            };
            result["coords"] = coords;
            result["matrix"] = metric_form_matrix(su2_from_params(p), du);
            result["embedding"] = euclid;
            result["distance_ratio"] = ratio_at(eps);
            if (!g.emit_plot.empty()) {
                std::vector<double> x;
                std::vector<double> y;
                for (double h = 1e-1; h > 1e-6; h /= 10.0) {
                    x.push_back(h);
                    y.push_back(ratio_at(h));
                }
                io::write_csv(g.emit_plot, x, y);
            }
        } else if (sub == su3) {
            require_no_plot(g, command);
            inputs["gamma1"] = gamma1;
            inputs["gamma2"] = gamma2;
            inputs["phi"] = phi_text;
            const std::vector<double> phi = io::parse_real_list(phi_text, "--phi");
            if (phi.size() != 5) {
                throw ValidationError("--phi needs exactly five phases");
            }
            const Gate u = su3_example_gate(gamma1, gamma2, {phi[0], phi[1], phi[2], phi[3], phi[4]});
            const auto n = u.dim();
            result["matrix"] = io::matrix_to_json(u.matrix());
            result["e1_overlap"] = std::norm(u.matrix()(0, 0));
            result["fidelity_vs_identity"] = gate_fidelity_sud(Gate::identity(n), u);
            result["unitarity_defect"] =
                max_abs(u.matrix().adjoint() * u.matrix() - ComplexMatrix::Identity(n, n));
            if (!su3_out.empty()) {
                inputs["out"] = su3_out;
                std::ofstream file(su3_out, std::ios::binary);
                if (!file) {
                    throw ValidationError("cannot write " + su3_out);
                }
                file << io::dump(io::matrix_to_json(u.matrix())) << '\n';
            }
        } else if (sub == discriminate) {
            require_no_plot(g, command);
            inputs["set"] = set_path;
            inputs["seed"] = g.seed;
            inputs["tol"] = g.tol;
            std::vector<Gate> gates;
            for (auto& m : io::read_gate_set(set_path)) {
                gates.emplace_back(std::move(m), false, g.tol);
            }
            const HypothesisSet h(std::move(gates));
            const TestPlan plan = plan_elimination(h);
            SimResult sim;
            if (true_index) {
                inputs["true"] = *true_index;
                sim = simulate_elimination(plan, h, *true_index, g.seed);
            } else if (!true_gate_path.empty()) {
                inputs["true_gate"] = true_gate_path;
                sim = simulate_elimination(plan, h, load_gate(true_gate_path, g), g.seed);
            } else {
                throw ValidationError("discriminate needs --true or --true-gate");
            }
            result["identified"] = sim.identified_index;
            result["total_runs"] = sim.total_runs;
            result["verified"] = sim.verified;
            result["planned_runs"] = plan.planned_runs();
            Json trace = Json::array();
            for (const auto& e : sim.trace) {
                Json entry;
                entry["pair"] = Json::array({e.first, e.second});
                entry["copies"] = e.copies;
                entry["outcome"] = e.projector_outcome ? "projector" : "complement";
                entry["discarded"] = e.discarded;
                trace.push_back(std::move(entry));
            }
            result["trace"] = std::move(trace);
        }

        if (!g.emit_plot.empty()) {
            inputs["emit_plot"] = g.emit_plot;
        }
        Json doc;
        doc["command"] = command;
        doc["inputs"] = std::move(inputs);
        doc["result"] = std::move(result);
        out << io::dump(doc) << '\n';
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "gatedist " << command << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        err << "gatedist " << command << ": " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ConsistencyError& e) {
        err << "gatedist " << command << ": " << e.what() << '\n';
        return kExitConvergence;
    } catch (const nlohmann::json::exception& e) {
        err << "gatedist " << command << ": " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace gatedist::cli
