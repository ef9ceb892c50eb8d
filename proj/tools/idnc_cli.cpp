#include "idnc/analytics.hpp"
#include "idnc/graph.hpp"
#include "idnc/model.hpp"
#include "idnc/policies.hpp"
#include "idnc/rng.hpp"
#include "idnc/sim.hpp"
#include "idnc/ssp.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Fixture files: "M N", M rows of N entries in {-1,0,1}, one row of M success
// probabilities.

idnc::FrameState load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fixture file: " + path);
    int m = 0, n = 0;
    if (!(in >> m >> n) || m < 1 || n < 1)
        throw std::invalid_argument("fixture must start with 'M N' (positive integers)");
    idnc::StateFeedbackMatrix sfm(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            int v;
            if (!(in >> v) || v < -1 || v > 1)
                throw std::invalid_argument("fixture entries must be -1, 0, or 1");
            sfm.set(i, j, static_cast<std::int8_t>(v));
        }
    }
    std::vector<double> q(m);
    for (int i = 0; i < m; ++i) {
        if (!(in >> q[i]) || !(q[i] > 0.0 && q[i] <= 1.0))
            throw std::invalid_argument("fixture needs M success probabilities in (0, 1]");
    }
    return idnc::frame_from_sfm(std::move(sfm), std::move(q));
}

// ---------------------------------------------------------------------------
// Experiment specs: line-oriented key=value, or a JSON object with the same
// keys. Both land in ExperimentSpec and share one validator.

struct ExperimentSpec {
    idnc::SimConfig base;
    std::string axis = "p";
    std::vector<double> values;
    std::vector<idnc::PolicyKind> policies;
    std::string out;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::stringstream stream(text);
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    return text.substr(begin, text.find_last_not_of(" \t\r\n") - begin + 1);
}

void apply_spec_key(ExperimentSpec& spec, const std::string& key, const std::string& value) {
    try {
        if (key == "M")
            spec.base.receivers = std::stoi(value);
        else if (key == "N")
            spec.base.frame_size = std::stoi(value);
        else if (key == "p")
            spec.base.mean_erasure = std::stod(value);
        else if (key == "mu")
            spec.base.mean_demand = std::stod(value);
        else if (key == "trials")
            spec.base.trials = std::stol(value);
        else if (key == "seed")
            spec.base.master_seed = std::stoull(value);
        else if (key == "threads")
            spec.base.threads = std::stoi(value);
        else if (key == "max_slots")
            spec.base.max_slots = std::stol(value);
        else if (key == "spread_p")
            spec.base.spread_erasure = std::stod(value);
        else if (key == "spread_mu")
            spec.base.spread_demand = std::stod(value);
        else if (key == "include_initial")
            spec.base.include_initial = value == "true" || value == "1";
        else if (key == "secondary_weight") {
            if (value == "psi-tilde")
                spec.base.secondary_weight = idnc::SecondaryWeight::PsiTilde;
            else if (value == "q-psi")
                spec.base.secondary_weight = idnc::SecondaryWeight::QPsi;
            else
                throw std::invalid_argument("secondary_weight must be psi-tilde or q-psi");
        } else if (key == "axis")
            spec.axis = value;
        else if (key == "values") {
            spec.values.clear();
            for (const auto& part : split(value, ','))
                spec.values.push_back(std::stod(trim(part)));
        } else if (key == "policies") {
            spec.policies.clear();
            for (const auto& part : split(value, ','))
                spec.policies.push_back(idnc::PolicyKind::parse(trim(part)));
        } else if (key == "out")
            spec.out = value;
        else
            throw std::invalid_argument("unknown spec key: " + key);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for spec key '" + key + "': " + value);
    }
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("spec needs a non-empty values list");
    if (spec.policies.empty())
        throw std::invalid_argument("spec needs a non-empty policies list");
    (void)idnc::parse_axis(spec.axis);
    // Validate every cell up front so a bad cell cannot leave partial output.
    for (double value : spec.values) {
        idnc::SimConfig cell = spec.base;
        switch (idnc::parse_axis(spec.axis)) {
            case idnc::SweepAxis::Mu: cell.mean_demand = value; break;
            case idnc::SweepAxis::M: cell.receivers = static_cast<int>(value); break;
            case idnc::SweepAxis::N: cell.frame_size = static_cast<int>(value); break;
            case idnc::SweepAxis::P: cell.mean_erasure = value; break;
        }
        cell.validate();
    }
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    ExperimentSpec spec;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("bad JSON spec: ") + e.what());
        }
        for (const auto& [key, value] : doc.items()) {
            if (value.is_array()) {
                std::string joined;
                for (const auto& item : value) {
                    if (!joined.empty()) joined += ',';
                    joined += item.is_string() ? item.get<std::string>() : item.dump();
                }
                apply_spec_key(spec, key, joined);
            } else if (value.is_string()) {
                apply_spec_key(spec, key, value.get<std::string>());
            } else {
                apply_spec_key(spec, key, value.dump());
            }
        }
    } else {
        std::string line;
        std::stringstream lines(text);
        while (std::getline(lines, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("spec line is not key=value: " + line);
            apply_spec_key(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const ExperimentSpec& spec) {
    const auto rows =
        idnc::run_sweep(spec.base, idnc::parse_axis(spec.axis), spec.values, spec.policies);

    std::stringstream csv;
    csv << "axis,value,policy,mean_delay,stderr,trials,truncated,seed\n";
    for (const auto& row : rows)
        csv << row.axis << ',' << fmt6(row.axis_value) << ',' << row.policy << ','
            << fmt6(row.mean_delay) << ',' << fmt6(row.stderr_) << ',' << row.trials << ','
            << row.truncated << ',' << row.seed << '\n';

    if (spec.out.empty()) {
        std::cout << csv.str();
        return 0;
    }
    {
        std::ofstream out(spec.out, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot open output file: " + spec.out);
        out << csv.str();
        if (!out) {
            out.close();
            std::filesystem::remove(spec.out);
            throw std::runtime_error("failed writing output file: " + spec.out);
        }
    }
    std::cout << "wrote " << rows.size() << " rows to " << spec.out << "\n";
    std::printf("%-6s %-10s %-12s %12s %10s %8s %6s\n", "axis", "value", "policy", "mean_delay",
                "stderr", "trials", "trunc");
    for (const auto& row : rows)
        std::printf("%-6s %-10s %-12s %12s %10s %8ld %6ld\n", row.axis.c_str(),
                    fmt6(row.axis_value).c_str(), row.policy.c_str(),
                    fmt6(row.mean_delay).c_str(), fmt6(row.stderr_).c_str(), row.trials,
                    row.truncated);
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckReporter {
    int failures = 0;

    void report(const std::string& name, bool passed, const std::string& detail) {
        std::cout << (passed ? "[ ok ] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
        if (!passed) ++failures;
    }
};

idnc::CardinalityProfile random_cardinalities(std::mt19937_64& rng, int max_m, int max_n) {
    idnc::CardinalityProfile profile;
    std::uniform_int_distribution<int> pick_m(2, max_m), pick_n(2, max_n);
    const int m = pick_m(rng);
    profile.frame_size = pick_n(rng);
    std::uniform_real_distribution<double> pick_q(0.2, 0.95);
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick_rho(0, profile.frame_size - 1);
        const int rho = pick_rho(rng);
        const int lacks = profile.frame_size - rho;
        std::uniform_int_distribution<int> pick_psi(1, lacks);
        profile.has_sizes.push_back(rho);
        profile.lacks_sizes.push_back(lacks);
        profile.wants_sizes.push_back(pick_psi(rng));
        profile.success_probs.push_back(pick_q(rng));
    }
    return profile;
}

// Random disjoint target sets that satisfy the one-step preconditions.
void random_targets(const idnc::CardinalityProfile& profile, std::mt19937_64& rng,
                    std::vector<int>& primary, std::vector<int>& secondary) {
    primary.clear();
    secondary.clear();
    std::uniform_int_distribution<int> coin(0, 2);
    for (int i = 0; i < profile.receiver_count(); ++i) {
        switch (coin(rng)) {
            case 0:
                if (profile.wants_sizes[i] >= 1) primary.push_back(i);
                break;
            case 1:
                if (profile.lacks_sizes[i] - profile.wants_sizes[i] >= 1) secondary.push_back(i);
                break;
            default: break;
        }
    }
}

int verify_formulas(long trials, std::uint64_t seed, bool mutate) {
    CheckReporter reporter;
    auto rng = idnc::make_stream(seed, 0, 7);
    const double bias = mutate ? 0.2 : 0.0;

    bool edges_ok = true, degree_ok = true;
    std::string edge_detail, degree_detail;
    for (int round = 0; round < 20; ++round) {
        const auto profile = random_cardinalities(rng, 6, 6);
        const auto mc = idnc::mc_oracle_edge_count(profile, trials, rng);
        const double closed = idnc::expected_edge_count(profile) + bias;
        if (std::abs(closed - mc.mean) > 3.0 * mc.stderr_ + 1e-9) {
            edges_ok = false;
            edge_detail = "closed " + fmt6(closed) + " vs mc " + fmt6(mc.mean) + " ± " +
                          fmt6(mc.stderr_);
        }
        const int i = static_cast<int>(rng() % profile.receiver_count());
        const auto mc_deg = idnc::mc_oracle_one_step_degree(profile, {}, {}, i, trials, rng);
        const double closed_deg = idnc::expected_degree(profile, i) + bias;
        if (std::abs(closed_deg - mc_deg.mean) > 3.0 * mc_deg.stderr_ + 1e-9) {
            degree_ok = false;
            degree_detail = "closed " + fmt6(closed_deg) + " vs mc " + fmt6(mc_deg.mean) +
                            " ± " + fmt6(mc_deg.stderr_);
        }
    }
    reporter.report("formulas/edge-count-vs-mc", edges_ok, edge_detail);
    reporter.report("formulas/degree-vs-mc", degree_ok, degree_detail);

    bool evolution_ok = true;
    std::string evolution_detail;
    for (int round = 0; round < 10; ++round) {
        const auto profile = random_cardinalities(rng, 5, 5);
        std::vector<int> primary, secondary;
        random_targets(profile, rng, primary, secondary);
        std::vector<double> degrees(profile.receiver_count());
        for (int i = 0; i < profile.receiver_count(); ++i)
            degrees[i] = idnc::expected_degree(profile, i);
        const double closed = idnc::expected_edge_evolution(
                                  profile, primary, secondary, degrees,
                                  idnc::expected_edge_count(profile)) +
                              bias;
        const auto mc = idnc::mc_oracle_one_step_edges(profile, primary, secondary, trials, rng);
        if (std::abs(closed - mc.mean) > 3.0 * mc.stderr_ + 1e-9) {
            evolution_ok = false;
            evolution_detail = "closed " + fmt6(closed) + " vs mc " + fmt6(mc.mean) + " ± " +
                               fmt6(mc.stderr_);
        }
    }
    reporter.report("formulas/one-step-edges-vs-mc", evolution_ok, evolution_detail);

    long dominance_checked = 0;
    bool dominance_ok = true;
    while (dominance_checked < 10000) {
        const auto profile = random_cardinalities(rng, 6, 8);
        for (int i = 0; i < profile.receiver_count() && dominance_checked < 10000; ++i)
            for (int h = 0; h < profile.receiver_count() && dominance_checked < 10000; ++h) {
                if (i == h || profile.wants_sizes[i] <= profile.wants_sizes[h] ||
                    profile.has_sizes[i] >= profile.has_sizes[h])
                    continue;
                ++dominance_checked;
                if (!idnc::degree_dominance_check(profile, i, h)) dominance_ok = false;
            }
    }
    reporter.report("formulas/theorem-degree-dominance", dominance_ok,
                    std::to_string(dominance_checked) + " pairs");

    long alpha_beta_checked = 0;
    bool alpha_beta_ok = true;
    while (alpha_beta_checked < 10000) {
        const auto profile = random_cardinalities(rng, 6, 8);
        std::vector<int> primary, secondary;
        random_targets(profile, rng, primary, secondary);
        const auto coeffs = idnc::evolution_coefficients(profile, primary, secondary);
        auto check = [&](int i) {
            ++alpha_beta_checked;
            if (coeffs.alpha[i] < coeffs.beta[i] - 1e-12) alpha_beta_ok = false;
        };
        for (int i : primary) check(i);
        for (int i : secondary) check(i);
    }
    reporter.report("formulas/theorem-alpha-beta", alpha_beta_ok,
                    std::to_string(alpha_beta_checked) + " coefficients");

    return reporter.failures == 0 ? 0 : kExitVerifyFailure;
}

idnc::FrameState random_instance(std::mt19937_64& rng, int max_bits) {
    for (;;) {
        const int cap = max_bits > 16 ? 5 : 4;
        std::uniform_int_distribution<int> pick_m(1, cap), pick_n(1, cap);
        const int m = pick_m(rng), n = pick_n(rng);
        idnc::StateFeedbackMatrix sfm(m, n);
        std::uniform_real_distribution<double> pick_q(0.3, 0.95);
        std::uniform_int_distribution<int> entry(-1, 1);
        int bits = 0, wants = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const int v = entry(rng);
                sfm.set(i, j, static_cast<std::int8_t>(v));
                if (v != 0) ++bits;
                if (v == 1) ++wants;
            }
        if (bits == 0 || bits > max_bits || wants == 0) continue;
        std::vector<double> q(m);
        for (auto& value : q) value = pick_q(rng);
        return idnc::frame_from_sfm(std::move(sfm), std::move(q));
    }
}

int verify_ssp(long trials, std::uint64_t seed, int max_bits, int instances, bool mutate) {
    CheckReporter reporter;
    auto rng = idnc::make_stream(seed, 0, 11);

    bool bounds_ok = true, monotone_ok = true, replay_ok = true;
    std::string bounds_detail, monotone_detail, replay_detail;
    for (int round = 0; round < instances; ++round) {
        const auto initial = random_instance(rng, max_bits);
        idnc::SolveOptions options;
        options.size_bound = max_bits;
        const auto table = idnc::solve(initial, options);
        const int bits = table.bit_count();
        for (idnc::SspMask mask = 0; mask < (idnc::SspMask{1} << bits); ++mask) {
            const auto state = table.materialize(mask);
            double max_ww = 0.0, sum_ww = 0.0;
            for (double w : idnc::weighted_wants(state)) {
                max_ww = std::max(max_ww, w);
                sum_ww += w;
            }
            const double v = table.value[mask];
            if (v < max_ww - 1e-9 || v > sum_ww + 1e-9) {
                bounds_ok = false;
                bounds_detail = "V " + fmt6(v) + " outside [" + fmt6(max_ww) + ", " +
                                fmt6(sum_ww) + "]";
            }
            for (int b = 0; b < bits; ++b) {
                if (mask >> b & 1) continue;
                if (table.value[mask | (idnc::SspMask{1} << b)] > v + 1e-9) {
                    monotone_ok = false;
                    monotone_detail = "extra side information increased V";
                }
            }
        }
        const double bias = (mutate && round == 0) ? 0.5 : 0.0;
        double stderr_ = 0.0;
        const double replay = idnc::simulate_optimal_policy(table, trials, rng, &stderr_);
        if (std::abs(replay - (table.initial_value() + bias)) > 3.0 * stderr_ + 1e-6) {
            replay_ok = false;
            replay_detail =
                "V " + fmt6(table.initial_value() + bias) + " vs replay " + fmt6(replay);
        }
    }
    reporter.report("ssp/value-bounds", bounds_ok, bounds_detail);
    reporter.report("ssp/value-monotonicity", monotone_ok, monotone_detail);
    reporter.report("ssp/optimal-policy-replay", replay_ok, replay_detail);
    return reporter.failures == 0 ? 0 : kExitVerifyFailure;
}

// Brute-force maximum-weight clique by subset enumeration, with the library's
// tie-break order (weight, then cardinality, then lexicographic vertex list).
std::vector<int> brute_force_clique(const idnc::IdncGraph& graph, const idnc::Bits& candidates,
                                    const std::vector<double>& weights) {
    const auto ids = candidates.to_vector();
    const int count = static_cast<int>(ids.size());
    std::vector<int> best;
    double best_weight = -1.0;
    for (std::uint32_t subset = 1; subset < (1u << count); ++subset) {
        std::vector<int> members;
        double weight = 0.0;
        bool ok = true;
        for (int a = 0; a < count && ok; ++a) {
            if (!(subset >> a & 1)) continue;
            for (int v : members)
                if (!graph.adjacent(v, ids[a])) {
                    ok = false;
                    break;
                }
            if (ok) {
                members.push_back(ids[a]);
                weight += weights[ids[a]];
            }
        }
        if (!ok) continue;
        if (weight > best_weight + 1e-12 ||
            (std::abs(weight - best_weight) <= 1e-12 &&
             (members.size() > best.size() ||
              (members.size() == best.size() && members < best)))) {
            best = members;
            best_weight = weight;
        }
    }
    return best;
}

int verify_policies(std::uint64_t seed, int instances, bool mutate) {
    CheckReporter reporter;
    auto rng = idnc::make_stream(seed, 0, 13);

    bool mwcs_ok = true, mc_ok = true;
    std::string mwcs_detail, mc_detail;
    bool mutation_pending = mutate;
    int rounds = 0;
    while (rounds < instances) {
        const auto initial = random_instance(rng, 25);
        const auto graph = idnc::build_graph(initial);
        if (graph.vertex_count() == 0 || graph.vertex_count() > 18 ||
            graph.primary_count() == 0)
            continue;
        ++rounds;

        std::vector<double> weights(graph.vertex_count());
        std::uniform_real_distribution<double> pick_w(0.1, 2.0);
        for (auto& w : weights) w = pick_w(rng);
        const auto brute = brute_force_clique(graph, graph.primary_mask(), weights);
        if (mutation_pending) {
            // corrupt the library's input: a dominant weight on a candidate
            // outside the reference answer forces a different clique
            graph.primary_mask().for_each([&](int v) {
                if (std::find(brute.begin(), brute.end(), v) == brute.end()) {
                    weights[v] += 100.0;
                    mutation_pending = false;
                }
            });
        }
        const auto exact = idnc::max_weight_clique(graph, graph.primary_mask(), weights);
        if (exact != brute) {
            mwcs_ok = false;
            mwcs_detail = "stage-1 clique mismatch on a " +
                          std::to_string(graph.vertex_count()) + "-vertex graph";
        }

        const std::vector<double> unit(graph.vertex_count(), 1.0);
        const auto exact_mc = idnc::max_weight_clique(graph, graph.primary_mask(), unit);
        const auto brute_mc = brute_force_clique(graph, graph.primary_mask(), unit);
        if (exact_mc != brute_mc) {
            mc_ok = false;
            mc_detail = "max-clique mismatch on a " + std::to_string(graph.vertex_count()) +
                        "-vertex graph";
        }
    }
    reporter.report("policies/mwcs-vs-brute-force", mwcs_ok, mwcs_detail);
    reporter.report("policies/max-clique-vs-brute-force", mc_ok, mc_detail);
    return reporter.failures == 0 ? 0 : kExitVerifyFailure;
}

// ---------------------------------------------------------------------------
// oracle / dump-graph

int cmd_oracle(const std::string& fixture, int max_bits, bool include_non_maximal) {
    const auto initial = load_fixture(fixture);
    idnc::SolveOptions options;
    options.size_bound = max_bits;
    options.include_non_maximal = include_non_maximal;
    const auto table = idnc::solve(initial, options);

    std::cout << "V=" << fmt6(table.initial_value()) << "\n";
    const auto& action = table.optimal_action[0];
    if (action.empty()) {
        std::cout << "optimal clique: none (all demands already met)\n";
        return 0;
    }
    std::vector<int> packets, receivers;
    for (const auto& target : action) {
        packets.push_back(target.packet);
        receivers.push_back(target.receiver);
    }
    std::sort(packets.begin(), packets.end());
    packets.erase(std::unique(packets.begin(), packets.end()), packets.end());
    std::sort(receivers.begin(), receivers.end());
    std::cout << "packets:";
    for (int j : packets) std::cout << ' ' << j;
    std::cout << "\ntargets:";
    for (int i : receivers) std::cout << ' ' << i;
    std::cout << "\n";
    return 0;
}

int cmd_dump_graph(const std::string& fixture) {
    std::cout << idnc::dump_graph(idnc::build_graph(load_fixture(fixture)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IDNC completion-delay toolkit"};
    app.require_subcommand(1);

    // sweep
    std::string spec_path, out_override, secondary_override;
    long trials_override = -1;
    int threads_override = -1;
    std::uint64_t seed_override = 0;
    bool seed_set = false, include_initial = false;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a spec file");
    sweep->add_option("spec", spec_path, "spec file (key=value lines or JSON)")->required();
    sweep->add_option("--seed", seed_override, "master seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sweep->add_option("--trials", trials_override, "trials per cell override");
    sweep->add_option("--threads", threads_override, "worker thread override");
    sweep->add_option("--out", out_override, "CSV output path override");
    sweep->add_flag("--include-initial", include_initial,
                    "count the N initial uncoded slots in the reported delay");
    sweep->add_option("--secondary-weight", secondary_override,
                      "secondary-layer weighting: psi-tilde or q-psi")
        ->check(CLI::IsMember({"psi-tilde", "q-psi"}));

    // verify
    std::string suite;
    long verify_trials = 20000;
    std::uint64_t verify_seed = 1;
    int verify_max_bits = 8, verify_instances = 0;
    bool mutate = false;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "formulas | ssp | policies")
        ->required()
        ->check(CLI::IsMember({"formulas", "ssp", "policies"}));
    verify->add_option("--trials", verify_trials, "Monte Carlo trials per check");
    verify->add_option("--seed", verify_seed, "rng seed");
    verify->add_option("--max-bits", verify_max_bits, "SSP instance size bound");
    verify->add_option("--instances", verify_instances, "number of random instances");
    verify->add_flag("--mutate", mutate, "corrupt one check to prove failures are detected");

    // oracle
    std::string oracle_fixture;
    int oracle_max_bits = 16;
    bool oracle_non_maximal = false;
    auto* oracle = app.add_subcommand("oracle", "Exact optimal completion delay of a fixture");
    oracle->add_option("fixture", oracle_fixture, "fixture file")->required();
    oracle->add_option("--max-bits", oracle_max_bits, "lacking-bit size bound");
    oracle->add_flag("--include-non-maximal", oracle_non_maximal,
                     "search non-maximal cliques as well");

    // dump-graph
    std::string dump_fixture;
    auto* dump = app.add_subcommand("dump-graph", "Print the coding graph of a fixture");
    dump->add_option("fixture", dump_fixture, "fixture file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (sweep->parsed()) {
            ExperimentSpec spec = load_spec(spec_path);
            if (seed_set) spec.base.master_seed = seed_override;
            if (trials_override > 0) spec.base.trials = trials_override;
            if (threads_override > 0) spec.base.threads = threads_override;
            if (!out_override.empty()) spec.out = out_override;
            if (include_initial) spec.base.include_initial = true;
            if (secondary_override == "q-psi")
                spec.base.secondary_weight = idnc::SecondaryWeight::QPsi;
            else if (secondary_override == "psi-tilde")
                spec.base.secondary_weight = idnc::SecondaryWeight::PsiTilde;
            validate_spec(spec);
            return cmd_sweep(spec);
        }
        if (verify->parsed()) {
            if (suite == "formulas") return verify_formulas(verify_trials, verify_seed, mutate);
            if (suite == "ssp")
                return verify_ssp(verify_trials, verify_seed, verify_max_bits,
                                  verify_instances > 0 ? verify_instances : 25, mutate);
            return verify_policies(verify_seed, verify_instances > 0 ? verify_instances : 100,
                                   mutate);
        }
        if (oracle->parsed()) return cmd_oracle(oracle_fixture, oracle_max_bits,
                                                oracle_non_maximal);
        if (dump->parsed()) return cmd_dump_graph(dump_fixture);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::length_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return 0;
}
