#include "idnc/policies.hpp"

#include "idnc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idnc {

PolicyKind PolicyKind::parse(const std::string& flag) {
    PolicyKind kind;
    if (flag == "rnd") {
        kind.variant = PolicyVariant::Random;
    } else if (flag == "mc") {
        kind.variant = PolicyVariant::MaxClique;
    } else if (flag == "mc-heur") {
        kind.variant = PolicyVariant::MaxCliqueHeuristic;
    } else if (flag == "rnc") {
        kind.variant = PolicyVariant::PerfectRnc;
    } else if (flag.rfind("mwcs:n=", 0) == 0 || flag.rfind("mwvs:n=", 0) == 0) {
        kind.variant = flag[2] == 'c' ? PolicyVariant::MaxWeightClique
                                      : PolicyVariant::MaxWeightVertexSearch;
        try {
            kind.norm = std::stoi(flag.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad norm in policy flag: " + flag);
        }
        if (kind.norm < 1) throw std::invalid_argument("norm exponent must be >= 1");
    } else {
        throw std::invalid_argument("unknown policy flag: " + flag);
    }
    return kind;
}

std::string PolicyKind::name() const {
    switch (variant) {
        case PolicyVariant::Random: return "rnd";
        case PolicyVariant::MaxClique: return "mc";
        case PolicyVariant::MaxCliqueHeuristic: return "mc-heur";
        case PolicyVariant::MaxWeightClique: return "mwcs:n=" + std::to_string(norm);
        case PolicyVariant::MaxWeightVertexSearch: return "mwvs:n=" + std::to_string(norm);
        case PolicyVariant::PerfectRnc: return "rnc";
    }
    return "?";
}

namespace {

struct SearchState {
    const IdncGraph& graph;
    const std::vector<double>& weights;
    long nodes = 0;
    long max_nodes = 0;
    double best_weight = -1.0;
    std::vector<int> best;
    std::vector<int> current;
    double current_weight = 0.0;
};

// Lexicographic compare on sorted vertex lists.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void consider(SearchState& s) {
    std::vector<int> cand = s.current;
    std::sort(cand.begin(), cand.end());
    if (s.current_weight > s.best_weight ||
        (s.current_weight == s.best_weight &&
         (cand.size() > s.best.size() || (cand.size() == s.best.size() && lex_less(cand, s.best)))))
    {
        s.best_weight = s.current_weight;
        s.best = std::move(cand);
    }
}

void expand(SearchState& s, const std::vector<int>& pool) {
    if (++s.nodes > s.max_nodes)
        throw std::length_error("clique search node budget exceeded");
    if (pool.empty()) {
        consider(s);
        return;
    }

    // Greedy clique cover of the candidate pool: a clique can take at most
    // one vertex per class, so the classwise max weights bound the rest.
    const int count = static_cast<int>(pool.size());
    std::vector<int> color(count, -1);
    std::vector<double> class_max;
    std::vector<std::vector<int>> class_members;
    for (int idx = 0; idx < count; ++idx) {
        const int v = pool[idx];
        int assigned = -1;
        for (int c = 0; c < static_cast<int>(class_members.size()); ++c) {
            bool independent = true;
            for (int u : class_members[c])
                if (s.graph.adjacent(u, v)) {
                    independent = false;
                    break;
                }
            if (independent) {
                assigned = c;
                break;
            }
        }
        if (assigned < 0) {
            assigned = static_cast<int>(class_members.size());
            class_members.emplace_back();
            class_max.push_back(0.0);
        }
        class_members[assigned].push_back(v);
        color[idx] = assigned;
        class_max[assigned] = std::max(class_max[assigned], s.weights[v]);
    }

    // Order by class so the per-vertex upper bound is the running class sum.
    std::vector<int> order(count);
    for (int idx = 0; idx < count; ++idx) order[idx] = idx;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return color[a] < color[b]; });
    std::vector<double> bound(count);
    double running = 0.0;
    int last_class = -1;
    for (int pos = 0; pos < count; ++pos) {
        const int idx = order[pos];
        if (color[idx] != last_class) {
            running += class_max[color[idx]];
            last_class = color[idx];
        }
        bound[pos] = running;
    }

    for (int pos = count - 1; pos >= 0; --pos) {
        if (s.current_weight + bound[pos] < s.best_weight) return;
        const int v = pool[order[pos]];
        std::vector<int> next_pool;
        for (int prev = 0; prev < pos; ++prev) {
            const int u = pool[order[prev]];
            if (s.graph.adjacent(u, v)) next_pool.push_back(u);
        }
        s.current.push_back(v);
        s.current_weight += s.weights[v];
        expand(s, next_pool);
        s.current.pop_back();
        s.current_weight -= s.weights[v];
    }
}

} // namespace

std::vector<int> max_weight_clique(const IdncGraph& graph, const Bits& candidates,
                                   const std::vector<double>& weights,
                                   const CliqueSearchBudget& budget) {
    const auto pool = candidates.to_vector();
    if (static_cast<int>(pool.size()) > budget.max_vertices)
        throw std::length_error("clique search vertex budget exceeded");
    if (pool.empty()) return {};
    SearchState state{graph, weights};
    state.max_nodes = budget.max_nodes;
    expand(state, pool);
    return state.best;
}

namespace {

std::vector<double> clique_weights(const IdncGraph& graph,
                                   const std::vector<double>& weighted_wants, int norm,
                                   SecondaryWeight secondary_mode,
                                   const std::vector<double>& success_probs) {
    if (secondary_mode == SecondaryWeight::QPsi &&
        static_cast<int>(success_probs.size()) != graph.receiver_count())
        throw std::invalid_argument("q-psi secondary weighting needs success probabilities");
    std::vector<double> weights(graph.vertex_count());
    for (int v = 0; v < graph.vertex_count(); ++v) {
        const auto& vert = graph.vertex(v);
        double base = weighted_wants[vert.receiver];
        if (!vert.primary && secondary_mode == SecondaryWeight::QPsi) {
            const double q = success_probs[vert.receiver];
            base = q * q * base; // q * psi = q^2 * (psi/q)
        }
        weights[v] = std::pow(base, norm);
    }
    return weights;
}

Clique finish_two_stage(const IdncGraph& graph, std::vector<int> primary_stage,
                        const std::vector<double>& weights, const CliqueSearchBudget& budget) {
    Clique primary = make_clique(graph, std::move(primary_stage));
    const Bits secondary = secondary_candidates(graph, primary);
    auto extra = max_weight_clique(graph, secondary, weights, budget);
    auto all = primary.vertices;
    all.insert(all.end(), extra.begin(), extra.end());
    return make_clique(graph, std::move(all));
}

void require_primary(const IdncGraph& graph) {
    if (graph.primary_count() == 0)
        throw std::invalid_argument("policy requires a nonempty primary layer");
}

} // namespace

Clique select_random(const IdncGraph& graph, std::mt19937_64& rng) {
    require_primary(graph);
    Bits cand = graph.full_mask();
    std::vector<int> chosen;
    for (int stage = 0; stage < 2; ++stage) {
        for (;;) {
            std::vector<int> options;
            (stage == 0 ? cand & graph.primary_mask() : cand)
                .for_each([&](int v) { options.push_back(v); });
            if (options.empty()) break;
            std::uniform_int_distribution<size_t> pick(0, options.size() - 1);
            const int v = options[pick(rng)];
            chosen.push_back(v);
            cand &= graph.neighbors(v);
        }
    }
    return make_clique(graph, std::move(chosen));
}

Clique select_max_clique(const IdncGraph& graph, const CliqueSearchBudget& budget) {
    require_primary(graph);
    const std::vector<double> unit(graph.vertex_count(), 1.0);
    auto primary = max_weight_clique(graph, graph.primary_mask(), unit, budget);
    return finish_two_stage(graph, std::move(primary), unit, budget);
}

Clique select_mwcs(const IdncGraph& graph, const std::vector<double>& weighted_wants, int norm,
                   SecondaryWeight secondary, const std::vector<double>& success_probs,
                   const CliqueSearchBudget& budget) {
    require_primary(graph);
    for (double w : weighted_wants)
        if (!std::isfinite(w)) throw std::invalid_argument("non-finite weighted Wants entry");
    const auto weights = clique_weights(graph, weighted_wants, norm, secondary, success_probs);
    auto primary = max_weight_clique(graph, graph.primary_mask(), weights, budget);
    return finish_two_stage(graph, std::move(primary), weights, budget);
}

namespace {

// Shared greedy loop of MWVS and the MC heuristic. `value` yields the
// per-vertex base value within the current candidate subgraph.
template <typename ValueFn>
Clique greedy_vertex_search(const IdncGraph& graph, ValueFn value) {
    require_primary(graph);
    Bits cand = graph.full_mask();
    std::vector<int> chosen;
    for (int stage = 0; stage < 2; ++stage) {
        for (;;) {
            const Bits pickable = stage == 0 ? cand & graph.primary_mask() : cand;
            if (pickable.none()) break;
            std::vector<double> base(graph.vertex_count(), 0.0);
            cand.for_each([&](int v) { base[v] = value(v, cand); });
            int best = -1;
            double best_w = -1.0;
            pickable.for_each([&](int v) {
                double weighted_degree = 0.0;
                (cand & graph.neighbors(v)).for_each([&](int u) { weighted_degree += base[u]; });
                const double w = base[v] * weighted_degree;
                if (w > best_w) {
                    best_w = w;
                    best = v; // lexicographic tie-break: first index wins
                }
            });
            chosen.push_back(best);
            cand &= graph.neighbors(best);
        }
    }
    return make_clique(graph, std::move(chosen));
}

} // namespace

Clique select_mwvs(const IdncGraph& graph, const std::vector<double>& weighted_wants, int norm,
                   SecondaryWeight secondary, const std::vector<double>& success_probs) {
    const auto base = clique_weights(graph, weighted_wants, norm, secondary, success_probs);
    return greedy_vertex_search(graph, [&](int v, const Bits&) { return base[v]; });
}

Clique select_mc_heuristic(const IdncGraph& graph) {
    return greedy_vertex_search(graph, [&](int v, const Bits& cand) {
        return static_cast<double>((graph.neighbors(v) & cand & graph.primary_mask()).count());
    });
}

long rnc_completion_delay(const FrameState& state, std::mt19937_64& rng) {
    for (int i = 0; i < state.receiver_count(); ++i)
        if (state.wants_sizes[i] != state.lacks_sizes[i])
            throw std::invalid_argument("perfect RNC baseline is defined for broadcast only");
    long slot = 0;
    std::vector<int> remaining = state.lacks_sizes;
    bool done = std::all_of(remaining.begin(), remaining.end(), [](int r) { return r == 0; });
    while (!done) {
        ++slot;
        done = true;
        for (int i = 0; i < state.receiver_count(); ++i) {
            if (remaining[i] > 0 && bernoulli(rng, state.profiles[i].success_prob))
                --remaining[i];
            if (remaining[i] > 0) done = false;
        }
    }
    return slot;
}

Clique select_clique(PolicyKind policy, const IdncGraph& graph,
                     const std::vector<double>& weighted_wants, std::mt19937_64& rng,
                     SecondaryWeight secondary, const std::vector<double>& success_probs) {
    switch (policy.variant) {
        case PolicyVariant::Random: return select_random(graph, rng);
        case PolicyVariant::MaxClique: return select_max_clique(graph);
        case PolicyVariant::MaxCliqueHeuristic: return select_mc_heuristic(graph);
        case PolicyVariant::MaxWeightClique:
            return select_mwcs(graph, weighted_wants, policy.norm, secondary, success_probs);
        case PolicyVariant::MaxWeightVertexSearch:
            return select_mwvs(graph, weighted_wants, policy.norm, secondary, success_probs);
        case PolicyVariant::PerfectRnc: break;
    }
    throw std::invalid_argument("perfect RNC is not a clique-selection policy");
}

} // namespace idnc
