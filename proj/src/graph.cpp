#include "idnc/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace idnc {

int IdncGraph::find_vertex(int receiver, int packet) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (verts_[v].receiver == receiver && verts_[v].packet == packet) return v;
    return -1;
}

Bits IdncGraph::full_mask() const {
    Bits mask(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) mask.set(v);
    return mask;
}

IdncGraph build_graph(const FrameState& state) {
    const int m = state.receiver_count();
    const int n = state.packet_count();

    IdncGraph graph;
    graph.receivers_ = m;
    graph.packets_ = n;

    // Receivers with empty Wants sets induce no vertices at all.
    for (int i = 0; i < m; ++i) {
        if (state.wants_sizes[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            const auto e = state.sfm.at(i, j);
            if (e == 0) continue;
            graph.verts_.push_back({i, j, e == 1});
        }
    }

    const int count = graph.vertex_count();
    graph.primary_ = Bits(count);
    graph.adj_.assign(count, Bits(count));

    std::vector<Bits> has(m, Bits(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (state.sfm.at(i, j) == 0) has[i].set(j);

    for (int u = 0; u < count; ++u) {
        if (graph.verts_[u].primary) graph.primary_.set(u);
        for (int v = u + 1; v < count; ++v) {
            const auto& a = graph.verts_[u];
            const auto& b = graph.verts_[v];
            if (a.receiver == b.receiver) continue;
            const bool c1 = a.packet == b.packet;
            const bool c2 = has[b.receiver].test(a.packet) && has[a.receiver].test(b.packet);
            if (c1 || c2) {
                graph.adj_[u].set(v);
                graph.adj_[v].set(u);
            }
        }
    }
    return graph;
}

Clique make_clique(const IdncGraph& graph, std::vector<int> vertex_ids) {
    std::sort(vertex_ids.begin(), vertex_ids.end());
    Clique clique;
    for (size_t a = 0; a < vertex_ids.size(); ++a) {
        const int u = vertex_ids[a];
        if (u < 0 || u >= graph.vertex_count()) throw std::invalid_argument("vertex out of range");
        for (size_t b = a + 1; b < vertex_ids.size(); ++b) {
            const int v = vertex_ids[b];
            if (u == v) throw std::invalid_argument("duplicate clique vertex");
            if (graph.vertex(u).receiver == graph.vertex(v).receiver)
                throw std::invalid_argument("clique holds two vertices of one receiver");
            if (!graph.adjacent(u, v)) throw std::invalid_argument("clique vertices not adjacent");
        }
    }
    clique.vertices = std::move(vertex_ids);
    for (int v : clique.vertices) {
        const auto& vert = graph.vertex(v);
        (vert.primary ? clique.targets_primary : clique.targets_secondary).push_back(vert.receiver);
        clique.packets.push_back(vert.packet);
    }
    std::sort(clique.targets_primary.begin(), clique.targets_primary.end());
    std::sort(clique.targets_secondary.begin(), clique.targets_secondary.end());
    std::sort(clique.packets.begin(), clique.packets.end());
    clique.packets.erase(std::unique(clique.packets.begin(), clique.packets.end()),
                         clique.packets.end());
    return clique;
}

std::vector<int> coded_packet(const IdncGraph& graph, const std::vector<int>& vertex_ids) {
    std::vector<int> packets;
    for (int v : vertex_ids) packets.push_back(graph.vertex(v).packet);
    std::sort(packets.begin(), packets.end());
    packets.erase(std::unique(packets.begin(), packets.end()), packets.end());
    return packets;
}

Bits secondary_candidates(const IdncGraph& graph, const Clique& clique) {
    Bits cand(graph.vertex_count());
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (!graph.vertex(v).primary) cand.set(v);
    for (int u : clique.vertices) {
        cand &= graph.neighbors(u);
        for (int v = 0; v < graph.vertex_count(); ++v)
            if (graph.vertex(v).receiver == graph.vertex(u).receiver) cand.reset(v);
    }
    return cand;
}

IdncGraph induced_subgraph(const IdncGraph& graph, const std::vector<int>& keep) {
    IdncGraph sub;
    sub.receivers_ = graph.receiver_count();
    sub.packets_ = graph.packet_count();
    for (int v : keep) sub.verts_.push_back(graph.vertex(v));
    const int count = sub.vertex_count();
    sub.primary_ = Bits(count);
    sub.adj_.assign(count, Bits(count));
    for (int a = 0; a < count; ++a) {
        if (sub.verts_[a].primary) sub.primary_.set(a);
        for (int b = a + 1; b < count; ++b) {
            if (graph.adjacent(keep[a], keep[b])) {
                sub.adj_[a].set(b);
                sub.adj_[b].set(a);
            }
        }
    }
    return sub;
}

IdncGraph secondary_subgraph(const IdncGraph& graph, const Clique& clique) {
    return induced_subgraph(graph, secondary_candidates(graph, clique).to_vector());
}

namespace {

void bron_kerbosch(const IdncGraph& graph, Bits r, Bits p, Bits x,
                   std::vector<std::vector<int>>& out) {
    if (p.none() && x.none()) {
        out.push_back(r.to_vector());
        return;
    }
    // Pivot on the vertex of P union X covering the most of P.
    int pivot = -1, best = -1;
    Bits pux = p;
    pux |= x;
    pux.for_each([&](int v) {
        const int covered = graph.neighbors(v).intersect_count(p);
        if (covered > best) {
            best = covered;
            pivot = v;
        }
    });
    Bits ext = p;
    if (pivot >= 0) {
        Bits masked = ext;
        graph.neighbors(pivot).for_each([&](int v) { masked.reset(v); });
        ext = masked;
    }
    ext.for_each([&](int v) {
        Bits r2 = r;
        r2.set(v);
        bron_kerbosch(graph, r2, p & graph.neighbors(v), x & graph.neighbors(v), out);
        p.reset(v);
        x.set(v);
    });
}

} // namespace

std::vector<Clique> enumerate_maximal_cliques(const IdncGraph& graph, int max_vertices) {
    if (graph.vertex_count() > max_vertices)
        throw std::length_error("graph exceeds the maximal-clique enumeration bound");
    std::vector<std::vector<int>> raw;
    if (graph.vertex_count() > 0)
        bron_kerbosch(graph, Bits(graph.vertex_count()), graph.full_mask(),
                      Bits(graph.vertex_count()), raw);
    std::sort(raw.begin(), raw.end());
    std::vector<Clique> cliques;
    cliques.reserve(raw.size());
    for (auto& ids : raw) cliques.push_back(make_clique(graph, std::move(ids)));
    return cliques;
}

std::vector<ReceptionTarget> clique_targets(const IdncGraph& graph, const Clique& clique) {
    std::vector<ReceptionTarget> targets;
    targets.reserve(clique.vertices.size());
    for (int v : clique.vertices)
        targets.push_back({graph.vertex(v).receiver, graph.vertex(v).packet});
    return targets;
}

bool instantly_decodable(const FrameState& state, const Clique& clique, const IdncGraph& graph) {
    for (int v : clique.vertices) {
        const int receiver = graph.vertex(v).receiver;
        int unknown = 0;
        for (int packet : clique.packets)
            if (state.sfm.at(receiver, packet) != 0) ++unknown;
        if (unknown != 1) return false;
        if (state.sfm.at(receiver, graph.vertex(v).packet) == 0) return false;
    }
    return true;
}

std::string dump_graph(const IdncGraph& graph) {
    std::ostringstream out;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        const auto& vert = graph.vertex(v);
        out << 'r' << vert.receiver << ":p" << vert.packet << ':'
            << (vert.primary ? "primary" : "secondary") << " ->";
        graph.neighbors(v).for_each([&](int u) {
            const auto& other = graph.vertex(u);
            out << " r" << other.receiver << ":p" << other.packet;
        });
        out << '\n';
    }
    return out.str();
}

} // namespace idnc
