#pragma once

#include "idnc/bits.hpp"
#include "idnc/model.hpp"

#include <string>
#include <vector>

namespace idnc {

struct Vertex {
    int receiver = 0;
    int packet = 0;
    bool primary = false;

    bool operator==(const Vertex& other) const = default;
};

// Two-layer coding-opportunity graph over the lacking (receiver, packet)
// pairs of receivers that still want something. Immutable once built.
class IdncGraph {
  public:
    IdncGraph() = default;

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    const Vertex& vertex(int v) const { return verts_[v]; }
    const std::vector<Vertex>& vertices() const { return verts_; }

    bool adjacent(int u, int v) const { return u != v && adj_[u].test(v); }
    const Bits& neighbors(int v) const { return adj_[v]; }

    const Bits& primary_mask() const { return primary_; }
    int primary_count() const { return primary_.count(); }

    int receiver_count() const { return receivers_; }
    int packet_count() const { return packets_; }

    // -1 when the (receiver, packet) pair induces no vertex.
    int find_vertex(int receiver, int packet) const;

    Bits full_mask() const;

  private:
    friend IdncGraph build_graph(const FrameState& state);
    friend IdncGraph induced_subgraph(const IdncGraph& graph, const std::vector<int>& keep);

    std::vector<Vertex> verts_;
    std::vector<Bits> adj_;
    Bits primary_;
    int receivers_ = 0;
    int packets_ = 0;
};

// A mutually adjacent vertex set plus the derived transmission description.
struct Clique {
    std::vector<int> vertices;          // sorted graph vertex indices
    std::vector<int> targets_primary;   // receivers served a wanted packet
    std::vector<int> targets_secondary; // receivers served an unwanted packet
    std::vector<int> packets;           // XOR composition, sorted unique

    bool empty() const { return vertices.empty(); }
};

IdncGraph build_graph(const FrameState& state);

// Validates pairwise adjacency and the one-vertex-per-receiver rule, then
// fills in the targeted sets and packet composition.
Clique make_clique(const IdncGraph& graph, std::vector<int> vertex_ids);

std::vector<int> coded_packet(const IdncGraph& graph, const std::vector<int>& vertex_ids);

// Secondary vertices adjacent to every clique vertex, excluding receivers
// already present in the clique.
Bits secondary_candidates(const IdncGraph& graph, const Clique& clique);
IdncGraph secondary_subgraph(const IdncGraph& graph, const Clique& clique);

IdncGraph induced_subgraph(const IdncGraph& graph, const std::vector<int>& keep);

// Bron-Kerbosch with pivoting; SSP-oracle scale only.
std::vector<Clique> enumerate_maximal_cliques(const IdncGraph& graph, int max_vertices = 24);

// Per-receiver targets implied by a clique (each targeted receiver decodes
// exactly one packet).
std::vector<ReceptionTarget> clique_targets(const IdncGraph& graph, const Clique& clique);

// True when each targeted receiver has exactly one clique packet outside its
// Has set, i.e. the XOR is instantly decodable everywhere it is aimed.
bool instantly_decodable(const FrameState& state, const Clique& clique,
                         const IdncGraph& graph);

// One line per vertex: "r<i>:p<j>:<layer> -> <neighbors>".
std::string dump_graph(const IdncGraph& graph);

} // namespace idnc
