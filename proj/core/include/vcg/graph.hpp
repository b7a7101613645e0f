#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcg/bitset.hpp"

namespace vcg {

// Side labels for bipartite instances. MakerSide is the part the bipartite
// Breaker strategy attacks (W_M); BreakerSide is the part it colors on (W_B).
enum class Side : uint8_t { MakerSide = 0, BreakerSide = 1 };

// Immutable simple graph. Vertices are 0..n-1, adjacency is one bit row per
// vertex. Safe to share read-only across threads.
class Graph {
public:
    Graph() = default;

    int n() const { return n_; }
    long long edge_count() const { return edge_count_; }
    const Bitset& adj(int v) const { return adj_[v]; }
    int degree(int v) const { return int(adj_[v].count()); }
    bool has_edge(int u, int v) const { return adj_[u].test(std::size_t(v)); }

    bool is_bipartite_labeled() const { return part_.has_value(); }
    Side side(int v) const { return (*part_)[std::size_t(v)]; }
    Bitset side_set(Side s) const;

    // Builds from an edge list; validates range, self-loops, duplicates,
    // and (when parts are given) that every edge crosses sides.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::optional<std::vector<Side>> part = std::nullopt);

private:
    int n_ = 0;
    long long edge_count_ = 0;
    std::vector<Bitset> adj_;
    std::optional<std::vector<Side>> part_;

    friend class GraphBuilder;
};

// Mutable construction helper; add_edge is idempotent-checked.
class GraphBuilder {
public:
    explicit GraphBuilder(int n, std::optional<std::vector<Side>> part = std::nullopt);
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return g_.adj_[u].test(std::size_t(v)); }
    Graph build() &&;

private:
    Graph g_;
};

enum class Family {
    gnp,
    bipartite_gnp,
    complete,
    empty,
    path,
    tree_from_pruefer,
    knn_minus_matching,
    from_file,
};

struct InstanceSpec {
    Family family = Family::gnp;
    int n = 0;                  // vertex count, or per-side count for bipartite families
    double p = 0.0;             // edge probability where applicable
    uint64_t seed = 0;
    std::vector<int> pruefer;   // explicit Pruefer sequence; empty = sample from seed
    std::string path;           // for from_file
};

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

// G(n,p): each unordered pair is an edge independently with probability p.
// Expected O(n + m) via geometric skipping.
Graph sample_gnp(int n, double p, uint64_t seed);

// B(n,p): two sides of n vertices (0..n-1 Maker side, n..2n-1 Breaker side),
// each of the n^2 cross pairs an edge independently with probability p.
Graph sample_bipartite_gnp(int n, double p, uint64_t seed);

Graph make_named(const InstanceSpec& spec);

// N(S): neighbors of s outside s.
Bitset neighbors_of_set(const Graph& g, const Bitset& s);

// Complement of s and N(s). With a side restriction (bipartite graphs only)
// the result is intersected with that side.
Bitset non_neighbors_of_set(const Graph& g, const Bitset& s,
                            std::optional<Side> restrict_side = std::nullopt);

long long induced_edge_count(const Graph& g, const Bitset& s);

enum class IndependentSetMode { Greedy, Exact };

constexpr int kDefaultExactMisLimit = 40;

// Independent subset of t. Exact mode is branch-and-bound and requires
// |t| <= exact_limit; greedy is min-degree with lowest-index ties.
Bitset independent_set(const Graph& g, const Bitset& t, IndependentSetMode mode,
                       int exact_limit = kDefaultExactMisLimit);

// Edge-list text format:
//   n <count> [bipartite <nLeft>]
//   u v        (one edge per line, 0-indexed)
std::string encode_graph(const Graph& g);
Graph decode_graph(const std::string& text);

}  // namespace vcg
