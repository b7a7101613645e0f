#include "vcg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcg/errors.hpp"
#include "vcg/rng.hpp"

namespace vcg {

Bitset Graph::side_set(Side s) const {
    if (!part_) throw ParameterError("graph has no bipartition labels");
    Bitset r{std::size_t(n_)};
    for (int v = 0; v < n_; ++v)
        if ((*part_)[std::size_t(v)] == s) r.set(std::size_t(v));
    return r;
}

GraphBuilder::GraphBuilder(int n, std::optional<std::vector<Side>> part) {
    if (n < 1) throw ParameterError("vertex count must be >= 1");
    if (part && int(part->size()) != n)
        throw ParameterError("part label vector size mismatch");
    g_.n_ = n;
    g_.adj_.assign(std::size_t(n), Bitset(std::size_t(n)));
    g_.part_ = std::move(part);
}

void GraphBuilder::add_edge(int u, int v) {
    if (u < 0 || u >= g_.n_ || v < 0 || v >= g_.n_)
        throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop");
    if (g_.adj_[u].test(std::size_t(v))) throw ParameterError("duplicate edge");
    if (g_.part_ && (*g_.part_)[std::size_t(u)] == (*g_.part_)[std::size_t(v)])
        throw ParameterError("edge within one side of a bipartition");
    g_.adj_[u].set(std::size_t(v));
    g_.adj_[v].set(std::size_t(u));
    ++g_.edge_count_;
}

Graph GraphBuilder::build() && { return std::move(g_); }

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        std::optional<std::vector<Side>> part) {
    GraphBuilder b(n, std::move(part));
    for (auto [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

Family family_from_string(const std::string& name) {
    if (name == "gnp") return Family::gnp;
    if (name == "bipartite-gnp" || name == "bipartite_gnp") return Family::bipartite_gnp;
    if (name == "complete") return Family::complete;
    if (name == "empty") return Family::empty;
    if (name == "path") return Family::path;
    if (name == "tree" || name == "tree_from_pruefer") return Family::tree_from_pruefer;
    if (name == "knn-minus-matching" || name == "knn_minus_matching")
        return Family::knn_minus_matching;
    if (name == "from-file" || name == "from_file") return Family::from_file;
    throw ParameterError("unknown graph family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::gnp: return "gnp";
        case Family::bipartite_gnp: return "bipartite-gnp";
        case Family::complete: return "complete";
        case Family::empty: return "empty";
        case Family::path: return "path";
        case Family::tree_from_pruefer: return "tree";
        case Family::knn_minus_matching: return "knn-minus-matching";
        case Family::from_file: return "from-file";
    }
    return "?";
}

static void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must be in [0,1]");
}

Graph sample_gnp(int n, double p, uint64_t seed) {
    if (n < 1) throw ParameterError("n must be >= 1");
    check_probability(p);
    GraphBuilder b(n);
    if (p == 0.0) return std::move(b).build();
    Rng rng(seed);
    const uint64_t total = uint64_t(n) * uint64_t(n - 1) / 2;
    if (p == 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
        return std::move(b).build();
    }
    // Geometric skipping over the linearized pair index: the gap to the next
    // edge is geometric with success probability p.
    const double log1mp = std::log1p(-p);
    uint64_t idx = 0;
    while (true) {
        double u = rng.unit();
        uint64_t skip = uint64_t(std::floor(std::log1p(-u) / log1mp));
        if (skip > total || idx > total - skip) break;
        idx += skip;
        if (idx >= total) break;
        // invert idx -> (row u, col v) with u < v
        uint64_t rem = idx;
        int row = 0;
        uint64_t row_len = uint64_t(n - 1);
        while (rem >= row_len) {
            rem -= row_len;
            --row_len;
            ++row;
        }
        b.add_edge(row, row + 1 + int(rem));
        ++idx;
    }
    return std::move(b).build();
}

Graph sample_bipartite_gnp(int n, double p, uint64_t seed) {
    if (n < 1) throw ParameterError("n must be >= 1");
    check_probability(p);
    std::vector<Side> part(std::size_t(2 * n), Side::MakerSide);
    for (int v = n; v < 2 * n; ++v) part[std::size_t(v)] = Side::BreakerSide;
    GraphBuilder b(2 * n, std::move(part));
    if (p == 0.0) return std::move(b).build();
    Rng rng(seed);
    const uint64_t total = uint64_t(n) * uint64_t(n);
    if (p == 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) b.add_edge(u, n + v);
        return std::move(b).build();
    }
    const double log1mp = std::log1p(-p);
    uint64_t idx = 0;
    while (true) {
        double u = rng.unit();
        uint64_t skip = uint64_t(std::floor(std::log1p(-u) / log1mp));
        if (skip > total || idx > total - skip) break;
        idx += skip;
        if (idx >= total) break;
        b.add_edge(int(idx / uint64_t(n)), n + int(idx % uint64_t(n)));
        ++idx;
    }
    return std::move(b).build();
}

static Graph tree_from_pruefer(int n, std::vector<int> seq, uint64_t seed) {
    if (n < 1) throw ParameterError("n must be >= 1");
    if (seq.empty() && n > 2) {
        Rng rng(seed);
        seq.resize(std::size_t(n - 2));
        for (auto& x : seq) x = int(rng.below(uint64_t(n)));
    }
    if (int(seq.size()) != std::max(0, n - 2))
        throw ParameterError("Pruefer sequence must have length n-2");
    for (int x : seq)
        if (x < 0 || x >= n) throw ParameterError("Pruefer symbol out of range");
    GraphBuilder b(n);
    if (n == 2) {
        b.add_edge(0, 1);
        return std::move(b).build();
    }
    if (n < 2) return std::move(b).build();
    std::vector<int> deg(std::size_t(n), 1);
    for (int x : seq) ++deg[std::size_t(x)];
    // standard decode: repeatedly join the smallest leaf to the next symbol
    std::vector<bool> used(std::size_t(n), false);
    int ptr = 0;
    while (deg[std::size_t(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        b.add_edge(leaf, x);
        if (--deg[std::size_t(x)] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (deg[std::size_t(ptr)] != 1) ++ptr;
            leaf = ptr;
        }
    }
    // the last two unmatched vertices: leaf and n-1
    b.add_edge(leaf, n - 1);
    return std::move(b).build();
}

Graph make_named(const InstanceSpec& spec) {
    switch (spec.family) {
        case Family::gnp:
            return sample_gnp(spec.n, spec.p, spec.seed);
        case Family::bipartite_gnp:
            return sample_bipartite_gnp(spec.n, spec.p, spec.seed);
        case Family::complete: {
            GraphBuilder b(spec.n);
            for (int u = 0; u < spec.n; ++u)
                for (int v = u + 1; v < spec.n; ++v) b.add_edge(u, v);
            return std::move(b).build();
        }
        case Family::empty:
            return std::move(GraphBuilder(spec.n)).build();
        case Family::path: {
            GraphBuilder b(spec.n);
            for (int v = 0; v + 1 < spec.n; ++v) b.add_edge(v, v + 1);
            return std::move(b).build();
        }
        case Family::tree_from_pruefer:
            return tree_from_pruefer(spec.n, spec.pruefer, spec.seed);
        case Family::knn_minus_matching: {
            int n = spec.n;
            if (n < 1) throw ParameterError("n must be >= 1");
            std::vector<Side> part(std::size_t(2 * n), Side::MakerSide);
            for (int v = n; v < 2 * n; ++v) part[std::size_t(v)] = Side::BreakerSide;
            GraphBuilder b(2 * n, std::move(part));
            // vertex i on the left is matched with vertex n+i; those edges
            // are the removed matching
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v) b.add_edge(u, n + v);
            return std::move(b).build();
        }
        case Family::from_file:
            throw ParameterError("from_file requires decode_graph on file contents");
    }
    throw ParameterError("unknown family");
}

Bitset neighbors_of_set(const Graph& g, const Bitset& s) {
    Bitset r(std::size_t(g.n()));
    s.for_each([&](std::size_t v) { r |= g.adj(int(v)); });
    r -= s;
    return r;
}

Bitset non_neighbors_of_set(const Graph& g, const Bitset& s,
                            std::optional<Side> restrict_side) {
    Bitset r = s | neighbors_of_set(g, s);
    r = r.complement();
    if (restrict_side) {
        if (!g.is_bipartite_labeled())
            throw ParameterError("side restriction on a graph without bipartition labels");
        r &= g.side_set(*restrict_side);
    }
    return r;
}

long long induced_edge_count(const Graph& g, const Bitset& s) {
    long long twice = 0;
    s.for_each([&](std::size_t v) {
        twice += (long long)g.adj(int(v)).intersection_count(s);
    });
    return twice / 2;
}

static Bitset independent_set_greedy(const Graph& g, const Bitset& t) {
    Bitset remaining = t;
    Bitset result(std::size_t(g.n()));
    while (remaining.any()) {
        int best = -1;
        std::size_t best_deg = 0;
        remaining.for_each([&](std::size_t v) {
            std::size_t d = g.adj(int(v)).intersection_count(remaining);
            if (best < 0 || d < best_deg) {
                best = int(v);
                best_deg = d;
            }
        });
        result.set(std::size_t(best));
        remaining -= g.adj(best);
        remaining.reset(std::size_t(best));
    }
    return result;
}

namespace {

// branch-and-bound maximum independent set over <= 64 local vertices
struct MisSolver {
    std::vector<uint64_t> adj;
    uint64_t best_mask = 0;
    int best_size = 0;

    void search(uint64_t chosen, int chosen_size, uint64_t cand) {
        int cand_size = std::popcount(cand);
        if (chosen_size + cand_size <= best_size) return;
        if (!cand) {
            best_size = chosen_size;
            best_mask = chosen;
            return;
        }
        int v = std::countr_zero(cand);
        // include v
        search(chosen | (uint64_t{1} << v), chosen_size + 1,
               cand & ~(adj[std::size_t(v)] | (uint64_t{1} << v)));
        // exclude v
        search(chosen, chosen_size, cand & ~(uint64_t{1} << v));
    }
};

}  // namespace

static Bitset independent_set_exact(const Graph& g, const Bitset& t, int limit) {
    std::vector<int> verts = t.to_vector();
    if (int(verts.size()) > limit)
        throw CapacityError("exact independent set limited to " + std::to_string(limit) +
                            " vertices, got " + std::to_string(verts.size()));
    int m = int(verts.size());
    MisSolver solver;
    solver.adj.assign(std::size_t(m), 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && g.has_edge(verts[std::size_t(i)], verts[std::size_t(j)]))
                solver.adj[std::size_t(i)] |= uint64_t{1} << j;
    solver.search(0, 0, m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1);
    Bitset result(std::size_t(g.n()));
    for (int i = 0; i < m; ++i)
        if (solver.best_mask & (uint64_t{1} << i)) result.set(std::size_t(verts[std::size_t(i)]));
    return result;
}

Bitset independent_set(const Graph& g, const Bitset& t, IndependentSetMode mode,
                       int exact_limit) {
    if (mode == IndependentSetMode::Exact) return independent_set_exact(g, t, exact_limit);
    return independent_set_greedy(g, t);
}

std::string encode_graph(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.n();
    if (g.is_bipartite_labeled()) {
        // our bipartite instances always label a contiguous prefix as the
        // Maker side; the format records that prefix length
        int n_left = 0;
        while (n_left < g.n() && g.side(n_left) == Side::MakerSide) ++n_left;
        for (int v = n_left; v < g.n(); ++v)
            if (g.side(v) == Side::MakerSide)
                throw ParameterError("cannot encode non-contiguous bipartition");
        out << " bipartite " << n_left;
    }
    out << "\n";
    for (int u = 0; u < g.n(); ++u) {
        g.adj(u).for_each([&](std::size_t v) {
            if (int(v) > u) out << u << " " << v << "\n";
        });
    }
    return out.str();
}

Graph decode_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty input", 1);
    ++line_no;
    std::istringstream header(line);
    std::string tag;
    int n = 0;
    if (!(header >> tag >> n) || tag != "n" || n < 1)
        throw ParseError("expected header 'n <count> [bipartite <nLeft>]'", line_no);
    std::optional<std::vector<Side>> part;
    std::string bip;
    if (header >> bip) {
        int n_left = -1;
        if (bip != "bipartite" || !(header >> n_left) || n_left < 0 || n_left > n)
            throw ParseError("malformed bipartite header", line_no);
        std::vector<Side> labels(std::size_t(n), Side::BreakerSide);
        for (int v = 0; v < n_left; ++v) labels[std::size_t(v)] = Side::MakerSide;
        part = std::move(labels);
    }
    GraphBuilder b(n, std::move(part));
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) continue;  // blank line
        if (!(ls >> v)) throw ParseError("expected 'u v'", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens after edge", line_no);
        try {
            b.add_edge(u, v);
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return std::move(b).build();
}

}  // namespace vcg
