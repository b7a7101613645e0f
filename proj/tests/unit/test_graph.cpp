#include <doctest.h>

#include <bit>
#include <cmath>
#include <initializer_list>

#include "vcg/errors.hpp"
#include "vcg/graph.hpp"
#include "vcg/rng.hpp"

using namespace vcg;

namespace {

Graph path_graph(int n) {
    InstanceSpec s;
    s.family = Family::path;
    s.n = n;
    return make_named(s);
}

Graph complete_graph(int n) {
    InstanceSpec s;
    s.family = Family::complete;
    s.n = n;
    return make_named(s);
}

Bitset make_set(int n, std::initializer_list<int> verts) {
    Bitset b{std::size_t(n)};
    for (int v : verts) b.set(std::size_t(v));
    return b;
}

// independent reference for N(S) / non-neighbors: vertex-by-vertex scan
Bitset naive_neighbors(const Graph& g, const Bitset& s) {
    Bitset r(std::size_t(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        if (s.test(std::size_t(v))) continue;
        for (int u = 0; u < g.n(); ++u)
            if (s.test(std::size_t(u)) && g.has_edge(u, v)) r.set(std::size_t(v));
    }
    return r;
}

bool is_independent(const Graph& g, const Bitset& s) {
    auto verts = s.to_vector();
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.has_edge(verts[i], verts[j])) return false;
    return true;
}

// exhaustive maximum independent set size by subset enumeration
int mis_size_by_enumeration(const Graph& g, const Bitset& t) {
    auto verts = t.to_vector();
    int m = int(verts.size());
    REQUIRE(m <= 20);
    int best = 0;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) &&
                    g.has_edge(verts[std::size_t(i)], verts[std::size_t(j)]))
                    ok = false;
        if (ok) best = std::max(best, int(std::popcount(mask)));
    }
    return best;
}

bool graphs_equal(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    if (a.is_bipartite_labeled() != b.is_bipartite_labeled()) return false;
    for (int v = 0; v < a.n(); ++v) {
        if (!(a.adj(v) == b.adj(v))) return false;
        if (a.is_bipartite_labeled() && a.side(v) != b.side(v)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sample_gnp extremes") {
    Graph g0 = sample_gnp(5, 0.0, 1);
    CHECK(g0.n() == 5);
    CHECK(g0.edge_count() == 0);

    Graph g1 = sample_gnp(5, 1.0, 1);
    CHECK(g1.edge_count() == 10);

    CHECK_THROWS_AS(sample_gnp(0, 0.5, 1), ParameterError);
    CHECK_THROWS_AS(sample_gnp(5, 1.5, 1), ParameterError);
    CHECK_THROWS_AS(sample_gnp(5, -0.1, 1), ParameterError);
}

TEST_CASE("sample_gnp edge count near binomial mean") {
    // mean C(1000,2)*0.5 = 249750, sigma = sqrt(499500*0.25) ~= 353.4
    Graph g = sample_gnp(1000, 0.5, 7);
    double mu = 249750.0, sigma = 353.4;
    CHECK(std::abs(double(g.edge_count()) - mu) <= 4.0 * sigma);
}

TEST_CASE("sample_gnp adjacency invariants") {
    Graph g = sample_gnp(50, 0.3, 42);
    long long degree_sum = 0;
    for (int v = 0; v < g.n(); ++v) {
        CHECK_FALSE(g.adj(v).test(std::size_t(v)));
        degree_sum += g.degree(v);
        g.adj(v).for_each([&](std::size_t u) { CHECK(g.adj(int(u)).test(std::size_t(v))); });
    }
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("sample_gnp reproducible and seed-sensitive") {
    Graph a = sample_gnp(100, 0.2, 9);
    Graph b = sample_gnp(100, 0.2, 9);
    Graph c = sample_gnp(100, 0.2, 10);
    CHECK(graphs_equal(a, b));
    CHECK_FALSE(graphs_equal(a, c));
}

TEST_CASE("sample_gnp mean degree across seeds") {
    // across 50 seeds at n=500, p=0.2, mean degree within 5% of (n-1)p
    double total = 0;
    int n = 500;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Graph g = sample_gnp(n, 0.2, seed);
        total += 2.0 * double(g.edge_count()) / double(n);
    }
    double mean = total / 50.0;
    double expect = double(n - 1) * 0.2;
    CHECK(std::abs(mean - expect) <= 0.05 * expect);
}

TEST_CASE("sample_bipartite_gnp") {
    Graph k33 = sample_bipartite_gnp(3, 1.0, 1);
    CHECK(k33.n() == 6);
    CHECK(k33.edge_count() == 9);
    CHECK(k33.is_bipartite_labeled());
    for (int v = 0; v < 3; ++v) CHECK(k33.side(v) == Side::MakerSide);
    for (int v = 3; v < 6; ++v) CHECK(k33.side(v) == Side::BreakerSide);

    Graph e = sample_bipartite_gnp(3, 0.0, 1);
    CHECK(e.edge_count() == 0);

    // mean n^2 p = 12000, sigma = sqrt(40000 * 0.3 * 0.7) ~= 91.7
    Graph g = sample_bipartite_gnp(200, 0.3, 9);
    CHECK(std::abs(double(g.edge_count()) - 12000.0) <= 4.0 * 91.7);
    // no same-side edges by construction
    for (int v = 0; v < g.n(); ++v)
        g.adj(v).for_each([&](std::size_t u) { CHECK(g.side(v) != g.side(int(u))); });
}

TEST_CASE("make_named families") {
    CHECK(complete_graph(4).edge_count() == 6);

    InstanceSpec knn;
    knn.family = Family::knn_minus_matching;
    knn.n = 3;
    Graph g = make_named(knn);
    CHECK(g.n() == 6);
    CHECK(g.edge_count() == 6);
    for (int v = 0; v < 3; ++v) CHECK_FALSE(g.has_edge(v, v + 3));

    Graph p4 = path_graph(4);
    CHECK(p4.edge_count() == 3);
    CHECK(p4.degree(0) == 1);
    CHECK(p4.degree(3) == 1);
    CHECK(p4.degree(1) == 2);
}

TEST_CASE("trees from Pruefer sequences") {
    InstanceSpec t;
    t.family = Family::tree_from_pruefer;
    t.n = 6;
    t.pruefer = {3, 3, 3, 4};
    Graph g = make_named(t);
    CHECK(g.edge_count() == 5);
    CHECK(g.degree(3) == 3 + 1);  // appears 3 times in the sequence

    // sampled tree: n-1 edges and connected
    InstanceSpec r;
    r.family = Family::tree_from_pruefer;
    r.n = 30;
    r.seed = 5;
    Graph tree = make_named(r);
    CHECK(tree.edge_count() == 29);
    Bitset reached = make_set(30, {0});
    for (int round = 0; round < 30; ++round) reached |= neighbors_of_set(tree, reached) | reached;
    CHECK(reached.count() == 30);

    InstanceSpec bad = t;
    bad.pruefer = {3, 3, 9, 4};
    CHECK_THROWS_AS(make_named(bad), ParameterError);
    bad.pruefer = {3, 3};
    CHECK_THROWS_AS(make_named(bad), ParameterError);
}

TEST_CASE("neighbors_of_set") {
    Graph p4 = path_graph(4);
    CHECK(neighbors_of_set(p4, make_set(4, {1})) == make_set(4, {0, 2}));
    CHECK(neighbors_of_set(p4, make_set(4, {})) == make_set(4, {}));

    Graph g = sample_gnp(20, 0.4, 11);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Bitset s(20);
        for (int v = 0; v < 20; ++v)
            if (rng.bernoulli(0.3)) s.set(std::size_t(v));
        CHECK(neighbors_of_set(g, s) == naive_neighbors(g, s));
    }
}

TEST_CASE("non_neighbors_of_set") {
    Graph p4 = path_graph(4);
    CHECK(non_neighbors_of_set(p4, make_set(4, {1})) == make_set(4, {3}));
    Graph k4 = complete_graph(4);
    CHECK(non_neighbors_of_set(k4, make_set(4, {0})) == make_set(4, {}));

    CHECK_THROWS_AS(non_neighbors_of_set(k4, make_set(4, {0}), Side::MakerSide),
                    ParameterError);

    Graph g = sample_gnp(20, 0.3, 13);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Bitset s(20);
        for (int v = 0; v < 20; ++v)
            if (rng.bernoulli(0.2)) s.set(std::size_t(v));
        Bitset expect = (s | naive_neighbors(g, s)).complement();
        CHECK(non_neighbors_of_set(g, s) == expect);
        // partition property: s, N(s), non-neighbors are disjoint and cover [n]
        Bitset nb = neighbors_of_set(g, s);
        Bitset nn = non_neighbors_of_set(g, s);
        CHECK_FALSE(s.intersects(nb));
        CHECK_FALSE(s.intersects(nn));
        CHECK_FALSE(nb.intersects(nn));
        CHECK((s | nb | nn).count() == 20);
    }
}

TEST_CASE("non_neighbors_of_set with side restriction") {
    Graph g = sample_bipartite_gnp(10, 0.3, 21);
    Bitset s(std::size_t(g.n()));
    s.set(10);  // one Breaker-side vertex
    Bitset nn = non_neighbors_of_set(g, s, Side::MakerSide);
    for (int v = 0; v < 10; ++v)
        CHECK(nn.test(std::size_t(v)) == !g.has_edge(v, 10));
    for (int v = 10; v < 20; ++v) CHECK_FALSE(nn.test(std::size_t(v)));
}

TEST_CASE("induced_edge_count") {
    Graph k4 = complete_graph(4);
    CHECK(induced_edge_count(k4, Bitset::all(4)) == 6);
    InstanceSpec e;
    e.family = Family::empty;
    e.n = 5;
    CHECK(induced_edge_count(make_named(e), make_set(5, {0, 2, 4})) == 0);
    CHECK(induced_edge_count(path_graph(4), make_set(4, {1, 2})) == 1);
}

TEST_CASE("independent_set") {
    Graph k4 = complete_graph(4);
    CHECK(independent_set(k4, Bitset::all(4), IndependentSetMode::Exact).count() == 1);

    InstanceSpec e;
    e.family = Family::empty;
    e.n = 6;
    Graph empty = make_named(e);
    CHECK(independent_set(empty, Bitset::all(6), IndependentSetMode::Exact) ==
          Bitset::all(6));
    CHECK(independent_set(empty, Bitset::all(6), IndependentSetMode::Greedy) ==
          Bitset::all(6));

    // C5: independence number 2
    Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(independent_set(c5, Bitset::all(5), IndependentSetMode::Exact).count() == 2);

    Graph g = sample_gnp(18, 0.3, 99);
    Bitset exact = independent_set(g, Bitset::all(18), IndependentSetMode::Exact);
    CHECK(is_independent(g, exact));
    CHECK(int(exact.count()) == mis_size_by_enumeration(g, Bitset::all(18)));

    Bitset greedy = independent_set(g, Bitset::all(18), IndependentSetMode::Greedy);
    CHECK(is_independent(g, greedy));
    CHECK(greedy.count() <= exact.count());

    CHECK_THROWS_AS(
        independent_set(sample_gnp(50, 0.5, 1), Bitset::all(50), IndependentSetMode::Exact),
        CapacityError);
}

TEST_CASE("independent_set exact >= greedy on random subsets") {
    Graph g = sample_gnp(30, 0.25, 77);
    Rng rng(8);
    for (int trial = 0; trial < 15; ++trial) {
        Bitset t(30);
        for (int v = 0; v < 30; ++v)
            if (rng.bernoulli(0.5)) t.set(std::size_t(v));
        Bitset exact = independent_set(g, t, IndependentSetMode::Exact);
        Bitset greedy = independent_set(g, t, IndependentSetMode::Greedy);
        CHECK(is_independent(g, exact));
        CHECK(is_independent(g, greedy));
        CHECK(exact.is_subset_of(t));
        CHECK(greedy.is_subset_of(t));
        CHECK(exact.count() >= greedy.count());
    }
}

TEST_CASE("graph_io") {
    Graph k2 = complete_graph(2);
    CHECK(encode_graph(k2) == "n 2\n0 1\n");

    // round-trip identity across generators
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = sample_gnp(25, 0.3, seed);
        CHECK(graphs_equal(decode_graph(encode_graph(g)), g));
        Graph b = sample_bipartite_gnp(8, 0.4, seed);
        CHECK(graphs_equal(decode_graph(encode_graph(b)), b));
    }

    try {
        decode_graph("n 2\n0 2\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(decode_graph("n 3\n0 0\n"), ParseError);
    CHECK_THROWS_AS(decode_graph("n 3\n0 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(decode_graph("bogus"), ParseError);
    CHECK_THROWS_AS(decode_graph("n 4 bipartite 2\n0 1\n"), ParseError);
}
