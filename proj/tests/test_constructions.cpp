#include "oracles.hpp"

#include <twinwidth/constructions.hpp>
#include <twinwidth/exact.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace twinwidth;

namespace {

auto zone(const TriMatrix & m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) -> TriMatrix
{
    return m.submatrix(r0, r1, c0, c1);
}

auto log_ceil(std::size_t n, std::size_t t) -> std::size_t
{
    std::size_t levels = 0;
    for (std::size_t reach = 1; reach < n; reach *= t)
        ++levels;
    return levels;
}

auto exact_or_greedy(const Trigraph & g) -> ContractionSequence
{
    return tww_exact(g).sequence;
}

}

TEST(Halfgraph, Shapes)
{
    auto one = gen_halfgraph_sandwich(1, Permutation::identity(1), false);
    EXPECT_EQ(one.order(), 3u);
    auto sigma = Permutation::from_one_line("41532");
    auto g = gen_halfgraph_sandwich(5, sigma, false);
    ASSERT_EQ(g.order(), 15u);
    // b_i c_j iff sigma(i) < j, with 0-based sigma.
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            EXPECT_EQ(g.adjacent(static_cast<Vertex>(5 + i), static_cast<Vertex>(10 + j)), sigma(i) < j);
    auto cl = gen_halfgraph_sandwich(5, sigma, true);
    EXPECT_EQ(cl.edges(Color::black).size(), g.edges(Color::black).size() + 3 * 10);
    EXPECT_THROW(gen_halfgraph_sandwich(4, sigma, false), Error);
}

TEST(Rook, SmallCases)
{
    EXPECT_EQ(gen_rook(1), Trigraph(1));
    auto c4 = gen_rook(2);
    EXPECT_EQ(c4.order(), 4u);
    EXPECT_EQ(c4.edges(Color::black).size(), 4u);
    for (auto v : c4.vertices())
        EXPECT_EQ(c4.degree(v), 2u);
    auto r3 = gen_rook(3);
    std::size_t best = SIZE_MAX;
    for (auto u : r3.vertices())
        for (auto v : r3.vertices()) {
            if (u >= v)
                continue;
            std::size_t diff = 0;
            for (auto z : r3.vertices())
                if (z != u && z != v)
                    diff += r3.adjacent(u, z) != r3.adjacent(v, z);
            best = std::min(best, diff);
        }
    EXPECT_EQ(best, 4u);
}

TEST(Lift, ParallelAndCrossing)
{
    auto g = complete_graph(4);
    Signing par, cross;
    for (auto e : g.edges(Color::black)) {
        par[e] = false;
        cross[e] = true;
    }
    auto a = two_lift(g, par);
    for (auto [u, v] : g.edges(Color::black)) {
        EXPECT_TRUE(a.adjacent(u, v));
        EXPECT_TRUE(a.adjacent(u + 4, v + 4));
        EXPECT_FALSE(a.adjacent(u, v + 4));
    }
    auto b = two_lift(g, cross);
    for (auto u : b.vertices())
        for (auto v : b.vertices())
            if (u < v)
                EXPECT_EQ(b.adjacent(u, v), (u < 4) != (v < 4) && u % 4 != v % 4);
    Signing missing = par;
    missing.erase(missing.begin());
    EXPECT_THROW(two_lift(g, missing), Error);
}

TEST(Lift, DegreesPreserved)
{
    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        auto g = oracle::random_graph(3 + rng() % 8, 0.5, rng);
        auto h = two_lift(g, random_signing(g, rng));
        auto n = static_cast<Vertex>(g.order());
        EXPECT_EQ(h.edges(Color::black).size(), 2 * g.edges(Color::black).size());
        for (Vertex v = 0; v < n; ++v) {
            EXPECT_EQ(h.degree(v), g.degree(v));
            EXPECT_EQ(h.degree(v + n), g.degree(v));
        }
    }
}

TEST(Lift, FigureFour)
{
    // a=0 b=1 c=2 d=3; ad and cd crossing.
    auto g = complete_graph(4);
    Signing s{{{0, 1}, false}, {{0, 2}, false}, {{1, 2}, false}, {{1, 3}, false}, {{0, 3}, true}, {{2, 3}, true}};
    auto h = two_lift(g, s);
    std::vector<Edge> want{{0, 1}, {4, 5}, {0, 2}, {4, 6}, {1, 2}, {5, 6}, {1, 3}, {5, 7}, {0, 7}, {3, 4}, {2, 7}, {3, 6}};
    EXPECT_EQ(h.edges(Color::black).size(), want.size());
    for (auto [u, v] : want)
        EXPECT_TRUE(h.adjacent(u, v)) << u << ' ' << v;
}

TEST(Lift, IteratedWitnessWidth)
{
    for (unsigned levels = 0; levels <= 6; ++levels)
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto lift = iterated_lift(levels, seed);
            ASSERT_EQ(lift.chain.size(), levels + 1);
            auto g = lift.chain.back();
            EXPECT_EQ(g.order(), std::size_t{4} << levels);
            auto r = verify_parallel(g.all_red(), lift.witness);
            ASSERT_TRUE(r.valid) << r.reason;
            EXPECT_LE(r.width, 6u);
            auto seq = sequentialize(g.all_red(), lift.witness);
            EXPECT_LE(verify_sequence(g.all_red(), seq).width, 13u);
        }
}

TEST(Subdivide, Basics)
{
    EXPECT_EQ(subdivide(complete_graph(5), 0), complete_graph(5));
    auto c = subdivide(complete_graph(3), 1);
    EXPECT_EQ(c.order(), 6u);
    EXPECT_EQ(c.edges(Color::black).size(), 6u);
    for (auto v : c.vertices())
        EXPECT_EQ(c.degree(v), 2u);
    // Connected, so a single 6-cycle.
    std::set<Vertex> seen{0};
    std::vector<Vertex> stack{0};
    while (! stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto [z, col] : c.neighbours(v))
            if (seen.insert(z).second)
                stack.push_back(z);
    }
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_EQ(subdivide(complete_graph(5), 2).order(), 25u);
}

TEST(Merge, Recognition)
{
    EXPECT_TRUE(is_parallel_t_merge(Permutation::identity(6), 1));
    auto p = Permutation::from_one_line("23514687");
    EXPECT_TRUE(is_parallel_t_merge(p, 2));
    EXPECT_FALSE(is_parallel_t_merge(p, 1));
    for (std::size_t t = 1; t <= 5; ++t) {
        std::vector<std::size_t> rev(t + 1);
        for (std::size_t i = 0; i <= t; ++i)
            rev[i] = t - i;
        EXPECT_FALSE(is_parallel_t_merge(Permutation(rev), t));
        EXPECT_TRUE(is_parallel_t_merge(Permutation(rev), t + 1));
    }
}

TEST(Merge, FigureEight)
{
    auto tau = Permutation::from_one_line("54613287");
    EXPECT_TRUE(merge_decompose(Permutation::identity(8), 2).empty());
    auto f = merge_decompose(tau, 2);
    ASSERT_FALSE(f.empty());
    EXPECT_EQ(f.front().to_one_line(), "14562378");
    std::vector<Permutation> rest(f.begin() + 1, f.end());
    EXPECT_EQ(compose_all(rest, 8).to_one_line(), "32416587");
    EXPECT_EQ(compose_all(f, 8), tau);
    EXPECT_THROW(merge_decompose(tau, 1), Error);
}

TEST(Merge, RandomDecompositions)
{
    std::mt19937_64 rng(2);
    for (int it = 0; it < 1000; ++it) {
        std::size_t n = 1 + rng() % 64, t = 2 + rng() % 4;
        auto s = Permutation::random(n, rng);
        auto f = merge_decompose(s, t);
        EXPECT_EQ(compose_all(f, n), s);
        EXPECT_LE(f.size(), log_ceil(n, t));
        for (auto & p : f)
            EXPECT_TRUE(is_parallel_t_merge(p, t));
    }
}

TEST(Merge, FactorsAreGridFree)
{
    std::mt19937_64 rng(3);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 2 + rng() % 15, t = 2 + rng() % 3;
        for (auto & p : merge_decompose(Permutation::random(n, rng), t))
            EXPECT_FALSE(find_t_grid(p.matrix(), t + 1)) << p.to_one_line();
    }
}

TEST(SubdivisionOrder, Layers)
{
    for (std::size_t n = 3; n <= 8; ++n) {
        auto so = subdivision_order(n, 1.0);
        std::size_t edges = n * (n - 1) / 2;
        EXPECT_EQ(so.k, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) - 1e-12)));
        ASSERT_EQ(so.order.size(), n + so.k * edges);
        EXPECT_GE(so.t, 4u);
        auto sorted = so.order;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(sorted, so.graph.vertices());
        auto m = adjacency_matrix(so.graph, so.order);
        // Consecutive inner layers meet along the permutation matrix of one factor.
        for (std::size_t i = 2; i < so.k + 1; ++i) {
            auto a = so.layer_start[i - 1], b = so.layer_start[i], c = so.layer_start[i + 1];
            auto z = zone(m, a, b, b, c);
            EXPECT_EQ(z, so.factors[so.k - i].matrix()) << n << ' ' << i;
            EXPECT_FALSE(find_t_grid(z, so.t + 1, SearchLimits{256}));
        }
        // Every layer of subdivision vertices is an independent set.
        for (std::size_t i = 1; i <= so.k; ++i) {
            auto a = so.layer_start[i], b = so.layer_start[i + 1];
            EXPECT_EQ(zone(m, a, b, a, b), TriMatrix(b - a, b - a));
        }
        EXPECT_FALSE(find_t_grid(m, 5 * so.t + 11, SearchLimits{1024}));
    }
    EXPECT_THROW(subdivision_order(1, 1.0), Error);
}

TEST(SubdivisionOrder, ExactWidthsRespectLowerBound)
{
    for (std::size_t n = 3; n <= 5; ++n)
        for (std::size_t k = 0; k <= 2; ++k) {
            auto g = subdivide(complete_graph(n), k);
            if (g.order() > 16)
                continue;
            ExactLimits lim;
            lim.max_vertices = 16;
            auto d = tww_exact(g, lim).width;
            EXPECT_TRUE(subdivision_lower_bound_holds(n, k, d)) << n << ' ' << k << ' ' << d;
        }
}

TEST(Product, TrivialFactor)
{
    auto g = path_graph(5);
    auto seq = exact_or_greedy(g);
    EXPECT_EQ(strong_product(g, Trigraph(1)), g);
    auto s = product_sequence(g, seq, Trigraph(1), {});
    EXPECT_EQ(s, seq);
}

TEST(Product, PathTimesEdge)
{
    auto g = path_graph(6), h = path_graph(2);
    auto p = strong_product(g, h);
    EXPECT_EQ(p.order(), 12u);
    auto s = product_sequence(g, exact_or_greedy(g), h, exact_or_greedy(h));
    auto r = verify_sequence(p, s);
    ASSERT_TRUE(r.valid);
    EXPECT_LE(r.width, product_bound(1, 0, 1));
    EXPECT_EQ(product_bound(1, 0, 1), 4u);
}

TEST(Product, RandomInstances)
{
    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        auto g = oracle::random_graph(1 + rng() % 8, 0.4, rng);
        std::size_t hn = 1 + rng() % 5;
        Trigraph h = rng() % 2 && hn >= 3 ? cycle_graph(hn) : path_graph(hn);
        auto eg = tww_exact(g), eh = tww_exact(h);
        auto s = product_sequence(g, eg.sequence, h, eh.sequence);
        auto r = verify_sequence(strong_product(g, h), s);
        ASSERT_TRUE(r.valid) << r.reason;
        EXPECT_LE(r.width, product_bound(eg.width, eh.width, h.max_degree())) << it;
    }
}

TEST(Product, HostReplay)
{
    auto h = cycle_graph(8);
    auto seq = exact_or_greedy(h);
    auto w = verify_sequence(h, seq).width;
    auto r = verify_sequence(h.all_red(), host_replay(h.all_red(), h, seq));
    EXPECT_TRUE(r.valid);
    EXPECT_LE(r.width, w + 2);
    EXPECT_LE(r.width, 4u);
    EXPECT_THROW(host_replay(path_graph(8), h, seq), Error);
}

TEST(Product, BicliqueFreeness)
{
    std::mt19937_64 rng(5);
    EXPECT_TRUE(has_biclique(complete_graph(4), 2));
    EXPECT_FALSE(has_biclique(cycle_graph(6), 2));
    EXPECT_TRUE(has_biclique(cycle_graph(4), 2));
    for (int it = 0; it < 20; ++it) {
        auto g = oracle::random_graph(4 + rng() % 3, 0.3, rng);
        auto h = path_graph(1 + rng() % 3);
        std::size_t t = 1;
        while (has_biclique(g, t))
            ++t;
        std::size_t s = 2 * t * (h.max_degree() + 1);
        EXPECT_FALSE(has_biclique(strong_product(g, h), s)) << it;
    }
}

TEST(Layout, Checks)
{
    auto k3 = complete_graph(3);
    Layout q{LayoutKind::queue, {0, 1, 2}, {{{0, 1}, {1, 2}, {0, 2}}}};
    EXPECT_TRUE(layout_check(k3, q).valid);
    auto g = Trigraph::from_edges(4, {{0, 3}, {1, 2}});
    Layout nest{LayoutKind::queue, {0, 1, 2, 3}, {{{0, 3}, {1, 2}}}};
    auto r = layout_check(g, nest);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.violations, 1u);
    nest.kind = LayoutKind::stack;
    EXPECT_TRUE(layout_check(g, nest).valid);
    Layout missing{LayoutKind::queue, {0, 1, 2, 3}, {{{0, 3}}}};
    EXPECT_FALSE(layout_check(g, missing).valid);
}

TEST(Layout, PathQueueGridBound)
{
    auto g = path_graph(8);
    Layout q{LayoutKind::queue, g.vertices(), {g.edges(Color::black)}};
    ASSERT_TRUE(layout_check(g, q).valid);
    auto b = layout_grid_bound(g, q);
    EXPECT_EQ(b.grid, 4u);
    EXPECT_TRUE(b.grid_free);
}

TEST(Layout, RandomLayouts)
{
    std::mt19937_64 rng(6);
    for (int it = 0; it < 40; ++it) {
        std::size_t t = 1 + it % 2;
        auto kind = it % 4 < 2 ? LayoutKind::queue : LayoutKind::stack;
        auto [g, lay] = random_layout(4 + rng() % 9, t, kind, 0.6, rng);
        ASSERT_TRUE(layout_check(g, lay).valid);
        EXPECT_TRUE(layout_grid_bound(g, lay).grid_free);
    }
}
