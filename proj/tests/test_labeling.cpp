#include "fixtures.hpp"
#include "oracles.hpp"

#include <twinwidth/constructions.hpp>
#include <twinwidth/labeling.hpp>

#include <gtest/gtest.h>

using namespace twinwidth;

namespace {

// Every ordered pair decodes to the trigraph colour; red subscripts of each
// source run over 1..red degree.
auto check_labels(const Trigraph & g, const Labeling & lab) -> void
{
    auto vs = g.vertices();
    ASSERT_EQ(lab.labels.size(), vs.size());
    std::set<std::string> distinct;
    for (auto & [v, l] : lab.labels) {
        EXPECT_EQ(l.size(), lab.scheme.label_length());
        distinct.insert(l.to_string());
    }
    if (vs.size() > 1)
        EXPECT_EQ(distinct.size(), vs.size());
    for (auto u : vs) {
        std::set<std::size_t> seen;
        for (auto v : vs) {
            if (u == v)
                continue;
            auto a = decode_adjacency(lab.scheme, lab.labels.at(u), lab.labels.at(v));
            ASSERT_EQ(a.color, g.color(u, v)) << u << ' ' << v;
            if (a.color == Color::red) {
                EXPECT_GE(a.index, 1u);
                EXPECT_LE(a.index, g.red_degree(u));
                EXPECT_TRUE(seen.insert(a.index).second) << u;
            }
        }
        EXPECT_EQ(seen.size(), g.red_degree(u));
    }
}

auto labels_for(const Trigraph & g, std::size_t & d) -> std::optional<Labeling>
{
    for (d = 0; d <= g.order(); ++d)
        if (auto seq = greedy_parallel_sequence(g, d))
            return build_labels(g, *seq, static_cast<std::uint32_t>(d));
    return std::nullopt;
}

}

TEST(Scheme, Lengths)
{
    LabelScheme s{10, 2, 5};
    EXPECT_EQ(s.trit_bits(), 8u);
    EXPECT_EQ(s.step_width(), 9u);
    EXPECT_EQ(s.label_length(), 45u);
    EXPECT_EQ((LabelScheme{4, 0, 3}).step_width(), 3u);
    EXPECT_EQ((LabelScheme{4, 1, 3}).step_width(), 6u);
    EXPECT_THROW((LabelScheme{4, 40, 1}).trit_bits(), Error);
}

TEST(Labels, SingleVertexIsEmpty)
{
    auto lab = build_labels(Trigraph(1), {}, 1);
    ASSERT_EQ(lab.labels.size(), 1u);
    EXPECT_TRUE(lab.labels.at(0).empty());
    EXPECT_EQ(lab.scheme.label_length(), 0u);
}

TEST(Labels, PathByHand)
{
    auto g = path_graph(4);
    ParallelSequence seq{ParallelStep{{{0, 1}}}, ParallelStep{{{0, 2}}}, ParallelStep{{{0, 3}}}};
    auto lab = build_labels(g, seq, 1);
    EXPECT_EQ(lab.scheme.label_length(), 3u * 6u);
    EXPECT_EQ(adjacency_name(decode_adjacency(lab.scheme, lab.labels.at(1), lab.labels.at(2))), "1");
    EXPECT_EQ(adjacency_name(decode_adjacency(lab.scheme, lab.labels.at(0), lab.labels.at(3))), "0");
    check_labels(g, lab);
    EXPECT_THROW(build_labels(g, seq, 0), Error);
}

TEST(Labels, RandomGraphs)
{
    std::mt19937_64 rng(1);
    for (int it = 0; it < 100; ++it) {
        auto g = oracle::random_trigraph(2 + rng() % 11, 0.4, it % 3 == 0 ? 0.15 : 0.0, rng);
        std::size_t d = 0;
        auto lab = labels_for(g, d);
        ASSERT_TRUE(lab);
        check_labels(g, *lab);
    }
}

TEST(Labels, CycleSix)
{
    auto g = cycle_graph(6);
    std::size_t d = 0;
    auto lab = labels_for(g, d);
    ASSERT_TRUE(lab);
    EXPECT_EQ(d, 2u);
    check_labels(g, *lab);
}

TEST(Labels, TwinFieldCarriesChildColour)
{
    // 0 and 1 are adjacent twins, 2 and 3 non-adjacent twins.
    auto g = Trigraph::from_edges(5, {{0, 1}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
    ParallelSequence seq{ParallelStep{{{0, 1}, {2, 3}}}, ParallelStep{{{0, 2}}}, ParallelStep{{{0, 4}}}};
    auto lab = build_labels(g, seq, 1);
    EXPECT_EQ(decode_adjacency(lab.scheme, lab.labels.at(0), lab.labels.at(1)).color, Color::black);
    EXPECT_EQ(decode_adjacency(lab.scheme, lab.labels.at(2), lab.labels.at(3)).color, Color::none);
    check_labels(g, lab);
}

TEST(Labels, TwoRedNeighbours)
{
    // Vertex 0 keeps two red neighbours throughout.
    auto g = Trigraph::from_edges(5, {{1, 2}, {3, 4}}, {{0, 1}, {0, 3}});
    std::size_t d = 0;
    auto lab = labels_for(g, d);
    ASSERT_TRUE(lab);
    EXPECT_GE(d, 2u);
    check_labels(g, *lab);
    auto a = decode_adjacency(lab->scheme, lab->labels.at(0), lab->labels.at(1));
    auto b = decode_adjacency(lab->scheme, lab->labels.at(0), lab->labels.at(3));
    EXPECT_EQ(a.color, Color::red);
    EXPECT_EQ(b.color, Color::red);
    EXPECT_NE(a.index, b.index);
}

TEST(Labels, LiftedGraphs)
{
    for (unsigned levels = 0; levels <= 5; ++levels) {
        auto lift = iterated_lift(levels, 10 + levels);
        auto g = lift.chain.back().all_red();
        auto lab = build_labels(g, lift.witness, 6);
        EXPECT_EQ(lab.scheme.k, lift.witness.size());
        check_labels(g, lab);
    }
}

TEST(Labels, Errors)
{
    auto g = path_graph(3);
    ParallelSequence seq{ParallelStep{{{0, 1}}}, ParallelStep{{{0, 2}}}};
    auto lab = build_labels(g, seq, 1);
    EXPECT_THROW(decode_adjacency(lab.scheme, lab.labels.at(0), lab.labels.at(0)), Error);
    EXPECT_THROW(decode_adjacency(lab.scheme, lab.labels.at(0), BitString{}), Error);
    EXPECT_THROW(build_labels(g, ParallelSequence{ParallelStep{{{0, 1}}}}, 1), Error);
}

TEST(Labels, QueryCost)
{
    std::mt19937_64 rng(2);
    std::size_t d = 0;
    for (auto g : {path_graph(16), fixture::random_cograph(16, rng), iterated_lift(2, 3).chain.back()}) {
        auto lab = labels_for(g, d);
        ASSERT_TRUE(lab);
        EXPECT_GT(measure_query_cost(*lab, 1), 0.0);
    }
}
