#pragma once

// Shared instances for the unit tests and the acceptance binary.

#include <twinwidth/twinwidth.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace fixture {

using namespace twinwidth;

// u=0 v=1 u1=2 u2=3 x1..x7=4..10 v1=11 v2=12, as drawn before contracting u and v.
inline auto figure_one() -> Trigraph
{
    return Trigraph::from_edges(13,
        {{0, 3}, {0, 4}, {0, 6}, {0, 7}, {0, 9}, {0, 10}, {1, 4}, {1, 5}, {1, 6}, {1, 9}, {1, 10}, {1, 11}, {1, 12}},
        {{0, 2}, {0, 5}, {0, 8}, {1, 7}, {1, 8}});
}

inline auto figure_two() -> TriMatrix
{
    return TriMatrix::from_rows({"110100rr", "111111rr", "01100101", "00000011", "rr001010", "rr011010", "1011rr01", "1011rr01"});
}

inline auto random_cubic(std::size_t n, std::mt19937_64 & rng) -> Trigraph
{
    for (;;) {
        std::vector<Vertex> stubs;
        for (Vertex v = 0; v < n; ++v)
            stubs.insert(stubs.end(), 3, v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        Trigraph g(n);
        bool ok = true;
        for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
            auto a = stubs[i], b = stubs[i + 1];
            ok = a != b && ! g.adjacent(a, b);
            if (ok)
                g.add_edge(a, b);
        }
        if (ok)
            return g;
    }
}

// Built by disjoint unions and joins, so every induced subgraph has twins.
inline auto random_cograph(std::size_t n, std::mt19937_64 & rng) -> Trigraph
{
    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 0; v < n; ++v)
        parts.push_back({v});
    Trigraph g(n);
    std::bernoulli_distribution join(0.5);
    while (parts.size() > 1) {
        std::shuffle(parts.begin(), parts.end(), rng);
        auto a = parts.back();
        parts.pop_back();
        auto & b = parts.back();
        if (join(rng))
            for (auto x : a)
                for (auto y : b)
                    g.add_edge(x, y);
        b.insert(b.end(), a.begin(), a.end());
    }
    return g;
}

// Leaf order of the contraction tree, so every class is an interval.
inline auto twin_order(const Trigraph & g, const ContractionSequence & seq) -> std::vector<Vertex>
{
    std::map<Vertex, std::vector<Vertex>> cls;
    for (auto v : g.vertices())
        cls[v] = {v};
    for (auto & s : seq) {
        auto a = cls[s.u], b = cls[s.v];
        cls.erase(s.u);
        cls.erase(s.v);
        a.insert(a.end(), b.begin(), b.end());
        cls[s.w] = a;
    }
    return cls.begin()->second;
}

// Finest division of a random symmetric 0/1 matrix after a few random fusions.
inline auto random_neat(std::size_t n, double p, std::size_t fusions, std::mt19937_64 & rng) -> NeatDivision
{
    TriMatrix m(n, n);
    std::bernoulli_distribution one(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (one(rng)) {
                m.set(i, j, Entry::one);
                m.set(j, i, Entry::one);
            }
    auto nd = NeatDivision::finest(m);
    for (std::size_t k = 0; k < fusions && nd.part_count() > 1; ++k)
        nd = symmetric_fusion(nd, rng() % (nd.part_count() - 1));
    return nd;
}

// Neat division of a twin-ordered adjacency matrix (a low-width graph laid
// out along its own contraction tree), after a few random fusions.
inline auto random_twin_ordered_neat(std::size_t n, std::size_t fusions, std::mt19937_64 & rng) -> NeatDivision
{
    Trigraph g = rng() % 2 ? random_cograph(n, rng) : path_graph(n);
    auto seq = greedy_parallel_sequence(g, 1);
    auto order = g.vertices();
    if (seq)
        order = twin_order(g, sequentialize(g, *seq));
    auto nd = NeatDivision::finest(adjacency_matrix(g, order));
    for (std::size_t k = 0; k < fusions && nd.part_count() > 1; ++k)
        nd = symmetric_fusion(nd, rng() % (nd.part_count() - 1));
    return nd;
}

// Mixed zones (all r) plus mixed cuts of row part `index`, recounted from
// the definition cell by cell.
inline auto recount_row_mixed_value(const TriMatrix & m, const std::vector<std::size_t> & cuts, std::size_t index)
    -> std::size_t
{
    std::vector<std::size_t> b{0};
    b.insert(b.end(), cuts.begin(), cuts.end());
    b.push_back(m.rows());
    std::vector<std::size_t> cb{0};
    cb.insert(cb.end(), cuts.begin(), cuts.end());
    cb.push_back(m.cols());
    auto r0 = b[index], r1 = b[index + 1];
    auto all_red = [&](std::size_t c0, std::size_t c1) {
        for (auto i = r0; i < r1; ++i)
            for (auto j = c0; j < c1; ++j)
                if (m.at(i, j) != Entry::red)
                    return false;
        return true;
    };
    std::size_t value = 0;
    for (std::size_t k = 0; k + 1 < cb.size(); ++k)
        value += all_red(cb[k], cb[k + 1]);
    for (std::size_t k = 1; k + 1 < cb.size(); ++k) {
        if (all_red(cb[k - 1], cb[k]) || all_red(cb[k], cb[k + 1]))
            continue;
        auto j = cb[k] - 1;
        bool corner = false;
        for (auto i = r0; i + 1 < r1 && ! corner; ++i) {
            auto a = m.at(i, j), bb = m.at(i, j + 1), c = m.at(i + 1, j), d = m.at(i + 1, j + 1);
            bool red = a == Entry::red || bb == Entry::red || c == Entry::red || d == Entry::red;
            corner = ! red && ! (a == c && bb == d) && ! (a == bb && c == d);
        }
        value += corner;
    }
    return value;
}

}
