#pragma once

#include "common.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace twinwidth {

enum class Color : std::uint8_t { none = 0, black = 1, red = 2 };

inline auto color_name(Color c) -> const char *
{
    switch (c) {
        case Color::none: return "none";
        case Color::black: return "black";
        case Color::red: return "red";
    }
    return "?";
}

using Edge = std::pair<Vertex, Vertex>;

// Black and red edges over a set of vertex ids. Ids are arbitrary and stable;
// a contracted vertex keeps the smaller id of its two parents, so every id
// is the least original vertex of the class it stands for.
class Trigraph {
public:
    Trigraph() = default;

    explicit Trigraph(std::size_t n)
    {
        for (std::size_t v = 0; v < n; ++v)
            adj_.emplace(static_cast<Vertex>(v), Row{});
    }

    static auto from_edges(std::size_t n, const std::vector<Edge> & black, const std::vector<Edge> & red = {})
        -> Trigraph
    {
        Trigraph g(n);
        for (auto [u, v] : black)
            g.add_edge(u, v, Color::black);
        for (auto [u, v] : red)
            g.add_edge(u, v, Color::red);
        return g;
    }

    auto order() const -> std::size_t { return adj_.size(); }
    auto contains(Vertex v) const -> bool { return adj_.contains(v); }

    // Representative (least original id) of the class behind v.
    auto rep(Vertex v) const -> Vertex
    {
        require(v);
        return v;
    }

    auto vertices() const -> std::vector<Vertex>
    {
        std::vector<Vertex> out;
        out.reserve(adj_.size());
        for (auto & [v, row] : adj_)
            out.push_back(v);
        return out;
    }

    auto add_vertex(Vertex v) -> void
    {
        if (! adj_.emplace(v, Row{}).second)
            throw Error("vertex " + std::to_string(v) + " already present");
    }

    auto remove_vertex(Vertex v) -> void
    {
        require(v);
        for (auto & [z, c] : adj_.at(v))
            adj_.at(z).erase(v);
        adj_.erase(v);
    }

    auto color(Vertex u, Vertex v) const -> Color
    {
        require(u);
        require(v);
        auto & row = adj_.at(u);
        auto it = row.find(v);
        return it == row.end() ? Color::none : it->second;
    }

    auto adjacent(Vertex u, Vertex v) const -> bool { return color(u, v) != Color::none; }

    auto set_color(Vertex u, Vertex v, Color c) -> void
    {
        require(u);
        require(v);
        if (u == v)
            throw Error("self loop on " + std::to_string(u));
        if (c == Color::none) {
            adj_.at(u).erase(v);
            adj_.at(v).erase(u);
        }
        else {
            adj_.at(u)[v] = c;
            adj_.at(v)[u] = c;
        }
    }

    auto add_edge(Vertex u, Vertex v, Color c = Color::black) -> void
    {
        if (c == Color::none)
            throw Error("edge needs a colour");
        if (color(u, v) != Color::none)
            throw Error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        set_color(u, v, c);
    }

    auto neighbours(Vertex v) const -> const std::map<Vertex, Color> &
    {
        require(v);
        return adj_.at(v);
    }

    auto degree(Vertex v) const -> std::size_t { return neighbours(v).size(); }

    auto red_degree(Vertex v) const -> std::size_t
    {
        std::size_t r = 0;
        for (auto & [z, c] : neighbours(v))
            r += (c == Color::red);
        return r;
    }

    auto red_neighbours(Vertex v) const -> std::vector<Vertex>
    {
        std::vector<Vertex> out;
        for (auto & [z, c] : neighbours(v))
            if (c == Color::red)
                out.push_back(z);
        return out;
    }

    auto max_red_degree() const -> std::size_t
    {
        std::size_t best = 0;
        for (auto & [v, row] : adj_)
            best = std::max(best, red_degree(v));
        return best;
    }

    auto max_degree() const -> std::size_t
    {
        std::size_t best = 0;
        for (auto & [v, row] : adj_)
            best = std::max(best, row.size());
        return best;
    }

    auto edges(Color c) const -> std::vector<Edge>
    {
        std::vector<Edge> out;
        for (auto & [u, row] : adj_)
            for (auto & [v, col] : row)
                if (u < v && col == c)
                    out.emplace_back(u, v);
        return out;
    }

    // Same vertex ids, every edge turned red.
    auto all_red() const -> Trigraph
    {
        Trigraph g = *this;
        for (auto & [u, row] : g.adj_)
            for (auto & [v, c] : row)
                c = Color::red;
        return g;
    }

    // Induced subtrigraph on the given ids.
    auto induced(const std::vector<Vertex> & keep) const -> Trigraph
    {
        Trigraph g;
        for (auto v : keep)
            g.add_vertex(v);
        for (auto v : keep)
            for (auto & [z, c] : neighbours(v))
                if (v < z && g.contains(z))
                    g.set_color(v, z, c);
        return g;
    }

    // Contracts u and v in place; returns the surviving id min(u, v).
    auto contract(Vertex u, Vertex v) -> Vertex
    {
        require(u);
        require(v);
        if (u == v)
            throw Error("cannot contract a vertex with itself");
        Vertex w = std::min(u, v), gone = std::max(u, v);
        std::map<Vertex, Color> merged;
        auto & nu = adj_.at(u);
        auto & nv = adj_.at(v);
        for (auto & [z, c] : nu) {
            if (z == v)
                continue;
            auto it = nv.find(z);
            if (it == nv.end())
                merged[z] = Color::red;
            else
                merged[z] = (c == Color::black && it->second == Color::black) ? Color::black : Color::red;
        }
        for (auto & [z, c] : nv)
            if (z != u && ! nu.contains(z))
                merged[z] = Color::red;
        remove_vertex(gone);
        for (auto & [z, c] : adj_.at(w))
            adj_.at(z).erase(w);
        adj_.at(w).clear();
        for (auto & [z, c] : merged)
            set_color(w, z, c);
        return w;
    }

    friend auto operator==(const Trigraph &, const Trigraph &) -> bool = default;

private:
    using Row = std::map<Vertex, Color>;

    auto require(Vertex v) const -> void
    {
        if (! adj_.contains(v))
            throw Error("unknown vertex " + std::to_string(v));
    }

    std::map<Vertex, Row> adj_;
};

inline auto contract(const Trigraph & g, Vertex u, Vertex v) -> Trigraph
{
    Trigraph h = g;
    h.contract(u, v);
    return h;
}

// Largest red degree among the vertices touched by contracting u and v,
// computed without modifying g.
inline auto red_degree_after(const Trigraph & g, Vertex u, Vertex v) -> std::size_t
{
    auto & nu = g.neighbours(u);
    auto & nv = g.neighbours(v);
    std::size_t wdeg = 0, worst = 0;
    auto touch = [&](Vertex z, bool red) {
        if (! red)
            return;
        ++wdeg;
        std::size_t d = g.red_degree(z) + 1;
        if (auto it = nu.find(z); it != nu.end() && it->second == Color::red)
            --d;
        if (auto it = nv.find(z); it != nv.end() && it->second == Color::red)
            --d;
        worst = std::max(worst, d);
    };
    for (auto & [z, c] : nu) {
        if (z == v)
            continue;
        auto it = nv.find(z);
        touch(z, it == nv.end() || c == Color::red || it->second == Color::red);
    }
    for (auto & [z, c] : nv)
        if (z != u && ! nu.contains(z))
            touch(z, true);
    return std::max(worst, wdeg);
}

struct ContractionStep {
    Vertex u = 0, v = 0, w = 0;
    friend auto operator==(const ContractionStep &, const ContractionStep &) -> bool = default;
};

using ContractionSequence = std::vector<ContractionStep>;

inline auto make_step(Vertex u, Vertex v) -> ContractionStep { return {u, v, std::min(u, v)}; }

struct ParallelStep {
    std::vector<Edge> pairs;
    friend auto operator==(const ParallelStep &, const ParallelStep &) -> bool = default;
};

using ParallelSequence = std::vector<ParallelStep>;

struct VerifyReport {
    bool valid = false;
    std::size_t width = 0;
    std::optional<std::size_t> failing_step;
    std::string reason;
};

// Replays seq on g. Width counts g itself. With a bound, the first step
// whose trigraph exceeds it is reported as failing.
inline auto verify_sequence(const Trigraph & g, const ContractionSequence & seq,
    std::optional<std::size_t> bound = std::nullopt) -> VerifyReport
{
    VerifyReport r;
    Trigraph h = g;
    r.width = h.max_red_degree();
    auto fail = [&](std::size_t i, std::string why) {
        r.valid = false;
        if (! r.failing_step)
            r.failing_step = i;
        r.reason = std::move(why);
        return r;
    };
    if (bound && r.width > *bound)
        return fail(0, "initial red degree exceeds bound");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto & s = seq[i];
        if (s.u == s.v || ! h.contains(s.u) || ! h.contains(s.v))
            return fail(i, "step names a missing or repeated vertex");
        if (s.w != std::min(s.u, s.v))
            return fail(i, "merged id must be the smaller of the pair");
        h.contract(s.u, s.v);
        auto red = h.max_red_degree();
        r.width = std::max(r.width, red);
        if (bound && red > *bound)
            return fail(i, "red degree exceeds bound");
    }
    if (h.order() > 1)
        return fail(seq.size(), "sequence does not end at a single vertex");
    r.valid = true;
    return r;
}

inline auto check_disjoint(const Trigraph & g, const ParallelStep & step) -> void
{
    std::set<Vertex> seen;
    for (auto [a, b] : step.pairs) {
        if (a == b || ! g.contains(a) || ! g.contains(b))
            throw Error("parallel step names a missing or repeated vertex");
        if (! seen.insert(a).second || ! seen.insert(b).second)
            throw Error("parallel step pairs are not disjoint");
    }
}

inline auto apply_parallel(const Trigraph & g, const ParallelStep & step) -> Trigraph
{
    check_disjoint(g, step);
    Trigraph h = g;
    for (auto [a, b] : step.pairs)
        h.contract(a, b);
    return h;
}

// Red degree of every stage, g first.
inline auto parallel_trace(const Trigraph & g, const ParallelSequence & seq) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out{g.max_red_degree()};
    Trigraph h = g;
    for (auto & step : seq) {
        h = apply_parallel(h, step);
        out.push_back(h.max_red_degree());
    }
    if (h.order() > 1)
        throw Error("parallel sequence does not end at a single vertex");
    return out;
}

inline auto verify_parallel(const Trigraph & g, const ParallelSequence & seq,
    std::optional<std::size_t> bound = std::nullopt) -> VerifyReport
{
    VerifyReport r;
    Trigraph h = g;
    r.width = h.max_red_degree();
    for (std::size_t i = 0; i <= seq.size(); ++i) {
        if (bound && h.max_red_degree() > *bound && ! r.failing_step) {
            r.failing_step = i;
            r.reason = "red degree exceeds bound";
        }
        if (i == seq.size())
            break;
        try {
            h = apply_parallel(h, seq[i]);
        }
        catch (const Error & e) {
            r.failing_step = i;
            r.reason = e.what();
            return r;
        }
        r.width = std::max(r.width, h.max_red_degree());
    }
    if (h.order() > 1) {
        if (! r.failing_step)
            r.failing_step = seq.size();
        r.reason = "sequence does not end at a single vertex";
        return r;
    }
    r.valid = ! r.failing_step.has_value();
    return r;
}

// Turns each parallel step into its pairs, contracted one after another.
inline auto sequentialize(const Trigraph & g, const ParallelSequence & seq) -> ContractionSequence
{
    auto rep = verify_parallel(g, seq);
    if (! rep.valid)
        throw Error("invalid parallel sequence: " + rep.reason);
    ContractionSequence out;
    for (auto & step : seq)
        for (auto [a, b] : step.pairs)
            out.push_back(make_step(a, b));
    return out;
}

inline auto as_parallel(const ContractionSequence & seq) -> ParallelSequence
{
    ParallelSequence out;
    for (auto & s : seq)
        out.push_back(ParallelStep{{{s.u, s.v}}});
    return out;
}

// Each stage takes a maximal set of disjoint pairs, scanned in lexicographic
// (or shuffled) order, such that the stage stays within red degree bound.
// Returns nothing when some stage admits no pair at all.
inline auto greedy_parallel_sequence(const Trigraph & g, std::size_t bound, std::uint64_t seed = 0,
    bool randomize = false) -> std::optional<ParallelSequence>
{
    if (g.max_red_degree() > bound)
        return std::nullopt;
    std::mt19937_64 rng(seed);
    ParallelSequence out;
    Trigraph h = g;
    while (h.order() > 1) {
        auto vs = h.vertices();
        std::vector<Edge> cand;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                cand.emplace_back(vs[i], vs[j]);
        if (randomize)
            std::shuffle(cand.begin(), cand.end(), rng);
        ParallelStep step;
        std::set<Vertex> used;
        Trigraph t = h;
        for (auto [a, b] : cand) {
            if (used.contains(a) || used.contains(b))
                continue;
            if (red_degree_after(t, a, b) > bound)
                continue;
            t.contract(a, b);
            used.insert(a);
            used.insert(b);
            step.pairs.emplace_back(a, b);
        }
        if (step.pairs.empty())
            return std::nullopt;
        h = std::move(t);
        out.push_back(std::move(step));
    }
    return out;
}

// Relation code packed into two bits by the codec: 00 none, 01 black, 10 red.
struct RedSlot {
    Vertex z = 0;
    Color to_u = Color::none, to_v = Color::none;
    friend auto operator==(const RedSlot &, const RedSlot &) -> bool = default;
};

// Enough to undo the contraction of u and v into w.
struct SplitRecord {
    Vertex w = 0, u = 0, v = 0;
    Color uv = Color::none;
    std::vector<RedSlot> red;
    friend auto operator==(const SplitRecord &, const SplitRecord &) -> bool = default;
};

// Describes how contracting u and v in g would be undone.
inline auto split_record(const Trigraph & g, Vertex u, Vertex v) -> SplitRecord
{
    SplitRecord rec{std::min(u, v), u, v, g.color(u, v), {}};
    Trigraph h = contract(g, u, v);
    for (auto z : h.red_neighbours(rec.w))
        rec.red.push_back({z, g.color(u, z), g.color(v, z)});
    return rec;
}

// Inverse of contraction: w becomes u and v. Black neighbours of w stay
// black to both, red neighbours follow the record.
inline auto split(const Trigraph & g, const SplitRecord & rec) -> Trigraph
{
    if (! g.contains(rec.w))
        throw Error("split of missing vertex " + std::to_string(rec.w));
    if (rec.u == rec.v || rec.w != std::min(rec.u, rec.v))
        throw Error("split record must name two ids with w the smaller");
    Vertex fresh = std::max(rec.u, rec.v);
    if (g.contains(fresh))
        throw Error("split would reuse existing id " + std::to_string(fresh));
    auto reds = g.red_neighbours(rec.w);
    std::set<Vertex> listed;
    for (auto & s : rec.red) {
        if (g.color(rec.w, s.z) != Color::red)
            throw Error("split names " + std::to_string(s.z) + " which is not a red neighbour");
        if (! listed.insert(s.z).second)
            throw Error("split names a red neighbour twice");
        bool both_black = s.to_u == Color::black && s.to_v == Color::black;
        bool neither = s.to_u == Color::none && s.to_v == Color::none;
        if (both_black || neither)
            throw Error("split relations contradict the red edge to " + std::to_string(s.z));
    }
    if (listed.size() != reds.size())
        throw Error("split record misses a red neighbour");

    Trigraph h = g;
    auto old = g.neighbours(rec.w);
    h.add_vertex(fresh);
    for (auto & [z, c] : old) {
        h.set_color(rec.w, z, Color::none);
        if (c == Color::black) {
            h.set_color(rec.u, z, Color::black);
            h.set_color(rec.v, z, Color::black);
        }
    }
    for (auto & s : rec.red) {
        h.set_color(rec.u, s.z, s.to_u);
        h.set_color(rec.v, s.z, s.to_v);
    }
    h.set_color(rec.u, rec.v, rec.uv);
    return h;
}

}
