#pragma once

#include "trigraph.hpp"

#include <chrono>
#include <map>

namespace twinwidth {

using uint128 = unsigned __int128;

struct LabelScheme {
    std::uint32_t n = 0, d = 0, k = 0;

    // Bits holding 2d+1 trits: ceil((2d+1) log2 3).
    auto trit_bits() const -> unsigned
    {
        if (2 * d + 1 > 80)
            throw Error("label packing supports d <= 39");
        uint128 p = 1;
        for (unsigned i = 0; i < 2 * d + 1; ++i)
            p *= 3;
        p -= 1;
        unsigned bits = 0;
        while (p) {
            ++bits;
            p >>= 1;
        }
        return bits;
    }

    // ceil(1 + (2d+1) log2 3).
    auto step_width() const -> unsigned { return 1 + trit_bits(); }
    auto label_length() const -> std::size_t { return std::size_t{k} * step_width(); }

    friend auto operator==(const LabelScheme &, const LabelScheme &) -> bool = default;
};

struct Labeling {
    LabelScheme scheme;
    std::map<Vertex, BitString> labels;
};

// Decoded pair: colour plus, when red, its index in the source's red numbering.
struct Adjacency {
    Color color = Color::none;
    std::size_t index = 0;
    friend auto operator==(const Adjacency &, const Adjacency &) -> bool = default;
};

inline auto adjacency_name(Adjacency a) -> std::string
{
    if (a.color == Color::red)
        return "r" + std::to_string(a.index);
    return a.color == Color::black ? "1" : "0";
}

namespace detail {

    inline auto trit_of(Color c) -> unsigned { return static_cast<unsigned>(c); }

    inline auto color_of_trit(unsigned t) -> Color
    {
        if (t > 2)
            throw FormatError("invalid trit");
        return static_cast<Color>(t);
    }

    inline auto pack_trits(const std::vector<Color> & trits) -> uint128
    {
        uint128 v = 0;
        for (auto it = trits.rbegin(); it != trits.rend(); ++it)
            v = v * 3 + trit_of(*it);
        return v;
    }

    inline auto unpack_trits(uint128 v, std::size_t count) -> std::vector<Color>
    {
        std::vector<Color> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = color_of_trit(static_cast<unsigned>(v % 3));
            v /= 3;
        }
        if (v != 0)
            throw FormatError("packed colours out of range");
        return out;
    }

    inline auto push_wide(BitString & bits, uint128 v, unsigned width) -> void
    {
        for (unsigned i = 0; i < width; ++i)
            bits.push(static_cast<bool>((v >> i) & 1u));
    }

    inline auto read_wide(const BitString & bits, std::size_t pos, unsigned width) -> uint128
    {
        uint128 v = 0;
        for (unsigned i = 0; i < width; ++i)
            if (bits.get(pos + i))
                v |= uint128{1} << i;
        return v;
    }

}

// Labels from a parallel d-sequence. Each step appends, to the label of the
// parent: the child bit, then the colour between the two children followed by
// the colours to both children of each red neighbour of the parent, as trits.
inline auto build_labels(const Trigraph & g, const ParallelSequence & seq, std::uint32_t d) -> Labeling
{
    auto rep = verify_parallel(g, seq, d);
    if (! rep.valid)
        throw Error("labels need a valid parallel " + std::to_string(d) + "-sequence: " + rep.reason);
    LabelScheme scheme{static_cast<std::uint32_t>(g.order()), d, static_cast<std::uint32_t>(seq.size())};
    const unsigned tb = scheme.trit_bits();

    std::vector<Trigraph> stage(seq.size() + 1);
    stage[seq.size()] = g;
    for (std::size_t i = seq.size(); i > 0; --i)
        stage[i - 1] = apply_parallel(stage[i], seq[seq.size() - i]);

    std::map<Vertex, BitString> label;
    std::map<Vertex, std::vector<Vertex>> red_order;
    for (auto v : stage[0].vertices())
        label[v] = BitString{};

    for (std::size_t i = 1; i <= seq.size(); ++i) {
        const Trigraph & t = stage[i];
        std::map<Vertex, std::pair<Vertex, std::optional<Vertex>>> children;
        std::map<Vertex, Vertex> parent;
        for (auto [a, b] : seq[seq.size() - i].pairs) {
            Vertex x = std::min(a, b);
            children[x] = {x, std::max(a, b)};
            parent[a] = parent[b] = x;
        }
        for (auto v : t.vertices())
            if (! parent.contains(v)) {
                parent[v] = v;
                children[v] = {v, std::nullopt};
            }
        auto child = [&](Vertex x, unsigned c) -> std::optional<Vertex> {
            auto & ch = children.at(x);
            return c == 0 ? std::optional<Vertex>(ch.first) : ch.second;
        };

        std::map<Vertex, BitString> next_label;
        std::map<Vertex, std::vector<Vertex>> next_order;
        for (auto y : t.vertices()) {
            Vertex x = parent.at(y);
            unsigned c = (y == children.at(x).first) ? 0 : 1;
            std::vector<Color> trits(2 * d + 1, Color::none);
            std::vector<Vertex> slot_vertex(2 * d + 1, y);
            if (auto p1 = child(x, 1)) {
                trits[0] = t.color(*child(x, 0), *p1);
                slot_vertex[0] = c == 0 ? *p1 : *child(x, 0);
            }
            auto & xs = red_order[x];
            for (std::size_t j = 0; j < d; ++j)
                for (unsigned cc = 0; cc < 2; ++cc) {
                    if (j >= xs.size())
                        continue;
                    if (auto target = child(xs[j], cc)) {
                        trits[1 + 2 * j + cc] = t.color(y, *target);
                        slot_vertex[1 + 2 * j + cc] = *target;
                    }
                }
            std::vector<Vertex> order;
            for (std::size_t s = 0; s < trits.size(); ++s)
                if (trits[s] == Color::red)
                    order.push_back(slot_vertex[s]);
            if (order.size() != t.red_degree(y))
                throw Error("red neighbourhood of " + std::to_string(y) + " not captured by its label");
            BitString bits = label.at(x);
            bits.push(c == 1);
            detail::push_wide(bits, detail::pack_trits(trits), tb);
            next_label[y] = std::move(bits);
            next_order[y] = std::move(order);
        }
        label = std::move(next_label);
        red_order = std::move(next_order);
    }
    return Labeling{scheme, std::move(label)};
}

// Adjacency of the vertices labelled a and b, read from the labels alone.
inline auto decode_adjacency(const LabelScheme & s, const BitString & a, const BitString & b) -> Adjacency
{
    if (a.size() != s.label_length() || b.size() != s.label_length())
        throw Error("label length does not match the scheme");
    const unsigned tb = s.trit_bits();
    const std::size_t w = s.step_width();
    bool same = true;
    Adjacency cur;
    for (std::size_t i = 0; i < s.k; ++i) {
        std::size_t off = i * w;
        bool ca = a.get(off), cb = b.get(off);
        std::size_t slot;
        if (same) {
            if (ca == cb)
                continue;
            same = false;
            slot = 0;
        }
        else {
            if (cur.color != Color::red)
                continue;
            slot = 1 + 2 * (cur.index - 1) + (cb ? 1 : 0);
        }
        auto trits = detail::unpack_trits(detail::read_wide(a, off + 1, tb), 2 * s.d + 1);
        cur.color = trits[slot];
        cur.index = 0;
        if (cur.color == Color::red)
            for (std::size_t q = 0; q <= slot; ++q)
                cur.index += trits[q] == Color::red;
    }
    if (same)
        throw Error("labels name the same vertex");
    return cur;
}

// Mean nanoseconds per decode over every ordered pair, repeated.
inline auto measure_query_cost(const Labeling & lab, unsigned repeats = 3) -> double
{
    std::vector<const BitString *> ls;
    for (auto & [v, l] : lab.labels)
        ls.push_back(&l);
    std::size_t count = 0;
    std::size_t sink = 0;
    auto start = std::chrono::steady_clock::now();
    for (unsigned r = 0; r < repeats; ++r)
        for (auto a : ls)
            for (auto b : ls)
                if (a != b) {
                    sink += static_cast<std::size_t>(decode_adjacency(lab.scheme, *a, *b).color);
                    ++count;
                }
    auto ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start).count();
    volatile std::size_t keep = sink;
    (void)keep;
    return count ? ns / static_cast<double>(count) : 0.0;
}

}
