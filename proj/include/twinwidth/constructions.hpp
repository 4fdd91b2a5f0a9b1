#pragma once

#include "matrix.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace twinwidth {

// Bijection of {0..n-1}; one-line notation is 1-based.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> images) : img_(std::move(images))
    {
        std::vector<bool> seen(img_.size(), false);
        for (auto v : img_) {
            if (v >= img_.size() || seen[v])
                throw Error("not a permutation");
            seen[v] = true;
        }
    }

    static auto identity(std::size_t n) -> Permutation
    {
        std::vector<std::size_t> img(n);
        std::iota(img.begin(), img.end(), 0u);
        return Permutation(std::move(img));
    }

    // Values 1..n, e.g. {2,3,5,1,4}.
    static auto one_based(const std::vector<std::size_t> & values) -> Permutation
    {
        std::vector<std::size_t> img;
        for (auto v : values) {
            if (v == 0)
                throw Error("one-based values start at 1");
            img.push_back(v - 1);
        }
        return Permutation(std::move(img));
    }

    // Digit string such as "23514687"; n <= 9.
    static auto from_one_line(const std::string & s) -> Permutation
    {
        std::vector<std::size_t> values;
        for (char c : s) {
            if (c < '1' || c > '9')
                throw FormatError("one-line notation needs digits 1..9");
            values.push_back(static_cast<std::size_t>(c - '0'));
        }
        return one_based(values);
    }

    template <class Rng>
    static auto random(std::size_t n, Rng & rng) -> Permutation
    {
        auto p = identity(n);
        std::shuffle(p.img_.begin(), p.img_.end(), rng);
        return p;
    }

    auto size() const -> std::size_t { return img_.size(); }
    auto operator()(std::size_t i) const -> std::size_t { return img_.at(i); }
    auto images() const -> const std::vector<std::size_t> & { return img_; }
    auto is_identity() const -> bool { return *this == identity(size()); }

    auto inverse() const -> Permutation
    {
        std::vector<std::size_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            inv[img_[i]] = i;
        return Permutation(std::move(inv));
    }

    // (a * b)(i) = a(b(i)).
    friend auto operator*(const Permutation & a, const Permutation & b) -> Permutation
    {
        if (a.size() != b.size())
            throw Error("composing permutations of different sizes");
        std::vector<std::size_t> img(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            img[i] = a(b(i));
        return Permutation(std::move(img));
    }

    auto to_one_line() const -> std::string
    {
        std::string s;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (img_.size() > 9 && i > 0)
                s += ' ';
            s += std::to_string(img_[i] + 1);
        }
        return s;
    }

    // Entry (i, sigma(i)) is 1.
    auto matrix() const -> TriMatrix
    {
        TriMatrix m(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            m.set(i, img_[i], Entry::one);
        return m;
    }

    friend auto operator==(const Permutation &, const Permutation &) -> bool = default;

private:
    std::vector<std::size_t> img_;
};

inline auto compose_all(const std::vector<Permutation> & fs, std::size_t n) -> Permutation
{
    auto p = Permutation::identity(n);
    for (auto & f : fs)
        p = p * f;
    return p;
}

// Finest split of the domain into intervals mapped onto themselves.
inline auto fixed_blocks(const Permutation & s) -> std::vector<Range>
{
    std::vector<Range> out;
    std::size_t start = 0, reach = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        reach = std::max(reach, s(i));
        if (reach == i) {
            out.push_back({start, i + 1});
            start = i + 1;
        }
    }
    return out;
}

inline auto is_parallel_t_merge(const Permutation & s, std::size_t t) -> bool
{
    for (auto b : fixed_blocks(s)) {
        std::size_t runs = 1;
        for (std::size_t i = b.begin + 1; i < b.end; ++i)
            runs += s(i) < s(i - 1);
        if (runs > t)
            return false;
    }
    return true;
}

namespace detail {

    inline auto merge_split(const std::vector<std::size_t> & img, std::size_t lo, std::size_t hi, std::size_t level,
        std::size_t t, std::vector<std::vector<std::size_t>> & f) -> void
    {
        std::size_t m = hi - lo;
        if (m <= 1)
            return;
        std::size_t q = m / t, r = m % t;
        std::vector<std::size_t> rho(img);
        std::size_t a = lo;
        for (std::size_t c = 0; c < t && a < hi; ++c) {
            std::size_t b = a + q + (c < r ? 1 : 0);
            if (b == a)
                continue;
            std::vector<std::size_t> vals(img.begin() + static_cast<std::ptrdiff_t>(a), img.begin() + static_cast<std::ptrdiff_t>(b));
            std::sort(vals.begin(), vals.end());
            for (std::size_t p = a; p < b; ++p) {
                f[level][p] = vals[p - a];
                rho[p] = a + static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), img[p]) - vals.begin());
            }
            a = b;
        }
        a = lo;
        for (std::size_t c = 0; c < t && a < hi; ++c) {
            std::size_t b = a + q + (c < r ? 1 : 0);
            if (b > a)
                merge_split(rho, a, b, level + 1, t, f);
            a = b;
        }
    }

}

// Merge sort read backwards: s = f_1 * f_2 * ... with every f_i a parallel
// t-merge and at most ceil(log_t n) factors. Identity factors are dropped.
inline auto merge_decompose(const Permutation & s, std::size_t t) -> std::vector<Permutation>
{
    if (t < 2)
        throw Error("merge decomposition needs t >= 2");
    std::size_t n = s.size(), levels = 0;
    for (std::size_t reach = 1; reach < n; reach *= t)
        ++levels;
    std::vector<std::vector<std::size_t>> f(levels, Permutation::identity(n).images());
    detail::merge_split(s.images(), 0, n, 0, t, f);
    std::vector<Permutation> out;
    for (auto & img : f) {
        Permutation p(img);
        if (! p.is_identity())
            out.push_back(std::move(p));
    }
    return out;
}

inline auto complete_graph(std::size_t n) -> Trigraph
{
    Trigraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

inline auto path_graph(std::size_t n) -> Trigraph
{
    Trigraph g(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    return g;
}

inline auto cycle_graph(std::size_t n) -> Trigraph
{
    auto g = path_graph(n);
    if (n >= 3)
        g.add_edge(0, static_cast<Vertex>(n - 1));
    return g;
}

// A = 0..n-1, B = n..2n-1, C = 2n..3n-1. a_i b_j iff i < j; b_i c_j iff
// sigma(i) < j. With `cliques`, each of A, B, C is a clique.
inline auto gen_halfgraph_sandwich(std::size_t n, const Permutation & sigma, bool cliques) -> Trigraph
{
    if (sigma.size() != n)
        throw Error("permutation size must match n");
    Trigraph g(3 * n);
    auto a = [&](std::size_t i) { return static_cast<Vertex>(i); };
    auto b = [&](std::size_t i) { return static_cast<Vertex>(n + i); };
    auto c = [&](std::size_t i) { return static_cast<Vertex>(2 * n + i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i < j)
                g.add_edge(a(i), b(j));
            if (sigma(i) < j)
                g.add_edge(b(i), c(j));
            if (cliques && i < j) {
                g.add_edge(a(i), a(j));
                g.add_edge(b(i), b(j));
                g.add_edge(c(i), c(j));
            }
        }
    return g;
}

// Vertex (a, b) of the i x i rook graph has id a*i + b.
inline auto gen_rook(std::size_t i) -> Trigraph
{
    Trigraph g(i * i);
    for (std::size_t a = 0; a < i; ++a)
        for (std::size_t b = 0; b < i; ++b)
            for (std::size_t a2 = 0; a2 < i; ++a2)
                for (std::size_t b2 = 0; b2 < i; ++b2) {
                    auto u = static_cast<Vertex>(a * i + b), v = static_cast<Vertex>(a2 * i + b2);
                    if (u < v && (a == a2 || b == b2))
                        g.add_edge(u, v);
                }
    return g;
}

// true marks a crossing edge.
using Signing = std::map<Edge, bool>;

inline auto check_dense_ids(const Trigraph & g) -> void
{
    auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != i)
            throw Error("construction needs vertex ids 0..n-1");
}

// Copy 1 of v keeps id v, copy 2 gets v + n. Parallel edges join equal
// copies; crossing edges join opposite copies.
inline auto two_lift(const Trigraph & g, const Signing & signing) -> Trigraph
{
    check_dense_ids(g);
    auto n = static_cast<Vertex>(g.order());
    Trigraph h(2 * g.order());
    for (auto [u, v] : g.edges(Color::black)) {
        auto it = signing.find({u, v});
        if (it == signing.end())
            throw Error("signing misses edge " + std::to_string(u) + " " + std::to_string(v));
        if (it->second) {
            h.add_edge(u, v + n);
            h.add_edge(u + n, v);
        }
        else {
            h.add_edge(u, v);
            h.add_edge(u + n, v + n);
        }
    }
    for (auto & [e, crossing] : signing)
        if (! g.adjacent(e.first, e.second))
            throw Error("signing names a non-edge");
    return h;
}

template <class Rng>
auto random_signing(const Trigraph & g, Rng & rng) -> Signing
{
    Signing s;
    std::bernoulli_distribution coin(0.5);
    for (auto e : g.edges(Color::black))
        s[e] = coin(rng);
    return s;
}

struct IteratedLift {
    std::vector<Trigraph> chain;
    // Contracts copy pairs level by level, then finishes K4 in lexicographic order.
    ParallelSequence witness;
};

inline auto iterated_lift(unsigned levels, std::uint64_t seed) -> IteratedLift
{
    std::mt19937_64 rng(seed);
    IteratedLift out;
    out.chain.push_back(complete_graph(4));
    for (unsigned i = 0; i < levels; ++i)
        out.chain.push_back(two_lift(out.chain.back(), random_signing(out.chain.back(), rng)));
    for (std::size_t i = levels; i > 0; --i) {
        auto half = static_cast<Vertex>(out.chain[i].order() / 2);
        ParallelStep step;
        for (Vertex v = 0; v < half; ++v)
            step.pairs.emplace_back(v, v + half);
        out.witness.push_back(std::move(step));
    }
    for (Vertex v = 1; v < 4; ++v)
        out.witness.push_back(ParallelStep{{{0, v}}});
    return out;
}

// Edges in lexicographic order, each gets k new vertices along the path from
// its smaller to its larger endpoint; edge e's i-th new vertex is n + e*k + i.
inline auto subdivide(const Trigraph & g, std::size_t k) -> Trigraph
{
    check_dense_ids(g);
    auto edges = g.edges(Color::black);
    auto n = g.order();
    Trigraph h(n + edges.size() * k);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        Vertex prev = u;
        for (std::size_t i = 0; i < k; ++i) {
            auto s = static_cast<Vertex>(n + e * k + i);
            h.add_edge(prev, s);
            prev = s;
        }
        h.add_edge(prev, v);
    }
    return h;
}

struct SubdivisionOrder {
    Trigraph graph;
    std::vector<Vertex> order;
    std::size_t k = 0, t = 0;
    // Layer V_i occupies order[layer_start[i], layer_start[i+1]).
    std::vector<std::size_t> layer_start;
    std::vector<Permutation> factors;
    Permutation sigma;
};

// K_n subdivided k = ceil(log2 n / c) times, ordered layer by layer. V_1 and
// V_k follow the endpoint they touch; the layers between follow a merge
// decomposition of the bijection V_1 -> V_k into k-1 parallel t-merges.
inline auto subdivision_order(std::size_t n, double c) -> SubdivisionOrder
{
    if (n < 2 || c <= 0)
        throw Error("subdivision order needs n >= 2 and c > 0");
    SubdivisionOrder out;
    out.k = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) / c - 1e-12));
    if (out.k < 1)
        throw Error("n too small for c");
    std::size_t edges = n * (n - 1) / 2;
    out.t = static_cast<std::size_t>(std::ceil(std::pow(2.0, 2.0 * c) - 1e-12));
    out.t = std::max<std::size_t>(out.t, 2);
    if (out.k >= 2) {
        auto covers = [&](std::size_t t) {
            std::size_t p = 1;
            for (std::size_t i = 0; i + 1 < out.k && p < edges; ++i)
                p *= t;
            return p >= edges;
        };
        while (! covers(out.t))
            ++out.t;
    }
    out.graph = subdivide(complete_graph(n), out.k);
    auto all = complete_graph(n).edges(Color::black);
    // V_1 position p holds edge p; V_k sorts by (larger, smaller) endpoint.
    std::vector<std::size_t> by_head(edges);
    std::iota(by_head.begin(), by_head.end(), 0u);
    std::sort(by_head.begin(), by_head.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(all[a].second, all[a].first) < std::pair(all[b].second, all[b].first);
    });
    std::vector<std::size_t> head_pos(edges);
    for (std::size_t p = 0; p < edges; ++p)
        head_pos[by_head[p]] = p;
    out.sigma = Permutation(head_pos);
    if (out.k >= 2) {
        out.factors = merge_decompose(out.sigma, out.t);
        if (out.factors.size() > out.k - 1)
            throw Error("merge decomposition longer than the available layers");
        while (out.factors.size() < out.k - 1)
            out.factors.push_back(Permutation::identity(edges));
    }
    // edge_at[i][p]: edge whose layer-(i+1) vertex sits at position p.
    std::vector<std::vector<std::size_t>> edge_at(out.k, std::vector<std::size_t>(edges));
    std::iota(edge_at[0].begin(), edge_at[0].end(), 0u);
    for (std::size_t i = 1; i < out.k; ++i) {
        auto & pi = out.factors[out.k - 1 - i];
        for (std::size_t p = 0; p < edges; ++p)
            edge_at[i][pi(p)] = edge_at[i - 1][p];
    }
    if (out.k >= 2 && edge_at[out.k - 1] != by_head)
        throw Error("layer orders do not realise the target bijection");
    for (Vertex v = 0; v < n; ++v)
        out.order.push_back(v);
    out.layer_start.push_back(0);
    for (std::size_t i = 0; i < out.k; ++i) {
        out.layer_start.push_back(out.order.size());
        for (std::size_t p = 0; p < edges; ++p)
            out.order.push_back(static_cast<Vertex>(n + edge_at[i][p] * out.k + i));
    }
    out.layer_start.push_back(out.order.size());
    return out;
}

// k >= log_{d+1}(n-1) - 1 for the k-subdivision of K_n of twin-width d.
inline auto subdivision_lower_bound_holds(std::size_t n, std::size_t k, std::size_t d) -> bool
{
    if (n < 3 || d == 0)
        return true;
    return static_cast<double>(k) >= std::log(static_cast<double>(n - 1)) / std::log(static_cast<double>(d + 1)) - 1.0 - 1e-9;
}

// Vertex (g, h) has id g * |H| + h.
inline auto strong_product(const Trigraph & g, const Trigraph & h) -> Trigraph
{
    check_dense_ids(g);
    check_dense_ids(h);
    auto a = g.order(), b = h.order();
    Trigraph p(a * b);
    auto id = [&](std::size_t x, std::size_t y) { return static_cast<Vertex>(x * b + y); };
    for (std::size_t x = 0; x < a; ++x)
        for (std::size_t y = 0; y < b; ++y)
            for (std::size_t x2 = 0; x2 < a; ++x2)
                for (std::size_t y2 = 0; y2 < b; ++y2) {
                    bool gx = x == x2 || g.adjacent(static_cast<Vertex>(x), static_cast<Vertex>(x2));
                    bool hy = y == y2 || h.adjacent(static_cast<Vertex>(y), static_cast<Vertex>(y2));
                    if (gx && hy && id(x, y) < id(x2, y2))
                        p.add_edge(id(x, y), id(x2, y2));
                }
    return p;
}

// max{d_G (D+1) + 2D, d_H + D} with D the maximum degree of H.
inline auto product_bound(std::size_t d_g, std::size_t d_h, std::size_t delta) -> std::size_t
{
    return std::max(d_g * (delta + 1) + 2 * delta, d_h + delta);
}

// Every step of seq_g is applied in every copy of G, then seq_h finishes the
// trigraph left over H.
inline auto product_sequence(const Trigraph & g, const ContractionSequence & seq_g, const Trigraph & h,
    const ContractionSequence & seq_h) -> ContractionSequence
{
    if (! verify_sequence(g, seq_g).valid || ! verify_sequence(h, seq_h).valid)
        throw Error("product needs valid sequences for both factors");
    check_dense_ids(g);
    check_dense_ids(h);
    auto b = static_cast<Vertex>(h.order());
    ContractionSequence out;
    for (auto & s : seq_g)
        for (Vertex y = 0; y < b; ++y)
            out.push_back(make_step(s.u * b + y, s.v * b + y));
    Vertex root = g.order() == 1 ? 0 : seq_g.back().w;
    for (auto & s : seq_h)
        out.push_back(make_step(root * b + s.u, root * b + s.v));
    return out;
}

// Replays seq_h on a trigraph over h (same vertices, same edges, some red).
inline auto host_replay(const Trigraph & t, const Trigraph & h, const ContractionSequence & seq_h) -> ContractionSequence
{
    if (t.vertices() != h.vertices())
        throw Error("trigraph is not over the host graph");
    for (auto v : h.vertices())
        for (auto w : h.vertices())
            if (v < w && t.adjacent(v, w) != h.adjacent(v, w))
                throw Error("trigraph is not over the host graph");
    if (! verify_sequence(t, seq_h).valid)
        throw Error("host sequence does not replay");
    return seq_h;
}

// Does g contain K_{t,t} as a subgraph (any colour)?
inline auto has_biclique(const Trigraph & g, std::size_t t) -> bool
{
    auto vs = g.vertices();
    if (t == 0)
        return true;
    if (vs.size() < 2 * t)
        return false;
    std::vector<std::size_t> pick;
    // Choose A in increasing order; B must lie in the common neighbourhood.
    auto rec = [&](auto & self, std::size_t from, std::vector<Vertex> common) -> bool {
        if (common.size() < t)
            return false;
        if (pick.size() == t)
            return true;
        for (std::size_t i = from; i < vs.size(); ++i) {
            std::vector<Vertex> next;
            for (auto z : common)
                if (z != vs[i] && g.adjacent(vs[i], z))
                    next.push_back(z);
            pick.push_back(i);
            if (self(self, i + 1, std::move(next)))
                return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(rec, 0, vs);
}

enum class LayoutKind { queue, stack };

struct Layout {
    LayoutKind kind = LayoutKind::queue;
    std::vector<Vertex> order;
    std::vector<std::vector<Edge>> parts;
};

struct LayoutReport {
    bool valid = false;
    std::string reason;
    std::size_t violations = 0;
};

namespace detail {

    inline auto part_violations(const std::map<Vertex, std::size_t> & pos, const std::vector<Edge> & part, LayoutKind kind)
        -> std::size_t
    {
        std::size_t bad = 0;
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j) {
                auto a = std::minmax(pos.at(part[i].first), pos.at(part[i].second));
                auto b = std::minmax(pos.at(part[j].first), pos.at(part[j].second));
                if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second)
                    continue;
                bool nested = (a.first < b.first && b.second < a.second) || (b.first < a.first && a.second < b.second);
                bool crossing = (a.first < b.first && b.first < a.second && a.second < b.second) ||
                    (b.first < a.first && a.first < b.second && b.second < a.second);
                if ((kind == LayoutKind::queue && nested) || (kind == LayoutKind::stack && crossing))
                    ++bad;
            }
        return bad;
    }

}

// Queue parts forbid nesting, stack parts forbid crossing, among independent edges.
inline auto layout_check(const Trigraph & g, const Layout & lay) -> LayoutReport
{
    LayoutReport r;
    auto vs = g.vertices();
    auto sorted = lay.order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vs) {
        r.reason = "order is not a permutation of the vertices";
        return r;
    }
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < lay.order.size(); ++i)
        pos[lay.order[i]] = i;
    std::set<Edge> seen;
    for (auto & part : lay.parts)
        for (auto [u, v] : part) {
            Edge e{std::min(u, v), std::max(u, v)};
            if (! g.contains(u) || ! g.contains(v) || ! g.adjacent(u, v)) {
                r.reason = "layout names a non-edge";
                return r;
            }
            if (! seen.insert(e).second) {
                r.reason = "edge placed in two parts";
                return r;
            }
        }
    auto all = g.edges(Color::black);
    auto red = g.edges(Color::red);
    all.insert(all.end(), red.begin(), red.end());
    if (seen.size() != all.size()) {
        r.reason = "parts do not cover every edge";
        return r;
    }
    for (auto & part : lay.parts)
        r.violations += detail::part_violations(pos, part, lay.kind);
    r.valid = r.violations == 0;
    if (! r.valid)
        r.reason = lay.kind == LayoutKind::queue ? "nested pair in a queue part" : "crossing pair in a stack part";
    return r;
}

struct GridBoundReport {
    std::size_t t = 0;
    std::size_t grid = 0;
    bool grid_free = false;
};

// A t-queue or t-stack layout order gives a 2(t+1)-grid free matrix.
inline auto layout_grid_bound(const Trigraph & g, const Layout & lay, const SearchLimits & lim = {}) -> GridBoundReport
{
    GridBoundReport r;
    r.t = lay.parts.size();
    r.grid = 2 * (r.t + 1);
    r.grid_free = ! find_t_grid(adjacency_matrix(g, lay.order), r.grid, lim).has_value();
    return r;
}

// Random graph together with a layout built by placing each sampled edge in
// the first part that accepts it.
template <class Rng>
auto random_layout(std::size_t n, std::size_t t, LayoutKind kind, double edge_prob, Rng & rng)
    -> std::pair<Trigraph, Layout>
{
    Trigraph g(n);
    Layout lay;
    lay.kind = kind;
    auto p = Permutation::random(n, rng);
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) {
        lay.order.push_back(static_cast<Vertex>(p(i)));
        pos[static_cast<Vertex>(p(i))] = i;
    }
    lay.parts.assign(t, {});
    std::vector<Edge> cand;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            cand.emplace_back(u, v);
    std::shuffle(cand.begin(), cand.end(), rng);
    std::bernoulli_distribution coin(edge_prob);
    for (auto e : cand) {
        if (! coin(rng))
            continue;
        for (auto & part : lay.parts) {
            part.push_back(e);
            if (detail::part_violations(pos, part, kind) == 0) {
                g.add_edge(e.first, e.second);
                break;
            }
            part.pop_back();
        }
    }
    return {g, lay};
}

}
