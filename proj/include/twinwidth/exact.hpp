#pragma once

#include "trigraph.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

namespace twinwidth {

struct ExactLimits {
    std::size_t max_vertices = 10;
    // 0 means unbounded.
    std::size_t max_nodes = 0;
    // Largest current vertex count for which states are keyed up to isomorphism.
    std::size_t canonical_up_to = 8;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

struct ExactResult {
    std::size_t width = 0;
    ContractionSequence sequence;
    std::size_t nodes = 0;
};

namespace detail {

    // Bitset trigraph over local indices 0..n-1 (n <= 64).
    struct BitState {
        std::uint64_t alive = 0;
        std::array<std::uint64_t, 64> black{}, red{};
    };

    inline auto bit(unsigned i) -> std::uint64_t { return std::uint64_t{1} << i; }

    class ExactSearch {
    public:
        ExactSearch(const Trigraph & g, std::size_t d, const ExactLimits & lim) :
            d_(d), lim_(lim), ids_(g.vertices())
        {
            n_ = static_cast<unsigned>(ids_.size());
            for (unsigned i = 0; i < n_; ++i) {
                start_.alive |= bit(i);
                for (auto & [z, c] : g.neighbours(ids_[i])) {
                    unsigned j = static_cast<unsigned>(std::lower_bound(ids_.begin(), ids_.end(), z) - ids_.begin());
                    (c == Color::red ? start_.red[i] : start_.black[i]) |= bit(j);
                }
            }
        }

        auto run() -> bool
        {
            for (unsigned i = 0; i < n_; ++i)
                if (static_cast<std::size_t>(std::popcount(start_.red[i])) > d_)
                    return false;
            return dfs(start_);
        }

        auto witness() const -> ContractionSequence
        {
            ContractionSequence out;
            for (auto it = path_.rbegin(); it != path_.rend(); ++it)
                out.push_back(make_step(ids_[it->first], ids_[it->second]));
            return out;
        }

        auto nodes() const -> std::size_t { return nodes_; }

    private:
        // Applies the contraction if it keeps every red degree within d.
        auto try_contract(const BitState & s, unsigned u, unsigned v, BitState & out) const -> bool
        {
            std::uint64_t drop = bit(u) | bit(v);
            std::uint64_t nu = (s.black[u] | s.red[u]) & ~drop, nv = (s.black[v] | s.red[v]) & ~drop;
            std::uint64_t red = (nu ^ nv) | ((nu & nv) & (s.red[u] | s.red[v]));
            std::uint64_t black = s.black[u] & s.black[v] & ~drop;
            if (static_cast<std::size_t>(std::popcount(red)) > d_)
                return false;
            for (std::uint64_t m = red; m; m &= m - 1) {
                unsigned z = static_cast<unsigned>(std::countr_zero(m));
                std::uint64_t rz = (s.red[z] & ~drop) | bit(u);
                if (static_cast<std::size_t>(std::popcount(rz)) > d_)
                    return false;
            }
            out = s;
            out.alive &= ~bit(v);
            out.black[v] = out.red[v] = 0;
            out.black[u] = black;
            out.red[u] = red;
            for (std::uint64_t m = out.alive & ~bit(u); m; m &= m - 1) {
                unsigned z = static_cast<unsigned>(std::countr_zero(m));
                out.black[z] &= ~drop;
                out.red[z] &= ~drop;
                if (black & bit(z))
                    out.black[z] |= bit(u);
                if (red & bit(z))
                    out.red[z] |= bit(u);
            }
            return true;
        }

        auto find_twins(const BitState & s, unsigned & tu, unsigned & tv) const -> bool
        {
            for (std::uint64_t a = s.alive; a; a &= a - 1) {
                unsigned u = static_cast<unsigned>(std::countr_zero(a));
                for (std::uint64_t b = a & (a - 1); b; b &= b - 1) {
                    unsigned v = static_cast<unsigned>(std::countr_zero(b));
                    std::uint64_t drop = bit(u) | bit(v);
                    if ((s.black[u] & ~drop) == (s.black[v] & ~drop) && (s.red[u] & ~drop) == (s.red[v] & ~drop)) {
                        tu = u;
                        tv = v;
                        return true;
                    }
                }
            }
            return false;
        }

        auto key(const BitState & s) const -> std::string
        {
            unsigned m = static_cast<unsigned>(std::popcount(s.alive));
            std::vector<unsigned> live;
            for (std::uint64_t a = s.alive; a; a &= a - 1)
                live.push_back(static_cast<unsigned>(std::countr_zero(a)));
            if (m <= lim_.canonical_up_to) {
                if (auto k = canonical_key(s, live); ! k.empty())
                    return k;
            }
            std::string k = "L";
            auto put = [&](std::uint64_t x) { k.append(reinterpret_cast<const char *>(&x), sizeof x); };
            put(s.alive);
            for (auto v : live) {
                put(s.black[v]);
                put(s.red[v]);
            }
            return k;
        }

        // Smallest adjacency string over orderings that respect a refined
        // degree partition. Empty when the partition leaves too many orderings.
        auto canonical_key(const BitState & s, const std::vector<unsigned> & live) const -> std::string
        {
            unsigned m = static_cast<unsigned>(live.size());
            std::vector<std::uint64_t> inv(m);
            for (unsigned i = 0; i < m; ++i)
                inv[i] = (std::uint64_t(std::popcount(s.black[live[i]])) << 8) | std::uint64_t(std::popcount(s.red[live[i]]));
            for (int round = 0; round < 2; ++round) {
                std::vector<std::uint64_t> next(m);
                for (unsigned i = 0; i < m; ++i) {
                    std::vector<std::uint64_t> nb;
                    for (unsigned j = 0; j < m; ++j) {
                        if (s.black[live[i]] & bit(live[j]))
                            nb.push_back(inv[j] * 2);
                        if (s.red[live[i]] & bit(live[j]))
                            nb.push_back(inv[j] * 2 + 1);
                    }
                    std::sort(nb.begin(), nb.end());
                    std::uint64_t h = inv[i] * 0x9E3779B97F4A7C15ull;
                    for (auto x : nb)
                        h = (h ^ x) * 0x100000001B3ull + 0x7F4A7C15u;
                    next[i] = h;
                }
                inv = std::move(next);
            }
            std::vector<unsigned> order(m);
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return inv[a] < inv[b]; });
            std::vector<std::pair<unsigned, unsigned>> cells;
            std::size_t orderings = 1;
            for (unsigned i = 0; i < m;) {
                unsigned j = i;
                while (j < m && inv[order[j]] == inv[order[i]])
                    ++j;
                cells.emplace_back(i, j);
                for (unsigned f = 2; f <= j - i; ++f)
                    orderings *= f;
                i = j;
            }
            if (orderings > 5040)
                return {};
            auto encode = [&](const std::vector<unsigned> & ord) {
                std::string k(m * (m - 1) / 2 + 1, '\0');
                std::size_t p = 0;
                for (unsigned a = 0; a < m; ++a)
                    for (unsigned b = a + 1; b < m; ++b) {
                        unsigned x = live[ord[a]], y = live[ord[b]];
                        k[p++] = static_cast<char>((s.black[x] & bit(y)) ? 1 : (s.red[x] & bit(y)) ? 2 : 0);
                    }
                k[p] = static_cast<char>(m);
                return k;
            };
            for (auto [a, b] : cells)
                std::sort(order.begin() + a, order.begin() + b);
            std::string best = encode(order);
            // Walk every combination of per-cell permutations.
            while (true) {
                std::size_t c = 0;
                for (; c < cells.size(); ++c) {
                    auto [a, b] = cells[c];
                    if (std::next_permutation(order.begin() + a, order.begin() + b))
                        break;
                }
                if (c == cells.size())
                    break;
                best = std::min(best, encode(order));
            }
            std::string inv_part;
            for (unsigned i = 0; i < m; ++i) {
                auto x = inv[order[i]];
                inv_part.append(reinterpret_cast<const char *>(&x), sizeof x);
            }
            return "C" + inv_part + best;
        }

        auto dfs(const BitState & s) -> bool
        {
            if (++nodes_, lim_.max_nodes && nodes_ > lim_.max_nodes)
                throw BudgetExceeded("exact search exceeded node budget");
            if (std::popcount(s.alive) <= 1)
                return true;
            unsigned tu, tv;
            BitState next;
            if (find_twins(s, tu, tv)) {
                try_contract(s, tu, tv, next);
                if (dfs(next)) {
                    path_.emplace_back(tu, tv);
                    return true;
                }
                return false;
            }
            auto k = key(s);
            if (failed_.contains(k))
                return false;
            for (std::uint64_t a = s.alive; a; a &= a - 1) {
                unsigned u = static_cast<unsigned>(std::countr_zero(a));
                for (std::uint64_t b = a & (a - 1); b; b &= b - 1) {
                    unsigned v = static_cast<unsigned>(std::countr_zero(b));
                    if (! try_contract(s, u, v, next))
                        continue;
                    if (dfs(next)) {
                        path_.emplace_back(u, v);
                        return true;
                    }
                }
            }
            failed_.insert(std::move(k));
            return false;
        }

        std::size_t d_;
        ExactLimits lim_;
        std::vector<Vertex> ids_;
        unsigned n_ = 0;
        BitState start_;
        std::size_t nodes_ = 0;
        std::unordered_set<std::string> failed_;
        std::vector<std::pair<unsigned, unsigned>> path_;
    };

    inline auto check_size(const Trigraph & g, const ExactLimits & lim) -> void
    {
        if (g.order() > lim.max_vertices || g.order() > 64)
            throw Error("exact search limited to " + std::to_string(std::min<std::size_t>(lim.max_vertices, 64)) +
                " vertices, got " + std::to_string(g.order()));
    }

}

// Witness d-sequence if one exists.
inline auto tww_decide(const Trigraph & g, std::size_t d, const ExactLimits & lim = {})
    -> std::optional<ContractionSequence>
{
    detail::check_size(g, lim);
    detail::ExactSearch search(g, d, lim);
    if (! search.run())
        return std::nullopt;
    return search.witness();
}

inline auto tww_exact(const Trigraph & g, const ExactLimits & lim = {}) -> ExactResult
{
    detail::check_size(g, lim);
    ExactResult r;
    for (std::size_t d = g.max_red_degree();; ++d) {
        detail::ExactSearch search(g, d, lim);
        bool ok = search.run();
        r.nodes += search.nodes();
        if (ok) {
            r.width = d;
            r.sequence = search.witness();
            return r;
        }
    }
}

// Graph on 0..n-1 whose edges are the set bits of mask, pairs taken in
// lexicographic order (0,1), (0,2), ..., (n-2,n-1).
inline auto graph_from_mask(std::size_t n, std::uint64_t mask) -> Trigraph
{
    Trigraph g(n);
    unsigned bitpos = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++bitpos)
            if ((mask >> bitpos) & 1u)
                g.add_edge(u, v);
    return g;
}

// Number of labeled graphs on n vertices with twin-width at most d.
inline auto census(std::size_t n, std::size_t d, unsigned threads = 0) -> std::uint64_t
{
    if (n < 1 || n > 6)
        throw Error("census needs 1 <= n <= 6");
    std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    if (threads == 0)
        threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::atomic<std::uint64_t> count{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            std::uint64_t local = 0;
            for (std::uint64_t m = t; m < total; m += threads)
                local += tww_decide(graph_from_mask(n, m), d).has_value();
            count += local;
        });
    for (auto & th : pool)
        th.join();
    return count.load();
}

}
