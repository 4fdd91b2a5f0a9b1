#pragma once

#include "matrix.hpp"

#include <cmath>
#include <memory>
#include <set>

namespace twinwidth {

// Neat: every zone is all-r, or r-free and not mixed.
inline auto is_neat(const TriMatrix & m, const Division & d) -> bool
{
    auto rp = parts_of(d.row_cuts, m.rows());
    auto cp = parts_of(d.col_cuts, m.cols());
    for (auto r : rp)
        for (auto c : cp) {
            bool all_red = true, any_red = false;
            for (std::size_t i = r.begin; i < r.end; ++i)
                for (std::size_t j = c.begin; j < c.end; ++j) {
                    bool red = m.at(i, j) == Entry::red;
                    all_red = all_red && red;
                    any_red = any_red || red;
                }
            if (all_red)
                continue;
            if (any_red || classify(m, r, c) == ZoneKind::mixed)
                return false;
        }
    return true;
}

inline auto zone_all_red(const TriMatrix & m, Range r, Range c) -> bool
{
    for (std::size_t i = r.begin; i < r.end; ++i)
        for (std::size_t j = c.begin; j < c.end; ++j)
            if (m.at(i, j) != Entry::red)
                return false;
    return true;
}

// Mixed zones plus mixed cuts met by row part `index`.
inline auto row_mixed_value(const TriMatrix & m, const Division & d, std::size_t index) -> std::size_t
{
    auto rp = parts_of(d.row_cuts, m.rows());
    auto cp = parts_of(d.col_cuts, m.cols());
    auto r = rp.at(index);
    std::size_t value = 0;
    std::vector<bool> mixed(cp.size());
    for (std::size_t j = 0; j < cp.size(); ++j) {
        mixed[j] = zone_all_red(m, r, cp[j]);
        value += mixed[j];
    }
    for (std::size_t j = 0; j + 1 < cp.size(); ++j) {
        if (mixed[j] || mixed[j + 1])
            continue;
        if (zone_has_zero_one_corner(m, r, Range{cp[j].end - 1, cp[j + 1].begin + 1}))
            ++value;
    }
    return value;
}

inline auto col_mixed_value(const TriMatrix & m, const Division & d, std::size_t index) -> std::size_t
{
    return row_mixed_value(m.transpose(), Division{d.col_cuts, d.row_cuts}, index);
}

inline auto distinct_columns(const TriMatrix & m, Range cols) -> std::size_t
{
    std::set<std::vector<Entry>> seen;
    for (std::size_t j = cols.begin; j < cols.end; ++j) {
        std::vector<Entry> col(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            col[i] = m.at(i, j);
        seen.insert(std::move(col));
    }
    return seen.size();
}

// Symmetric matrix with a symmetric neat division.
class NeatDivision {
public:
    NeatDivision(TriMatrix m, std::vector<std::size_t> cuts) : m_(std::move(m)), cuts_(std::move(cuts))
    {
        if (! m_.is_symmetric())
            throw Error("neat division needs a symmetric matrix");
        parts_of(cuts_, m_.rows());
        if (! is_neat(m_, division()))
            throw Error("division is not neat");
    }

    static auto finest(TriMatrix m) -> NeatDivision
    {
        auto n = m.rows();
        return NeatDivision(std::move(m), finest_cuts(n));
    }

    auto matrix() const -> const TriMatrix & { return m_; }
    auto cuts() const -> const std::vector<std::size_t> & { return cuts_; }
    auto division() const -> Division { return {cuts_, cuts_}; }
    auto parts() const -> std::vector<Range> { return parts_of(cuts_, m_.rows()); }
    auto part_count() const -> std::size_t { return m_.rows() == 0 ? 0 : cuts_.size() + 1; }
    auto dim() const -> std::size_t { return m_.rows(); }

    auto mixed_value(std::size_t part) const -> std::size_t { return row_mixed_value(m_, division(), part); }

    auto max_mixed_value() const -> std::size_t
    {
        std::size_t best = 0;
        for (std::size_t i = 0; i < part_count(); ++i)
            best = std::max(best, mixed_value(i));
        return best;
    }

    auto max_part_size() const -> std::size_t
    {
        std::size_t best = 0;
        for (auto p : parts())
            best = std::max(best, p.size());
        return best;
    }

    // Column part average of mixed values.
    auto average_mixed_value() const -> double
    {
        if (part_count() == 0)
            return 0.0;
        double sum = 0;
        for (std::size_t i = 0; i < part_count(); ++i)
            sum += static_cast<double>(col_mixed_value(m_, division(), i));
        return sum / static_cast<double>(part_count());
    }

private:
    friend auto symmetric_fusion(const NeatDivision &, std::size_t) -> NeatDivision;
    friend auto delete_duplicate(const NeatDivision &, std::size_t, std::size_t) -> NeatDivision;
    friend auto delete_columns(const NeatDivision &, std::vector<std::size_t>) -> NeatDivision;

    struct Unchecked {};
    NeatDivision(Unchecked, TriMatrix m, std::vector<std::size_t> cuts) : m_(std::move(m)), cuts_(std::move(cuts)) {}

    TriMatrix m_;
    std::vector<std::size_t> cuts_;
};

// Merges parts i and i+1 on both sides, then fills with r every zone that
// holds an r entry or a 0,1-corner.
inline auto symmetric_fusion(const NeatDivision & nd, std::size_t i) -> NeatDivision
{
    if (i + 1 >= nd.part_count())
        throw Error("no consecutive part to fuse with part " + std::to_string(i));
    auto cuts = nd.cuts_;
    cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(i));
    TriMatrix m = nd.m_;
    auto parts = parts_of(cuts, m.rows());
    auto merged = parts[i];
    auto fill = [&](Range r, Range c) {
        for (std::size_t a = r.begin; a < r.end; ++a)
            for (std::size_t b = c.begin; b < c.end; ++b)
                m.set(a, b, Entry::red);
    };
    // Decisions read the pre-fill matrix, so collect first.
    std::vector<std::pair<Range, Range>> zones;
    for (auto p : parts) {
        zones.emplace_back(p, merged);
        if (p != merged)
            zones.emplace_back(merged, p);
    }
    std::vector<bool> hit(zones.size());
    for (std::size_t z = 0; z < zones.size(); ++z)
        hit[z] = zone_has_red(m, zones[z].first, zones[z].second) ||
            zone_has_zero_one_corner(m, zones[z].first, zones[z].second);
    for (std::size_t z = 0; z < zones.size(); ++z)
        if (hit[z])
            fill(zones[z].first, zones[z].second);
    return NeatDivision(NeatDivision::Unchecked{}, std::move(m), std::move(cuts));
}

// Removes a column equal to another column of its part, with its row.
inline auto delete_duplicate(const NeatDivision & nd, std::size_t col, std::size_t row) -> NeatDivision
{
    if (col != row)
        throw Error("row must be the symmetric partner of the column");
    auto parts = nd.parts();
    auto part = std::find_if(parts.begin(), parts.end(), [&](Range p) { return p.begin <= col && col < p.end; });
    if (part == parts.end())
        throw Error("column out of range");
    bool twin = false;
    for (std::size_t j = part->begin; j < part->end && ! twin; ++j)
        twin = j != col && nd.m_.column_equal(j, col);
    if (! twin)
        throw Error("column " + std::to_string(col) + " has no duplicate in its part");
    return delete_columns(nd, {col});
}

// Removes columns (and matching rows) without the duplicate check.
inline auto delete_columns(const NeatDivision & nd, std::vector<std::size_t> cols) -> NeatDivision
{
    std::sort(cols.begin(), cols.end(), std::greater<>());
    TriMatrix m = nd.m_;
    auto parts = nd.parts();
    std::vector<std::size_t> sizes;
    for (auto p : parts)
        sizes.push_back(p.size());
    for (auto c : cols) {
        m.erase_row(c);
        m.erase_col(c);
        for (std::size_t k = 0; k < parts.size(); ++k)
            if (parts[k].begin <= c && c < parts[k].end)
                --sizes[k];
    }
    std::vector<std::size_t> cuts;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] == 0)
            continue;
        if (pos > 0)
            cuts.push_back(pos);
        pos += sizes[k];
    }
    return NeatDivision(NeatDivision::Unchecked{}, std::move(m), std::move(cuts));
}

struct CoarsenParams {
    std::size_t d = 4;
    std::size_t mv_cap = 4;
    std::size_t ps_cap = 8;
    // Parts of at least this size are large and never fused.
    std::size_t large_threshold = 5;
    // Stop fusing once this many large parts exist; 0 fuses until stuck.
    std::size_t quota = 0;
    SearchLimits search;

    auto validate() const -> void
    {
        if (mv_cap < 1)
            throw Error("mixed value cap must be at least 1");
        if (large_threshold > ps_cap)
            throw Error("large threshold cannot exceed the part size cap");
        if (large_threshold < 2)
            throw Error("large threshold must be at least 2");
        if (d < 1)
            throw Error("mixed minor order must be positive");
    }
};

// 8/3 (t+1)^2 2^{4t}.
inline auto marcus_tardos_constant(unsigned t) -> long double
{
    return 8.0L / 3.0L * (t + 1.0L) * (t + 1.0L) * std::pow(2.0L, 4.0L * t);
}

inline auto theoretical_mixed_value_cap(unsigned d) -> long double { return 4.0L * marcus_tardos_constant(d); }

inline auto theoretical_part_size_cap_log2(unsigned d) -> long double { return 4.0L * marcus_tardos_constant(d) + 2.0L; }

struct MembershipReport {
    bool in_class = false;
    std::size_t max_mixed_value = 0;
    std::size_t max_part_size = 0;
    // Unset when the matrix exceeds the search cap.
    std::optional<bool> mixed_minor_free;
    std::size_t red_number = 0;
    std::size_t red_bound = 0;
};

inline auto check_membership(const NeatDivision & nd, const CoarsenParams & p) -> MembershipReport
{
    p.validate();
    MembershipReport r;
    r.max_mixed_value = nd.max_mixed_value();
    r.max_part_size = nd.max_part_size();
    r.red_number = nd.matrix().red_number();
    r.red_bound = p.mv_cap * p.ps_cap;
    if (nd.dim() <= p.search.max_dim)
        r.mixed_minor_free = ! find_t_mixed_neat(nd.matrix(), nd.division(), p.d, p.search).has_value();
    r.in_class = r.max_mixed_value <= p.mv_cap && r.max_part_size <= p.ps_cap && r.mixed_minor_free != false;
    return r;
}

struct LargePart {
    std::size_t index = 0, size = 0, mixed_value = 0, distinct = 0;
    auto bound() const -> std::size_t { return std::size_t{1} << std::min<std::size_t>(mixed_value + 1, 63); }
};

struct CoarsenResult {
    NeatDivision division;
    // Kept column, deleted column; indices into division.matrix().
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t fusions = 0;
    bool twin_round = false;
    bool stalled = false;
    std::vector<LargePart> large_parts;
};

// Columns equal outside rows a and b.
inline auto twin_columns(const TriMatrix & m, std::size_t a, std::size_t b) -> bool
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (i != a && i != b && m.at(i, a) != m.at(i, b))
            return false;
    return true;
}

namespace detail {

    inline auto twin_pairs(const NeatDivision & nd, const CoarsenParams & p) -> std::vector<std::pair<std::size_t, std::size_t>>
    {
        auto & m = nd.matrix();
        std::vector<std::pair<std::size_t, std::size_t>> out;
        std::vector<std::size_t> deleted;
        std::vector<bool> used(nd.dim(), false);
        for (std::size_t a = 0; a < nd.dim(); ++a) {
            if (used[a])
                continue;
            for (std::size_t b = a + 1; b < nd.dim(); ++b) {
                if (used[b] || ! twin_columns(m, a, b))
                    continue;
                deleted.push_back(b);
                auto trial = delete_columns(nd, deleted);
                if (trial.max_mixed_value() > p.mv_cap) {
                    deleted.pop_back();
                    continue;
                }
                used[a] = used[b] = true;
                out.emplace_back(a, b);
                break;
            }
        }
        return out;
    }

}

// One round: take twin columns when deleting them keeps the class, else fuse
// the leftmost admissible pair of small parts until no fusion remains (or the
// quota of large parts is met), then pick the first identical pair of columns
// in every part.
inline auto greedy_coarsen(const NeatDivision & nd, const CoarsenParams & p) -> CoarsenResult
{
    p.validate();
    CoarsenResult res{nd, {}, 0, false, false, {}};
    if (auto twins = detail::twin_pairs(nd, p); ! twins.empty()) {
        res.pairs = std::move(twins);
        res.twin_round = true;
        return res;
    }
    auto is_large = [&](Range r) { return r.size() >= p.large_threshold; };
    NeatDivision work = nd;
    while (true) {
        auto parts = work.parts();
        if (p.quota > 0 &&
            static_cast<std::size_t>(std::count_if(parts.begin(), parts.end(), is_large)) >= p.quota)
            break;
        bool fused = false;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            if (is_large(parts[i]) || is_large(parts[i + 1]))
                continue;
            if (parts[i].size() + parts[i + 1].size() > p.ps_cap)
                continue;
            auto cand = symmetric_fusion(work, i);
            if (cand.mixed_value(i) > p.mv_cap)
                continue;
            work = std::move(cand);
            ++res.fusions;
            fused = true;
            break;
        }
        if (! fused) {
            res.stalled = p.quota > 0;
            break;
        }
    }
    auto & m = work.matrix();
    auto parts = work.parts();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto part = parts[k];
        if (is_large(part))
            res.large_parts.push_back({k, part.size(), work.mixed_value(k), distinct_columns(m, part)});
        bool got = false;
        for (std::size_t a = part.begin; a < part.end && ! got; ++a)
            for (std::size_t b = a + 1; b < part.end && ! got; ++b)
                if (m.column_equal(a, b)) {
                    res.pairs.emplace_back(a, b);
                    got = true;
                }
    }
    if (res.pairs.empty())
        res.stalled = true;
    res.division = std::move(work);
    return res;
}

inline auto trigraph_from_matrix(const TriMatrix & m) -> Trigraph
{
    if (! m.is_symmetric())
        throw Error("matrix is not symmetric");
    Trigraph g(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.at(i, i) != Entry::zero)
            throw Error("adjacency matrix needs a zero diagonal");
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m.at(i, j) != Entry::zero)
                g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j),
                    m.at(i, j) == Entry::one ? Color::black : Color::red);
    }
    return g;
}

struct ExtractRound {
    std::size_t dim = 0, pairs = 0, fusions = 0;
    bool twin_round = false;
    std::size_t max_mixed_value = 0, max_part_size = 0, red_number = 0, stage_red_degree = 0;
};

struct ExtractResult {
    ParallelSequence sequence;
    std::size_t width = 0;
    std::vector<ExtractRound> rounds;
    std::size_t tail_steps = 0;
    MembershipReport initial;
    std::size_t large_parts_checked = 0;
    std::size_t distinct_bound_violations = 0;
    std::size_t red_bound_violations = 0;
};

class Stall : public Error {
public:
    using Error::Error;
};

// Coarsen, contract the pairs found, repeat; once the matrix is no larger
// than the part size cap and no pair is found, finish one contraction at a
// time. Throws Stall when a larger matrix yields no pair.
inline auto extract_parallel_sequence(const Trigraph & g, const std::vector<Vertex> & order, const CoarsenParams & p)
    -> ExtractResult
{
    p.validate();
    ExtractResult res;
    auto nd = NeatDivision::finest(adjacency_matrix(g, order));
    res.initial = check_membership(nd, p);
    std::vector<Vertex> ids = order;
    Trigraph h = g;
    res.width = h.max_red_degree();
    while (nd.dim() > 1) {
        auto round = greedy_coarsen(nd, p);
        if (round.pairs.empty()) {
            if (nd.dim() > p.ps_cap)
                throw Stall("coarsening stalled at dimension " + std::to_string(nd.dim()));
            break;
        }
        ExtractRound rec;
        rec.dim = nd.dim();
        rec.pairs = round.pairs.size();
        rec.fusions = round.fusions;
        rec.twin_round = round.twin_round;
        rec.max_mixed_value = round.division.max_mixed_value();
        rec.max_part_size = round.division.max_part_size();
        rec.red_number = round.division.matrix().red_number();
        for (auto & lp : round.large_parts) {
            ++res.large_parts_checked;
            if (lp.distinct > lp.bound())
                ++res.distinct_bound_violations;
        }
        ParallelStep step;
        std::vector<std::size_t> gone;
        for (auto [a, b] : round.pairs) {
            step.pairs.emplace_back(ids[a], ids[b]);
            ids[a] = std::min(ids[a], ids[b]);
            gone.push_back(b);
        }
        nd = delete_columns(round.division, gone);
        std::sort(gone.begin(), gone.end(), std::greater<>());
        for (auto b : gone)
            ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(b));
        rec.red_number = std::max(rec.red_number, nd.matrix().red_number());
        if (rec.red_number > rec.max_mixed_value * rec.max_part_size || rec.red_number > p.mv_cap * p.ps_cap)
            ++res.red_bound_violations;
        h = apply_parallel(h, step);
        rec.stage_red_degree = h.max_red_degree();
        res.width = std::max(res.width, rec.stage_red_degree);
        res.sequence.push_back(std::move(step));
        res.rounds.push_back(rec);
    }
    // Tail: cheapest single contraction, lexicographic tie break.
    while (h.order() > 1) {
        auto vs = h.vertices();
        Edge best{vs[0], vs[1]};
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                auto c = red_degree_after(h, vs[i], vs[j]);
                if (c < best_cost) {
                    best_cost = c;
                    best = {vs[i], vs[j]};
                }
            }
        ParallelStep step{{best}};
        h = apply_parallel(h, step);
        res.width = std::max(res.width, h.max_red_degree());
        res.sequence.push_back(std::move(step));
        ++res.tail_steps;
    }
    return res;
}

inline auto extract_parallel_sequence(const TriMatrix & m, const CoarsenParams & p) -> ExtractResult
{
    auto g = trigraph_from_matrix(m);
    return extract_parallel_sequence(g, g.vertices(), p);
}

// Bounded look at the tree of contractions offered by successive rounds:
// every pair found in a round is a child.
struct VersatileNode {
    std::size_t dim = 0;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::vector<VersatileNode> children;
};

inline auto versatile_tree(const NeatDivision & nd, const CoarsenParams & p, unsigned depth) -> VersatileNode
{
    if (depth > 3)
        throw Error("versatile tree export is capped at depth 3");
    VersatileNode root;
    root.dim = nd.dim();
    if (depth == 0 || nd.dim() <= 1)
        return root;
    auto round = greedy_coarsen(nd, p);
    for (auto [a, b] : round.pairs) {
        auto child = versatile_tree(delete_columns(round.division, {b}), p, depth - 1);
        child.pair = std::make_pair(a, b);
        root.children.push_back(std::move(child));
    }
    return root;
}

}
