#pragma once

#include "trigraph.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace twinwidth {

enum class Entry : std::uint8_t { zero = 0, one = 1, red = 2 };

inline auto entry_char(Entry e) -> char { return e == Entry::zero ? '0' : e == Entry::one ? '1' : 'r'; }

inline auto entry_from_char(char c) -> Entry
{
    switch (c) {
        case '0': return Entry::zero;
        case '1': return Entry::one;
        case 'r': return Entry::red;
    }
    throw FormatError(std::string("bad matrix symbol '") + c + "'");
}

class TriMatrix {
public:
    TriMatrix() = default;
    TriMatrix(std::size_t rows, std::size_t cols, Entry fill = Entry::zero) :
        rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    // One string per row over {0,1,r}.
    static auto from_rows(const std::vector<std::string> & rows) -> TriMatrix
    {
        TriMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw FormatError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m.set(i, j, entry_from_char(rows[i][j]));
        }
        return m;
    }

    auto rows() const -> std::size_t { return rows_; }
    auto cols() const -> std::size_t { return cols_; }

    auto at(std::size_t i, std::size_t j) const -> Entry { return data_[i * cols_ + j]; }
    auto set(std::size_t i, std::size_t j, Entry e) -> void { data_[i * cols_ + j] = e; }

    auto is_symmetric() const -> bool
    {
        if (rows_ != cols_)
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i))
                    return false;
        return true;
    }

    auto transpose() const -> TriMatrix
    {
        TriMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.set(j, i, at(i, j));
        return t;
    }

    auto submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const -> TriMatrix
    {
        TriMatrix s(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j)
                s.set(i - r0, j - c0, at(i, j));
        return s;
    }

    auto column_equal(std::size_t a, std::size_t b) const -> bool
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if (at(i, a) != at(i, b))
                return false;
        return true;
    }

    auto erase_row(std::size_t r) -> void
    {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
        --rows_;
    }

    auto erase_col(std::size_t c) -> void
    {
        std::vector<Entry> next;
        next.reserve(rows_ * (cols_ - 1));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != c)
                    next.push_back(at(i, j));
        data_ = std::move(next);
        --cols_;
    }

    // Largest number of r entries in a row or column.
    auto red_number() const -> std::size_t
    {
        std::size_t best = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            std::size_t c = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                c += at(i, j) == Entry::red;
            best = std::max(best, c);
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < rows_; ++i)
                c += at(i, j) == Entry::red;
            best = std::max(best, c);
        }
        return best;
    }

    auto to_rows() const -> std::vector<std::string>
    {
        std::vector<std::string> out(rows_, std::string(cols_, '0'));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i][j] = entry_char(at(i, j));
        return out;
    }

    friend auto operator==(const TriMatrix &, const TriMatrix &) -> bool = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Entry> data_;
};

struct Range {
    std::size_t begin = 0, end = 0;
    auto size() const -> std::size_t { return end - begin; }
    friend auto operator==(const Range &, const Range &) -> bool = default;
};

// Cut positions strictly inside (0, n); part i spans [cut[i-1], cut[i]).
struct Division {
    std::vector<std::size_t> row_cuts, col_cuts;
    friend auto operator==(const Division &, const Division &) -> bool = default;
};

inline auto parts_of(const std::vector<std::size_t> & cuts, std::size_t n) -> std::vector<Range>
{
    std::vector<Range> out;
    std::size_t prev = 0;
    for (auto c : cuts) {
        if (c <= prev || c >= n)
            throw Error("cut positions must be strictly increasing inside the matrix");
        out.push_back({prev, c});
        prev = c;
    }
    if (n > 0)
        out.push_back({prev, n});
    return out;
}

inline auto finest_cuts(std::size_t n) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < n; ++i)
        out.push_back(i);
    return out;
}

inline auto is_symmetric(const Division & d) -> bool { return d.row_cuts == d.col_cuts; }

// Does `coarse` only use cuts of `fine`?
inline auto coarsens(const Division & coarse, const Division & fine) -> bool
{
    auto sub = [](const std::vector<std::size_t> & a, const std::vector<std::size_t> & b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    return sub(coarse.row_cuts, fine.row_cuts) && sub(coarse.col_cuts, fine.col_cuts);
}

enum class ZoneKind { constant, horizontal, vertical, mixed };

inline auto zone_kind_name(ZoneKind k) -> const char *
{
    switch (k) {
        case ZoneKind::constant: return "constant";
        case ZoneKind::horizontal: return "horizontal";
        case ZoneKind::vertical: return "vertical";
        case ZoneKind::mixed: return "mixed";
    }
    return "?";
}

// Horizontal: all columns equal. Vertical: all rows equal.
inline auto classify(const TriMatrix & m, Range rows, Range cols) -> ZoneKind
{
    bool columns_equal = true, rows_equal = true;
    for (std::size_t i = rows.begin; i < rows.end && columns_equal; ++i)
        for (std::size_t j = cols.begin + 1; j < cols.end; ++j)
            if (m.at(i, j) != m.at(i, cols.begin)) {
                columns_equal = false;
                break;
            }
    for (std::size_t j = cols.begin; j < cols.end && rows_equal; ++j)
        for (std::size_t i = rows.begin + 1; i < rows.end; ++i)
            if (m.at(i, j) != m.at(rows.begin, j)) {
                rows_equal = false;
                break;
            }
    if (columns_equal && rows_equal)
        return ZoneKind::constant;
    if (columns_equal)
        return ZoneKind::horizontal;
    if (rows_equal)
        return ZoneKind::vertical;
    return ZoneKind::mixed;
}

// Is the 2x2 window with top-left (i, j) mixed?
inline auto corner_at(const TriMatrix & m, std::size_t i, std::size_t j) -> bool
{
    auto a = m.at(i, j), b = m.at(i, j + 1), c = m.at(i + 1, j), d = m.at(i + 1, j + 1);
    bool rows_equal = a == c && b == d;
    bool cols_equal = a == b && c == d;
    return ! rows_equal && ! cols_equal;
}

inline auto zero_one_corner_at(const TriMatrix & m, std::size_t i, std::size_t j) -> bool
{
    for (auto e : {m.at(i, j), m.at(i, j + 1), m.at(i + 1, j), m.at(i + 1, j + 1)})
        if (e == Entry::red)
            return false;
    return corner_at(m, i, j);
}

inline auto find_corners(const TriMatrix & m, bool zero_one_only = false) -> std::vector<std::pair<std::size_t, std::size_t>>
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i + 1 < m.rows(); ++i)
        for (std::size_t j = 0; j + 1 < m.cols(); ++j)
            if (zero_one_only ? zero_one_corner_at(m, i, j) : corner_at(m, i, j))
                out.emplace_back(i, j);
    return out;
}

inline auto has_corner(const TriMatrix & m) -> bool { return ! find_corners(m).empty(); }

inline auto zone_has_zero_one_corner(const TriMatrix & m, Range rows, Range cols) -> bool
{
    for (std::size_t i = rows.begin; i + 1 < rows.end; ++i)
        for (std::size_t j = cols.begin; j + 1 < cols.end; ++j)
            if (zero_one_corner_at(m, i, j))
                return true;
    return false;
}

inline auto zone_has_red(const TriMatrix & m, Range rows, Range cols) -> bool
{
    for (std::size_t i = rows.begin; i < rows.end; ++i)
        for (std::size_t j = cols.begin; j < cols.end; ++j)
            if (m.at(i, j) == Entry::red)
                return true;
    return false;
}

inline auto zone_has_nonzero(const TriMatrix & m, Range rows, Range cols) -> bool
{
    for (std::size_t i = rows.begin; i < rows.end; ++i)
        for (std::size_t j = cols.begin; j < cols.end; ++j)
            if (m.at(i, j) != Entry::zero)
                return true;
    return false;
}

inline auto check_square(const TriMatrix & m, const Division & d) -> std::pair<std::vector<Range>, std::vector<Range>>
{
    auto rp = parts_of(d.row_cuts, m.rows());
    auto cp = parts_of(d.col_cuts, m.cols());
    if (rp.size() != cp.size())
        throw Error("division is not square");
    return {rp, cp};
}

// r counts as nonzero.
inline auto is_t_grid(const TriMatrix & m, const Division & d) -> bool
{
    auto [rp, cp] = check_square(m, d);
    for (auto r : rp)
        for (auto c : cp)
            if (! zone_has_nonzero(m, r, c))
                return false;
    return true;
}

inline auto is_t_mixed(const TriMatrix & m, const Division & d) -> bool
{
    auto [rp, cp] = check_square(m, d);
    for (auto r : rp)
        for (auto c : cp)
            if (classify(m, r, c) != ZoneKind::mixed)
                return false;
    return true;
}

// Mixed minor of a neatly divided matrix: coarsens the neat division and
// every zone holds an r entry or a 0,1-corner.
inline auto is_t_mixed_neat(const TriMatrix & m, const Division & neat, const Division & d) -> bool
{
    if (! coarsens(d, neat))
        return false;
    auto [rp, cp] = check_square(m, d);
    for (auto r : rp)
        for (auto c : cp)
            if (! zone_has_red(m, r, c) && ! zone_has_zero_one_corner(m, r, c))
                return false;
    return true;
}

inline auto adjacency_matrix(const Trigraph & g, const std::vector<Vertex> & order) -> TriMatrix
{
    auto vs = g.vertices();
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vs)
        throw Error("ordering is not a permutation of the vertices");
    TriMatrix m(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j)
            if (i != j) {
                auto c = g.color(order[i], order[j]);
                m.set(i, j, c == Color::none ? Entry::zero : c == Color::black ? Entry::one : Entry::red);
            }
    return m;
}

struct SearchLimits {
    std::size_t max_dim = 64;
};

namespace detail {

    // Witness item: occupies rows [r0, r1] and columns [c0, c1] (inclusive).
    struct Item {
        std::size_t r0, r1, c0, c1;
    };

    // Exact search for a (t,t)-division every zone of which contains an item.
    // Row cuts are enumerated with a monotone prune; column cuts are placed
    // greedily, closing a part as soon as every row part is served.
    class MinorSearch {
    public:
        MinorSearch(std::size_t rows, std::size_t cols, std::size_t t, std::vector<Item> items,
            std::vector<std::size_t> row_allowed, std::vector<std::size_t> col_allowed) :
            rows_(rows), cols_(cols), t_(t), items_(std::move(items)), row_allowed_(std::move(row_allowed)),
            col_allowed_(col_allowed.begin(), col_allowed.end())
        {
            col_ok_.assign(cols_ + 1, false);
            for (auto c : col_allowed_)
                col_ok_[c] = true;
            by_col_end_.assign(cols_, {});
            for (std::size_t k = 0; k < items_.size(); ++k)
                by_col_end_[items_[k].c1].push_back(k);
            row_part_.assign(rows_, 0);
        }

        auto run() -> std::optional<Division>
        {
            if (t_ == 0)
                throw Error("minor order must be positive");
            if (rows_ < t_ || cols_ < t_)
                return std::nullopt;
            cuts_.clear();
            if (extend(0))
                return found_;
            return std::nullopt;
        }

    private:
        // Greedy column pass using row parts 0..parts-1 over rows [0, limit).
        auto greedy(std::size_t parts, std::size_t limit, std::vector<std::size_t> * col_cuts) -> std::size_t
        {
            std::size_t done = 0, start = 0;
            std::vector<bool> served(parts, false);
            std::size_t served_count = 0;
            for (std::size_t c = 0; c < cols_; ++c) {
                for (auto k : by_col_end_[c]) {
                    auto & it = items_[k];
                    if (it.c0 < start || it.r1 >= limit)
                        continue;
                    std::size_t p = row_part_[it.r0];
                    if (row_part_[it.r1] != p || served[p])
                        continue;
                    served[p] = true;
                    ++served_count;
                }
                if (served_count == parts && col_ok_[c + 1] && c + 1 < cols_ && done + 1 < t_) {
                    ++done;
                    if (col_cuts)
                        col_cuts->push_back(c + 1);
                    start = c + 1;
                    std::fill(served.begin(), served.end(), false);
                    served_count = 0;
                }
            }
            if (served_count == parts)
                ++done;
            return done;
        }

        auto assign_rows(std::size_t upto) -> void
        {
            std::size_t p = 0, prev = 0;
            for (std::size_t k = 0; k <= cuts_.size(); ++k) {
                std::size_t end = k < cuts_.size() ? cuts_[k] : upto;
                for (std::size_t r = prev; r < end && r < rows_; ++r)
                    row_part_[r] = p;
                prev = end;
                ++p;
            }
        }

        auto extend(std::size_t from) -> bool
        {
            std::size_t placed = cuts_.size();
            if (placed + 1 == t_) {
                assign_rows(rows_);
                std::vector<std::size_t> col_cuts;
                if (greedy(t_, rows_, &col_cuts) >= t_) {
                    found_ = Division{cuts_, col_cuts};
                    return true;
                }
                return false;
            }
            for (std::size_t k = from; k < row_allowed_.size(); ++k) {
                std::size_t c = row_allowed_[k];
                // Leave room for the remaining parts.
                if (rows_ - c < t_ - placed - 1)
                    break;
                cuts_.push_back(c);
                assign_rows(c);
                if (greedy(placed + 1, c, nullptr) >= t_ && extend(k + 1))
                    return true;
                cuts_.pop_back();
            }
            return false;
        }

        std::size_t rows_, cols_, t_;
        std::vector<Item> items_;
        std::vector<std::size_t> row_allowed_;
        std::vector<std::size_t> col_allowed_;
        std::vector<bool> col_ok_;
        std::vector<std::vector<std::size_t>> by_col_end_;
        std::vector<std::size_t> row_part_;
        std::vector<std::size_t> cuts_;
        Division found_;
    };

    inline auto check_dim(const TriMatrix & m, const SearchLimits & lim) -> void
    {
        if (m.rows() > lim.max_dim || m.cols() > lim.max_dim)
            throw Error("matrix exceeds search dimension cap of " + std::to_string(lim.max_dim));
    }

    inline auto all_cuts(std::size_t n) -> std::vector<std::size_t> { return finest_cuts(n); }

}

inline auto find_t_grid(const TriMatrix & m, std::size_t t, const SearchLimits & lim = {}) -> std::optional<Division>
{
    detail::check_dim(m, lim);
    std::vector<detail::Item> items;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != Entry::zero)
                items.push_back({i, i, j, j});
    if (items.size() < t * t)
        return std::nullopt;
    detail::MinorSearch s(m.rows(), m.cols(), t, std::move(items), detail::all_cuts(m.rows()), detail::all_cuts(m.cols()));
    return s.run();
}

inline auto find_t_mixed(const TriMatrix & m, std::size_t t, const SearchLimits & lim = {}) -> std::optional<Division>
{
    detail::check_dim(m, lim);
    std::vector<detail::Item> items;
    for (auto [i, j] : find_corners(m))
        items.push_back({i, i + 1, j, j + 1});
    detail::MinorSearch s(m.rows(), m.cols(), t, std::move(items), detail::all_cuts(m.rows()), detail::all_cuts(m.cols()));
    return s.run();
}

// Mixed minor that coarsens the given neat division.
inline auto find_t_mixed_neat(const TriMatrix & m, const Division & neat, std::size_t t, const SearchLimits & lim = {})
    -> std::optional<Division>
{
    detail::check_dim(m, lim);
    std::vector<detail::Item> items;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) == Entry::red)
                items.push_back({i, i, j, j});
    for (auto [i, j] : find_corners(m, true))
        items.push_back({i, i + 1, j, j + 1});
    detail::MinorSearch s(m.rows(), m.cols(), t, std::move(items), neat.row_cuts, neat.col_cuts);
    return s.run();
}

}
