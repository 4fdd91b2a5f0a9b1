#pragma once

#include "codec.hpp"
#include "constructions.hpp"
#include "labeling.hpp"
#include "matrix.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace twinwidth {

namespace detail {

    // Non-empty lines with '#' comments stripped.
    inline auto content_lines(std::istream & in) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::string line;
        while (std::getline(in, line)) {
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                out.push_back(line);
        }
        return out;
    }

    template <class... T>
    auto parse_fields(const std::string & line, T &... out) -> void
    {
        std::istringstream s(line);
        ((s >> out) && ...);
        if (! s)
            throw FormatError("malformed line: " + line);
        std::string extra;
        if (s >> extra)
            throw FormatError("trailing data on line: " + line);
    }

    inline auto put_u32(std::ostream & out, std::uint32_t v) -> void
    {
        for (int i = 0; i < 4; ++i)
            out.put(static_cast<char>((v >> (8 * i)) & 0xFFu));
    }

    inline auto get_u32(std::istream & in) -> std::uint32_t
    {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            int c = in.get();
            if (c == EOF)
                throw FormatError("truncated binary header");
            v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
        }
        return v;
    }

    inline auto expect_magic(std::istream & in, const char * magic) -> void
    {
        char buf[4];
        if (! in.read(buf, 4) || std::string(buf, 4) != magic)
            throw FormatError(std::string("missing magic ") + magic);
    }

}

// "n m r", then m black edges and r red edges, one "u v" per line.
inline auto read_graph(std::istream & in) -> Trigraph
{
    auto lines = detail::content_lines(in);
    if (lines.empty())
        throw FormatError("empty graph file");
    std::size_t n, m, r;
    detail::parse_fields(lines[0], n, m, r);
    if (lines.size() != 1 + m + r)
        throw FormatError("graph file has " + std::to_string(lines.size() - 1) + " edge lines, header says " +
            std::to_string(m + r));
    Trigraph g(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        long long u, v;
        detail::parse_fields(lines[i], u, v);
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n || u == v)
            throw FormatError("bad edge: " + lines[i]);
        try {
            g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), i <= m ? Color::black : Color::red);
        }
        catch (const Error & e) {
            throw FormatError(e.what());
        }
    }
    return g;
}

inline auto write_graph(std::ostream & out, const Trigraph & g) -> void
{
    check_dense_ids(g);
    auto black = g.edges(Color::black), red = g.edges(Color::red);
    out << g.order() << ' ' << black.size() << ' ' << red.size() << '\n';
    for (auto [u, v] : black)
        out << u << ' ' << v << '\n';
    for (auto [u, v] : red)
        out << u << ' ' << v << '\n';
}

// One "c u v" per line.
inline auto read_sequence(std::istream & in) -> ContractionSequence
{
    ContractionSequence seq;
    for (auto & line : detail::content_lines(in)) {
        std::string tag;
        long long u, v;
        detail::parse_fields(line, tag, u, v);
        if (tag != "c" || u < 0 || v < 0)
            throw FormatError("bad sequence line: " + line);
        seq.push_back(make_step(static_cast<Vertex>(u), static_cast<Vertex>(v)));
    }
    return seq;
}

inline auto write_sequence(std::ostream & out, const ContractionSequence & seq) -> void
{
    for (auto & s : seq)
        out << "c " << s.u << ' ' << s.v << '\n';
}

// Steps separated by "--", one "u v" pair per line.
inline auto read_parallel(std::istream & in) -> ParallelSequence
{
    ParallelSequence seq;
    ParallelStep cur;
    for (auto & line : detail::content_lines(in)) {
        if (line.find("--") != std::string::npos) {
            seq.push_back(std::move(cur));
            cur = {};
            continue;
        }
        long long u, v;
        detail::parse_fields(line, u, v);
        if (u < 0 || v < 0)
            throw FormatError("bad pair: " + line);
        cur.pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (! cur.pairs.empty())
        seq.push_back(std::move(cur));
    return seq;
}

inline auto write_parallel(std::ostream & out, const ParallelSequence & seq) -> void
{
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0)
            out << "--\n";
        for (auto [u, v] : seq[i].pairs)
            out << u << ' ' << v << '\n';
    }
}

// "n m", then n rows over {0,1,r}; whitespace inside a row is ignored.
inline auto read_matrix(std::istream & in) -> TriMatrix
{
    auto lines = detail::content_lines(in);
    if (lines.empty())
        throw FormatError("empty matrix file");
    std::size_t n, m;
    detail::parse_fields(lines[0], n, m);
    if (lines.size() != n + 1)
        throw FormatError("matrix row count does not match header");
    std::vector<std::string> rows;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string row;
        for (char c : lines[i])
            if (c != ' ' && c != '\t' && c != '\r')
                row.push_back(c);
        if (row.size() != m)
            throw FormatError("matrix row " + std::to_string(i) + " has wrong length");
        rows.push_back(row);
    }
    if (n == 0)
        return TriMatrix(0, m);
    return TriMatrix::from_rows(rows);
}

inline auto write_matrix(std::ostream & out, const TriMatrix & m) -> void
{
    out << m.rows() << ' ' << m.cols() << '\n';
    for (auto & row : m.to_rows())
        out << row << '\n';
}

// One vertex id per line.
inline auto read_order(std::istream & in) -> std::vector<Vertex>
{
    std::vector<Vertex> out;
    for (auto & line : detail::content_lines(in)) {
        long long v;
        detail::parse_fields(line, v);
        if (v < 0)
            throw FormatError("negative vertex id");
        out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

inline auto write_order(std::ostream & out, const std::vector<Vertex> & order) -> void
{
    for (auto v : order)
        out << v << '\n';
}

// "TWL1", n, d, k as little-endian u32, then per vertex its id (u32) and its
// label padded to whole bytes.
inline auto write_labels(std::ostream & out, const Labeling & lab) -> void
{
    out.write("TWL1", 4);
    detail::put_u32(out, lab.scheme.n);
    detail::put_u32(out, lab.scheme.d);
    detail::put_u32(out, lab.scheme.k);
    for (auto & [v, bits] : lab.labels) {
        detail::put_u32(out, v);
        auto bytes = bits.to_bytes();
        out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
}

inline auto read_labels(std::istream & in) -> Labeling
{
    detail::expect_magic(in, "TWL1");
    Labeling lab;
    lab.scheme.n = detail::get_u32(in);
    lab.scheme.d = detail::get_u32(in);
    lab.scheme.k = detail::get_u32(in);
    auto len = lab.scheme.label_length();
    std::vector<std::uint8_t> buf((len + 7) / 8);
    for (std::uint32_t i = 0; i < lab.scheme.n; ++i) {
        auto v = detail::get_u32(in);
        if (! in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(buf.size())))
            throw FormatError("truncated label record");
        lab.labels[v] = BitString::from_bytes(buf.data(), len);
    }
    return lab;
}

// "TWC1", n and d as little-endian u32, then the payload padded to whole bytes.
inline auto write_blob(std::ostream & out, const Blob & blob) -> void
{
    out.write("TWC1", 4);
    detail::put_u32(out, blob.n);
    detail::put_u32(out, blob.d);
    auto bytes = blob.payload.to_bytes();
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline auto read_blob(std::istream & in) -> Blob
{
    detail::expect_magic(in, "TWC1");
    Blob blob;
    blob.n = detail::get_u32(in);
    blob.d = detail::get_u32(in);
    auto bits = codec_payload_bits(blob.n, blob.d);
    std::vector<std::uint8_t> buf((bits + 7) / 8);
    if (! in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(buf.size())))
        throw FormatError("truncated codec payload");
    blob.payload = BitString::from_bytes(buf.data(), bits);
    return blob;
}

// "queue t" or "stack t", then "order v0 v1 ...", then one "p u v" per edge.
inline auto read_layout(std::istream & in) -> Layout
{
    auto lines = detail::content_lines(in);
    if (lines.size() < 2)
        throw FormatError("layout needs a kind line and an order line");
    Layout lay;
    std::string kind;
    std::size_t t;
    detail::parse_fields(lines[0], kind, t);
    if (kind == "queue")
        lay.kind = LayoutKind::queue;
    else if (kind == "stack")
        lay.kind = LayoutKind::stack;
    else
        throw FormatError("layout kind must be queue or stack");
    lay.parts.assign(t, {});
    std::istringstream s(lines[1]);
    std::string tag;
    s >> tag;
    if (tag != "order")
        throw FormatError("second layout line must start with 'order'");
    long long v;
    while (s >> v) {
        if (v < 0)
            throw FormatError("negative vertex id");
        lay.order.push_back(static_cast<Vertex>(v));
    }
    if (! s.eof())
        throw FormatError("bad order line");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        long long p, a, b;
        detail::parse_fields(lines[i], p, a, b);
        if (p < 0 || static_cast<std::size_t>(p) >= t || a < 0 || b < 0)
            throw FormatError("bad layout edge: " + lines[i]);
        lay.parts[static_cast<std::size_t>(p)].emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    return lay;
}

inline auto write_layout(std::ostream & out, const Layout & lay) -> void
{
    out << (lay.kind == LayoutKind::queue ? "queue " : "stack ") << lay.parts.size() << "\norder";
    for (auto v : lay.order)
        out << ' ' << v;
    out << '\n';
    for (std::size_t p = 0; p < lay.parts.size(); ++p)
        for (auto [a, b] : lay.parts[p])
            out << p << ' ' << a << ' ' << b << '\n';
}

template <class T, class F>
auto load_file(const std::string & path, F reader) -> T
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw FormatError("cannot open " + path);
    return reader(in);
}

}
