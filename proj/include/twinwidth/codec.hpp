#pragma once

#include "trigraph.hpp"

namespace twinwidth {

struct Blob {
    std::uint32_t n = 0, d = 0;
    BitString payload;
    friend auto operator==(const Blob &, const Blob &) -> bool = default;
};

// Final vertex, then n-1 split records of (3L+2) + d(L+4) bits each.
inline auto codec_payload_bits(std::size_t n, std::size_t d) -> std::size_t
{
    if (n == 0)
        return 0;
    std::size_t l = ceil_log2(n);
    return l + (n - 1) * (3 * l + 2 + d * (l + 4));
}

// (d+3) n ceil(log2 n) + (4d+2) n.
inline auto codec_budget(std::size_t n, std::size_t d) -> std::size_t
{
    std::size_t l = ceil_log2(n);
    return (d + 3) * n * l + (4 * d + 2) * n;
}

namespace detail {

    inline auto relation_code(Color c) -> std::uint64_t { return static_cast<std::uint64_t>(c); }

    inline auto relation_from_code(std::uint64_t c) -> Color
    {
        if (c > 2)
            throw FormatError("relation code 11 is reserved");
        return static_cast<Color>(c);
    }

}

// Records are written in reverse contraction order, so decoding grows the
// graph from one vertex by splits. Ids must be 0..n-1.
inline auto codec_encode(const Trigraph & g, const ContractionSequence & seq, std::uint32_t d) -> Blob
{
    auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != i)
            throw Error("codec needs vertex ids 0..n-1");
    if (vs.empty())
        throw Error("codec needs a nonempty graph");
    auto rep = verify_sequence(g, seq, d);
    if (! rep.valid)
        throw Error("codec needs a valid " + std::to_string(d) + "-sequence: " + rep.reason);
    const unsigned l = ceil_log2(vs.size());
    std::vector<SplitRecord> records;
    Trigraph h = g;
    for (auto & s : seq) {
        records.push_back(split_record(h, s.u, s.v));
        h.contract(s.u, s.v);
    }
    Blob blob{static_cast<std::uint32_t>(vs.size()), d, {}};
    blob.payload.push(h.vertices().front(), l);
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        blob.payload.push(it->w, l);
        blob.payload.push(it->u, l);
        blob.payload.push(it->v, l);
        blob.payload.push(detail::relation_code(it->uv), 2);
        for (std::size_t k = 0; k < d; ++k) {
            if (k < it->red.size()) {
                auto & s = it->red[k];
                blob.payload.push(s.z, l);
                blob.payload.push(detail::relation_code(s.to_u), 2);
                blob.payload.push(detail::relation_code(s.to_v), 2);
            }
            else {
                blob.payload.push(it->u, l);
                blob.payload.push(0, 4);
            }
        }
    }
    return blob;
}

inline auto codec_decode(const Blob & blob) -> Trigraph
{
    if (blob.n == 0)
        throw FormatError("blob declares zero vertices");
    if (blob.payload.size() < codec_payload_bits(blob.n, blob.d))
        throw FormatError("truncated codec payload");
    const unsigned l = ceil_log2(blob.n);
    BitReader in(blob.payload);
    auto read_id = [&] {
        auto v = in.read(l);
        if (v >= blob.n)
            throw FormatError("vertex id out of range");
        return static_cast<Vertex>(v);
    };
    Trigraph g;
    g.add_vertex(read_id());
    for (std::size_t i = 1; i < blob.n; ++i) {
        SplitRecord rec;
        rec.w = read_id();
        rec.u = read_id();
        rec.v = read_id();
        rec.uv = detail::relation_from_code(in.read(2));
        bool ended = false;
        for (std::size_t k = 0; k < blob.d; ++k) {
            Vertex z = read_id();
            auto cu = in.read(2), cv = in.read(2);
            if (z == rec.u) {
                if (cu != 0 || cv != 0)
                    throw FormatError("empty slot carries relation bits");
                ended = true;
                continue;
            }
            if (ended)
                throw FormatError("red slot after an empty slot");
            rec.red.push_back({z, detail::relation_from_code(cu), detail::relation_from_code(cv)});
        }
        try {
            g = split(g, rec);
        }
        catch (const FormatError &) {
            throw;
        }
        catch (const Error & e) {
            throw FormatError(std::string("bad split record: ") + e.what());
        }
    }
    return g;
}

}
