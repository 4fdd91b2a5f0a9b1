#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twinwidth {

using Vertex = std::uint32_t;

// Thrown on violated preconditions and malformed input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that cannot be parsed or decoded.
class FormatError : public Error {
public:
    using Error::Error;
};

inline auto ceil_log2(std::size_t n) -> unsigned
{
    if (n <= 1)
        return 0;
    return static_cast<unsigned>(std::bit_width(n - 1));
}

// Growable bit string, least significant bit first inside each word.
class BitString {
public:
    BitString() = default;

    auto size() const -> std::size_t { return size_; }
    auto empty() const -> bool { return size_ == 0; }

    auto push(bool bit) -> void
    {
        if (size_ % 64 == 0)
            words_.push_back(0);
        if (bit)
            words_.back() |= std::uint64_t{1} << (size_ % 64);
        ++size_;
    }

    // Writes `width` bits of `value`, low bit first.
    auto push(std::uint64_t value, unsigned width) -> void
    {
        for (unsigned i = 0; i < width; ++i)
            push(((value >> i) & 1u) != 0);
    }

    auto append(const BitString & other) -> void
    {
        for (std::size_t i = 0; i < other.size(); ++i)
            push(other.get(i));
    }

    auto get(std::size_t pos) const -> bool
    {
        if (pos >= size_)
            throw Error("bit index out of range");
        return ((words_[pos / 64] >> (pos % 64)) & 1u) != 0;
    }

    auto get(std::size_t pos, unsigned width) const -> std::uint64_t
    {
        if (width > 64 || pos + width > size_)
            throw Error("bit range out of range");
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i)
            if (get(pos + i))
                v |= std::uint64_t{1} << i;
        return v;
    }

    auto prefix(std::size_t len) const -> BitString
    {
        BitString out;
        for (std::size_t i = 0; i < len && i < size_; ++i)
            out.push(get(i));
        return out;
    }

    auto to_bytes() const -> std::vector<std::uint8_t>
    {
        std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i))
                out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        return out;
    }

    static auto from_bytes(const std::uint8_t * data, std::size_t bits) -> BitString
    {
        BitString out;
        for (std::size_t i = 0; i < bits; ++i)
            out.push(((data[i / 8] >> (i % 8)) & 1u) != 0);
        return out;
    }

    auto to_string() const -> std::string
    {
        std::string s;
        for (std::size_t i = 0; i < size_; ++i)
            s.push_back(get(i) ? '1' : '0');
        return s;
    }

    friend auto operator==(const BitString & a, const BitString & b) -> bool
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    friend auto operator<(const BitString & a, const BitString & b) -> bool
    {
        if (a.size_ != b.size_)
            return a.size_ < b.size_;
        return a.words_ < b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Sequential reader over a BitString.
class BitReader {
public:
    explicit BitReader(const BitString & bits) : bits_(bits) {}

    auto read(unsigned width) -> std::uint64_t
    {
        if (pos_ + width > bits_.size())
            throw FormatError("truncated bit stream");
        auto v = bits_.get(pos_, width);
        pos_ += width;
        return v;
    }

    auto position() const -> std::size_t { return pos_; }
    auto remaining() const -> std::size_t { return bits_.size() - pos_; }

private:
    const BitString & bits_;
    std::size_t pos_ = 0;
};

}
