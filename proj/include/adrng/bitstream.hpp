#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace adrng {

/// Packed sequence of bits; the unit of exchange between the digitizer, the
/// ciphers and the statistical tests.
///
/// In memory bit i lives in word i/64 at position i%64 (LSB first); unused
/// bits of the last word are kept zero so word-level scans (popcount etc.)
/// need no masking. Byte-level serialization is MSB-first, see bits1 below.
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    /// Parse from a string of '0'/'1' characters; whitespace is ignored.
    static BitStream from_string(std::string_view text);

    /// n bits from the seeded reference generator (word-filled mt19937_64).
    static BitStream random(std::size_t nbits, std::uint64_t seed);

    void push_back(bool bit) {
        if (nbits_ % 64 == 0) words_.push_back(0);
        words_.back() |= std::uint64_t(bit) << (nbits_ % 64);
        ++nbits_;
    }

    bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= mask;
        else words_[i >> 6] &= ~mask;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }
    std::size_t count_ones() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    BitStream slice(std::size_t begin, std::size_t len) const;
    BitStream reversed() const;

    /// Value of the m-bit window starting at i, first bit most significant.
    std::uint32_t window(std::size_t i, int m) const {
        std::uint32_t v = 0;
        for (int k = 0; k < m; ++k) v = (v << 1) | std::uint32_t((*this)[i + k]);
        return v;
    }

    std::string to_string() const;

    bool operator==(const BitStream& other) const {
        return nbits_ == other.nbits_ && words_ == other.words_;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// `BITS1` container: an 8-byte little-endian bit count followed by the
/// packed payload, MSB-first within each byte, trailing pad bits zero.
std::vector<std::uint8_t> bits1_encode(const BitStream& bits);
BitStream bits1_decode(const std::vector<std::uint8_t>& bytes); // throws FormatError

void write_bits1(const std::filesystem::path& path, const BitStream& bits);
BitStream read_bits1(const std::filesystem::path& path);

void write_ascii_bits(const std::filesystem::path& path, const BitStream& bits);
BitStream read_ascii_bits(const std::filesystem::path& path);

/// Reads either container, deciding by content (BITS1 unless the file is
/// pure '0'/'1' text).
BitStream read_stream_file(const std::filesystem::path& path);

} // namespace adrng
