#include "adrng/bitstream.hpp"

#include <bit>
#include <cctype>
#include <fstream>

#include "adrng/errors.hpp"
#include "adrng/rng.hpp"

namespace adrng {

BitStream BitStream::from_string(std::string_view text) {
    BitStream out;
    for (char c : text) {
        if (c == '0' || c == '1') out.push_back(c == '1');
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw FormatError("bit string contains invalid character");
    }
    return out;
}

BitStream BitStream::random(std::size_t nbits, std::uint64_t seed) {
    BitStream out;
    out.nbits_ = nbits;
    out.words_.resize((nbits + 63) / 64, 0);
    Rng rng(seed);
    for (auto& w : out.words_) w = rng.next_u64();
    if (nbits % 64 != 0)
        out.words_.back() &= (std::uint64_t(1) << (nbits % 64)) - 1;
    return out;
}

std::size_t BitStream::count_ones() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

BitStream BitStream::slice(std::size_t begin, std::size_t len) const {
    BitStream out(len);
    for (std::size_t i = 0; i < len; ++i) out.set(i, (*this)[begin + i]);
    return out;
}

BitStream BitStream::reversed() const {
    BitStream out(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i) out.set(i, (*this)[nbits_ - 1 - i]);
    return out;
}

std::string BitStream::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
        if ((*this)[i]) s[i] = '1';
    return s;
}

std::vector<std::uint8_t> bits1_encode(const BitStream& bits) {
    std::vector<std::uint8_t> out(8 + (bits.size() + 7) / 8, 0);
    std::uint64_t n = bits.size();
    for (int i = 0; i < 8; ++i) out[i] = std::uint8_t(n >> (8 * i));
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[8 + i / 8] |= std::uint8_t(0x80u >> (i % 8));
    return out;
}

BitStream bits1_decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8) throw FormatError("BITS1: file shorter than the 8-byte header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= std::uint64_t(bytes[i]) << (8 * i);
    if (bytes.size() != 8 + (n + 7) / 8)
        throw FormatError("BITS1: payload size does not match header bit count");
    BitStream out(static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < n; ++i)
        if (bytes[8 + i / 8] & (0x80u >> (i % 8))) out.set(static_cast<std::size_t>(i), true);
    // trailing pad bits must be zero
    if (n % 8 != 0) {
        std::uint8_t pad = bytes.back() & std::uint8_t(0xFFu >> (n % 8));
        if (pad != 0) throw FormatError("BITS1: nonzero trailing pad bits");
    }
    return out;
}

void write_bits1(const std::filesystem::path& path, const BitStream& bits) {
    auto bytes = bits1_encode(bits);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

static std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open: " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

BitStream read_bits1(const std::filesystem::path& path) {
    return bits1_decode(read_all(path));
}

void write_ascii_bits(const std::filesystem::path& path, const BitStream& bits) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path.string());
    f << bits.to_string() << '\n';
}

BitStream read_ascii_bits(const std::filesystem::path& path) {
    auto bytes = read_all(path);
    return BitStream::from_string(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

BitStream read_stream_file(const std::filesystem::path& path) {
    auto bytes = read_all(path);
    bool ascii = !bytes.empty();
    for (std::size_t i = 0; i < bytes.size() && i < 4096; ++i) {
        std::uint8_t c = bytes[i];
        if (c != '0' && c != '1' && !std::isspace(c)) { ascii = false; break; }
    }
    if (ascii)
        return BitStream::from_string(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    return bits1_decode(bytes);
}

} // namespace adrng
