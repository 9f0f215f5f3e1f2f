#include "adrng/cipher.hpp"

#include <cstdio>
#include <stdexcept>

#include "adrng/errors.hpp"

namespace adrng {

namespace {
std::array<std::uint8_t, 10> parse_hex10(const std::string& hex) {
    if (hex.size() != 20) throw FormatError("expected 20 hex characters for an 80-bit value");
    std::array<std::uint8_t, 10> out{};
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("invalid hex character");
    };
    for (int i = 0; i < 10; ++i)
        out[i] = static_cast<std::uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
    return out;
}

int bit80(const std::array<std::uint8_t, 10>& bytes, int i) {
    // bit 1 = MSB of bytes[9], per the eSTREAM reference ordering
    return (bytes[9 - (i - 1) / 8] >> (7 - (i - 1) % 8)) & 1;
}
} // namespace

KeyIv KeyIv::from_hex(const std::string& key_hex, const std::string& iv_hex) {
    KeyIv kiv;
    kiv.key = parse_hex10(key_hex);
    kiv.iv = parse_hex10(iv_hex);
    return kiv;
}

int KeyIv::key_bit(int i) const { return bit80(key, i); }
int KeyIv::iv_bit(int i) const { return bit80(iv, i); }

Trivium Trivium::init(const KeyIv& kiv) {
    Trivium tv;
    for (int i = 1; i <= 80; ++i) {
        if (kiv.key_bit(i)) {
            if (i <= 64) tv.a_.lo |= std::uint64_t(1) << (i - 1);
            else tv.a_.hi |= std::uint64_t(1) << (i - 65);
        }
        if (kiv.iv_bit(i)) {
            if (i <= 64) tv.b_.lo |= std::uint64_t(1) << (i - 1);
            else tv.b_.hi |= std::uint64_t(1) << (i - 65);
        }
    }
    // s286..s288 = C register bits 109..111
    tv.c_.hi |= std::uint64_t(7) << (109 - 65);
    tv.warm_up();
    return tv;
}

Trivium Trivium::from_state(const std::bitset<288>& s, bool warmed_up) {
    Trivium tv;
    for (int i = 1; i <= 93; ++i)
        if (s[i - 1]) { if (i <= 64) tv.a_.lo |= std::uint64_t(1) << (i - 1); else tv.a_.hi |= std::uint64_t(1) << (i - 65); }
    for (int i = 1; i <= 84; ++i)
        if (s[93 + i - 1]) { if (i <= 64) tv.b_.lo |= std::uint64_t(1) << (i - 1); else tv.b_.hi |= std::uint64_t(1) << (i - 65); }
    for (int i = 1; i <= 111; ++i)
        if (s[177 + i - 1]) { if (i <= 64) tv.c_.lo |= std::uint64_t(1) << (i - 1); else tv.c_.hi |= std::uint64_t(1) << (i - 65); }
    tv.warmed_up_ = warmed_up;
    return tv;
}

int Trivium::clock_raw() {
    // s66, s93 | s162, s177 | s243, s288
    int t1 = a_.bit(66) ^ a_.bit(93);
    int t2 = b_.bit(69) ^ b_.bit(84);
    int t3 = c_.bit(66) ^ c_.bit(111);
    int z = t1 ^ t2 ^ t3;
    t1 ^= (a_.bit(91) & a_.bit(92)) ^ b_.bit(78);  // s91*s92 + s171
    t2 ^= (b_.bit(82) & b_.bit(83)) ^ c_.bit(87);  // s175*s176 + s264
    t3 ^= (c_.bit(109) & c_.bit(110)) ^ a_.bit(69); // s286*s287 + s69
    a_.shift_in(t3);
    b_.shift_in(t1);
    c_.shift_in(t2);
    return z;
}

void Trivium::warm_up() {
    if (warmed_up_) return;
    for (int i = 0; i < 4 * 288; ++i) clock_raw();
    warmed_up_ = true;
}

int Trivium::clock() {
    if (!warmed_up_) throw StateError("Trivium clocked before warm-up completed");
    return clock_raw();
}

BitStream Trivium::keystream(std::size_t nbits) {
    BitStream out;
    for (std::size_t i = 0; i < nbits; ++i) out.push_back(clock() != 0);
    return out;
}

std::bitset<288> Trivium::state() const {
    std::bitset<288> s;
    for (int i = 1; i <= 93; ++i) s[i - 1] = a_.bit(i);
    for (int i = 1; i <= 84; ++i) s[93 + i - 1] = b_.bit(i);
    for (int i = 1; i <= 111; ++i) s[177 + i - 1] = c_.bit(i);
    return s;
}

std::string Trivium::keystream_hex(Trivium& tv, std::size_t nbytes) {
    std::string hex;
    hex.reserve(2 * nbytes);
    char buf[3];
    for (std::size_t b = 0; b < nbytes; ++b) {
        unsigned byte = 0;
        for (int j = 0; j < 8; ++j) byte |= unsigned(tv.clock()) << j;
        std::snprintf(buf, sizeof buf, "%02X", byte);
        hex += buf;
    }
    return hex;
}

MiniTrivium MiniTrivium::init(const BitStream& seed) {
    if (seed.size() < kStateBits)
        throw std::invalid_argument("MiniTrivium seed requires 19 bits");
    std::uint32_t s = 0;
    for (int i = 0; i < kStateBits; ++i)
        if (seed[static_cast<std::size_t>(i)]) s |= std::uint32_t(1) << i;
    if (s == 0) throw std::invalid_argument("MiniTrivium seed must not be all zero");
    MiniTrivium mt;
    mt.state_ = s;
    mt.warm_up();
    return mt;
}

MiniTrivium MiniTrivium::from_state(std::uint32_t s, bool warmed_up) {
    MiniTrivium mt;
    mt.state_ = s & ((std::uint32_t(1) << kStateBits) - 1);
    mt.warmed_up_ = warmed_up;
    return mt;
}

int MiniTrivium::clock_raw(int inject) {
    auto s = [this](int i) { return static_cast<int>((state_ >> (i - 1)) & 1); };
    int u1 = s(4) ^ s(6);
    int u2 = s(10) ^ s(12);
    int u3 = s(16) ^ s(19);
    int z = u1 ^ u2 ^ u3;
    int fb = z ^ (s(17) & s(18)) ^ (s(3) & s(8)) ^ (inject & 1);
    state_ = ((state_ << 1) | std::uint32_t(fb)) & ((std::uint32_t(1) << kStateBits) - 1);
    return z;
}

void MiniTrivium::warm_up() {
    if (warmed_up_) return;
    for (int i = 0; i < kWarmupRounds; ++i) clock_raw(0);
    warmed_up_ = true;
}

int MiniTrivium::clock(int inject) {
    if (!warmed_up_) throw StateError("MiniTrivium clocked before warm-up completed");
    return clock_raw(inject);
}

std::size_t postprocess_seed_bits(PostProcessor which) {
    switch (which) {
        case PostProcessor::Trivium: return 160;
        case PostProcessor::Mini: return MiniTrivium::kStateBits;
        case PostProcessor::None: return 0;
    }
    return 0;
}

BitStream postprocess(const BitStream& raw, PostProcessor which) {
    const std::size_t seed_len = postprocess_seed_bits(which);
    if (raw.size() < seed_len)
        throw std::invalid_argument("raw stream shorter than the cipher seed requirement");
    if (which == PostProcessor::None) return raw;

    BitStream out;
    if (which == PostProcessor::Trivium) {
        KeyIv kiv;
        // K_i = raw[i-1], IV_i = raw[80+i-1], packed with the byte order
        // used by key_bit/iv_bit
        for (int i = 1; i <= 80; ++i) {
            if (raw[static_cast<std::size_t>(i - 1)])
                kiv.key[9 - (i - 1) / 8] |= std::uint8_t(0x80u >> ((i - 1) % 8));
            if (raw[static_cast<std::size_t>(80 + i - 1)])
                kiv.iv[9 - (i - 1) / 8] |= std::uint8_t(0x80u >> ((i - 1) % 8));
        }
        Trivium tv = Trivium::init(kiv);
        for (std::size_t i = seed_len; i < raw.size(); ++i)
            out.push_back((tv.clock() ^ int(raw[i])) != 0);
    } else {
        MiniTrivium mt = MiniTrivium::init(raw.slice(0, MiniTrivium::kStateBits));
        for (std::size_t i = seed_len; i < raw.size(); ++i)
            out.push_back(mt.clock(int(raw[i])) != 0);
    }
    return out;
}

} // namespace adrng
