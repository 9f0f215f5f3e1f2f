#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <string>

#include "adrng/bitstream.hpp"

namespace adrng {

/// 80-bit key / 80-bit IV pair.
///
/// Byte order follows the eSTREAM API: key[0] is the first byte of the hex
/// string; cipher bit K1 reads the most significant bit of key[9]. Keystream
/// bytes pack the first emitted bit into the least significant position.
/// Both conventions are fixed by the published test vectors.
struct KeyIv {
    std::array<std::uint8_t, 10> key{};
    std::array<std::uint8_t, 10> iv{};

    static KeyIv from_hex(const std::string& key_hex, const std::string& iv_hex);

    int key_bit(int i) const;  // K_i, i = 1..80
    int iv_bit(int i) const;   // IV_i, i = 1..80
};

/// Trivium stream cipher: 288-bit state in three shift registers, 80-bit
/// key/IV, 4*288 = 1152 initialization rounds.
class Trivium {
public:
    /// Standard loading (key into s1..s80, IV into s94..s173, s286..s288
    /// set) followed by the 1152 warm-up clocks.
    static Trivium init(const KeyIv& kiv);

    /// Build from a raw state; warm-up is the caller's responsibility.
    static Trivium from_state(const std::bitset<288>& s, bool warmed_up);

    /// One round; returns the keystream bit. Throws StateError before
    /// warm-up has completed.
    int clock();

    /// Runs the warm-up rounds (discarding output) if not yet done.
    void warm_up();

    BitStream keystream(std::size_t nbits);

    /// s1..s288 as bitset positions 0..287.
    std::bitset<288> state() const;
    bool warmed_up() const { return warmed_up_; }

    /// Pack keystream bits into bytes, first bit least significant
    /// (the test-vector byte order).
    static std::string keystream_hex(Trivium& tv, std::size_t nbytes);

private:
    // Registers hold s1.. as bit 0.. of lo/hi; newest bit enters at bit 0.
    struct Reg {
        std::uint64_t lo = 0, hi = 0;
        int bit(int i) const { // 1-based within the register
            return static_cast<int>((i <= 64 ? lo >> (i - 1) : hi >> (i - 65)) & 1);
        }
        void shift_in(int b) {
            hi = (hi << 1) | (lo >> 63);
            lo = (lo << 1) | std::uint64_t(b);
        }
    };
    Reg a_, b_, c_; // s1..93, s94..177, s178..288
    bool warmed_up_ = false;

    int clock_raw();
};

/// Compact 19-bit nonlinear-feedback post-processor patterned on Trivium's
/// structure. Taps t1..t10 = (s3, s4, s6, s8, s10, s12, s16, s17, s18, s19);
/// output z = (s4^s6) ^ (s10^s12) ^ (s16^s19); feedback
/// fb = z ^ (s17&s18) ^ (s3&s8) ^ inject; ten two-input gates in total.
/// Warm-up is 4*19 = 76 rounds with zero injection. With zero injection the
/// all-zero state is reachable only from itself, so a nonzero seed stays
/// nonzero.
class MiniTrivium {
public:
    /// Load s1..s19 from the first 19 bits of seed (s_i = seed[i-1]), then
    /// warm up. Throws std::invalid_argument on an all-zero seed.
    static MiniTrivium init(const BitStream& seed);

    static MiniTrivium from_state(std::uint32_t s, bool warmed_up);

    /// One round with an injected feedback bit; returns the output bit.
    /// Throws StateError before warm-up has completed.
    int clock(int inject);

    void warm_up();

    std::uint32_t state() const { return state_; }
    bool warmed_up() const { return warmed_up_; }

    static constexpr int kStateBits = 19;
    static constexpr int kWarmupRounds = 4 * kStateBits;

private:
    std::uint32_t state_ = 0; // s_i = bit (i-1)
    bool warmed_up_ = false;

    int clock_raw(int inject);
};

enum class PostProcessor { None, Trivium, Mini };

/// Seed length consumed from the head of the raw stream: 160 bits (key||IV)
/// for Trivium, 19 bits for Mini, 0 for None.
std::size_t postprocess_seed_bits(PostProcessor which);

/// Conditions a raw bit stream: the prefix seeds the cipher, then one output
/// bit is emitted per remaining raw bit. Trivium mode XORs the keystream
/// with the raw bits; Mini mode injects each raw bit into the feedback.
/// Output length = raw length - seed length. Throws std::invalid_argument
/// when raw is shorter than the seed requirement.
BitStream postprocess(const BitStream& raw, PostProcessor which);

} // namespace adrng
