#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "adrng/bitstream.hpp"

namespace adrng {

/// Rank over GF(2) of a matrix given as bit-packed rows (column j = bit j).
/// Rows are modified in place (row echelon form).
int gf2_rank(std::vector<std::uint64_t>& rows, int ncols);

/// Rank of a 32x32 matrix, rows packed in uint32.
int gf2_rank_32(std::uint32_t rows[32]);

/// Linear complexity of bits[begin, begin+len) via Berlekamp-Massey:
/// the length of the shortest LFSR generating the subsequence.
std::size_t berlekamp_massey(const BitStream& bits, std::size_t begin, std::size_t len);

inline std::size_t berlekamp_massey(const BitStream& bits) {
    return berlekamp_massey(bits, 0, bits.size());
}

} // namespace adrng
