#include "adrng/gf2.hpp"

#include <bit>
#include <utility>

namespace adrng {

int gf2_rank(std::vector<std::uint64_t>& rows, int ncols) {
    int rank = 0;
    const int nrows = static_cast<int>(rows.size());
    for (int col = ncols - 1; col >= 0 && rank < nrows; --col) {
        const std::uint64_t mask = std::uint64_t(1) << col;
        int pivot = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[r] & mask) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < nrows; ++r)
            if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

int gf2_rank_32(std::uint32_t rows[32]) {
    int rank = 0;
    for (int col = 31; col >= 0 && rank < 32; --col) {
        const std::uint32_t mask = std::uint32_t(1) << col;
        int pivot = -1;
        for (int r = rank; r < 32; ++r)
            if (rows[r] & mask) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < 32; ++r)
            if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

namespace {
// C ^= B * x^shift, on word-packed polynomial coefficients.
void shift_xor(std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& b, std::size_t shift) {
    const std::size_t wm = shift >> 6;
    const int bs = static_cast<int>(shift & 63);
    for (std::size_t k = c.size(); k-- > wm;) {
        std::uint64_t v = b[k - wm] << bs;
        if (bs != 0 && k - wm > 0) v |= b[k - wm - 1] >> (64 - bs);
        c[k] ^= v;
    }
}
} // namespace

std::size_t berlekamp_massey(const BitStream& bits, std::size_t begin, std::size_t len) {
    if (len == 0) return 0;
    const std::size_t nwords = (len >> 6) + 2;
    // rev[j] = s[len-1-j]; lets the discrepancy read a contiguous window
    std::vector<std::uint64_t> rev(nwords, 0);
    for (std::size_t i = 0; i < len; ++i) {
        if (bits[begin + i]) {
            const std::size_t j = len - 1 - i;
            rev[j >> 6] |= std::uint64_t(1) << (j & 63);
        }
    }

    std::vector<std::uint64_t> c(nwords, 0), b(nwords, 0), t;
    c[0] = b[0] = 1;
    std::size_t L = 0, m = 1;

    for (std::size_t N = 0; N < len; ++N) {
        // d = s_N xor sum_{i=1..L} c_i s_{N-i}; with c_0 = 1 this is the
        // parity of AND(c[0..L], rev[o..o+L]) at offset o = len-1-N.
        const std::size_t o = len - 1 - N;
        const std::size_t ow = o >> 6;
        const int ob = static_cast<int>(o & 63);
        std::uint64_t acc = 0;
        const std::size_t cw = (L >> 6) + 1; // deg(c) <= L
        for (std::size_t k = 0; k < cw; ++k) {
            std::uint64_t rw = rev[ow + k] >> ob;
            if (ob != 0) rw |= rev[ow + k + 1] << (64 - ob);
            acc ^= c[k] & rw;
        }
        const bool d = std::popcount(acc) & 1;
        if (d) {
            if (2 * L <= N) {
                t = c;
                shift_xor(c, b, m);
                b = std::move(t);
                L = N + 1 - L;
                m = 1;
            } else {
                shift_xor(c, b, m);
                ++m;
            }
        } else {
            ++m;
        }
    }
    return L;
}

} // namespace adrng
