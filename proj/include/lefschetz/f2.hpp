#pragma once

// Mod-2 linear algebra with bit-packed rows.
//
// Vectors over F_2 are uint32_t bit masks; bit i is coordinate i of the
// interleaved basis (a_1, b_1, ..., a_g, b_g).  Matrices act on column
// vectors, matching the integer conventions in symplectic.hpp.

#include <array>
#include <bit>
#include <cstdint>

#include "errors.hpp"
#include "symplectic.hpp"

namespace lefschetz {

// Bit mask selecting the a-coordinates (even positions) 0, 2, ..., 2g-2.
inline uint32_t a_positions_mask(int genus) {
    return 0x55555555u & ((genus >= 16) ? ~0u : ((1u << (2 * genus)) - 1u));
}

struct F2Mat {
    int n = 0;
    std::array<uint32_t, 32> rows{}; // row i as a bit mask over columns

    static F2Mat identity(int n) {
        F2Mat m;
        m.n = n;
        for (int i = 0; i < n; ++i) m.rows[static_cast<size_t>(i)] = 1u << i;
        return m;
    }

    static F2Mat from_int_mat(const IntMat& a) {
        if (a.rows() != a.cols() || a.rows() > 32) throw internal_error("F2Mat size unsupported");
        F2Mat m;
        m.n = a.rows();
        for (int i = 0; i < m.n; ++i) {
            uint32_t row = 0;
            for (int j = 0; j < m.n; ++j)
                if (mod_reduce(a.at(i, j), 2) == 1) row |= 1u << j;
            m.rows[static_cast<size_t>(i)] = row;
        }
        return m;
    }

    uint32_t column(int j) const {
        uint32_t c = 0;
        for (int i = 0; i < n; ++i)
            if (rows[static_cast<size_t>(i)] >> j & 1u) c |= 1u << i;
        return c;
    }

    // y = M x on bit vectors.
    uint32_t apply(uint32_t x) const {
        uint32_t y = 0;
        for (int i = 0; i < n; ++i)
            if (std::popcount(rows[static_cast<size_t>(i)] & x) & 1) y |= 1u << i;
        return y;
    }

    F2Mat operator*(const F2Mat& o) const {
        F2Mat out;
        out.n = n;
        for (int i = 0; i < n; ++i) {
            uint32_t row = 0, a = rows[static_cast<size_t>(i)];
            while (a) {
                int j = std::countr_zero(a);
                a &= a - 1;
                row ^= o.rows[static_cast<size_t>(j)];
            }
            out.rows[static_cast<size_t>(i)] = row;
        }
        return out;
    }

    bool operator==(const F2Mat& o) const {
        if (n != o.n) return false;
        for (int i = 0; i < n; ++i)
            if (rows[static_cast<size_t>(i)] != o.rows[static_cast<size_t>(i)]) return false;
        return true;
    }

    // Whole-matrix key; valid only while n*n <= 64.
    uint64_t key() const {
        if (n * n > 64) throw guard_error("matrix key requires n*n <= 64");
        uint64_t k = 0;
        for (int i = 0; i < n; ++i)
            k |= static_cast<uint64_t>(rows[static_cast<size_t>(i)]) << (i * n);
        return k;
    }
};

// Swap each (a_i, b_i) pair of bits: the mod-2 row vector v^T J.
inline uint32_t pair_swap_bits(uint32_t v, int genus) {
    uint32_t amask = a_positions_mask(genus);
    return ((v & amask) << 1) | ((v >> 1) & amask);
}

// Mod-2 matrix of the transvection x |-> x + <x, v> v (sign irrelevant).
inline F2Mat transvection_f2(uint32_t v, int genus) {
    const int n = 2 * genus;
    uint32_t w = pair_swap_bits(v, genus);
    F2Mat t = F2Mat::identity(n);
    for (int i = 0; i < n; ++i)
        if (v >> i & 1u) t.rows[static_cast<size_t>(i)] ^= w;
    return t;
}

inline uint32_t vec_to_bits(const Vec& v) {
    if (v.size() > 32) throw internal_error("vector too long for bit packing");
    uint32_t b = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (mod_reduce(v[i], 2) == 1) b |= 1u << i;
    return b;
}

// Mod-2 symplectic pairing of bit vectors.
inline int f2_pairing(uint32_t x, uint32_t y, int genus) {
    return std::popcount(pair_swap_bits(x, genus) & y) & 1;
}

} // namespace lefschetz
