#pragma once

// Quadratic refinements of the mod-2 intersection form.
//
// A refinement is a function q : H_1(S; F_2) -> F_2 with
//     q(x + y) = q(x) + q(y) + <x, y>  (mod 2).
// It is determined by its values on the interleaved basis, stored as a
// bit mask (bit i holds q(e_i)).  There are 2^(2g) refinements; the Arf
// invariant sum_i q(a_i) q(b_i) splits them into 2^(2g-1) + 2^(g-1) even
// and 2^(2g-1) - 2^(g-1) odd ones.

#include <bit>
#include <cstdint>
#include <vector>

#include "f2.hpp"

namespace lefschetz {

struct QuadraticFormF2 {
    int genus = 0;
    uint32_t basis_values = 0; // bit i = q(e_i)

    bool operator==(const QuadraticFormF2& o) const {
        return genus == o.genus && basis_values == o.basis_values;
    }
};

// Pairing cross term Q(x) = sum_i x_{a_i} x_{b_i} (mod 2): the part of
// q(x) that does not depend on the basis values.
inline int f2_cross_term(uint32_t x, int genus) {
    return std::popcount(x & (x >> 1) & a_positions_mask(genus)) & 1;
}

inline int evaluate(const QuadraticFormF2& q, uint32_t x) {
    return (std::popcount(x & q.basis_values) + f2_cross_term(x, q.genus)) & 1;
}

inline int arf_invariant(const QuadraticFormF2& q) {
    return std::popcount(q.basis_values & (q.basis_values >> 1) & a_positions_mask(q.genus)) & 1;
}

// Pullback q o M.  For symplectic M the result is again a refinement,
// determined by its values on the images of the basis vectors.
inline QuadraticFormF2 pullback(const QuadraticFormF2& q, const F2Mat& m) {
    QuadraticFormF2 out;
    out.genus = q.genus;
    for (int i = 0; i < 2 * q.genus; ++i)
        if (evaluate(q, m.column(i))) out.basis_values |= 1u << i;
    return out;
}

inline bool is_preserved_by(const QuadraticFormF2& q, const F2Mat& m) {
    return pullback(q, m) == q;
}

inline std::vector<QuadraticFormF2> all_quadratic_forms(int genus) {
    std::vector<QuadraticFormF2> forms;
    forms.reserve(1u << (2 * genus));
    for (uint32_t u = 0; u < (1u << (2 * genus)); ++u)
        forms.push_back(QuadraticFormF2{genus, u});
    return forms;
}

} // namespace lefschetz
