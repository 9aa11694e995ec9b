#pragma once

// Homological monodromy of a Lefschetz fibration and its mod-2 image.
//
// Each vanishing cycle v contributes the transvection x |-> x + <x, v> v.
// The composite of the word (v_1, ..., v_n) is the matrix product
// T_{v_1} T_{v_2} ... T_{v_n}; matrices act on column vectors, so the
// rightmost (last) cycle is applied first.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "f2.hpp"
#include "fibration.hpp"
#include "group_enum.hpp"
#include "quadratic_form.hpp"
#include "symplectic.hpp"

namespace lefschetz {

inline std::vector<IntMat> transvection_word(const Fibration& f) {
    validate(f);
    std::vector<IntMat> word;
    word.reserve(f.cycles.size());
    for (const Vec& v : f.cycles) word.push_back(transvection_matrix(v));
    return word;
}

inline IntMat monodromy_product(const Fibration& f) {
    IntMat p = IntMat::identity(2 * f.genus);
    for (const IntMat& t : transvection_word(f)) p = p * t;
    return p;
}

inline std::vector<F2Mat> mod2_transvections(const Fibration& f) {
    validate(f);
    std::vector<F2Mat> word;
    word.reserve(f.cycles.size());
    for (const Vec& v : f.cycles) word.push_back(transvection_f2(vec_to_bits(v), f.genus));
    return word;
}

// ---------------------------------------------------------------------
// Spin structures.
//
// The mod-2 transvection along vbar preserves a quadratic refinement q
// iff q(vbar) = 1.  Writing q by its basis values u, each cycle imposes
// the affine condition  u . vbar = 1 + Q(vbar)  (mod 2), with Q the
// cross term of the intersection form.  The fibration admits a compatible
// spin structure iff this linear system is solvable.

struct SpinReport {
    bool admits_invariant_form = false;
    std::vector<QuadraticFormF2> forms; // all invariant refinements
    int even_count = 0;                 // Arf 0 among them
    int odd_count = 0;                  // Arf 1 among them
};

inline SpinReport spin_structure_analysis(const Fibration& f) {
    validate(f);
    if (f.genus > 8) throw guard_error("spin analysis enumerates up to 2^(2g) candidates; genus <= 8");
    const int n = 2 * f.genus;

    // Row-reduce the affine system (mask . u = rhs) over F_2.
    std::vector<std::pair<uint32_t, int>> rows;
    for (const Vec& v : f.cycles) {
        uint32_t vbar = vec_to_bits(v);
        // Primitive classes never vanish mod 2, but a zero row would be
        // trivially satisfied anyway (the mod-2 twist is the identity).
        if (vbar == 0) continue;
        rows.emplace_back(vbar, 1 ^ f2_cross_term(vbar, f.genus));
    }
    std::vector<std::pair<uint32_t, int>> pivots; // (row with leading bit, rhs)
    std::vector<int> pivot_bit;
    bool consistent = true;
    for (auto [mask, rhs] : rows) {
        for (size_t p = 0; p < pivots.size(); ++p)
            if (mask >> pivot_bit[p] & 1u) {
                mask ^= pivots[p].first;
                rhs ^= pivots[p].second;
            }
        if (mask == 0) {
            if (rhs != 0) consistent = false;
            continue;
        }
        int lead = 31 - std::countl_zero(mask);
        pivots.emplace_back(mask, rhs);
        pivot_bit.push_back(lead);
    }

    SpinReport report;
    if (!consistent) return report;

    // Enumerate the full solution set: free bits range over all values,
    // pivot bits follow by back substitution.
    uint32_t pivot_mask = 0;
    for (int b : pivot_bit) pivot_mask |= 1u << b;
    std::vector<int> free_bits;
    for (int b = 0; b < n; ++b)
        if (!(pivot_mask >> b & 1u)) free_bits.push_back(b);

    for (uint32_t assign = 0; assign < (1u << free_bits.size()); ++assign) {
        uint32_t u = 0;
        for (size_t i = 0; i < free_bits.size(); ++i)
            if (assign >> i & 1u) u |= 1u << free_bits[i];
        // Solve pivots from the last introduced backwards: each pivot row
        // determines its leading bit from later-eliminated coordinates.
        for (size_t p = pivots.size(); p-- > 0;) {
            auto [mask, rhs] = pivots[p];
            int value = (std::popcount(mask & u) & 1) ^ rhs;
            if (value) u ^= 1u << pivot_bit[p];
        }
        report.forms.push_back(QuadraticFormF2{f.genus, u});
    }

    for (const auto& q : report.forms)
        (arf_invariant(q) == 0 ? report.even_count : report.odd_count)++;
    report.admits_invariant_form = !report.forms.empty();
    return report;
}

// ---------------------------------------------------------------------
// Classification of the mod-2 monodromy image.

enum class Mod2Class { Full, PreservesEvenForm, PreservesOddForm, Other };

inline const char* to_string(Mod2Class c) {
    switch (c) {
        case Mod2Class::Full: return "Full";
        case Mod2Class::PreservesEvenForm: return "PreservesEvenForm";
        case Mod2Class::PreservesOddForm: return "PreservesOddForm";
        case Mod2Class::Other: return "Other";
    }
    return "?";
}

struct Mod2ImageReport {
    Mod2Class classification = Mod2Class::Other;
    std::vector<QuadraticFormF2> preserved_forms;
    // Subgroup order from brute-force enumeration; only filled for g <= 3.
    std::optional<unsigned long long> image_order;
    unsigned long long full_group_order = 0;
};

inline Mod2ImageReport classify_mod2_image(const Fibration& f) {
    Mod2ImageReport report;
    // The order formula overflows 64 bits past genus 5; it is only needed
    // for the Full test, which requires enumeration (genus <= 3) anyway.
    report.full_group_order = (f.genus <= 5) ? sp2g_f2_order(f.genus) : 0;

    SpinReport spin = spin_structure_analysis(f);
    report.preserved_forms = spin.forms;
    if (f.genus <= kMaxEnumerationGenus)
        report.image_order = subgroup_order(mod2_transvections(f), f.genus);

    if (spin.admits_invariant_form) {
        report.classification =
            spin.even_count > 0 ? Mod2Class::PreservesEvenForm : Mod2Class::PreservesOddForm;
        return report;
    }
    if (report.image_order && *report.image_order == report.full_group_order) {
        report.classification = Mod2Class::Full;
        return report;
    }
    report.classification = Mod2Class::Other;
    return report;
}

} // namespace lefschetz
