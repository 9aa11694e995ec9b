#pragma once

// Brute-force enumeration of subgroups of Sp(2g, F_2).
//
// Whole matrices are packed into 64-bit keys, so enumeration is limited
// to g <= 3 where |Sp(6, F_2)| = 1451520 and keys need 36 bits.  Closure
// is a breadth-first walk under right multiplication by the generators.

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "f2.hpp"

namespace lefschetz {

inline constexpr int kMaxEnumerationGenus = 3;

// |Sp(2g, F_2)| = 2^(g^2) * prod_{i=1..g} (4^i - 1).
inline unsigned long long sp2g_f2_order(int genus) {
    unsigned long long order = 1ull << (genus * genus);
    unsigned long long p = 1;
    for (int i = 1; i <= genus; ++i) {
        p *= 4;
        order *= p - 1;
    }
    return order;
}

// Size of the subgroup generated by the given matrices.  Throws
// guard_error beyond genus 3 (the 64-bit packing and the walk both stop
// being reasonable there).
inline unsigned long long subgroup_order(const std::vector<F2Mat>& generators, int genus) {
    if (genus < 1) throw invariant_error("genus must be at least 1");
    if (genus > kMaxEnumerationGenus)
        throw guard_error("mod-2 group enumeration supports genus <= 3");
    F2Mat id = F2Mat::identity(2 * genus);
    std::unordered_set<uint64_t> seen;
    std::deque<F2Mat> frontier;
    seen.insert(id.key());
    frontier.push_back(id);
    while (!frontier.empty()) {
        F2Mat cur = frontier.front();
        frontier.pop_front();
        for (const F2Mat& g : generators) {
            F2Mat next = cur * g;
            if (seen.insert(next.key()).second) frontier.push_back(next);
        }
    }
    return seen.size();
}

} // namespace lefschetz
