#pragma once

// Combinatorial description of a Lefschetz fibration: the fiber genus
// and the ordered list of vanishing cycles in H_1 of the fiber, plus
// optional global data (signature, base point count, level).

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "symplectic.hpp"

namespace lefschetz {

struct Fibration {
    int genus = 0;
    std::vector<Vec> cycles;               // vanishing cycles, word order
    std::optional<Int> signature;          // signature of the total space
    std::optional<Int> base_points;        // number of disjoint sections
    std::optional<Int> level;              // quantization level k
};

// Structural checks: every cycle must be a primitive class of length 2g.
// The cycle list may be empty (a trivial fibration).
inline void validate(const Fibration& f) {
    if (f.genus < 1) throw invariant_error("fiber genus must be at least 1");
    for (size_t i = 0; i < f.cycles.size(); ++i) {
        const Vec& v = f.cycles[i];
        std::ostringstream where;
        where << "vanishing cycle " << i;
        if (static_cast<int>(v.size()) != 2 * f.genus)
            throw invariant_error(where.str() + ": expected " + std::to_string(2 * f.genus) +
                                  " coordinates, got " + std::to_string(v.size()));
        if (is_zero_vector(v))
            throw invariant_error(where.str() + ": the zero class is not a vanishing cycle");
        if (!is_primitive(v))
            throw invariant_error(where.str() +
                                  ": class is not primitive (coordinates share a factor)");
    }
    if (f.base_points && *f.base_points < 0)
        throw invariant_error("base point count must be nonnegative");
    if (f.level && *f.level < 1) throw invariant_error("level must be a positive integer");
}

// Hodge bundle degree lambda from signature sigma and cycle count delta:
// sigma + delta = 4 lambda must hold with lambda >= 1 for a relatively
// minimal fibration over the sphere.
inline Int hodge_degree(Int signature, Int cycle_count) {
    Int sum = signature + cycle_count;
    if (sum % 4 != 0) {
        std::ostringstream msg;
        msg << "signature " << signature << " and cycle count " << cycle_count
            << " violate sigma + delta = 4*lambda (sum " << sum << " is not divisible by 4)";
        throw invariant_error(msg.str());
    }
    Int lambda = sum / 4;
    if (lambda < 1) {
        std::ostringstream msg;
        msg << "sigma + delta = " << sum << " gives lambda = " << lambda
            << "; a relatively minimal fibration over the sphere has lambda >= 1";
        throw invariant_error(msg.str());
    }
    return lambda;
}

} // namespace lefschetz
