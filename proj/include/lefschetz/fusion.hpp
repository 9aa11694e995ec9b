#pragma once

// Verlinde ranks and the level-k fusion ring (k + 1 labels 0..k).
//
// The rank at genus g is computed two ways and cross-checked:
//  * trigonometric route:  sum_j (S_{0j})^(2-2g)  with the modular matrix
//    S_{ij} = sqrt(2/(k+2)) sin((i+1)(j+1) pi / (k+2)); the sum is rounded
//    to the provably integral value with a certified residual;
//  * integer route: pair-of-pants gluing.  The handle operator
//    H = sum_a N_a N_a  (N_a the fusion matrices) satisfies
//    rank = (H^g)_{0,0} exactly in integers.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "symplectic.hpp"

namespace lefschetz {

// Admissibility: N_{ij}^l = 1 iff |i-j| <= l <= min(i+j, 2k-i-j) and
// i + j + l is even; otherwise 0.
inline int fusion_coefficient(Int k, Int i, Int j, Int l) {
    if (k < 1) throw invariant_error("level must be a positive integer");
    if (i < 0 || i > k || j < 0 || j > k || l < 0 || l > k)
        throw invariant_error("fusion labels must lie in [0, k]");
    Int lo = i > j ? i - j : j - i;
    Int hi = std::min(i + j, 2 * k - i - j);
    return (l >= lo && l <= hi && (i + j + l) % 2 == 0) ? 1 : 0;
}

// S_{ij} = sqrt(2/(k+2)) sin((i+1)(j+1) pi/(k+2)), real symmetric.
inline std::vector<std::vector<double>> s_matrix(Int k) {
    if (k < 1) throw invariant_error("level must be a positive integer");
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double norm = std::sqrt(2.0L / static_cast<long double>(k + 2));
    std::vector<std::vector<double>> s(static_cast<size_t>(k + 1),
                                       std::vector<double>(static_cast<size_t>(k + 1)));
    for (Int i = 0; i <= k; ++i)
        for (Int j = 0; j <= k; ++j)
            s[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<double>(
                norm * std::sin(static_cast<long double>((i + 1) * (j + 1)) * pi /
                                static_cast<long double>(k + 2)));
    return s;
}

// max |S S^T - I|: S is orthogonal (real symmetric involution).
inline double s_matrix_unitarity_residual(Int k) {
    auto s = s_matrix(k);
    const size_t n = s.size();
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (size_t l = 0; l < n; ++l) acc += s[i][l] * s[j][l];
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

struct VerlindeRank {
    Int genus = 0;
    Int level = 0;
    long long rank = 0;            // certified integer value
    double rounding_residual = 0;  // |trig sum - rank|
    bool integer_checked = false;  // pants-gluing cross-check performed
};

namespace fusion_detail {

// (H^g)_{00} over int64 with overflow detection; H = sum_a N_a N_a.
inline bool handle_power_entry(Int k, Int genus, long long& out) {
    const Int n = k + 1;
    std::vector<std::vector<long long>> h(static_cast<size_t>(n),
                                          std::vector<long long>(static_cast<size_t>(n), 0));
    for (Int a = 0; a <= k; ++a)
        for (Int i = 0; i <= k; ++i)
            for (Int j = 0; j <= k; ++j) {
                long long acc = 0;
                for (Int m = 0; m <= k; ++m)
                    acc += static_cast<long long>(fusion_coefficient(k, a, i, m)) *
                           fusion_coefficient(k, a, m, j);
                h[static_cast<size_t>(i)][static_cast<size_t>(j)] += acc;
            }

    auto mul = [n](const std::vector<std::vector<long long>>& x,
                   const std::vector<std::vector<long long>>& y,
                   std::vector<std::vector<long long>>& out_m) -> bool {
        for (Int i = 0; i < n; ++i)
            for (Int j = 0; j < n; ++j) {
                __int128 acc = 0;
                for (Int l = 0; l < n; ++l)
                    acc += static_cast<__int128>(x[static_cast<size_t>(i)][static_cast<size_t>(l)]) *
                           y[static_cast<size_t>(l)][static_cast<size_t>(j)];
                if (acc > INT64_MAX || acc < 0) return false;
                out_m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    static_cast<long long>(acc);
            }
        return true;
    };

    std::vector<std::vector<long long>> acc(static_cast<size_t>(n),
                                            std::vector<long long>(static_cast<size_t>(n), 0));
    for (Int i = 0; i < n; ++i) acc[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    std::vector<std::vector<long long>> tmp = acc;
    for (Int e = 0; e < genus; ++e) {
        if (!mul(acc, h, tmp)) return false;
        acc.swap(tmp);
    }
    out = acc[0][0];
    return true;
}

} // namespace fusion_detail

inline VerlindeRank verlinde_rank(Int genus, Int level) {
    if (genus < 0) throw invariant_error("genus must be nonnegative");
    if (level < 1) throw invariant_error("level must be a positive integer");

    const long double pi = 3.141592653589793238462643383279502884L;
    const long double half = static_cast<long double>(level + 2) / 2.0L;
    long double sum = 0.0L;
    for (Int j = 1; j <= level + 1; ++j) {
        long double s = std::sin(static_cast<long double>(j) * pi /
                                 static_cast<long double>(level + 2));
        sum += std::pow(1.0L / s, static_cast<long double>(2 * genus - 2));
    }
    long double value = std::pow(half, static_cast<long double>(genus - 1)) * sum;

    if (value > 4.0e18L)
        throw precision_error("Verlinde rank exceeds the certified 64-bit range");
    long long rounded = std::llround(value);
    long double residual = value - static_cast<long double>(rounded);
    if (residual < 0) residual = -residual;
    if (residual > 1e-6L) {
        std::ostringstream msg;
        msg << "Verlinde rank rounding residual " << static_cast<double>(residual)
            << " exceeds 1e-6; the value cannot be certified";
        throw precision_error(msg.str());
    }

    VerlindeRank out;
    out.genus = genus;
    out.level = level;
    out.rank = rounded;
    out.rounding_residual = static_cast<double>(residual);

    // Integer cross-check through the fusion ring whenever it fits in
    // 64-bit arithmetic (it always does for the guarded sizes).
    if (level <= 64 && genus >= 1) {
        long long integer_route = 0;
        if (fusion_detail::handle_power_entry(level, genus, integer_route)) {
            out.integer_checked = true;
            if (integer_route != rounded) {
                std::ostringstream msg;
                msg << "fusion-ring count " << integer_route
                    << " disagrees with the trigonometric rank " << rounded << " at genus "
                    << genus << ", level " << level;
                throw internal_error(msg.str());
            }
        }
    }
    return out;
}

// Rank-level duality check at level 1: the rank equals 2^g exactly.
inline bool rank_level_duality_holds(Int genus) {
    return verlinde_rank(genus, 1).rank == (1LL << genus);
}

} // namespace lefschetz
