#pragma once

// Finite Heisenberg group at level k on the fiber space C[(Z/k)^g].
//
// For h = (a, b) with a, b in (Z/k)^g, the basic operator acts by
//     (U_h f)(x) = zeta^{b . x} f(x + a),      zeta = exp(2 pi i / k),
// i.e. the matrix has U_h[x][x + a] = zeta^{b . x}.  Basis indexing puts
// x_1 in the most significant position: index(x) = sum_i x_i k^{g-1-i}.
//
// Products obey U_h U_h' = zeta^{c(h, h')} U_{h + h'} with the cocycle
// c((a,b), (a',b')) = a . b'.

#include <Eigen/Dense>
#include <complex>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "symplectic.hpp"

namespace lefschetz {

inline constexpr std::size_t kDefaultGuardDim = 256;

// k^g with a hard guard on the resulting dimension.
inline std::size_t heisenberg_dimension(int genus, Int k, std::size_t guard = kDefaultGuardDim) {
    if (genus < 1) throw invariant_error("genus must be at least 1");
    if (k < 1) throw invariant_error("level must be a positive integer");
    std::size_t n = 1;
    for (int i = 0; i < genus; ++i) {
        if (n > guard / static_cast<std::size_t>(k) + 1) n = guard + 1;
        else n *= static_cast<std::size_t>(k);
        if (n > guard) {
            std::ostringstream msg;
            msg << "fiber dimension k^g = " << k << "^" << genus << " exceeds the size guard "
                << guard;
            throw guard_error(msg.str());
        }
    }
    return n;
}

// Split an interleaved vector (a_1, b_1, ..., a_g, b_g) into the shift
// part a and the phase part b, reduced mod k.
inline std::pair<std::vector<Int>, std::vector<Int>> split_interleaved(const Vec& v, Int k) {
    if (v.size() % 2 != 0) throw internal_error("interleaved vector must have even length");
    int g = static_cast<int>(v.size()) / 2;
    std::vector<Int> a(static_cast<size_t>(g)), b(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) {
        a[static_cast<size_t>(i)] = mod_reduce(v[static_cast<size_t>(2 * i)], k);
        b[static_cast<size_t>(i)] = mod_reduce(v[static_cast<size_t>(2 * i) + 1], k);
    }
    return {a, b};
}

// Heisenberg cocycle c(h, h') = a . b' as a canonical residue in [0, k).
inline Int heisenberg_cocycle(const Vec& h, const Vec& hp, Int k) {
    auto [a, b] = split_interleaved(h, k);
    auto [ap, bp] = split_interleaved(hp, k);
    Int c = 0;
    for (size_t i = 0; i < a.size(); ++i) c += a[i] * bp[i];
    return mod_reduce(c, k);
}

// Matrix of zeta^t U_{(a,b)} on C[(Z/k)^g].
inline Eigen::MatrixXcd heisenberg_operator(const Vec& v, Int k, Int central = 0,
                                            std::size_t guard = kDefaultGuardDim) {
    const int g = static_cast<int>(v.size()) / 2;
    const std::size_t n = heisenberg_dimension(g, k, guard);
    auto [a, b] = split_interleaved(v, k);

    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> zeta(static_cast<size_t>(k));
    for (Int r = 0; r < k; ++r)
        zeta[static_cast<size_t>(r)] =
            std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(k));

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    std::vector<Int> x(static_cast<size_t>(g), 0);
    for (std::size_t row = 0; row < n; ++row) {
        // Decode row index into coordinates, x_1 most significant.
        std::size_t rest = row;
        for (int i = g - 1; i >= 0; --i) {
            x[static_cast<size_t>(i)] = static_cast<Int>(rest % static_cast<std::size_t>(k));
            rest /= static_cast<std::size_t>(k);
        }
        Int phase = central;
        std::size_t col = 0;
        for (int i = 0; i < g; ++i) {
            phase += b[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
            col = col * static_cast<std::size_t>(k) +
                  static_cast<std::size_t>(mod_reduce(x[static_cast<size_t>(i)] + a[static_cast<size_t>(i)], k));
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            zeta[static_cast<size_t>(mod_reduce(phase, k))];
    }
    return m;
}

} // namespace lefschetz
