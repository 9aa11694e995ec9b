#pragma once

// Projective Weil operators at level k, solved exactly.
//
// For a symplectic-mod-k matrix A the operator W must satisfy, for every
// Heisenberg element h,
//     W U_h = mu(h) U_{Ah} W
// with unimodular phases mu(h).  Expanding W = sum_m f(m) U_m in the
// Heisenberg operator basis turns the relation for the 2g standard
// generators h_j into the exact recursion
//     f(m + s_j) = f(m) * zeta^{c(m, h_j) - c(Ah_j, m + s_j)} / mu_j,
//     s_j = h_j - Ah_j  (mod k),
// whose consistency is decided coset by coset for the subgroup generated
// by the shifts s_j.  All phases live in the cyclic group of order 2k
// (integer exponents of zeta_{2k} = exp(pi i / k)), so consistency checks
// are exact integer comparisons; no numerical solve is involved.  Exactly
// one coset supports a solution: if two did, both would carry invertible
// intertwiners and the basic Heisenberg system would be reducible,
// contradicting its irreducibility; if none did, A would not lift at all.
//
// The generator phases mu_j are fixed canonically:
//   odd k:  mu_j = zeta_k^{(k+1)/2 * c(Ah_j, Ah_j)}  (the exact half of
//           the cocycle defect, multiplicative across products),
//   even k: mu_j = zeta_{2k}^{c(Ah_j, Ah_j)} evaluated on the canonical
//           lifts in [0, k), a consistent choice of square root (a fully
//           multiplicative section does not exist for even k).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "heisenberg.hpp"
#include "symplectic.hpp"

namespace lefschetz {

struct WeilOperator {
    int genus = 0;
    Int level = 1;
    Eigen::MatrixXcd matrix;        // unitary representative
    std::vector<Int> mu_exponents;  // sigma_j: mu_j = zeta_{2k}^{sigma_j}, one per generator
    std::size_t support_size = 0;   // number of Heisenberg basis operators in W
    int consistent_cosets = 0;      // always 1 after a successful solve
};

namespace weil_detail {

// c((a,b),(a',b')) = a . b' on interleaved vectors, as a plain integer.
inline Int cocycle_int(const std::vector<Int>& x, const std::vector<Int>& y) {
    Int s = 0;
    for (size_t i = 0; i + 1 < x.size(); i += 2) s += x[i] * y[i + 1];
    return s;
}

inline std::vector<Int> column_mod(const IntMat& a, int j, Int k) {
    std::vector<Int> c(static_cast<size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) c[static_cast<size_t>(i)] = mod_reduce(a.at(i, j), k);
    return c;
}

inline std::size_t index_of(const std::vector<Int>& m, Int k) {
    std::size_t idx = 0;
    for (Int e : m) idx = idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(e);
    return idx;
}

inline std::vector<Int> vector_of(std::size_t idx, int len, Int k) {
    std::vector<Int> m(static_cast<size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
        m[static_cast<size_t>(i)] = static_cast<Int>(idx % static_cast<std::size_t>(k));
        idx /= static_cast<std::size_t>(k);
    }
    return m;
}

} // namespace weil_detail

// Canonical generator phases sigma_j (exponents of zeta_{2k}).  These are
// the diagonal values of a quadratic form lifting the cocycle difference
// c(Ah, Ah') - c(h, h'); at odd k that choice composes multiplicatively up
// to a scalar, which is the best any convention can do projectively.
inline std::vector<Int> canonical_phase_exponents(const IntMat& a, Int k) {
    const int n = a.rows();
    std::vector<Int> sigma(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Int> ahj = weil_detail::column_mod(a, j, k);
        Int cint = weil_detail::cocycle_int(ahj, ahj); // canonical lifts in [0, k)
        if (k % 2 == 1)
            sigma[static_cast<size_t>(j)] = mod_reduce((k + 1) * mod_reduce(cint, k), 2 * k);
        else
            sigma[static_cast<size_t>(j)] = mod_reduce(cint, 2 * k);
    }
    if (k == 2) {
        // One further normalization at level 2, applied when the matrix is
        // block-diagonal across handles: flip both generator phases of each
        // handle whose 2x2 block is an involution (trace 0, not the
        // identity).  On a single handle this splits the normalizer
        // extension of the level-2 Heisenberg group by SL(2, F_2), so the
        // intertwiners compose multiplicatively up to a scalar; applying it
        // handle by handle keeps direct sums aligned with tensor products.
        // For two or more coupled handles no phase convention achieves a
        // scalar composition defect (the extension of Sp(4, F_2) by the
        // translation group F_2^4 does not split), so matrices that couple
        // handles keep the quadratic phases above.
        bool block_diagonal = true;
        for (int i = 0; i < n && block_diagonal; ++i)
            for (int j = 0; j < n && block_diagonal; ++j)
                if (i / 2 != j / 2 && mod_reduce(a.at(i, j), 2) != 0) block_diagonal = false;
        if (block_diagonal) {
            for (int h = 0; h + 1 < n; h += 2) {
                Int d00 = mod_reduce(a.at(h, h), 2);
                Int d01 = mod_reduce(a.at(h, h + 1), 2);
                Int d10 = mod_reduce(a.at(h + 1, h), 2);
                Int d11 = mod_reduce(a.at(h + 1, h + 1), 2);
                bool identity = d00 == 1 && d01 == 0 && d10 == 0 && d11 == 1;
                if (!identity && (d00 + d11) % 2 == 0) {
                    sigma[static_cast<size_t>(h)] = mod_reduce(sigma[static_cast<size_t>(h)] + 2, 4);
                    sigma[static_cast<size_t>(h) + 1] =
                        mod_reduce(sigma[static_cast<size_t>(h) + 1] + 2, 4);
                }
            }
        }
    }
    return sigma;
}

inline WeilOperator weil_intertwiner(const IntMat& a_in, Int k,
                                     std::size_t guard = kDefaultGuardDim) {
    if (k < 1) throw invariant_error("level must be a positive integer");
    if (a_in.rows() != a_in.cols() || a_in.rows() < 2 || a_in.rows() % 2 != 0)
        throw invariant_error("Weil operator needs a 2g x 2g matrix");
    if (!is_symplectic_mod(a_in, k))
        throw invariant_error("matrix is not symplectic mod k; no intertwiner exists");

    const int g = a_in.rows() / 2;
    const int dim2g = 2 * g;
    const IntMat a = reduce_mod(a_in, k);
    const std::size_t n = heisenberg_dimension(g, k, guard);
    const std::size_t big = n * n; // number of Heisenberg labels k^(2g)

    using weil_detail::cocycle_int;
    using weil_detail::column_mod;
    using weil_detail::index_of;
    using weil_detail::vector_of;

    // Per-generator data.
    std::vector<std::vector<Int>> ah(static_cast<size_t>(dim2g)), sh(static_cast<size_t>(dim2g));
    std::vector<Int> sigma = canonical_phase_exponents(a, k);
    for (int j = 0; j < dim2g; ++j) {
        ah[static_cast<size_t>(j)] = column_mod(a, j, k);
        std::vector<Int> s(static_cast<size_t>(dim2g), 0);
        for (int i = 0; i < dim2g; ++i)
            s[static_cast<size_t>(i)] =
                mod_reduce((i == j ? 1 : 0) - ah[static_cast<size_t>(j)][static_cast<size_t>(i)], k);
        sh[static_cast<size_t>(j)] = s;
    }

    // Exponent of alpha_j(m) = zeta_k^{c(m, h_j) - c(Ah_j, m + s_j)}, in
    // zeta_{2k} units.
    auto alpha_exponent = [&](const std::vector<Int>& m, int j) -> Int {
        // c(m, e_j): only b-type generators (odd j) see m.
        Int cm = (j % 2 == 1) ? m[static_cast<size_t>(j - 1)] : 0;
        Int ca = 0;
        const auto& ahj = ah[static_cast<size_t>(j)];
        const auto& sj = sh[static_cast<size_t>(j)];
        for (int i = 0; i + 1 < dim2g; i += 2)
            ca += ahj[static_cast<size_t>(i)] *
                  mod_reduce(m[static_cast<size_t>(i) + 1] + sj[static_cast<size_t>(i) + 1], k);
        return mod_reduce(2 * mod_reduce(cm - ca, k), 2 * k);
    };

    // Walk each coset of the shift subgroup; assign exponents of
    // zeta_{2k} along a spanning tree and verify every closing edge.
    std::vector<Int> expo(big, -1);
    std::vector<std::size_t> stack, members, solution;
    int consistent_cosets = 0;

    for (std::size_t seed = 0; seed < big; ++seed) {
        if (expo[seed] != -1) continue;
        bool consistent = true;
        members.clear();
        stack.assign(1, seed);
        expo[seed] = 0;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            std::vector<Int> m = vector_of(cur, dim2g, k);
            for (int j = 0; j < dim2g; ++j) {
                std::vector<Int> next(static_cast<size_t>(dim2g));
                for (int i = 0; i < dim2g; ++i)
                    next[static_cast<size_t>(i)] = mod_reduce(
                        m[static_cast<size_t>(i)] + sh[static_cast<size_t>(j)][static_cast<size_t>(i)], k);
                std::size_t nidx = index_of(next, k);
                Int want = mod_reduce(expo[cur] + alpha_exponent(m, j) - sigma[static_cast<size_t>(j)],
                                      2 * k);
                if (expo[nidx] == -1) {
                    expo[nidx] = want;
                    stack.push_back(nidx);
                } else if (expo[nidx] != want) {
                    consistent = false;
                }
            }
        }
        if (consistent) {
            ++consistent_cosets;
            solution = members;
        }
    }

    if (consistent_cosets != 1) {
        std::ostringstream msg;
        msg << "intertwiner solution space has dimension " << consistent_cosets
            << ", expected 1 by Heisenberg irreducibility";
        throw internal_error(msg.str());
    }

    // Assemble W = sum over the consistent coset of zeta_{2k}^e U_m.  The
    // seed (the smallest label in the coset) carries exponent 0, which
    // pins the overall projective scale deterministically.
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> root(static_cast<size_t>(2 * k));
    for (Int r = 0; r < 2 * k; ++r)
        root[static_cast<size_t>(r)] =
            std::polar(1.0, pi * static_cast<double>(r) / static_cast<double>(k));

    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    std::vector<std::complex<double>> zk(static_cast<size_t>(k));
    for (Int r = 0; r < k; ++r)
        zk[static_cast<size_t>(r)] =
            std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(k));

    for (std::size_t idx : solution) {
        std::vector<Int> m = weil_detail::vector_of(idx, dim2g, k);
        std::complex<double> coeff = root[static_cast<size_t>(expo[idx])];
        // Add coeff * U_{(a,b)}: row x, column x + a, phase b . x.
        std::vector<Int> x(static_cast<size_t>(g), 0);
        for (std::size_t row = 0; row < n; ++row) {
            std::size_t rest = row;
            for (int i = g - 1; i >= 0; --i) {
                x[static_cast<size_t>(i)] = static_cast<Int>(rest % static_cast<std::size_t>(k));
                rest /= static_cast<std::size_t>(k);
            }
            Int phase = 0;
            std::size_t col = 0;
            for (int i = 0; i < g; ++i) {
                phase += m[static_cast<size_t>(2 * i) + 1] * x[static_cast<size_t>(i)];
                col = col * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(
                          mod_reduce(x[static_cast<size_t>(i)] + m[static_cast<size_t>(2 * i)], k));
            }
            w(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                coeff * zk[static_cast<size_t>(mod_reduce(phase, k))];
        }
    }

    // Distinct U_m are Hilbert-Schmidt orthogonal with norm sqrt(n), so
    // the unitary normalization is 1/sqrt(|coset|).
    w /= std::sqrt(static_cast<double>(solution.size()));

    double unitarity = (w.adjoint() * w - Eigen::MatrixXcd::Identity(w.rows(), w.cols()))
                           .cwiseAbs()
                           .maxCoeff();
    if (unitarity > 1e-8) {
        std::ostringstream msg;
        msg << "constructed intertwiner failed the unitarity check (residual " << unitarity << ")";
        throw internal_error(msg.str());
    }

    WeilOperator op;
    op.genus = g;
    op.level = k;
    op.matrix = std::move(w);
    op.mu_exponents = std::move(sigma);
    op.support_size = solution.size();
    op.consistent_cosets = consistent_cosets;
    return op;
}

// Post-hoc verification: max over the 2g generators of
// || W U_h - mu U_{Ah} W ||_max, with the canonical phases mu.
inline double conjugation_residual(const WeilOperator& op, const IntMat& a_in) {
    const Int k = op.level;
    const IntMat a = reduce_mod(a_in, k);
    const int dim2g = 2 * op.genus;
    std::vector<Int> sigma = canonical_phase_exponents(a, k);
    const double pi = 3.14159265358979323846;

    double worst = 0.0;
    for (int j = 0; j < dim2g; ++j) {
        Vec h(static_cast<size_t>(dim2g), 0);
        h[static_cast<size_t>(j)] = 1;
        Vec ah(static_cast<size_t>(dim2g));
        for (int i = 0; i < dim2g; ++i) ah[static_cast<size_t>(i)] = a.at(i, j);
        Eigen::MatrixXcd uh = heisenberg_operator(h, k, 0, op.matrix.rows());
        Eigen::MatrixXcd uah = heisenberg_operator(ah, k, 0, op.matrix.rows());
        std::complex<double> mu = std::polar(
            1.0, pi * static_cast<double>(sigma[static_cast<size_t>(j)]) / static_cast<double>(k));
        double r = (op.matrix * uh - mu * uah * op.matrix).cwiseAbs().maxCoeff();
        worst = std::max(worst, r);
    }
    return worst;
}

struct TensorFactorization {
    double residual = 0.0;          // max-abs deviation from scale * (W_A (x) W_B)
    std::complex<double> scale{1.0, 0.0};
};

// Exact block compatibility: the operator of A (+) B equals the Kronecker
// product of the block operators (same canonical phases, same seeds).
inline TensorFactorization weil_tensor_factorization(const IntMat& a, const IntMat& b, Int k,
                                                     std::size_t guard = kDefaultGuardDim) {
    WeilOperator wa = weil_intertwiner(a, k, guard);
    WeilOperator wb = weil_intertwiner(b, k, guard);
    WeilOperator wab = weil_intertwiner(direct_sum(a, b), k, guard);

    Eigen::Index na = wa.matrix.rows(), nb = wb.matrix.rows();
    Eigen::MatrixXcd kron(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j)
            kron.block(i * nb, j * nb, nb, nb) = wa.matrix(i, j) * wb.matrix;

    // Best unimodular-ish scale in the Frobenius inner product.
    std::complex<double> num = (kron.adjoint() * wab.matrix).trace();
    std::complex<double> den = (kron.adjoint() * kron).trace();
    std::complex<double> c = num / den;
    TensorFactorization out;
    out.scale = c;
    out.residual = (wab.matrix - c * kron).cwiseAbs().maxCoeff();
    return out;
}

} // namespace lefschetz
