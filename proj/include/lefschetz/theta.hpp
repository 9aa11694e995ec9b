#pragma once

// Theta series with rational characteristics and certified truncation.
//
//     theta(l, tau; R) = sum over n in Z^g + l, |n|_inf <= R of
//                        exp((i pi / k) n^T tau n)
//
// where the label l has coordinates num_j / k in [0, 1) and tau is a
// point of the Siegel upper half space (exactly symmetric complex
// matrix with positive definite imaginary part).  Lattice membership in
// the box is decided exactly on integers: |k m_j + num_j| <= k R.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "symplectic.hpp"

namespace lefschetz {

struct ThetaLabel {
    Int level = 1;                    // k
    std::vector<Int> numerators;      // length g, reduced to [0, k)

    int genus() const { return static_cast<int>(numerators.size()); }
};

inline ThetaLabel make_theta_label(Int level, std::vector<Int> numerators) {
    if (level < 1) throw invariant_error("theta label level must be positive");
    for (auto& e : numerators) e = mod_reduce(e, level);
    return ThetaLabel{level, std::move(numerators)};
}

// A point of the Siegel upper half space.  Validation is strict: the
// matrix must be exactly symmetric entry by entry, and Im(tau) must be
// positive definite.
struct SiegelPoint {
    Eigen::MatrixXcd tau;

    int genus() const { return static_cast<int>(tau.rows()); }
};

inline SiegelPoint make_siegel_point(const Eigen::MatrixXcd& tau) {
    if (tau.rows() != tau.cols() || tau.rows() < 1)
        throw invariant_error("Siegel point must be a nonempty square matrix");
    for (int i = 0; i < tau.rows(); ++i)
        for (int j = i + 1; j < tau.cols(); ++j)
            if (tau(i, j) != tau(j, i))
                throw invariant_error("Siegel point requires an exactly symmetric matrix");
    Eigen::MatrixXd im = tau.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im);
    if (es.info() != Eigen::Success) throw internal_error("eigensolver failed on Im(tau)");
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw invariant_error("Siegel point requires positive definite imaginary part");
    return SiegelPoint{tau};
}

inline SiegelPoint standard_siegel_point(int genus, double scale = 1.0) {
    Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(genus, genus);
    for (int i = 0; i < genus; ++i) tau(i, i) = std::complex<double>(0.0, scale);
    return make_siegel_point(tau);
}

// Smallest eigenvalue of Im(tau); controls the Gaussian decay rate.
inline double min_imag_eigenvalue(const SiegelPoint& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(p.tau.imag()));
    return es.eigenvalues().minCoeff();
}

struct ThetaValue {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0; // bound on the omitted mass outside the box
    long long terms = 0;     // lattice points summed
};

// Sum over the box in lexicographic order of the integer offsets, so the
// result is bitwise deterministic for fixed inputs.
inline ThetaValue theta_series(const ThetaLabel& label, const SiegelPoint& point, Int radius) {
    const int g = label.genus();
    if (point.genus() != g) throw invariant_error("theta label and Siegel point genus mismatch");
    if (radius < 1) throw invariant_error("truncation radius must be at least 1");
    const Int k = label.level;
    if (g > 6 || radius > 200)
        throw guard_error("theta truncation box too large (genus <= 6, radius <= 200)");

    const double pi = 3.14159265358979323846;
    ThetaValue out;

    // Offsets m_j range over a superset; exact membership is the integer
    // test |k m_j + num_j| <= k R.
    std::vector<Int> m(static_cast<size_t>(g), -radius - 1);
    std::vector<Int> w(static_cast<size_t>(g), 0); // w_j = k m_j + num_j
    auto in_range = [&](int j) {
        Int wj = k * m[static_cast<size_t>(j)] + label.numerators[static_cast<size_t>(j)];
        return wj >= -k * radius && wj <= k * radius;
    };

    // Odometer loop, most significant coordinate first.
    int j = 0;
    while (j >= 0) {
        if (j < g) {
            if (m[static_cast<size_t>(j)] > radius) {
                m[static_cast<size_t>(j)] = -radius - 1;
                --j;
                if (j >= 0) ++m[static_cast<size_t>(j)];
                continue;
            }
            if (!in_range(j)) {
                ++m[static_cast<size_t>(j)];
                continue;
            }
            w[static_cast<size_t>(j)] = k * m[static_cast<size_t>(j)] + label.numerators[static_cast<size_t>(j)];
            ++j;
            if (j < g) m[static_cast<size_t>(j)] = -radius - 1;
            continue;
        }
        // Full point: exponent (i pi / k) n^T tau n with n = w / k.
        std::complex<double> quad(0.0, 0.0);
        for (int r = 0; r < g; ++r)
            for (int c = 0; c < g; ++c)
                quad += static_cast<double>(w[static_cast<size_t>(r)]) *
                        static_cast<double>(w[static_cast<size_t>(c)]) * point.tau(r, c);
        std::complex<double> exponent =
            std::complex<double>(0.0, pi) * quad / (static_cast<double>(k) * k * k);
        out.value += std::exp(exponent);
        ++out.terms;
        --j;
        ++m[static_cast<size_t>(j)];
    }

    // Tail bound.  Every omitted point has |n|_inf > R.  Shell t >= 1
    // holds the points with |n|_inf in (R+t-1, R+t]; there are at most
    // (2(R+t)+2)^g of them and each term has modulus at most
    // exp(-pi lam (R+t-1)^2 / k), lam = min eigenvalue of Im(tau).
    double lam = min_imag_eigenvalue(point);
    double tail = 0.0;
    for (Int t = 1; t <= 4000; ++t) {
        double s = static_cast<double>(radius + t - 1);
        double shell = std::pow(2.0 * static_cast<double>(radius + t) + 2.0, g) *
                       std::exp(-pi * lam * s * s / static_cast<double>(k));
        tail += shell;
        if (shell < 1e-30 * (tail + 1e-300)) break;
    }
    out.tail_bound = tail;
    return out;
}

// Residual of the block factorization: for tau = diag(tau1, tau2) and a
// concatenated label, theta factors as the product of the block series.
// The box constraint splits coordinatewise, so with equal radii the
// truncated sums satisfy the identity exactly (up to roundoff).
inline double theta_factorization_residual(const ThetaLabel& l1, const SiegelPoint& p1,
                                           const ThetaLabel& l2, const SiegelPoint& p2,
                                           Int radius) {
    if (l1.level != l2.level) throw invariant_error("theta factorization requires equal levels");
    ThetaLabel joint;
    joint.level = l1.level;
    joint.numerators = l1.numerators;
    joint.numerators.insert(joint.numerators.end(), l2.numerators.begin(), l2.numerators.end());

    int g1 = l1.genus(), g2 = l2.genus();
    Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(g1 + g2, g1 + g2);
    tau.topLeftCorner(g1, g1) = p1.tau;
    tau.bottomRightCorner(g2, g2) = p2.tau;

    std::complex<double> whole = theta_series(joint, make_siegel_point(tau), radius).value;
    std::complex<double> split =
        theta_series(l1, p1, radius).value * theta_series(l2, p2, radius).value;
    return std::abs(whole - split);
}

} // namespace lefschetz
