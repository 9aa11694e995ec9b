#pragma once

// Reducibility analysis of the projective monodromy action.
//
// The commutant of a finite set of operators M_i is the kernel of the
// stacked commutator map X |-> (M_i X - X M_i)_i.  With column-major
// vectorization, vec(M X) = (I (x) M) vec X and vec(X M) = (M^T (x) I)
// vec X, so each operator contributes K_i = I (x) M_i - M_i^T (x) I.  We
// diagonalize the positive semidefinite Gram matrix sum_i K_i^* K_i, then
// re-evaluate each eigenvector's commutator residual directly; those
// residuals are the singular values of the stacked map, and the commutant
// dimension is the count below a relative cutoff.
// A verdict is only issued when the spectrum is unambiguous: any singular
// value within a factor of 10 of the cutoff makes the result inconclusive.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "fibration.hpp"
#include "monodromy.hpp"
#include "weil.hpp"

namespace lefschetz {

inline constexpr double kDefaultCommutantCutoff = 1e-7;
inline constexpr std::size_t kMaxCommutantDim = 64;

struct CommutantReport {
    int space_dim = 0;                      // n (operators are n x n)
    Eigen::VectorXd singular_values;        // ascending
    double cutoff_used = 0.0;               // absolute threshold applied
    int dimension = 0;                      // count of singular values below cutoff
    bool inconclusive = false;              // spectrum too close to the cutoff
    std::vector<Eigen::MatrixXcd> kernel_basis; // commutant basis (Frobenius-orthonormal)
};

inline CommutantReport commutant_analysis(const std::vector<Eigen::MatrixXcd>& ops, int space_dim,
                                          double relative_cutoff = kDefaultCommutantCutoff) {
    if (space_dim < 1) throw invariant_error("operator space dimension must be positive");
    if (static_cast<std::size_t>(space_dim) > kMaxCommutantDim) {
        std::ostringstream msg;
        msg << "commutant analysis on dimension " << space_dim << " exceeds the guard "
            << kMaxCommutantDim << " (the Gram matrix is n^2 x n^2)";
        throw guard_error(msg.str());
    }
    if (relative_cutoff <= 0 || relative_cutoff >= 1)
        throw invariant_error("relative cutoff must lie in (0, 1)");

    const Eigen::Index n = space_dim;
    const Eigen::Index n2 = n * n;
    CommutantReport report;
    report.space_dim = space_dim;

    // No operators: everything commutes and the commutant is the full
    // matrix algebra.
    if (ops.empty()) {
        report.singular_values = Eigen::VectorXd::Zero(n2);
        report.dimension = static_cast<int>(n2);
        report.cutoff_used = 0.0;
        for (Eigen::Index c = 0; c < n2; ++c) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
            e(c % n, c / n) = 1.0;
            report.kernel_basis.push_back(e);
        }
        return report;
    }

    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n2, n2);
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    for (const Eigen::MatrixXcd& m : ops) {
        if (m.rows() != n || m.cols() != n)
            throw invariant_error("all operators must share the given square dimension");
        Eigen::MatrixXcd k(n2, n2);
        // K = I (x) M - M^T (x) I, built blockwise.
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
                if (i == j) block = m;
                block -= m(j, i) * eye; // (M^T)(i,j) = M(j,i)
                k.block(i * n, j * n, n, n) = block;
            }
        gram += k.adjoint() * k;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success) throw internal_error("eigensolver failed on commutant Gram");

    // Gram squaring halves the attainable precision, flooring the computed
    // zero modes near sqrt(eps * |G|); each candidate's residual is therefore
    // recomputed directly from the commutators, which is accurate to machine
    // precision and keeps genuine kernel vectors far below the cutoff band.
    std::vector<std::pair<double, Eigen::Index>> refined;
    refined.reserve(static_cast<std::size_t>(n2));
    for (Eigen::Index i = 0; i < n2; ++i) {
        Eigen::VectorXcd v = es.eigenvectors().col(i);
        Eigen::MatrixXcd x(n, n);
        for (Eigen::Index c = 0; c < n; ++c) x.col(c) = v.segment(c * n, n);
        double sq = 0.0;
        for (const Eigen::MatrixXcd& m : ops) sq += (m * x - x * m).squaredNorm();
        refined.emplace_back(std::sqrt(sq), i);
    }
    std::sort(refined.begin(), refined.end(),
              [](const std::pair<double, Eigen::Index>& a,
                 const std::pair<double, Eigen::Index>& b) { return a.first < b.first; });

    Eigen::VectorXd singulars(n2);
    for (Eigen::Index i = 0; i < n2; ++i) singulars(i) = refined[static_cast<size_t>(i)].first;
    report.singular_values = singulars;

    double smax = singulars(n2 - 1);
    if (smax == 0.0) {
        // All operators are scalar: full commutant, unambiguous.
        report.dimension = static_cast<int>(n2);
        report.cutoff_used = 0.0;
    } else {
        double cutoff = relative_cutoff * smax;
        report.cutoff_used = cutoff;
        for (Eigen::Index i = 0; i < n2; ++i) {
            if (singulars(i) < cutoff) report.dimension++;
            if (singulars(i) >= cutoff / 10.0 && singulars(i) <= 10.0 * cutoff)
                report.inconclusive = true;
        }
    }

    for (int i = 0; i < report.dimension; ++i) {
        Eigen::VectorXcd v = es.eigenvectors().col(refined[static_cast<size_t>(i)].second);
        Eigen::MatrixXcd x(n, n);
        for (Eigen::Index c = 0; c < n; ++c) x.col(c) = v.segment(c * n, n);
        report.kernel_basis.push_back(x);
    }
    return report;
}

// ---------------------------------------------------------------------
// Explicit invariant projector extracted from a reducible commutant.

struct InvariantProjector {
    Eigen::MatrixXcd matrix;
    int rank = 0;
    double idempotency_residual = 0.0;
    double commutation_residual = 0.0;
};

inline std::optional<InvariantProjector> find_invariant_projector(
    const CommutantReport& commutant, const std::vector<Eigen::MatrixXcd>& ops) {
    const Eigen::Index n = commutant.space_dim;
    if (commutant.dimension < 2 || commutant.kernel_basis.empty()) return std::nullopt;

    // Pick the commutant element farthest from the scalars.
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd best;
    double best_norm = -1.0;
    for (const Eigen::MatrixXcd& x : commutant.kernel_basis) {
        Eigen::MatrixXcd x0 = x - (x.trace() / static_cast<double>(n)) * eye;
        double norm = x0.norm();
        if (norm > best_norm) {
            best_norm = norm;
            best = x0;
        }
    }
    if (best_norm <= 1e-10) return std::nullopt;

    // Try the two Hermitian parts, largest first.
    Eigen::MatrixXcd h1 = 0.5 * (best + best.adjoint());
    Eigen::MatrixXcd h2 = std::complex<double>(0.0, 0.5) * (best - best.adjoint());
    if (h2.norm() > h1.norm()) std::swap(h1, h2);

    for (const Eigen::MatrixXcd& h : {h1, h2}) {
        Eigen::MatrixXcd h0 = h - (h.trace() / static_cast<double>(n)) * eye;
        if (h0.norm() <= 1e-10) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (es.info() != Eigen::Success) continue;

        // Split the spectrum at its widest gap.
        Eigen::VectorXd ev = es.eigenvalues();
        int split = -1;
        double widest = -1.0;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            double gap = ev(i + 1) - ev(i);
            if (gap > widest) {
                widest = gap;
                split = static_cast<int>(i);
            }
        }
        if (split < 0) continue;

        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index i = split + 1; i < n; ++i)
            p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();

        InvariantProjector out;
        out.matrix = p;
        out.rank = static_cast<int>(n - 1 - split);
        out.idempotency_residual = (p * p - p).cwiseAbs().maxCoeff();
        out.commutation_residual = 0.0;
        for (const Eigen::MatrixXcd& m : ops)
            out.commutation_residual =
                std::max(out.commutation_residual, (m * p - p * m).cwiseAbs().maxCoeff());
        if (out.rank <= 0 || out.rank >= n) continue;
        if (out.idempotency_residual > 1e-10) continue;
        if (out.commutation_residual > 1e-6) continue;
        return out;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// Monodromy composed with the Weil construction.

struct ProjectiveRep {
    int genus = 0;
    Int level = 1;
    std::size_t fiber_dim = 1;
    std::vector<WeilOperator> operators; // one per vanishing cycle, word order
};

inline ProjectiveRep compose_monodromy_weil(const Fibration& f, Int level,
                                            std::size_t guard = kDefaultGuardDim) {
    validate(f);
    if (level < 1) throw invariant_error("level must be a positive integer");
    ProjectiveRep rep;
    rep.genus = f.genus;
    rep.level = level;
    rep.fiber_dim = heisenberg_dimension(f.genus, level, guard);
    for (const Vec& v : f.cycles) {
        IntMat t = transvection_matrix(v);
        WeilOperator w = weil_intertwiner(t, level, guard);
        // Re-verify the defining conjugation property post hoc.
        double residual = conjugation_residual(w, t);
        if (residual > 1e-8) {
            std::ostringstream msg;
            msg << "Weil operator failed post-hoc conjugation verification (residual " << residual
                << ")";
            throw internal_error(msg.str());
        }
        rep.operators.push_back(std::move(w));
    }
    return rep;
}

inline Eigen::MatrixXcd rep_product(const ProjectiveRep& rep) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(rep.fiber_dim),
                                                    static_cast<Eigen::Index>(rep.fiber_dim));
    for (const WeilOperator& w : rep.operators) p = p * w.matrix;
    return p;
}

enum class ReducibilityVerdict { Irreducible, Reducible, Inconclusive };

inline const char* to_string(ReducibilityVerdict v) {
    switch (v) {
        case ReducibilityVerdict::Irreducible: return "irreducible";
        case ReducibilityVerdict::Reducible: return "reducible";
        case ReducibilityVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ReducibilityReport {
    ProjectiveRep rep;
    CommutantReport commutant;
    ReducibilityVerdict verdict = ReducibilityVerdict::Inconclusive;
    std::optional<InvariantProjector> projector;
};

inline ReducibilityReport analyze_reducibility(const Fibration& f, Int level,
                                               double relative_cutoff = kDefaultCommutantCutoff,
                                               std::size_t guard = kDefaultGuardDim) {
    ReducibilityReport report;
    report.rep = compose_monodromy_weil(f, level, guard);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(report.rep.operators.size());
    for (const WeilOperator& w : report.rep.operators) mats.push_back(w.matrix);
    report.commutant =
        commutant_analysis(mats, static_cast<int>(report.rep.fiber_dim), relative_cutoff);
    if (report.commutant.inconclusive)
        report.verdict = ReducibilityVerdict::Inconclusive;
    else if (report.commutant.dimension <= 1)
        report.verdict = ReducibilityVerdict::Irreducible;
    else {
        report.verdict = ReducibilityVerdict::Reducible;
        report.projector = find_invariant_projector(report.commutant, mats);
    }
    return report;
}

// ---------------------------------------------------------------------
// Dimension count for the invariant subspace of deformations.
//
// With fiber dimension n, abelian multiplicities m_i (summing to n) and r
// local operators, the expected dimension is
//     r * (n^2 - sum_i m_i^2) - 2 (n^2 - 1).

struct HomPlusReport {
    Int fiber_dim = 0;
    Int commutant_codim = 0; // n^2 - sum m_i^2
    Int dimension = 0;
    bool empty_or_obstructed = false;
};

inline HomPlusReport homplus_dimension(Int fiber_dim, const std::vector<Int>& multiplicities,
                                       Int operator_count) {
    if (fiber_dim < 1) throw invariant_error("fiber dimension must be positive");
    if (operator_count < 0) throw invariant_error("operator count must be nonnegative");
    if (multiplicities.empty())
        throw invariant_error("at least one abelian multiplicity is required");
    Int sum = 0, sumsq = 0;
    for (Int m : multiplicities) {
        if (m < 1) throw invariant_error("abelian multiplicities must be positive");
        sum += m;
        sumsq += m * m;
    }
    if (sum != fiber_dim) {
        std::ostringstream msg;
        msg << "abelian multiplicities sum to " << sum << " but the fiber dimension is "
            << fiber_dim;
        throw invariant_error(msg.str());
    }
    HomPlusReport report;
    report.fiber_dim = fiber_dim;
    report.commutant_codim = fiber_dim * fiber_dim - sumsq;
    report.dimension =
        operator_count * report.commutant_codim - 2 * (fiber_dim * fiber_dim - 1);
    report.empty_or_obstructed = report.dimension < 0;
    return report;
}

// Multiplicities of the eigenvalue clusters of a unitary operator,
// sorted descending.  Eigenvalues are grouped by phase with the given
// angular tolerance.
inline std::vector<Int> eigenvalue_multiplicities(const Eigen::MatrixXcd& u,
                                                  double angle_tol = 1e-6) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
    if (es.info() != Eigen::Success) throw internal_error("eigensolver failed");
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < u.rows(); ++i) angles.push_back(std::arg(es.eigenvalues()(i)));
    std::sort(angles.begin(), angles.end());
    std::vector<Int> mults;
    const double two_pi = 6.28318530717958647692;
    for (size_t i = 0; i < angles.size();) {
        size_t j = i + 1;
        while (j < angles.size() && angles[j] - angles[j - 1] < angle_tol) ++j;
        mults.push_back(static_cast<Int>(j - i));
        i = j;
    }
    // The circle wraps: merge the first and last clusters if adjacent.
    if (mults.size() > 1 && (angles.front() + two_pi) - angles.back() < angle_tol) {
        mults.front() += mults.back();
        mults.pop_back();
    }
    std::sort(mults.rbegin(), mults.rend());
    return mults;
}

// Abelian multiplicities for the level-k twist about a_1: the eigenvalue
// clusters of its Weil operator.
inline std::vector<Int> abelian_multiplicities(int genus, Int level,
                                               std::size_t guard = kDefaultGuardDim) {
    Vec v(static_cast<size_t>(2 * genus), 0);
    v[0] = 1;
    WeilOperator w = weil_intertwiner(transvection_matrix(v), level, guard);
    return eigenvalue_multiplicities(w.matrix);
}

} // namespace lefschetz
