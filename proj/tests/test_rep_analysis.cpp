#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "lefschetz/rep_analysis.hpp"

using namespace lefschetz;

namespace {

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Fibration torus_fibration() {
    Fibration f;
    f.genus = 1;
    for (int i = 0; i < 6; ++i) {
        f.cycles.push_back(Vec{1, 0});
        f.cycles.push_back(Vec{0, 1});
    }
    f.signature = -8;
    f.base_points = 1;
    f.level = 2;
    return f;
}

} // namespace

TEST_CASE("commutant of nothing is the full matrix algebra", "[commutant]") {
    CommutantReport r = commutant_analysis({}, 2);
    CHECK(r.dimension == 4);
    CHECK_FALSE(r.inconclusive);
    CHECK(r.kernel_basis.size() == 4);
}

TEST_CASE("commutant of a single involution", "[commutant]") {
    CommutantReport r = commutant_analysis({pauli_x()}, 2);
    CHECK(r.dimension == 2);
    CHECK_FALSE(r.inconclusive);
    // Kernel vectors genuinely commute.
    for (const auto& x : r.kernel_basis) CHECK(max_abs(pauli_x() * x - x * pauli_x()) < 1e-12);
    // Direct residual evaluation keeps true kernel modes near machine zero.
    CHECK(r.singular_values(0) < 1e-12);
    CHECK(r.singular_values(1) < 1e-12);
    CHECK(r.singular_values(2) > 1.0);
}

TEST_CASE("commutant of an irreducible pair is the scalars", "[commutant]") {
    CommutantReport r = commutant_analysis({pauli_x(), pauli_z()}, 2);
    CHECK(r.dimension == 1);
    CHECK_FALSE(r.inconclusive);
    REQUIRE(r.kernel_basis.size() == 1);
    Eigen::MatrixXcd x = r.kernel_basis[0];
    CHECK(max_abs(x - x(0, 0) * Eigen::MatrixXcd::Identity(2, 2)) < 1e-10);
}

TEST_CASE("near-commuting perturbation lands in the inconclusive band", "[commutant]") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(2, 2);
    d(1, 1) = 1.0 + 2e-7;
    CommutantReport r = commutant_analysis({pauli_x(), d}, 2);
    CHECK(r.inconclusive);
    CHECK(r.dimension >= 1);
    CHECK(r.dimension <= 2);

    // A coarse cutoff resolves the same spectrum decisively.
    CommutantReport coarse = commutant_analysis({pauli_x(), d}, 2, 1e-3);
    CHECK_FALSE(coarse.inconclusive);
    CHECK(coarse.dimension == 2);
}

TEST_CASE("commutant guards and argument validation", "[commutant]") {
    CHECK_THROWS_AS(commutant_analysis({}, 65), guard_error);
    CHECK_THROWS_AS(commutant_analysis({}, 0), invariant_error);
    CHECK_THROWS_AS(commutant_analysis({pauli_x()}, 2, 0.0), invariant_error);
    CHECK_THROWS_AS(commutant_analysis({pauli_x()}, 2, 1.5), invariant_error);
    CHECK_THROWS_AS(commutant_analysis({pauli_x()}, 3), invariant_error);
}

TEST_CASE("invariant projector for a reducible set", "[commutant]") {
    CommutantReport r = commutant_analysis({pauli_x()}, 2);
    auto p = find_invariant_projector(r, {pauli_x()});
    REQUIRE(p.has_value());
    CHECK(p->rank == 1);
    CHECK(p->idempotency_residual < 1e-10);
    CHECK(p->commutation_residual < 1e-10);
    // The rank-1 projector is (I +/- X)/2.
    CHECK(std::abs(std::abs(p->matrix(0, 1)) - 0.5) < 1e-10);
}

TEST_CASE("no projector for an irreducible set", "[commutant]") {
    CommutantReport r = commutant_analysis({pauli_x(), pauli_z()}, 2);
    CHECK_FALSE(find_invariant_projector(r, {pauli_x(), pauli_z()}).has_value());
}

TEST_CASE("deformation dimension count", "[homplus]") {
    HomPlusReport r = homplus_dimension(2, {1, 1}, 12);
    CHECK(r.commutant_codim == 2);
    CHECK(r.dimension == 18);
    CHECK_FALSE(r.empty_or_obstructed);

    // Central local operators contribute nothing: codim 0.
    HomPlusReport central = homplus_dimension(2, {2}, 1);
    CHECK(central.commutant_codim == 0);
    CHECK(central.dimension == -6);
    CHECK(central.empty_or_obstructed);
}

TEST_CASE("deformation count input validation", "[homplus]") {
    CHECK_THROWS_AS(homplus_dimension(2, {1, 2}, 4), invariant_error);
    CHECK_THROWS_AS(homplus_dimension(2, {0, 2}, 4), invariant_error);
    CHECK_THROWS_AS(homplus_dimension(2, {}, 4), invariant_error);
    CHECK_THROWS_AS(homplus_dimension(0, {1}, 4), invariant_error);
    CHECK_THROWS_AS(homplus_dimension(2, {1, 1}, -1), invariant_error);
}

TEST_CASE("eigenvalue clustering", "[spectrum]") {
    std::complex<double> i(0.0, 1.0);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(3, 3);
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 2) = i;
    CHECK(eigenvalue_multiplicities(u) == std::vector<Int>{2, 1});
    CHECK(eigenvalue_multiplicities(Eigen::MatrixXcd::Identity(4, 4)) == std::vector<Int>{4});

    // Clusters that straddle the branch cut of arg are merged.
    const double pi = 3.14159265358979323846;
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2, 2);
    w(0, 0) = std::polar(1.0, pi - 2e-7);
    w(1, 1) = std::polar(1.0, -pi + 2e-7);
    CHECK(eigenvalue_multiplicities(w) == std::vector<Int>{2});
}

TEST_CASE("spectral shape of the basic twist operator", "[spectrum]") {
    CHECK(abelian_multiplicities(1, 2) == std::vector<Int>{1, 1});
    CHECK(abelian_multiplicities(1, 3) == std::vector<Int>{2, 1});
    CHECK(abelian_multiplicities(1, 4) == std::vector<Int>{2, 1, 1});
}

TEST_CASE("monodromy composition over the torus word", "[rep]") {
    ProjectiveRep rep = compose_monodromy_weil(torus_fibration(), 2);
    CHECK(rep.fiber_dim == 2);
    CHECK(rep.operators.size() == 12);
    for (const WeilOperator& w : rep.operators) {
        Eigen::MatrixXcd wm = w.matrix;
        CHECK(max_abs(wm.adjoint() * wm - Eigen::MatrixXcd::Identity(2, 2)) < 1e-10);
    }
    // The full word is trivial in the mapping class group image, so the
    // product is scalar.
    Eigen::MatrixXcd prod = rep_product(rep);
    std::complex<double> c = prod(0, 0);
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-9);
    CHECK(max_abs(prod - c * Eigen::MatrixXcd::Identity(2, 2)) < 1e-9);
}

TEST_CASE("torus word at level 2 is irreducible", "[rep]") {
    ReducibilityReport r = analyze_reducibility(torus_fibration(), 2);
    CHECK(r.verdict == ReducibilityVerdict::Irreducible);
    CHECK(r.commutant.dimension == 1);
    CHECK_FALSE(r.projector.has_value());
}

TEST_CASE("second-handle block word at level 2 is reducible", "[rep]") {
    Fibration f;
    f.genus = 2;
    f.cycles = {Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}, Vec{0, 0, 1, 1}};
    f.level = 2;
    ReducibilityReport r = analyze_reducibility(f, 2);
    CHECK(r.verdict == ReducibilityVerdict::Reducible);
    CHECK(r.commutant.dimension == 4);
    REQUIRE(r.projector.has_value());
    CHECK(r.projector->rank == 2);
    CHECK(r.projector->idempotency_residual < 1e-10);
    CHECK(r.projector->commutation_residual < 1e-7);
}

TEST_CASE("torus word at level 3 splits under the parity symmetry", "[rep]") {
    // The map x -> -x on Z/3 normalizes every Heisenberg translation and
    // commutes with the twist operators about a_1 and b_1, whose Fourier
    // coefficients are even functions.  The commutant is therefore two
    // dimensional and the three-dimensional space splits as 2 + 1.
    Fibration f;
    f.genus = 1;
    f.cycles = {Vec{1, 0}, Vec{0, 1}};
    ReducibilityReport r = analyze_reducibility(f, 3);

    Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(3, 3);
    parity(0, 0) = 1.0;
    parity(1, 2) = 1.0;
    parity(2, 1) = 1.0;
    for (const WeilOperator& w : r.rep.operators)
        CHECK(max_abs(parity * w.matrix - w.matrix * parity) < 1e-12);

    CHECK(r.commutant.dimension == 2);
    CHECK(r.verdict == ReducibilityVerdict::Reducible);
    REQUIRE(r.projector.has_value());
    CHECK(r.projector->rank >= 1);
    CHECK(r.projector->rank <= 2);
    CHECK(r.projector->commutation_residual < 1e-7);
}

TEST_CASE("trivial fibration has a full commutant", "[rep]") {
    Fibration f;
    f.genus = 1;
    ReducibilityReport r = analyze_reducibility(f, 2);
    CHECK(r.commutant.dimension == 4);
    CHECK(r.verdict == ReducibilityVerdict::Reducible);
    CHECK(r.projector.has_value());
}

TEST_CASE("reducibility guard on oversized fibers", "[rep]") {
    Fibration f;
    f.genus = 4;
    Vec v(8, 0);
    v[0] = 1;
    f.cycles = {v};
    CHECK_THROWS_AS(analyze_reducibility(f, 5), guard_error);
}
