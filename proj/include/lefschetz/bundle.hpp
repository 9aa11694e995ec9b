#pragma once

// Verlinde bundle numerics over a rational base curve: exact rational
// slope and degree, balanced splitting type, Riemann-Roch and
// Brill-Noether style section counts, and higher Chern data.
//
// For genus-g fibers at level k with Hodge degree lambda, the bundle has
//     rank   n = Verlinde rank v_k(g),
//     degree d = (3k / (k + 2)) * n * lambda   (rational; integrality is
//                a nontrivial divisibility condition, reported not assumed),
//     slope  mu = d / n = 3 k lambda / (k + 2).
// All arithmetic is exact (arbitrary precision rationals).

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fusion.hpp"

namespace lefschetz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    if (b <= 0) throw invariant_error("floor division requires a positive divisor");
    BigInt q = a / b; // truncates toward zero
    if (a % b != 0 && a < 0) --q;
    return q;
}

// Balanced splitting type of a degree-d rank-n sum of line bundles,
// stored run-length: `high_count` copies of `low_value + 1` and
// `low_count` copies of `low_value`.
struct SplittingType {
    BigInt low_value;
    BigInt low_count;
    BigInt high_count; // summands of low_value + 1

    BigInt rank() const { return low_count + high_count; }
    BigInt degree() const { return low_value * rank() + high_count; }
};

inline SplittingType balanced_splitting(const BigInt& rank, const BigInt& degree) {
    if (rank < 1) throw invariant_error("splitting requires positive rank");
    SplittingType s;
    s.low_value = floor_div(degree, rank);
    s.high_count = degree - s.low_value * rank; // in [0, rank)
    s.low_count = rank - s.high_count;
    return s;
}

// Summands listed explicitly, descending.
inline std::vector<BigInt> splitting_summands(const SplittingType& s) {
    std::vector<BigInt> out;
    for (BigInt i = 0; i < s.high_count; ++i) out.push_back(s.low_value + 1);
    for (BigInt i = 0; i < s.low_count; ++i) out.push_back(s.low_value);
    return out;
}

// h^0 of a sum of line bundles O(d_i) on the projective line.
inline BigInt h0_of_splitting(const SplittingType& s) {
    BigInt h0 = 0;
    if (s.low_value + 2 > 0) h0 += s.high_count * (s.low_value + 2);
    if (s.low_value + 1 > 0) h0 += s.low_count * (s.low_value + 1);
    return h0;
}

// Euler characteristic chi = h^0 - h^1 = n + d for a rank-n degree-d
// bundle on the projective line (Riemann-Roch).
inline BigInt riemann_roch_chi(const BigInt& rank, const BigInt& degree) {
    return rank + degree;
}

struct BundleData {
    Int genus = 0;
    Int level = 0;
    Int lambda = 0;
    BigInt rank;
    Rational degree;
    bool integral_degree = false;
    Rational slope;
};

inline BundleData bundle_data(Int genus, Int level, Int lambda) {
    if (lambda < 1) throw invariant_error("Hodge degree lambda must be at least 1");
    VerlindeRank v = verlinde_rank(genus, level);
    BundleData b;
    b.genus = genus;
    b.level = level;
    b.lambda = lambda;
    b.rank = BigInt(v.rank);
    b.slope = Rational(BigInt(3 * level * lambda), BigInt(level + 2));
    b.degree = b.slope * Rational(b.rank);
    b.integral_degree = (b.degree.denominator() == 1);
    return b;
}

// (k + 2) * slope - 3 k lambda: exactly zero, certifying that the slope
// combination is flat in lambda.
inline Rational flatness_defect(const BundleData& b) {
    return Rational(BigInt(b.level + 2)) * b.slope - Rational(BigInt(3 * b.level * b.lambda));
}

// Binomial coefficient C(n, i) in exact arithmetic.
inline BigInt binomial(const BigInt& n, Int i) {
    if (i < 0) return 0;
    BigInt num = 1, den = 1;
    for (Int t = 0; t < i; ++t) {
        num *= (n - t);
        den *= (t + 1);
    }
    return num / den;
}

// i-th Chern number of the split model: c_i = C(n, i) * slope^i.
inline Rational higher_chern(const BundleData& b, Int i) {
    if (i < 0) throw invariant_error("Chern index must be nonnegative");
    if (BigInt(i) > b.rank) return Rational(0);
    Rational p(1);
    for (Int t = 0; t < i; ++t) p *= b.slope;
    return Rational(binomial(b.rank, i)) * p;
}

struct BrillNoetherReport {
    BundleData bundle;
    Rational dual_degree;
    bool dual_integral = false;
    // The remaining fields are only meaningful when dual_integral holds.
    SplittingType dual_splitting;
    BigInt generic_h0;
    BigInt dual_chi;
    std::string verdict;
};

// Section count of the dual bundle in its balanced (most stable) model.
// A vanishing generic h^0 is necessary for Brill-Noether generality; it
// does not certify it, which the verdict wording reflects.
inline BrillNoetherReport brill_noether(Int genus, Int level, Int lambda) {
    BrillNoetherReport r;
    r.bundle = bundle_data(genus, level, lambda);
    r.dual_degree = -r.bundle.degree;
    r.dual_integral = (r.dual_degree.denominator() == 1);
    if (!r.dual_integral) {
        r.verdict = "dual degree is not integral; no splitting model applies";
        return r;
    }
    r.dual_splitting = balanced_splitting(r.bundle.rank, r.dual_degree.numerator());
    r.generic_h0 = h0_of_splitting(r.dual_splitting);
    r.dual_chi = riemann_roch_chi(r.bundle.rank, r.dual_degree.numerator());
    r.verdict = (r.generic_h0 == 0)
                    ? "generic h0 vanishes: Brill-Noether generality is possible"
                    : "balanced model already has sections: generality fails";
    return r;
}

} // namespace lefschetz
