#pragma once

// Integer symplectic linear algebra for surface homology.
//
// H_1 of a closed genus-g surface is modelled on the interleaved basis
// (a_1, b_1, ..., a_g, b_g).  The intersection form is <x, y> = x^T J y
// where J is block diagonal with g copies of [[0, 1], [-1, 0]], so
// <a_i, b_i> = +1.  Matrices act on column vectors.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lefschetz {

using Int = long long;
using Vec = std::vector<Int>;

// Dense integer matrix, row major.  Small (at most ~16x16 in practice).
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    Int at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat operator*(const IntMat& o) const {
        if (cols_ != o.rows_) throw internal_error("matrix product shape mismatch");
        IntMat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int kk = 0; kk < cols_; ++kk) {
                Int v = at(i, kk);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j) out.at(i, j) += v * o.at(kk, j);
            }
        return out;
    }

    Vec operator*(const Vec& x) const {
        if (static_cast<int>(x.size()) != cols_) throw internal_error("matrix-vector shape mismatch");
        Vec out(static_cast<size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i) {
            Int s = 0;
            for (int j = 0; j < cols_; ++j) s += at(i, j) * x[static_cast<size_t>(j)];
            out[static_cast<size_t>(i)] = s;
        }
        return out;
    }

    IntMat transposed() const {
        IntMat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

private:
    int rows_, cols_;
    std::vector<Int> data_;
};

// Block diagonal J with g blocks [[0, 1], [-1, 0]].
inline IntMat symplectic_form_matrix(int genus) {
    IntMat j(2 * genus, 2 * genus);
    for (int i = 0; i < genus; ++i) {
        j.at(2 * i, 2 * i + 1) = 1;
        j.at(2 * i + 1, 2 * i) = -1;
    }
    return j;
}

// <x, y> = x^T J y = sum_i (x_{a_i} y_{b_i} - x_{b_i} y_{a_i}).
inline Int symplectic_pairing(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw internal_error("pairing requires equal even-length vectors");
    Int s = 0;
    for (size_t i = 0; i + 1 < x.size(); i += 2)
        s += x[i] * y[i + 1] - x[i + 1] * y[i];
    return s;
}

// Sign convention for Dehn twists: the twist about a cycle v acts on
// homology by x |-> x + <x, v> v.  With <a_1, b_1> = +1 the twist about
// a_1 at genus 1 is [[1, -1], [0, 1]] (it fixes a_1 and sends b_1 to
// b_1 - a_1).
inline constexpr Int kTwistSign = +1;

// Matrix of x |-> x + sign <x, v> v, i.e. I - sign * v (v^T J).
inline IntMat transvection_matrix(const Vec& v, Int sign = kTwistSign) {
    const int n = static_cast<int>(v.size());
    if (n == 0 || n % 2 != 0) throw internal_error("transvection needs even-dimensional vector");
    // Row vector v^T J: entry 2i is -v[2i+1], entry 2i+1 is v[2i].
    Vec vtj(static_cast<size_t>(n), 0);
    for (int i = 0; i + 1 < n; i += 2) {
        vtj[static_cast<size_t>(i)] = -v[static_cast<size_t>(i) + 1];
        vtj[static_cast<size_t>(i) + 1] = v[static_cast<size_t>(i)];
    }
    IntMat t = IntMat::identity(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            t.at(r, c) -= sign * v[static_cast<size_t>(r)] * vtj[static_cast<size_t>(c)];
    return t;
}

inline bool is_symplectic(const IntMat& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
    IntMat j = symplectic_form_matrix(m.rows() / 2);
    return m.transposed() * j * m == j;
}

inline bool is_zero_vector(const Vec& v) {
    for (Int e : v)
        if (e != 0) return false;
    return true;
}

// A class is realized by a simple closed curve only if its coordinates
// are coprime (gcd 1).  The zero vector is not primitive.
inline bool is_primitive(const Vec& v) {
    Int g = 0;
    for (Int e : v) g = std::gcd(g, e < 0 ? -e : e);
    return g == 1;
}

inline Int mod_reduce(Int value, Int k) {
    Int r = value % k;
    return r < 0 ? r + k : r;
}

inline IntMat reduce_mod(const IntMat& m, Int k) {
    IntMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = mod_reduce(m.at(i, j), k);
    return out;
}

inline Vec reduce_mod(const Vec& v, Int k) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = mod_reduce(v[i], k);
    return out;
}

inline bool is_symplectic_mod(const IntMat& m, Int k) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
    IntMat j = symplectic_form_matrix(m.rows() / 2);
    return reduce_mod(m.transposed() * j * m, k) == reduce_mod(j, k);
}

inline IntMat direct_sum(const IntMat& a, const IntMat& b) {
    IntMat out(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

// Random primitive integer vector with entries in [-bound, bound].
inline Vec random_primitive_vector(int genus, std::mt19937_64& rng, Int bound = 3) {
    std::uniform_int_distribution<Int> dist(-bound, bound);
    while (true) {
        Vec v(static_cast<size_t>(2 * genus));
        for (auto& e : v) e = dist(rng);
        if (is_primitive(v)) return v;
    }
}

// Random product of transvections; symplectic by construction.
inline IntMat random_symplectic(int genus, std::mt19937_64& rng, int word_length = 8) {
    IntMat m = IntMat::identity(2 * genus);
    for (int i = 0; i < word_length; ++i)
        m = m * transvection_matrix(random_primitive_vector(genus, rng, 2));
    return m;
}

} // namespace lefschetz
