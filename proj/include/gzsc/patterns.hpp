// Triangular interlacing patterns for U(n): enumeration in lexicographic
// order, dimension counts, rho-shift vectors and the scaled weight lattice
// of a polytope.  Everything here is exact integer/rational arithmetic.
#pragma once

#include "core.hpp"
#include <algorithm>
#include <stdexcept>

namespace gzsc {

// Nonincreasing integer n-vector labelling an irreducible representation.
struct HighestWeight {
    IVec lam;
    explicit HighestWeight(IVec l) : lam(std::move(l)) {
        if (lam.empty()) throw std::invalid_argument("highest weight: empty");
        for (size_t i = 0; i + 1 < lam.size(); ++i)
            if (lam[i] < lam[i + 1])
                throw std::invalid_argument("highest weight must be nonincreasing: " + ivec_str(lam));
    }
    int n() const { return (int)lam.size(); }
    bool regular() const {
        for (size_t i = 0; i + 1 < lam.size(); ++i)
            if (lam[i] == lam[i + 1]) return false;
        return true;
    }
};

// rho_j = (n - 2j + 1)/2, j = 1..n.
inline RVec rho(int n) {
    RVec r(n);
    for (int j = 1; j <= n; ++j) r[j - 1] = Rat(n - 2 * j + 1, 2);
    return r;
}

// Integral part of rho: entries rounded away from zero.  Equals rho for odd n.
inline IVec rho_bar(int n) {
    IVec r(n);
    for (int j = 1; j <= n; ++j) {
        long long v = n - 2 * j + 1;
        r[j - 1] = v >= 0 ? (v + 1) / 2 : -((-v + 1) / 2);
    }
    return r;
}

// Triangular shift with entries (k - 2j + 1)/2; its row k is rho(k).
inline std::vector<RVec> rho_tilde(int n) {
    std::vector<RVec> t(n);
    for (int k = 1; k <= n; ++k) t[k - 1] = rho(k);
    return t;
}

// Interlacing triangular array; rows[k-1] holds row k (length k), row n = top.
struct Pattern {
    std::vector<IVec> rows;
    int n() const { return (int)rows.size(); }
    long long at(int j, int k) const { return rows[k - 1][j - 1]; } // 1-based
    long long& at(int j, int k) { return rows[k - 1][j - 1]; }

    bool operator==(const Pattern& o) const { return rows == o.rows; }

    // Lexicographic key: rows n-1 down to 1, entries left to right.
    // Row n is fixed by the weight, so it does not participate.
    IVec lex_key() const {
        IVec key;
        for (int k = n() - 1; k >= 1; --k)
            for (long long e : rows[k - 1]) key.push_back(e);
        return key;
    }
    bool operator<(const Pattern& o) const { return lex_key() < o.lex_key(); }

    bool interlaces() const {
        for (int k = 1; k < n(); ++k)
            for (int j = 1; j <= k; ++j)
                if (!(at(j, k + 1) >= at(j, k) && at(j, k) >= at(j + 1, k + 1)))
                    return false;
        return true;
    }

    // Torus weight, full length n: w_k = (row k sum) - (row k-1 sum).
    // The T_0 weight used on projective space is the suffix (w_2, ..., w_n).
    IVec weight() const {
        IVec w(n());
        long long prev = 0;
        for (int k = 1; k <= n(); ++k) {
            long long s = 0;
            for (long long e : rows[k - 1]) s += e;
            w[k - 1] = s - prev;
            prev = s;
        }
        return w;
    }

    std::string str() const {
        std::string s = "[";
        for (int k = n(); k >= 1; --k) {
            if (k < n()) s += " / ";
            for (int j = 1; j <= k; ++j) { if (j > 1) s += " "; s += std::to_string(at(j, k)); }
        }
        return s + "]";
    }
};

// Product formula dim V(lambda) = prod_{i<j} (l_i - l_j + j - i)/(j - i).
// Numerator and denominator are accumulated separately; the quotient is an
// exact integer.
inline Int weyl_dimension(const HighestWeight& hw) {
    int n = hw.n();
    Int num = 1, den = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            num *= Int(hw.lam[i - 1] - hw.lam[j - 1] + j - i);
            den *= Int(j - i);
        }
    return num / den;
}

namespace detail {
inline void enumerate_rows(Pattern& pat, int k, std::vector<Pattern>& out, size_t guard) {
    if (k == 0) {
        if (out.size() >= guard)
            throw std::runtime_error("pattern enumeration guard exceeded (" + std::to_string(guard) + ")");
        out.push_back(pat);
        return;
    }
    const IVec& above = pat.rows[k]; // row k+1
    IVec& row = pat.rows[k - 1];
    // Odometer over the k independent ranges [above[j+1], above[j]],
    // leftmost digit most significant, so emission order is ascending
    // lexicographic in the flattened (row n-1, ..., row 1) key.
    for (int j = 0; j < k; ++j) row[j] = above[j + 1];
    for (;;) {
        enumerate_rows(pat, k - 1, out, guard);
        int j = k - 1;
        while (j >= 0) {
            if (row[j] < above[j]) { ++row[j]; break; }
            row[j] = above[j + 1];
            --j;
        }
        if (j < 0) break;
    }
}
} // namespace detail

// All patterns with top row lambda, ascending in the lexicographic key.
inline std::vector<Pattern> enumerate_patterns(const HighestWeight& hw, size_t guard = 20000000) {
    Pattern pat;
    pat.rows.resize(hw.n());
    for (int k = 1; k <= hw.n(); ++k) pat.rows[k - 1].resize(k);
    pat.rows[hw.n() - 1] = hw.lam;
    std::vector<Pattern> out;
    detail::enumerate_rows(pat, hw.n() - 1, out, guard);
    return out;
}

// Position of pat in the enumeration order, or -1.  The list is sorted by
// construction, so this is a binary search on the lexicographic key.
inline long long pattern_index(const std::vector<Pattern>& list, const Pattern& pat) {
    auto it = std::lower_bound(list.begin(), list.end(), pat);
    if (it != list.end() && *it == pat) return it - list.begin();
    return -1;
}

// Rational point of the pattern polytope: rows 1..n with row n pinned to
// lambda.  Used for membership queries at non-integer points.
struct RatPoint {
    std::vector<RVec> rows;
    int n() const { return (int)rows.size(); }
    Rat at(int j, int k) const { return rows[k - 1][j - 1]; }
};

inline RatPoint rat_point_of(const Pattern& p) {
    RatPoint q;
    q.rows.resize(p.n());
    for (int k = 1; k <= p.n(); ++k) {
        q.rows[k - 1].resize(k);
        for (int j = 1; j <= k; ++j) q.rows[k - 1][j - 1] = Rat(p.at(j, k));
    }
    return q;
}

inline RatPoint scale_point(const Pattern& p, const Rat& s) {
    RatPoint q = rat_point_of(p);
    for (auto& row : q.rows)
        for (auto& e : row) e *= s;
    return q;
}

// Interlacing test; strict = interior of the polytope.
inline bool polytope_member(const RatPoint& q, bool strict = false) {
    for (int k = 1; k < q.n(); ++k)
        for (int j = 1; j <= k; ++j) {
            Rat hi = q.at(j, k + 1), mid = q.at(j, k), lo = q.at(j + 1, k + 1);
            if (strict ? !(hi > mid && mid > lo) : !(hi >= mid && mid >= lo))
                return false;
        }
    return true;
}

inline bool polytope_member(const HighestWeight& hw, const RatPoint& q, bool strict = false) {
    if (q.n() != hw.n()) return false;
    for (int i = 0; i < hw.n(); ++i)
        if (q.rows[hw.n() - 1][i] != Rat(hw.lam[i])) return false;
    return polytope_member(q, strict);
}

// Level-p weight lattice of the orbit of lambda: the patterns with top row
// p*lambda + rho_bar.  Dividing rows by p gives points approximating the
// lambda-polytope; the metaplectic shift keeps the count equal to the
// dimension of the space of corrected sections.
struct ScaledLattice {
    long long p;
    HighestWeight shifted; // p*lambda + rho_bar
    std::vector<Pattern> points;
};

inline ScaledLattice scaled_lattice(const HighestWeight& hw, long long p, size_t guard = 20000000) {
    if (p < 1) throw std::invalid_argument("scaled_lattice: p must be >= 1");
    IVec top(hw.n());
    IVec rb = rho_bar(hw.n());
    for (int i = 0; i < hw.n(); ++i) top[i] = p * hw.lam[i] + rb[i];
    ScaledLattice sl{p, HighestWeight(top), {}};
    sl.points = enumerate_patterns(sl.shifted, guard);
    return sl;
}

} // namespace gzsc
