// Degree-p symmetric-power model of the highest weight (p,0,...,0): the
// covariant monomial basis e^nu = e_1^{nu_1}...e_n^{nu_n}, exact norms, group
// matrix elements by multinomial expansion, and the half-integer-spin d
// functions as an independent oracle for n = 2.
//
// The action substitutes matrix columns, g.e^nu = prod_j (sum_k g_{kj} e_k)^{nu_j},
// so e^nu carries torus weight +nu; a diagonal torus element acts by
// e^{2 pi i <nu, theta>}.  This matches the weight bookkeeping used by the
// lattice module (T_0 weight = suffix (nu_2..nu_n)).
#pragma once

#include "core.hpp"
#include <complex>
#include <map>
#include <stdexcept>

namespace gzsc {

using MIdx = IVec; // multi-index, length n, entries >= 0

inline long long midx_degree(const MIdx& m) {
    long long s = 0;
    for (auto x : m) s += x;
    return s;
}

namespace detail {
inline void enum_monomials_rec(int n, int i, long long left, MIdx& cur, std::vector<MIdx>& out) {
    if (i == n - 1) {
        cur[i] = left;
        out.push_back(cur);
        return;
    }
    for (long long t = left; t >= 0; --t) {
        cur[i] = t;
        enum_monomials_rec(n, i + 1, left - t, cur, out);
    }
}
} // namespace detail

// All multi-indices of total degree p in n variables, lexicographically
// descending, so (p,0,...,0) comes first.
inline std::vector<MIdx> enumerate_monomials(int n, long long p) {
    std::vector<MIdx> out;
    MIdx cur(n, 0);
    detail::enum_monomials_rec(n, 0, p, cur, out);
    return out;
}

inline long long monomial_index(const std::vector<MIdx>& list, const MIdx& m) {
    auto it = std::lower_bound(list.begin(), list.end(), m,
                               [](const MIdx& a, const MIdx& b) { return a > b; });
    if (it != list.end() && *it == m) return it - list.begin();
    return -1;
}

// ||e^nu||^2 = nu! / (p+n-1)! under the unit-line-area Fubini-Study volume.
inline Rat monomial_norm_sq(const MIdx& nu) {
    int n = (int)nu.size();
    long long p = midx_degree(nu);
    Int num = 1;
    for (auto x : nu) num *= factorial(x);
    return Rat(num, factorial(p + n - 1));
}

namespace cplx {
// The few complex operations needed, shared by std::complex<double> and the
// boost quad-precision complex type.
template <typename C> struct traits;
template <> struct traits<std::complex<double>> {
    using real = double;
    static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
    static double abs(const std::complex<double>& z) { return std::abs(z); }
};
template <> struct traits<HpC> {
    using real = Hp;
    static HpC conj(const HpC& z) { return boost::multiprecision::conj(z); }
    static Hp abs(const HpC& z) { return boost::multiprecision::abs(z); }
};
} // namespace cplx

// Coefficients of prod_j (sum_k g_{kj} e_k)^{nu_j} on the degree-p monomial
// list, by repeated multiplication with the linear forms.
template <typename C>
std::map<MIdx, C> expand_action(const Mat<C>& g, const MIdx& nu) {
    int n = (int)nu.size();
    std::map<MIdx, C> poly;
    poly[MIdx(n, 0)] = C(1);
    for (int j = 0; j < n; ++j) {
        for (long long rep = 0; rep < nu[j]; ++rep) {
            std::map<MIdx, C> next;
            for (const auto& [m, c] : poly) {
                for (int k = 0; k < n; ++k) {
                    const C& gkj = g[k][j];
                    if (gkj == C(0)) continue;
                    MIdx m2 = m;
                    ++m2[k];
                    auto it = next.find(m2);
                    if (it == next.end()) next[m2] = c * gkj;
                    else it->second += c * gkj;
                }
            }
            poly.swap(next);
        }
    }
    return poly;
}

// <g e^mu_hat, ... > entries: exact_matrix_element(g, mu, nu) is the
// coefficient of the normalized basis vector mu in g applied to the
// normalized basis vector nu.
template <typename C>
C exact_matrix_element(const Mat<C>& g, const MIdx& mu, const MIdx& nu) {
    using R = typename cplx::traits<C>::real;
    if (mu.size() != nu.size() || midx_degree(mu) != midx_degree(nu))
        throw std::invalid_argument("exact_matrix_element: index mismatch");
    auto poly = expand_action(g, nu);
    auto it = poly.find(mu);
    if (it == poly.end()) return C(0);
    // M_{mu,nu} = c_mu ||e^mu|| / ||e^nu|| = c_mu sqrt(mu!/nu!).
    Rat ratio = monomial_norm_sq(mu) / monomial_norm_sq(nu);
    return it->second * C(sqrt(rat_cast<R>(ratio)));
}

// Full matrix in the descending-lex monomial basis; guarded, dense.
template <typename C>
Mat<C> monomial_group_matrix(const Mat<C>& g, long long p, size_t dim_guard = 5000) {
    using R = typename cplx::traits<C>::real;
    int n = (int)g.size();
    auto basis = enumerate_monomials(n, p);
    if (basis.size() > dim_guard)
        throw std::runtime_error("monomial_group_matrix: dimension guard exceeded");
    size_t d = basis.size();
    std::vector<R> norm(d);
    for (size_t i = 0; i < d; ++i) norm[i] = sqrt(rat_cast<R>(monomial_norm_sq(basis[i])));
    Mat<C> M(d, std::vector<C>(d, C(0)));
    for (size_t col = 0; col < d; ++col) {
        auto poly = expand_action(g, basis[col]);
        for (const auto& [m, c] : poly) {
            long long row = monomial_index(basis, m);
            M[row][col] = c * C(norm[row] / norm[col]);
        }
    }
    return M;
}

// d^j_{m'm}(beta) = <j m'| exp(-i beta J_y) |j m>, sum formula with exact
// binomial prefactors; all spins passed doubled so half-integers stay exact.
// High precision absorbs the alternating-sum cancellation at large j.
inline Hp wigner_d(long long twoj, long long twomp, long long twom, const Hp& beta) {
    if ((twoj + twom) % 2 || (twoj + twomp) % 2)
        throw std::invalid_argument("wigner_d: m, m' must have the parity of j");
    if (twom > twoj || twom < -twoj || twomp > twoj || twomp < -twoj)
        throw std::invalid_argument("wigner_d: |m|, |m'| must be <= j");
    long long jpm = (twoj + twom) / 2, jmm = (twoj - twom) / 2;
    long long jpmp = (twoj + twomp) / 2, jmmp = (twoj - twomp) / 2;
    long long mmmp = (twom - twomp) / 2; // m - m'
    Hp c = cos(beta / 2), s = sin(beta / 2);
    Hp root = sqrt(Hp(factorial(jpm) * factorial(jmm) * factorial(jpmp) * factorial(jmmp)));
    // Denominator factorials (j+m-k)!, k!, (j-m'-k)!, (k-m+m')! force the
    // summation window below.
    long long kmin = std::max(0ll, mmmp);
    long long kmax = std::min(jpm, jmmp);
    Hp sum = 0;
    for (long long k = kmin; k <= kmax; ++k) {
        Int den = factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k - mmmp);
        Hp t = root / Hp(den) * pow(c, (int)(twoj - 2 * k + mmmp)) * pow(s, (int)(2 * k - mmmp));
        if ((k - mmmp) % 2) t = -t;
        sum += t;
    }
    return sum;
}

} // namespace gzsc
