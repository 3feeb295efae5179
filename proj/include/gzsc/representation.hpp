// Irreducible U(n) action in the interlacing-pattern basis: generator
// matrices from the classical square-root coefficient formulas, group
// elements by skew-Hermitian logarithm + matrix exponential + polar
// correction, symmetrized invariant operators and their diagonal-eigenvalue
// checks, and a Chebyshev propagation path for single matrix elements at
// dimensions where dense work is off the table.
#pragma once

#include "patterns.hpp"
#include "surd.hpp"
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>

namespace gzsc {

using SpMat = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<std::complex<double>>;
using MatXd = Eigen::MatrixXd;
using MatXcd = Eigen::MatrixXcd;
using VecXcd = Eigen::VectorXcd;

// Shifted entries l_j = nu_j - j are strictly decreasing along a row; all
// coefficient formulas below are stated in them.
namespace gtcoeff {

// Square of the coefficient moving row-k entry j up by one, as an exact
// rational (>= 0 when the move is legal; caller checks legality first, which
// also keeps every denominator factor nonzero).
inline Rat raising_sq(const Pattern& pat, int k, int j) {
    auto l = [&](int i, int m) { return Rat(pat.at(i, m) - i); };
    Rat num = 1, den = 1;
    for (int i = 1; i <= k + 1; ++i) num *= l(i, k + 1) - l(j, k);
    for (int i = 1; i <= k - 1; ++i) num *= l(i, k - 1) - l(j, k) - 1;
    for (int i = 1; i <= k; ++i) {
        if (i == j) continue;
        den *= (l(i, k) - l(j, k)) * (l(i, k) - l(j, k) - 1);
    }
    return -num / den;
}

// Square of the coefficient moving row-k entry j down by one.
inline Rat lowering_sq(const Pattern& pat, int k, int j) {
    auto l = [&](int i, int m) { return Rat(pat.at(i, m) - i); };
    Rat num = 1, den = 1;
    for (int i = 1; i <= k + 1; ++i) num *= l(i, k + 1) - l(j, k) + 1;
    for (int i = 1; i <= k - 1; ++i) num *= l(i, k - 1) - l(j, k);
    for (int i = 1; i <= k; ++i) {
        if (i == j) continue;
        den *= (l(i, k) - l(j, k) + 1) * (l(i, k) - l(j, k));
    }
    return -num / den;
}

} // namespace gtcoeff

// One irreducible representation with its pattern basis and the sparse
// elementary-matrix actions, cached because every consumer needs them.
class GzRep {
public:
    explicit GzRep(const HighestWeight& hw, size_t guard = 20000000)
        : hw_(hw), basis_(enumerate_patterns(hw, guard)) {
        int n = hw_.n();
        ops_.assign(n, std::vector<std::optional<SpMat>>(n));
    }

    const HighestWeight& hw() const { return hw_; }
    const std::vector<Pattern>& basis() const { return basis_; }
    long long dim() const { return (long long)basis_.size(); }
    int n() const { return hw_.n(); }

    // Action of the elementary matrix E_ab (1-based), built on demand.
    // Adjacent and diagonal ones come from the coefficient formulas; the rest
    // from E_ab = [E_ac, E_cb] walking one step at a time, in the mirrored
    // order that keeps transposition exact: transpose(E_ab) == E_ba bitwise.
    const SpMat& E(int a, int b) {
        auto& slot = ops_[a - 1][b - 1];
        if (slot) return *slot;
        int n = hw_.n();
        if (a < 1 || b < 1 || a > n || b > n)
            throw std::invalid_argument("GzRep::E: index out of range");
        if (a == b) slot = build_diag(a);
        else if (b == a + 1) slot = build_raise(a);
        else if (a == b + 1) slot = build_lower(b);
        else if (a < b) slot = SpMat(E(a, b - 1) * E(b - 1, b) - E(b - 1, b) * E(a, b - 1));
        else slot = SpMat(E(a, a - 1) * E(a - 1, b) - E(a - 1, b) * E(a, a - 1));
        return *slot;
    }

    MatXd dense(int a, int b) { return MatXd(E(a, b)); }

private:
    SpMat build_diag(int k) {
        std::vector<Eigen::Triplet<double>> t;
        for (long long i = 0; i < dim(); ++i) {
            auto w = basis_[i].weight();
            t.emplace_back(i, i, (double)w[k - 1]);
        }
        SpMat m(dim(), dim());
        m.setFromTriplets(t.begin(), t.end());
        return m;
    }
    // E_{k,k+1}: row k entries move up.
    SpMat build_raise(int k) {
        std::vector<Eigen::Triplet<double>> t;
        for (long long col = 0; col < dim(); ++col) {
            for (int j = 1; j <= k; ++j) {
                Pattern up = basis_[col];
                up.at(j, k) += 1;
                if (!up.interlaces()) continue;
                long long row = pattern_index(basis_, up);
                double c = std::sqrt(rat_cast<double>(gtcoeff::raising_sq(basis_[col], k, j)));
                t.emplace_back(row, col, c);
            }
        }
        SpMat m(dim(), dim());
        m.setFromTriplets(t.begin(), t.end());
        return m;
    }
    // E_{k+1,k}: row k entries move down.
    SpMat build_lower(int k) {
        std::vector<Eigen::Triplet<double>> t;
        for (long long col = 0; col < dim(); ++col) {
            for (int j = 1; j <= k; ++j) {
                Pattern down = basis_[col];
                down.at(j, k) -= 1;
                if (!down.interlaces()) continue;
                long long row = pattern_index(basis_, down);
                double c = std::sqrt(rat_cast<double>(gtcoeff::lowering_sq(basis_[col], k, j)));
                t.emplace_back(row, col, c);
            }
        }
        SpMat m(dim(), dim());
        m.setFromTriplets(t.begin(), t.end());
        return m;
    }

    HighestWeight hw_;
    std::vector<Pattern> basis_;
    std::vector<std::vector<std::optional<SpMat>>> ops_;
};

// Exact-arithmetic generators on the same basis; dense, intended for the
// small weights where invariant eigenvalues are verified as rationals.
inline Mat<Surd> generator_surd(const HighestWeight& hw, int a, int b, size_t dim_cap = 64) {
    auto basis = enumerate_patterns(hw);
    if (basis.size() > dim_cap)
        throw std::runtime_error("generator_surd: dimension cap exceeded");
    size_t d = basis.size();
    auto zero = [&] { return Mat<Surd>(d, std::vector<Surd>(d)); };
    std::function<Mat<Surd>(int, int)> make = [&](int aa, int bb) -> Mat<Surd> {
        Mat<Surd> m = zero();
        if (aa == bb) {
            for (size_t i = 0; i < d; ++i) m[i][i] = Surd(Rat(basis[i].weight()[aa - 1]));
            return m;
        }
        if (bb == aa + 1 || aa == bb + 1) {
            int k = std::min(aa, bb);
            bool up = (bb == aa + 1);
            for (size_t col = 0; col < d; ++col)
                for (int j = 1; j <= k; ++j) {
                    Pattern q = basis[col];
                    q.at(j, k) += up ? 1 : -1;
                    if (!q.interlaces()) continue;
                    long long row = pattern_index(basis, q);
                    Rat c2 = up ? gtcoeff::raising_sq(basis[col], k, j)
                                : gtcoeff::lowering_sq(basis[col], k, j);
                    m[row][col] = Surd::sqrt_of(c2);
                }
            return m;
        }
        auto mul = [&](const Mat<Surd>& x, const Mat<Surd>& y) {
            Mat<Surd> r = zero();
            for (size_t i = 0; i < d; ++i)
                for (size_t kk = 0; kk < d; ++kk) {
                    if (x[i][kk].is_zero()) continue;
                    for (size_t jj = 0; jj < d; ++jj) {
                        if (y[kk][jj].is_zero()) continue;
                        r[i][jj] += x[i][kk] * y[kk][jj];
                    }
                }
            return r;
        };
        Mat<Surd> x, y;
        if (aa < bb) { x = make(aa, bb - 1); y = make(bb - 1, bb); }
        else { x = make(aa, aa - 1); y = make(aa - 1, bb); }
        Mat<Surd> xy = mul(x, y), yx = mul(y, x);
        Mat<Surd> r = zero();
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) r[i][j] = xy[i][j] - yx[i][j];
        return r;
    };
    return make(a, b);
}

// Principal skew-Hermitian logarithm of a unitary matrix.  Throws when an
// eigenvalue sits at the branch cut (too close to -1), where the log is
// ill-conditioned.
inline MatXcd unitary_log(const MatXcd& g, double branch_tol = 1e-8) {
    Eigen::ComplexSchur<MatXcd> schur(g);
    const MatXcd& T = schur.matrixT();
    const MatXcd& U = schur.matrixU();
    long long n = g.rows();
    // For a unitary (normal) matrix the Schur form is diagonal up to roundoff.
    MatXcd D = MatXcd::Zero(n, n);
    for (long long i = 0; i < n; ++i) {
        std::complex<double> ev = T(i, i);
        double arg = std::arg(ev);
        if (std::abs(std::abs(arg) - M_PI) < branch_tol)
            throw std::runtime_error("unitary_log: eigenvalue at the -1 branch cut");
        D(i, i) = std::complex<double>(0, arg);
    }
    MatXcd xi = U * D * U.adjoint();
    return 0.5 * (xi - xi.adjoint()); // enforce skew-Hermitian exactly
}

// Dense unitary image of g in the representation.  Dimension-guarded;
// scaling-and-squaring exponential, then a polar projection so unitarity
// holds to machine precision.
inline MatXcd group_matrix(GzRep& rep, const MatXcd& g, size_t dim_guard = 5000) {
    if ((size_t)rep.dim() > dim_guard)
        throw std::runtime_error("group_matrix: dimension guard exceeded (dim="
                                 + std::to_string(rep.dim()) + ")");
    if (g.rows() != rep.n() || g.cols() != rep.n())
        throw std::invalid_argument("group_matrix: size mismatch");
    if ((g * g.adjoint() - MatXcd::Identity(rep.n(), rep.n())).norm() > 1e-10)
        throw std::invalid_argument("group_matrix: input is not unitary");
    MatXcd xi = unitary_log(g);
    MatXcd A = MatXcd::Zero(rep.dim(), rep.dim());
    for (int a = 1; a <= rep.n(); ++a)
        for (int b = 1; b <= rep.n(); ++b) {
            std::complex<double> c = xi(a - 1, b - 1);
            if (std::abs(c) == 0.0) continue;
            A += c * MatXcd(rep.dense(a, b));
        }
    MatXcd R = A.exp();
    // Polar correction: R (R^* R)^{-1/2} via SVD.
    Eigen::JacobiSVD<MatXcd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// ---------------------------------------------------------------------------
// Invariant operators.
//
// The degree-j coefficient of the characteristic polynomial of the upper-left
// k x k block is the sum over size-j subsets S and bijections sigma of
// sgn(sigma) prod_{i in S} A_{i,sigma(i)}.  Quantization sends the coordinate
// A_{ab} to 2*pi*i*E_ba and symmetrizes each monomial over factor orderings.
// The operator returned here strips the overall (2*pi*i)^j, so its predicted
// eigenvalue on a pattern nu is real:
//     e_j(row_k(nu) + rho(k)) - e_j-correction,  correction = 0 (j=1),
//     e_2(rho(k)) (j=2); higher j keep diagonality but no closed form is
//     asserted.
// ---------------------------------------------------------------------------

namespace detail {
inline void subsets_of_size(int k, int j, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if ((int)cur.size() == j) { out.push_back(cur); return; }
        for (int v = start; v <= k; ++v) { cur.push_back(v); rec(v + 1); cur.pop_back(); }
    };
    rec(1);
}
} // namespace detail

inline SpMat gelfand_invariant_sparse(GzRep& rep, int k, int j) {
    if (k < 1 || k > rep.n() || j < 1 || j > k)
        throw std::invalid_argument("gelfand_invariant: need 1 <= j <= k <= n");
    std::vector<std::vector<int>> subsets;
    detail::subsets_of_size(k, j, subsets);
    SpMat total(rep.dim(), rep.dim());
    double inv_jf = 1.0 / factorial(j).convert_to<double>();
    std::vector<int> order(j);
    for (const auto& S : subsets) {
        // All bijections sigma of S (as index permutation of the subset).
        std::vector<int> sigma(j);
        for (int i = 0; i < j; ++i) sigma[i] = i;
        do {
            // sign of sigma
            int sgn = 1;
            std::vector<bool> seen(j, false);
            for (int i = 0; i < j; ++i) {
                if (seen[i]) continue;
                int len = 0, c = i;
                while (!seen[c]) { seen[c] = true; c = sigma[c]; ++len; }
                if (len % 2 == 0) sgn = -sgn;
            }
            // Factors F_i = E_{sigma(i), i} over i in S; symmetrize orderings.
            for (int i = 0; i < j; ++i) order[i] = i;
            do {
                SpMat prod = rep.E(S[sigma[order[0]]], S[order[0]]);
                for (int t = 1; t < j; ++t)
                    prod = SpMat(prod * rep.E(S[sigma[order[t]]], S[order[t]]));
                total += (sgn * inv_jf) * prod;
            } while (std::next_permutation(order.begin(), order.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return total;
}

inline MatXd gelfand_invariant_matrix(GzRep& rep, int k, int j, size_t dim_guard = 5000) {
    if ((size_t)rep.dim() > dim_guard)
        throw std::runtime_error("gelfand_invariant_matrix: dimension guard exceeded");
    return MatXd(gelfand_invariant_sparse(rep, k, j));
}

// Exact-arithmetic version on the surd ring (small dimensions).
inline Mat<Surd> gelfand_invariant_surd(const HighestWeight& hw, int k, int j, size_t dim_cap = 64) {
    auto basis = enumerate_patterns(hw);
    if (basis.size() > dim_cap) throw std::runtime_error("gelfand_invariant_surd: cap exceeded");
    size_t d = basis.size();
    std::vector<std::vector<int>> subsets;
    detail::subsets_of_size(k, j, subsets);
    auto zero = [&] { return Mat<Surd>(d, std::vector<Surd>(d)); };
    auto mul = [&](const Mat<Surd>& x, const Mat<Surd>& y) {
        Mat<Surd> r = zero();
        for (size_t i = 0; i < d; ++i)
            for (size_t kk = 0; kk < d; ++kk) {
                if (x[i][kk].is_zero()) continue;
                for (size_t jj = 0; jj < d; ++jj) {
                    if (y[kk][jj].is_zero()) continue;
                    r[i][jj] += x[i][kk] * y[kk][jj];
                }
            }
        return r;
    };
    std::map<std::pair<int, int>, Mat<Surd>> gen;
    auto genEf = [&](int a, int b) -> const Mat<Surd>& {
        auto key = std::make_pair(a, b);
        auto it = gen.find(key);
        if (it == gen.end()) it = gen.emplace(key, generator_surd(hw, a, b, dim_cap)).first;
        return it->second;
    };
    Mat<Surd> total = zero();
    Rat inv_jf = Rat(1) / Rat(factorial(j));
    for (const auto& S : subsets) {
        std::vector<int> sigma(j), order(j);
        for (int i = 0; i < j; ++i) sigma[i] = i;
        do {
            int sgn = 1;
            std::vector<bool> seen(j, false);
            for (int i = 0; i < j; ++i) {
                if (seen[i]) continue;
                int len = 0, c = i;
                while (!seen[c]) { seen[c] = true; c = sigma[c]; ++len; }
                if (len % 2 == 0) sgn = -sgn;
            }
            for (int i = 0; i < j; ++i) order[i] = i;
            do {
                Mat<Surd> prod = genEf(S[sigma[order[0]]], S[order[0]]);
                for (int t = 1; t < j; ++t) prod = mul(prod, genEf(S[sigma[order[t]]], S[order[t]]));
                Surd c(Rat(sgn) * inv_jf);
                for (size_t r = 0; r < d; ++r)
                    for (size_t cidx = 0; cidx < d; ++cidx)
                        total[r][cidx] += c * prod[r][cidx];
            } while (std::next_permutation(order.begin(), order.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return total;
}

// Elementary symmetric polynomial of a rational vector.
inline Rat elementary_symmetric(const RVec& x, int j) {
    // DP over prefix products.
    std::vector<Rat> e(j + 1, Rat(0));
    e[0] = 1;
    for (const Rat& v : x)
        for (int t = j; t >= 1; --t) e[t] += e[t - 1] * v;
    return e[j];
}

// Predicted eigenvalue of the normalized invariant (k, j) on pattern nu.
inline Rat invariant_eigenvalue(const Pattern& nu, int k, int j) {
    RVec x(k);
    RVec r = rho(k);
    for (int i = 1; i <= k; ++i) x[i - 1] = Rat(nu.at(i, k)) + r[i - 1];
    Rat val = elementary_symmetric(x, j);
    if (j == 2) val -= elementary_symmetric(r, 2);
    if (j >= 3)
        throw std::invalid_argument("invariant_eigenvalue: closed form pinned for j <= 2 only");
    return val;
}

struct HarishChandraReport {
    double offdiag_rel;          // off-diagonal mass / matrix norm
    double max_eig_err;          // |observed - predicted| over the basis (j <= 2)
    bool exact;                  // surd path collapsed to rationals and matched
};

// Diagonality + eigenvalue check in floating point, and exactly on the surd
// ring when the dimension is small enough.
inline HarishChandraReport harish_chandra_check(GzRep& rep, int k, int j, size_t exact_cap = 20) {
    SpMat M = gelfand_invariant_sparse(rep, k, j);
    MatXd D(M);
    double total = D.norm();
    MatXd off = D;
    for (long long i = 0; i < rep.dim(); ++i) off(i, i) = 0;
    HarishChandraReport rep_out{};
    rep_out.offdiag_rel = total == 0 ? 0 : off.norm() / total;
    rep_out.max_eig_err = 0;
    if (j <= 2) {
        for (long long i = 0; i < rep.dim(); ++i) {
            double pred = rat_cast<double>(invariant_eigenvalue(rep.basis()[i], k, j));
            rep_out.max_eig_err = std::max(rep_out.max_eig_err, std::abs(D(i, i) - pred));
        }
    }
    rep_out.exact = false;
    if ((size_t)rep.dim() <= exact_cap && j <= 2) {
        auto Ms = gelfand_invariant_surd(rep.hw(), k, j, exact_cap);
        bool ok = true;
        for (size_t r = 0; r < Ms.size() && ok; ++r)
            for (size_t c = 0; c < Ms.size() && ok; ++c) {
                if (r == c) {
                    if (!Ms[r][c].is_rational()) ok = false;
                    else if (Ms[r][c].rational_value()
                             != invariant_eigenvalue(rep.basis()[r], k, j)) ok = false;
                } else if (!Ms[r][c].is_zero()) ok = false;
            }
        rep_out.exact = ok;
    }
    return rep_out;
}

// ---------------------------------------------------------------------------
// Single matrix element at large dimension: Chebyshev expansion of
// exp(i H) v with H = representation of log(g) / i, never forming a dense
// matrix.  Spectral bounds come from Gershgorin discs plus a safety margin.
// ---------------------------------------------------------------------------
inline std::complex<double> matrix_element_chebyshev(GzRep& rep, const MatXcd& g,
                                                     const Pattern& target_row,
                                                     const Pattern& source_col,
                                                     double tail_tol = 1e-14) {
    MatXcd xi = unitary_log(g);
    SpMatC H(rep.dim(), rep.dim());
    for (int a = 1; a <= rep.n(); ++a)
        for (int b = 1; b <= rep.n(); ++b) {
            std::complex<double> c = xi(a - 1, b - 1) / std::complex<double>(0, 1);
            if (std::abs(c) == 0.0) continue;
            H += c * rep.E(a, b).cast<std::complex<double>>();
        }
    long long row = pattern_index(rep.basis(), target_row);
    long long col = pattern_index(rep.basis(), source_col);
    if (row < 0 || col < 0)
        throw std::invalid_argument("matrix_element_chebyshev: pattern not in basis");

    // Gershgorin interval [lo, hi] of the Hermitian H.
    std::vector<double> radius(rep.dim(), 0), diag(rep.dim(), 0);
    for (int o = 0; o < H.outerSize(); ++o)
        for (SpMatC::InnerIterator it(H, o); it; ++it) {
            if (it.row() == it.col()) diag[it.row()] = it.value().real();
            else radius[it.row()] += std::abs(it.value());
        }
    double lo = 1e300, hi = -1e300;
    for (long long i = 0; i < rep.dim(); ++i) {
        lo = std::min(lo, diag[i] - radius[i]);
        hi = std::max(hi, diag[i] + radius[i]);
    }
    double center = 0.5 * (lo + hi), half = 0.5 * (hi - lo) + 1e-9;

    // exp(iH) v = e^{i c} sum_m (2 - delta_m0) i^m J_m(R) T_m((H - c)/R) v.
    VecXcd v = VecXcd::Zero(rep.dim());
    v(col) = 1.0;
    VecXcd tkm1 = v;
    VecXcd tk = (H * v - std::complex<double>(center) * v) / half;
    double R = half;
    auto bessel = [&](long long m) { return std::cyl_bessel_j((double)m, R); };
    std::complex<double> acc = bessel(0) * tkm1(row);
    std::complex<double> ipow(0, 1);
    acc += 2.0 * ipow * bessel(1) * tk(row);
    long long m = 1;
    int tiny_run = 0;
    while (tiny_run < 8) {
        ++m;
        VecXcd tkp1 = 2.0 * ((H * tk - std::complex<double>(center) * tk) / half) - tkm1;
        tkm1.swap(tk);
        tk.swap(tkp1);
        ipow *= std::complex<double>(0, 1);
        double jm = bessel(m);
        acc += 2.0 * ipow * jm * tk(row);
        if (std::abs(jm) < tail_tol && m > (long long)R) ++tiny_run;
        else tiny_run = 0;
        if (m > (long long)(3 * R) + 2000)
            throw std::runtime_error("matrix_element_chebyshev: series did not settle");
    }
    return std::exp(std::complex<double>(0, center)) * acc;
}

} // namespace gzsc
