// Orbit-side geometry in double precision: eigenvalues of nested top-left
// minors as a triangular map, their Hamiltonian flows by projector
// conjugation, Poisson pairings in the 2*pi-normalized orbit form, and an
// exact bordered-matrix construction of points on a prescribed fibre.
//
// Conventions (see core.hpp): a Hermitian matrix A stands for the functional
// <A, 2*pi*i*Theta> = 2*pi*Tr(A*Theta)*i/i on the Lie algebra; the orbit form
// evaluates on conjugation velocities as
//     omega(X1, X2) = 2*pi*i*Tr(A [Theta1, Theta2]),
// where X_m = 2*pi*i*[Theta_m, A] is the velocity of e^{2*pi*i*t*Theta_m}
// conjugation.  With this normalization the flow of a minor eigenvalue is
// conjugation by e^{2*pi*i*t*P} for the embedded eigenprojector P, and has
// period exactly one.
#pragma once

#include "patterns.hpp"
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

namespace gzsc {

using Herm = Eigen::MatrixXcd;
using Cd = std::complex<double>;

// Eigenvalues of the top-left k x k minors, k = 1..n, each row nonincreasing.
inline std::vector<std::vector<double>> gz_spectrum(const Herm& A) {
    int n = (int)A.rows();
    std::vector<std::vector<double>> rows(n);
    for (int k = 1; k <= n; ++k) {
        Eigen::SelfAdjointEigenSolver<Herm> es(A.topLeftCorner(k, k));
        rows[k - 1].resize(k);
        for (int j = 0; j < k; ++j) rows[k - 1][j] = es.eigenvalues()(k - 1 - j);
    }
    return rows;
}

// The same values flattened over rows 1..n-1 (the top row is an orbit
// invariant, not a coordinate), entry order (k, j) = (1,1), (2,1), (2,2), ...
inline std::vector<double> gz_values(const Herm& A) {
    auto rows = gz_spectrum(A);
    std::vector<double> flat;
    for (int k = 1; k < (int)A.rows(); ++k)
        for (int j = 1; j <= k; ++j) flat.push_back(rows[k - 1][j - 1]);
    return flat;
}

// Eigenvector of the k x k minor for its j-th eigenvalue (nonincreasing,
// 1-based), embedded as an n x n rank-one projector.  Throws when the
// eigenvalue is too close to its neighbours for the projector to be stable.
inline Herm minor_projector(const Herm& A, int k, int j, double gap_tol = 1e-9) {
    int n = (int)A.rows();
    if (k < 1 || k > n || j < 1 || j > k)
        throw std::invalid_argument("minor_projector: bad (k, j)");
    Eigen::SelfAdjointEigenSolver<Herm> es(A.topLeftCorner(k, k));
    int idx = k - j; // ascending storage
    for (int m = 0; m < k; ++m)
        if (m != idx && std::abs(es.eigenvalues()(m) - es.eigenvalues()(idx)) < gap_tol)
            throw std::runtime_error("minor_projector: nearly degenerate eigenvalue");
    Eigen::VectorXcd u = es.eigenvectors().col(idx);
    Herm P = Herm::Zero(n, n);
    P.topLeftCorner(k, k) = u * u.adjoint();
    return P;
}

// Velocity of the minor-eigenvalue flow at A.
inline Herm hamiltonian_velocity(const Herm& A, int k, int j) {
    Herm P = minor_projector(A, k, j);
    return Cd(0, kTwoPi) * (P * A - A * P);
}

// Time-t flow of the (k, j) minor eigenvalue: conjugation by
// e^{2*pi*i*t*P} = 1 + (e^{2*pi*i*t} - 1) P.
inline Herm gz_flow(const Herm& A, int k, int j, double t) {
    Herm P = minor_projector(A, k, j);
    int n = (int)A.rows();
    Cd w = std::polar(1.0, kTwoPi * t) - 1.0;
    Herm G = Herm::Identity(n, n) + w * P;
    return G * A * G.adjoint();
}

// Flows applied in flat (k, j) order; they commute, so the order is moot.
inline Herm gz_flow_multi(const Herm& A, const std::vector<double>& t) {
    int n = (int)A.rows();
    if ((int)t.size() != n * (n - 1) / 2)
        throw std::invalid_argument("gz_flow_multi: wrong number of times");
    Herm cur = A;
    int idx = 0;
    for (int k = 1; k < n; ++k)
        for (int j = 1; j <= k; ++j) {
            if (t[idx] != 0.0) cur = gz_flow(cur, k, j, t[idx]);
            ++idx;
        }
    return cur;
}

// Orbit form on two conjugation velocities given by their Hermitian
// generators.
inline double kks_pairing(const Herm& A, const Herm& Th1, const Herm& Th2) {
    Cd val = Cd(0, kTwoPi) * (A * (Th1 * Th2 - Th2 * Th1)).trace();
    return val.real();
}

// Poisson bracket of two minor eigenvalues at A.  All of them commute; the
// function exists so that tests can verify exactly that.
inline double poisson_minor(const Herm& A, int k1, int j1, int k2, int j2) {
    Herm P1 = minor_projector(A, k1, j1);
    Herm P2 = minor_projector(A, k2, j2);
    Cd val = Cd(0, kTwoPi) * (A * (P1 * P2 - P2 * P1)).trace();
    return val.real();
}

namespace detail {
// Rotate so the largest-modulus component is real positive; makes
// eigenvector conventions reproducible.
inline void phase_fix(Eigen::VectorXcd& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    Cd z = v(best);
    if (std::abs(z) > 0) v *= std::conj(z) / std::abs(z);
}
} // namespace detail

// Checks strict interlacing of consecutive rows with a margin.
inline bool strictly_interlacing(const std::vector<std::vector<double>>& rows, double margin = 0.0) {
    for (size_t k = 0; k + 1 < rows.size(); ++k)
        for (size_t j = 0; j < rows[k].size(); ++j)
            if (!(rows[k + 1][j] - rows[k][j] > margin && rows[k][j] - rows[k + 1][j + 1] > margin))
                return false;
    return true;
}

// A Hermitian matrix with prescribed minor spectra, built by bordering one
// row at a time.  Each step appends a corner value fixed by the trace and an
// off-diagonal column whose moduli are forced by the characteristic
// polynomial evaluated at the current eigenvalues,
//     |d_i|^2 = - prod_j (mu_i - mu'_j) / prod_{m != i} (mu_i - mu_m),
// strictly positive under strict interlacing (mu = level k, mu' = level
// k+1).  The free phases, one column entry each, parametrize the fibre
// torus; all-zero phases give a real symmetric matrix.
inline Herm fiber_point(const std::vector<std::vector<double>>& target_rows,
                        const std::vector<std::vector<double>>& phases) {
    int n = (int)target_rows.size();
    for (int k = 1; k <= n; ++k)
        if ((int)target_rows[k - 1].size() != k)
            throw std::invalid_argument("fiber_point: malformed target rows");
    if (!strictly_interlacing(target_rows, 1e-12))
        throw std::invalid_argument("fiber_point: rows must interlace strictly");
    if ((int)phases.size() != n - 1)
        throw std::invalid_argument("fiber_point: need n-1 phase rows");
    Herm A(1, 1);
    A(0, 0) = target_rows[0][0];
    double trace = target_rows[0][0];
    for (int k = 1; k < n; ++k) {
        if ((int)phases[k - 1].size() != k)
            throw std::invalid_argument("fiber_point: phase row " + std::to_string(k)
                                        + " must have length " + std::to_string(k));
        const auto& mu = target_rows[k - 1];  // level k, descending
        const auto& mup = target_rows[k];     // level k+1
        Eigen::SelfAdjointEigenSolver<Herm> es(A);
        Eigen::VectorXcd d = Eigen::VectorXcd::Zero(k);
        for (int i = 0; i < k; ++i) {
            double num = 1, den = 1;
            for (int j = 0; j <= k; ++j) num *= mu[i] - mup[j];
            for (int m = 0; m < k; ++m)
                if (m != i) den *= mu[i] - mu[m];
            double mod2 = -num / den;
            if (mod2 < 0) {
                if (mod2 < -1e-12)
                    throw std::runtime_error("fiber_point: negative modulus squared");
                mod2 = 0;
            }
            // es stores ascending; eigenvector for descending index i
            Eigen::VectorXcd u = es.eigenvectors().col(k - 1 - i);
            detail::phase_fix(u);
            d += std::polar(std::sqrt(mod2), phases[k - 1][i]) * u;
        }
        double cap = 0;
        for (double v : mup) cap += v;
        cap -= trace;
        trace += cap;
        Herm B(k + 1, k + 1);
        B.topLeftCorner(k, k) = A;
        B.block(0, k, k, 1) = d;
        B.block(k, 0, 1, k) = d.adjoint();
        B(k, k) = cap;
        A = B;
    }
    return A;
}

// The real symmetric point of a fibre: all border phases zero.  This section
// meets every fibre and the all-zero-phase choice pins the angle origin.
inline Herm real_section_point(const std::vector<std::vector<double>>& target_rows) {
    int n = (int)target_rows.size();
    std::vector<std::vector<double>> zero(n - 1);
    for (int k = 1; k < n; ++k) zero[k - 1].assign(k, 0.0);
    return fiber_point(target_rows, zero);
}

// Triangular array of a lattice pattern as double rows (all n rows).
inline std::vector<std::vector<double>> pattern_rows(const Pattern& pat) {
    std::vector<std::vector<double>> rows(pat.n());
    for (int k = 1; k <= pat.n(); ++k) {
        rows[k - 1].resize(k);
        for (int j = 1; j <= k; ++j) rows[k - 1][j - 1] = (double)pat.at(j, k);
    }
    return rows;
}

// Rank-one orbit point s * z z^* from torus coordinates on the fibre over v:
// |z_j|^2 = v_j / s with v_1 = s - sum_{j >= 2} v_j, angles relative to the
// first coordinate (angle[0] acts on z_2).
inline Herm toric_fiber_point(double s, const std::vector<double>& v_tail,
                              const std::vector<double>& angles) {
    int n = (int)v_tail.size() + 1;
    if ((int)angles.size() != n - 1)
        throw std::invalid_argument("toric_fiber_point: need n-1 angles");
    double v1 = s;
    for (double v : v_tail) v1 -= v;
    if (v1 <= 0) throw std::invalid_argument("toric_fiber_point: v outside the open simplex");
    Eigen::VectorXcd z(n);
    z(0) = std::sqrt(v1 / s);
    for (int j = 1; j < n; ++j) {
        if (v_tail[j - 1] <= 0)
            throw std::invalid_argument("toric_fiber_point: v outside the open simplex");
        z(j) = std::polar(std::sqrt(v_tail[j - 1] / s), kTwoPi * angles[j - 1]);
    }
    return s * (z * z.adjoint());
}

// Torus moment values (s |z_2|^2, ..., s |z_n|^2) of a rank-one orbit point;
// these are just its trailing diagonal entries.
inline std::vector<double> toric_moment(const Herm& A) {
    int n = (int)A.rows();
    std::vector<double> out(n - 1);
    for (int j = 1; j < n; ++j) out[j - 1] = A(j, j).real();
    return out;
}

} // namespace gzsc
