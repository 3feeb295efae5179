// Action integrals between fibre intersection points.  The primitive
// sum_l (m_l - w_l) d theta_l of the orbit form vanishes along the reference
// fibre, so integrating it along a path inside the displaced fibre gives the
// enclosed relative area; for quantized fibre levels it is well defined
// modulo the reciprocal scale, which is all the phase predictions consume.
//
// The torus angles come for free in the rank-one case.  In the triangular
// case the angle of a point is recovered by inverting the commuting-flow
// chart anchored at the real symmetric section of its fibre, which is a
// Lagrangian section, making the chart an exact action-angle system.
#pragma once

#include "coadjoint.hpp"
#include <Eigen/Dense>

namespace gzsc {

struct AreaResult {
    double eta = 0;
    int samples = 0;   // sample count of the accepted refinement level
    bool converged = false;
};

namespace detail {
// Nearest representative of x modulo 1 relative to ref.
inline double unwrap_near(double x, double ref) { return x + std::round(ref - x); }
// Wrap to [-1/2, 1/2).
inline double wrap_half(double x) { return x - std::floor(x + 0.5); }
} // namespace detail

// ---------------------------------------------------------------------------
// Rank-one case.  The path runs inside the g-image of the fibre over v,
// straight in the source angles (shortest wrap); the chart angles are
// arg(x_j) - arg(x_1), unwrapped along the path.
// ---------------------------------------------------------------------------
inline AreaResult toric_area(double s, const std::vector<double>& v_tail, const Herm& g,
                             const std::vector<double>& th_from,
                             const std::vector<double>& th_to,
                             const std::vector<double>& w_tail, double tol = 1e-9,
                             int n_start = 256, int n_max = (1 << 16),
                             const IVec& winding = {}) {
    int n = (int)v_tail.size() + 1;
    int m = n - 1;
    double v1 = s;
    for (double v : v_tail) v1 -= v;
    if (v1 <= 0) throw std::invalid_argument("toric_area: v outside the open simplex");

    std::vector<double> dth(m);
    for (int i = 0; i < m; ++i) {
        dth[i] = detail::wrap_half(th_to[i] - th_from[i]);
        if (!winding.empty()) dth[i] += (double)winding[i];
    }

    // Evaluate moments and unwrapped chart angles at path time t; the bump
    // vector bends the path rel endpoints when it grazes a coordinate zero.
    auto eval = [&](double t, const std::vector<double>& bump, std::vector<double>& mu,
                    std::vector<double>& theta, bool& singular) {
        Eigen::VectorXcd z(n);
        z(0) = std::sqrt(v1 / s);
        for (int j = 1; j < n; ++j) {
            double th = th_from[j - 1] + t * dth[j - 1] + t * (1 - t) * bump[j - 1];
            z(j) = std::polar(std::sqrt(v_tail[j - 1] / s), kTwoPi * th);
        }
        Eigen::VectorXcd x = g * z;
        singular = false;
        for (int j = 0; j < n; ++j)
            if (std::abs(x(j)) < 1e-8) singular = true;
        mu.resize(m);
        theta.resize(m);
        for (int j = 1; j < n; ++j) {
            mu[j - 1] = s * std::norm(x(j));
            theta[j - 1] = (std::arg(x(j)) - std::arg(x(0))) / kTwoPi;
        }
    };

    std::vector<double> bump(m, 0.0);
    for (int attempt = 0; attempt < 3; ++attempt) {
        bool bad = false;
        double prev_eta = 0;
        for (int N = n_start; N <= n_max; N *= 2) {
            double eta = 0;
            std::vector<double> mu0, th0, mu1, th1;
            bool sing = false;
            eval(0.0, bump, mu0, th0, sing);
            bad = sing;
            for (int i = 0; i < N && !bad; ++i) {
                eval((double)(i + 1) / N, bump, mu1, th1, sing);
                if (sing) { bad = true; break; }
                for (int j = 0; j < m; ++j) {
                    double t1 = detail::unwrap_near(th1[j], th0[j]);
                    eta += 0.5 * (mu0[j] + mu1[j] - 2 * w_tail[j]) * (t1 - th0[j]);
                    th1[j] = t1;
                }
                mu0 = mu1;
                th0 = th1;
            }
            if (bad) break;
            if (N > n_start && std::abs(eta - prev_eta) < tol)
                return {eta, N, true};
            prev_eta = eta;
        }
        if (!bad) return {prev_eta, n_max, false};
        // bend and retry
        for (int j = 0; j < m; ++j) bump[j] = 0.003 * (attempt + 1) * (j + 1);
    }
    throw std::runtime_error("toric_area: path kept hitting coordinate zeros");
}

// ---------------------------------------------------------------------------
// Border phases of a Hermitian matrix: the exact inverse of fiber_point for
// the same eigenvector gauge.  Requires strictly interlacing minor spectra.
// ---------------------------------------------------------------------------
inline std::vector<std::vector<double>> border_phases(const Herm& A) {
    int n = (int)A.rows();
    std::vector<std::vector<double>> phases(n - 1);
    for (int k = 1; k < n; ++k) {
        Eigen::SelfAdjointEigenSolver<Herm> es(A.topLeftCorner(k, k));
        Eigen::VectorXcd d = A.block(0, k, k, 1);
        phases[k - 1].resize(k);
        for (int i = 0; i < k; ++i) {
            Eigen::VectorXcd u = es.eigenvectors().col(k - 1 - i); // descending index i
            detail::phase_fix(u);
            phases[k - 1][i] = std::arg((u.adjoint() * d)(0, 0));
        }
    }
    return phases;
}

// Angle chart: start from the real symmetric point of the fibre through x
// and apply the commuting flows.
inline Herm flow_chart(const std::vector<std::vector<double>>& mu_rows,
                       const std::vector<double>& theta) {
    return gz_flow_multi(real_section_point(mu_rows), theta);
}

// Invert the flow chart at x: the theta with flow_chart(spectrum(x), theta)
// = x, taken from the given initial guess by Gauss-Newton on the matrix
// entries.  Returns false on stagnation (caller restarts elsewhere).
inline bool invert_flow_chart_from(const Herm& x, std::vector<double>& theta, double tol = 1e-11,
                                   int max_iter = 60) {
    int n = (int)x.rows();
    int m = n * (n - 1) / 2;
    auto rows = gz_spectrum(x);
    Herm base = real_section_point(rows);
    auto resid = [&](const std::vector<double>& th) {
        Herm d = gz_flow_multi(base, th) - x;
        Eigen::VectorXd r(2 * n * n);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                r(idx++) = d(i, j).real();
                r(idx++) = d(i, j).imag();
            }
        return r;
    };
    Eigen::VectorXd f = resid(theta);
    for (int it = 0; it < max_iter; ++it) {
        if (f.norm() < tol) return true;
        Eigen::MatrixXd J(2 * n * n, m);
        double h = 1e-6;
        for (int c = 0; c < m; ++c) {
            auto tp = theta, tm = theta;
            tp[c] += h;
            tm[c] -= h;
            J.col(c) = (resid(tp) - resid(tm)) / (2 * h);
        }
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-f);
        double cap = step.cwiseAbs().maxCoeff();
        if (cap > 0.2) step *= 0.2 / cap;
        double fn = f.norm();
        bool improved = false;
        for (int halve = 0; halve < 10; ++halve) {
            auto trial = theta;
            for (int c = 0; c < m; ++c) trial[c] += step(c);
            Eigen::VectorXd f2 = resid(trial);
            if (f2.norm() < fn) {
                theta = trial;
                f = f2;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) return false;
    }
    return f.norm() < tol;
}

// Cold-start inversion with a grid of initial angles.
inline std::vector<double> invert_flow_chart(const Herm& x, double tol = 1e-11) {
    int n = (int)x.rows();
    int m = n * (n - 1) / 2;
    int per_dim = (m <= 3) ? 6 : 3;
    std::vector<int> ctr(m, 0);
    for (;;) {
        std::vector<double> th(m);
        for (int i = 0; i < m; ++i) th[i] = (ctr[i] + 0.5) / per_dim;
        if (invert_flow_chart_from(x, th, tol)) {
            for (double& t : th) t -= std::floor(t);
            return th;
        }
        int i = 0;
        while (i < m && ++ctr[i] == per_dim) ctr[i++] = 0;
        if (i == m) break;
    }
    throw std::runtime_error("invert_flow_chart: no starting angle converged");
}

// ---------------------------------------------------------------------------
// Triangular case.  The path runs inside the g-image of the fibre over v,
// straight in the source border phases (shortest wrap per entry); angles
// along it come from chart inversion, warm started sample to sample.
// ---------------------------------------------------------------------------
inline AreaResult flag_area(const std::vector<std::vector<double>>& v_rows, const Herm& g,
                            const std::vector<std::vector<double>>& phi_from,
                            const std::vector<std::vector<double>>& phi_to,
                            const std::vector<double>& w_flat, double tol = 1e-8,
                            int n_start = 64, int n_max = 4096, const IVec& winding = {}) {
    int n = (int)v_rows.size();
    int m = n * (n - 1) / 2;
    std::vector<std::vector<double>> dphi(n - 1);
    int flat = 0;
    for (int k = 0; k + 1 < n; ++k) {
        dphi[k].resize(k + 1);
        for (int j = 0; j <= k; ++j, ++flat) {
            dphi[k][j] = kTwoPi * detail::wrap_half((phi_to[k][j] - phi_from[k][j]) / kTwoPi);
            if (!winding.empty()) dphi[k][j] += kTwoPi * (double)winding[flat];
        }
    }
    auto point_at = [&](double t) {
        std::vector<std::vector<double>> ph(n - 1);
        for (int k = 0; k + 1 < n; ++k) {
            ph[k].resize(k + 1);
            for (int j = 0; j <= k; ++j) ph[k][j] = phi_from[k][j] + t * dphi[k][j];
        }
        return Herm(g * fiber_point(v_rows, ph) * g.adjoint());
    };

    std::vector<double> theta0 = invert_flow_chart(point_at(0.0));
    double prev_eta = 0;
    for (int N = n_start; N <= n_max; N *= 2) {
        double eta = 0;
        std::vector<double> th_prev = theta0, mu_prev = gz_values(point_at(0.0));
        std::vector<double> th_walk = theta0;
        for (int i = 0; i < N; ++i) {
            Herm x = point_at((double)(i + 1) / N);
            if (!invert_flow_chart_from(x, th_walk))
                th_walk = invert_flow_chart(x);
            auto mu = gz_values(x);
            for (int j = 0; j < m; ++j) {
                double tj = detail::unwrap_near(th_walk[j], th_prev[j]);
                eta += 0.5 * (mu_prev[j] + mu[j] - 2 * w_flat[j]) * (tj - th_prev[j]);
                th_walk[j] = tj;
            }
            th_prev = th_walk;
            mu_prev = mu;
        }
        if (N > n_start && std::abs(eta - prev_eta) < tol)
            return {eta, N, true};
        prev_eta = eta;
    }
    return {prev_eta, n_max, false};
}

} // namespace gzsc
