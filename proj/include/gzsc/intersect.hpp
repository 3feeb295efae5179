// Intersections of a displaced moment-map fibre with a reference fibre, for
// the rank-one torus case and the full triangular case, plus the pairing
// matrices whose determinants control the stationary-phase amplitudes.
//
// Both solvers parametrize one fibre by its torus chart and run damped
// Newton from a grid of starts; converged points are deduplicated, gauge
// fixed, and sorted so results are reproducible run to run.
#pragma once

#include "coadjoint.hpp"
#include <Eigen/Dense>
#include <random>

namespace gzsc {

struct SolveOptions {
    int grid_starts = 64;      // roughly; rounded to a per-dimension grid
    int random_starts = 64;
    int max_iter = 80;
    double tol = 1e-11;        // residual on moment values
    double dedup = 1e-6;
    double cluster = 5e-3;     // separation below which points count as one
                               // connected (non-discrete) component
};

// ---------------------------------------------------------------------------
// Rank-one case.  Points z on the scale-s projective orbit with
// s |z_j|^2 = w_j for j >= 2 that also lie on the g-image of the fibre over
// v.  The Newton unknowns are the source-chart angles.
// ---------------------------------------------------------------------------

struct ToricPoint {
    Eigen::VectorXcd z;              // unit column, largest entry real positive
    std::vector<double> theta_src;   // source-chart angles in [0, 1)
    std::vector<double> theta_dst;   // (arg z_j - arg z_1) / 2pi, j = 2..n
    Eigen::MatrixXd pairing;         // D_jk = {g_* mu_j, mu_k}
    double min_jacobian_sv;
};

struct ToricIntersections {
    std::vector<ToricPoint> points;
    bool discrete = true;
};

// Bracket matrix of the pushed and reference torus moments at z:
// D_jk = 4 pi s Im(conj(z_k) (g E_jj g^* z)_k), indices j, k = 2..n.
inline Eigen::MatrixXd toric_pairing_matrix(double s, const Herm& g,
                                            const Eigen::VectorXcd& z) {
    int n = (int)z.size();
    Eigen::MatrixXd D(n - 1, n - 1);
    for (int j = 2; j <= n; ++j) {
        Eigen::VectorXcd u = g.col(j - 1) * (g.col(j - 1).adjoint() * z);
        for (int k = 2; k <= n; ++k)
            D(j - 2, k - 2) = 2.0 * kTwoPi * s * std::imag(std::conj(z(k - 1)) * u(k - 1));
    }
    return D;
}

inline ToricIntersections toric_intersections(double s, const std::vector<double>& v_tail,
                                              const Herm& g, const std::vector<double>& w_tail,
                                              const SolveOptions& opts = {}) {
    int n = (int)v_tail.size() + 1;
    if ((int)w_tail.size() != n - 1 || g.rows() != n || g.cols() != n)
        throw std::invalid_argument("toric_intersections: size mismatch");
    int m = n - 1;

    double v1 = s;
    for (double v : v_tail) v1 -= v;
    if (v1 <= 0) throw std::invalid_argument("toric_intersections: v outside the open simplex");

    // Source fibre coordinates at given angles.
    auto source_z = [&](const std::vector<double>& th) {
        Eigen::VectorXcd z(n);
        z(0) = std::sqrt(v1 / s);
        for (int j = 1; j < n; ++j)
            z(j) = std::polar(std::sqrt(v_tail[j - 1] / s), kTwoPi * th[j - 1]);
        return z;
    };
    auto residual = [&](const std::vector<double>& th, Eigen::VectorXd& f, Eigen::VectorXcd& y) {
        y = g * source_z(th);
        f.resize(m);
        for (int j = 2; j <= n; ++j) f(j - 2) = s * std::norm(y(j - 1)) - w_tail[j - 2];
    };
    auto jacobian = [&](const std::vector<double>& th, const Eigen::VectorXcd& y) {
        Eigen::MatrixXd J(m, m);
        for (int j = 2; j <= n; ++j)
            for (int mm = 1; mm <= m; ++mm) {
                Cd zm = std::polar(std::sqrt(v_tail[mm - 1] / s), kTwoPi * th[mm - 1]);
                J(j - 2, mm - 1) =
                    -2.0 * kTwoPi * s * std::imag(std::conj(y(j - 1)) * g(j - 1, mm) * zm);
            }
        return J;
    };

    // Start list: uniform grid plus seeded random fill.
    std::vector<std::vector<double>> starts;
    int per_dim = std::max(1, (int)std::llround(std::pow((double)opts.grid_starts, 1.0 / m)));
    std::vector<int> ctr(m, 0);
    for (;;) {
        std::vector<double> th(m);
        for (int i = 0; i < m; ++i) th[i] = (ctr[i] + 0.5) / per_dim;
        starts.push_back(th);
        int i = 0;
        while (i < m && ++ctr[i] == per_dim) ctr[i++] = 0;
        if (i == m) break;
    }
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int r = 0; r < opts.random_starts; ++r) {
        std::vector<double> th(m);
        for (int i = 0; i < m; ++i) th[i] = uni(rng);
        starts.push_back(th);
    }

    ToricIntersections out;
    for (auto th : starts) {
        Eigen::VectorXd f;
        Eigen::VectorXcd y;
        residual(th, f, y);
        bool ok = false;
        for (int it = 0; it < opts.max_iter; ++it) {
            if (f.norm() < opts.tol) { ok = true; break; }
            Eigen::MatrixXd J = jacobian(th, y);
            Eigen::VectorXd step = J.fullPivLu().solve(-f);
            double cap = step.cwiseAbs().maxCoeff();
            if (cap > 0.25) step *= 0.25 / cap;
            double fn = f.norm();
            std::vector<double> trial(m);
            for (int halve = 0; halve < 12; ++halve) {
                for (int i = 0; i < m; ++i)
                    trial[i] = th[i] + step(i) - std::floor(th[i] + step(i));
                Eigen::VectorXd f2;
                Eigen::VectorXcd y2;
                residual(trial, f2, y2);
                if (f2.norm() < fn || halve == 11) {
                    th = trial;
                    f = f2;
                    y = y2;
                    break;
                }
                step *= 0.5;
            }
        }
        if (!ok) continue;
        ToricPoint pt;
        pt.theta_src = th;
        pt.z = y / y.norm();
        bool dup = false;
        for (const auto& q : out.points) {
            double overlap = std::abs((q.z.adjoint() * pt.z)(0, 0));
            if (std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap))) < opts.dedup) { dup = true; break; }
        }
        if (dup) continue;
        // Projective gauge: largest-modulus entry real positive.
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(pt.z(i)) > std::abs(pt.z(best))) best = i;
        pt.z *= std::conj(pt.z(best)) / std::abs(pt.z(best));
        pt.theta_dst.resize(m);
        for (int j = 2; j <= n; ++j) {
            double a = std::arg(pt.z(j - 1)) - std::arg(pt.z(0));
            pt.theta_dst[j - 2] = a / kTwoPi - std::floor(a / kTwoPi);
        }
        pt.pairing = toric_pairing_matrix(s, g, pt.z);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(pt.theta_src, g * source_z(pt.theta_src)));
        pt.min_jacobian_sv = svd.singularValues().minCoeff();
        out.points.push_back(std::move(pt));
    }

    // Nearby-but-distinct survivors signal a non-discrete component.
    for (size_t i = 0; i < out.points.size(); ++i)
        for (size_t j = i + 1; j < out.points.size(); ++j) {
            double overlap = std::abs((out.points[i].z.adjoint() * out.points[j].z)(0, 0));
            if (std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap))) < opts.cluster)
                out.discrete = false;
        }

    std::sort(out.points.begin(), out.points.end(), [](const ToricPoint& a, const ToricPoint& b) {
        for (int i = 0; i < a.z.size(); ++i) {
            if (std::abs(a.z(i).real() - b.z(i).real()) > 1e-7)
                return a.z(i).real() < b.z(i).real();
            if (std::abs(a.z(i).imag() - b.z(i).imag()) > 1e-7)
                return a.z(i).imag() < b.z(i).imag();
        }
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Triangular case.  Points alpha on the fibre over w (border-phase chart)
// whose g-pullback lies on the fibre over v.
// ---------------------------------------------------------------------------

struct FlagPoint {
    Herm alpha;
    std::vector<std::vector<double>> phases; // border phases of the w-chart
    Eigen::MatrixXd pairing;                 // {g_* M_a, M_b} in flat order
    double min_jacobian_sv;
};

struct FlagIntersections {
    std::vector<FlagPoint> points;
    bool discrete = true;
};

// Bracket matrix {g_* M_a, M_b}(alpha): generator of the pushed flow is the
// g-conjugated projector taken at g^* alpha g.
inline Eigen::MatrixXd flag_pairing_matrix(const Herm& g, const Herm& alpha) {
    int n = (int)alpha.rows();
    int m = n * (n - 1) / 2;
    Herm pulled = g.adjoint() * alpha * g;
    Eigen::MatrixXd B(m, m);
    int row = 0;
    for (int k1 = 1; k1 < n; ++k1)
        for (int j1 = 1; j1 <= k1; ++j1, ++row) {
            Herm Ps = g * minor_projector(pulled, k1, j1) * g.adjoint();
            int col = 0;
            for (int k2 = 1; k2 < n; ++k2)
                for (int j2 = 1; j2 <= k2; ++j2, ++col) {
                    Herm Pt = minor_projector(alpha, k2, j2);
                    Cd val = Cd(0, kTwoPi) * (alpha * (Ps * Pt - Pt * Ps)).trace();
                    B(row, col) = val.real();
                }
        }
    return B;
}

inline FlagIntersections flag_intersections(const std::vector<std::vector<double>>& w_rows,
                                            const Herm& g,
                                            const std::vector<double>& v_flat,
                                            const SolveOptions& opts = {}) {
    int n = (int)w_rows.size();
    int m = n * (n - 1) / 2;
    if ((int)v_flat.size() != m)
        throw std::invalid_argument("flag_intersections: v needs n(n-1)/2 values");

    auto unpack = [&](const Eigen::VectorXd& x) {
        std::vector<std::vector<double>> ph(n - 1);
        int idx = 0;
        for (int k = 1; k < n; ++k) {
            ph[k - 1].resize(k);
            for (int j = 0; j < k; ++j) ph[k - 1][j] = x(idx++);
        }
        return ph;
    };
    auto residual = [&](const Eigen::VectorXd& x) {
        Herm alpha = fiber_point(w_rows, unpack(x));
        auto vals = gz_values(g.adjoint() * alpha * g);
        Eigen::VectorXd f(m);
        for (int i = 0; i < m; ++i) f(i) = vals[i] - v_flat[i];
        return f;
    };
    auto jacobian = [&](const Eigen::VectorXd& x) {
        Eigen::MatrixXd J(m, m);
        double h = 1e-6;
        for (int c = 0; c < m; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp(c) += h;
            xm(c) -= h;
            J.col(c) = (residual(xp) - residual(xm)) / (2 * h);
        }
        return J;
    };

    std::vector<Eigen::VectorXd> starts;
    int per_dim = std::max(1, (int)std::llround(std::pow((double)opts.grid_starts, 1.0 / m)));
    std::vector<int> ctr(m, 0);
    for (;;) {
        Eigen::VectorXd x(m);
        for (int i = 0; i < m; ++i) x(i) = kTwoPi * (ctr[i] + 0.5) / per_dim;
        starts.push_back(x);
        int i = 0;
        while (i < m && ++ctr[i] == per_dim) ctr[i++] = 0;
        if (i == m) break;
    }
    std::mt19937 rng(0xfa5e);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    for (int r = 0; r < opts.random_starts; ++r) {
        Eigen::VectorXd x(m);
        for (int i = 0; i < m; ++i) x(i) = uni(rng);
        starts.push_back(x);
    }

    FlagIntersections out;
    for (auto x : starts) {
        Eigen::VectorXd f;
        try {
            f = residual(x);
        } catch (const std::exception&) {
            continue;
        }
        bool ok = false;
        for (int it = 0; it < opts.max_iter; ++it) {
            if (f.norm() < opts.tol) { ok = true; break; }
            bool stepped = false;
            try {
                Eigen::MatrixXd J = jacobian(x);
                Eigen::VectorXd step = J.fullPivLu().solve(-f);
                double cap = step.cwiseAbs().maxCoeff();
                if (cap > 0.5) step *= 0.5 / cap;
                double fn = f.norm();
                for (int halve = 0; halve < 12; ++halve) {
                    Eigen::VectorXd trial = x + step;
                    Eigen::VectorXd f2 = residual(trial);
                    if (f2.norm() < fn || halve == 11) {
                        x = trial;
                        f = f2;
                        stepped = true;
                        break;
                    }
                    step *= 0.5;
                }
            } catch (const std::exception&) {
                break;
            }
            if (!stepped) break;
        }
        if (!ok) continue;
        FlagPoint pt;
        pt.phases = unpack(x);
        pt.alpha = fiber_point(w_rows, pt.phases);
        bool dup = false;
        for (const auto& q : out.points)
            if ((q.alpha - pt.alpha).norm() < opts.dedup) { dup = true; break; }
        if (dup) continue;
        try {
            pt.pairing = flag_pairing_matrix(g, pt.alpha);
        } catch (const std::exception&) {
            pt.pairing = Eigen::MatrixXd::Zero(m, m); // degenerate point
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(x));
        pt.min_jacobian_sv = svd.singularValues().minCoeff();
        out.points.push_back(std::move(pt));
    }

    for (size_t i = 0; i < out.points.size(); ++i)
        for (size_t j = i + 1; j < out.points.size(); ++j)
            if ((out.points[i].alpha - out.points[j].alpha).norm() < opts.cluster)
                out.discrete = false;

    std::sort(out.points.begin(), out.points.end(), [](const FlagPoint& a, const FlagPoint& b) {
        int n = (int)a.alpha.rows();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Cd x = a.alpha(i, j), y = b.alpha(i, j);
                if (std::abs(x.real() - y.real()) > 1e-7) return x.real() < y.real();
                if (std::abs(x.imag() - y.imag()) > 1e-7) return x.imag() < y.imag();
            }
        return false;
    });
    return out;
}

} // namespace gzsc
