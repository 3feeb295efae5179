#include <catch2/catch_amalgamated.hpp>
#include <gzsc/intersect.hpp>
#include <unsupported/Eigen/MatrixFunctions>
#include <random>

using namespace gzsc;

namespace {

Herm rotation2(double beta) {
    Herm g(2, 2);
    g << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
    return g;
}

Herm random_unitary(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Herm a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Cd(dist(rng), dist(rng));
    Eigen::HouseholderQR<Herm> qr(a);
    Herm q = qr.householderQ();
    Herm r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

} // namespace

TEST_CASE("circle case matches the closed form", "[intersect]") {
    double beta = 0.9, v = 0.4, w = 0.55;
    double c = std::cos(beta / 2), sn = std::sin(beta / 2);
    auto res = toric_intersections(1.0, {v}, rotation2(beta), {w});
    // cos of the source angle from the quadratic moment condition
    double cosphi = (w - sn * sn * (1 - v) - c * c * v) / (std::sin(beta) * std::sqrt(v * (1 - v)));
    REQUIRE(std::abs(cosphi) < 1.0);
    REQUIRE(res.points.size() == 2);
    REQUIRE(res.discrete);
    for (const auto& pt : res.points) {
        REQUIRE(std::abs(std::cos(kTwoPi * pt.theta_src[0]) - cosphi) < 1e-9);
        REQUIRE(std::abs(std::norm(pt.z(1)) - w) < 1e-9);
        // pairing value against the explicit product formula, in the
        // destination-chart angle
        double phi = kTwoPi * pt.theta_dst[0];
        double expect = kTwoPi * std::sin(beta) * std::sqrt(w * (1 - w)) * std::sin(phi);
        REQUIRE(std::abs(pt.pairing(0, 0) - expect) < 1e-8);
    }
    // the two branches carry opposite pairing signs
    REQUIRE(std::abs(res.points[0].pairing(0, 0) + res.points[1].pairing(0, 0)) < 1e-8);
}

TEST_CASE("centered circle case gives the quarter-turn points", "[intersect]") {
    double beta = 1.2;
    auto res = toric_intersections(1.0, {0.5}, rotation2(beta), {0.5});
    REQUIRE(res.points.size() == 2);
    for (const auto& pt : res.points) {
        REQUIRE(std::abs(std::abs(pt.pairing(0, 0)) - M_PI * std::sin(beta)) < 1e-8);
        double amp = 1.0 / std::sqrt(std::abs(pt.pairing(0, 0)));
        REQUIRE(std::abs(amp - 1.0 / std::sqrt(M_PI * std::sin(beta))) < 1e-8);
    }
}

TEST_CASE("empty intersections are reported as such", "[intersect]") {
    double beta = 0.3, v = 0.5;
    double c = std::cos(beta / 2), sn = std::sin(beta / 2);
    double reach = std::sin(beta) * std::sqrt(v * (1 - v));
    double center = sn * sn * (1 - v) + c * c * v;
    auto res = toric_intersections(1.0, {v}, rotation2(beta), {center + reach + 0.02});
    REQUIRE(res.points.empty());
}

TEST_CASE("circle counts agree with a dense scan", "[intersect]") {
    for (auto [beta, v, w] : std::vector<std::array<double, 3>>{
             {0.7, 0.35, 0.5}, {1.4, 0.2, 0.6}, {2.0, 0.5, 0.12}, {0.45, 0.7, 0.68}}) {
        Herm g = rotation2(beta);
        auto f = [&](double th) {
            Eigen::VectorXcd z(2);
            z << std::sqrt(1 - v), std::polar(std::sqrt(v), kTwoPi * th);
            return std::norm((g * z)(1)) - w;
        };
        int scan_roots = 0;
        std::vector<double> locs;
        int N = 40000;
        for (int i = 0; i < N; ++i) {
            double a = f((double)i / N), b = f((double)(i + 1) / N);
            if (a == 0.0 || (a < 0) != (b < 0)) {
                ++scan_roots;
                locs.push_back((double)i / N);
            }
        }
        auto res = toric_intersections(1.0, {v}, g, {w});
        INFO("beta=" << beta << " v=" << v << " w=" << w);
        REQUIRE((int)res.points.size() == scan_roots);
        for (const auto& pt : res.points) {
            double best = 1.0;
            for (double l : locs) {
                double d = std::abs(pt.theta_src[0] - l);
                best = std::min(best, std::min(d, 1.0 - d));
            }
            REQUIRE(best < 1e-3);
        }
    }
}

TEST_CASE("projective plane points satisfy both fibre conditions", "[intersect]") {
    double s = 1.0;
    std::vector<double> v = {1.0 / 3, 1.0 / 3}, w = {0.3, 0.36};
    Herm g = random_unitary(3, 99);
    auto res = toric_intersections(s, v, g, w);
    REQUIRE(!res.points.empty());
    REQUIRE(res.discrete);
    for (const auto& pt : res.points) {
        REQUIRE(std::abs(pt.z.norm() - 1.0) < 1e-10);
        for (int j = 1; j < 3; ++j) {
            REQUIRE(std::abs(s * std::norm(pt.z(j)) - w[j - 1]) < 1e-8);
            REQUIRE(std::abs(s * std::norm((g.adjoint() * pt.z)(j)) - v[j - 1]) < 1e-8);
        }
        REQUIRE(pt.min_jacobian_sv > 1e-8);
        // bracket matrix determinant equals the Newton Jacobian determinant
        // (the charts differ by a lattice map of determinant one)
        Eigen::MatrixXd J(2, 2);
        double h = 1e-6;
        for (int m = 0; m < 2; ++m)
            for (int j = 0; j < 2; ++j) {
                auto moment = [&](double dm) {
                    std::vector<double> th = pt.theta_src;
                    th[m] += dm;
                    Eigen::VectorXcd z(3);
                    z << std::sqrt(1 - v[0] - v[1]), std::polar(std::sqrt(v[0]), kTwoPi * th[0]),
                        std::polar(std::sqrt(v[1]), kTwoPi * th[1]);
                    return s * std::norm((g * z)(j + 1));
                };
                J(j, m) = (moment(h) - moment(-h)) / (2 * h);
            }
        REQUIRE(std::abs(std::abs(J.determinant()) - std::abs(pt.pairing.determinant()))
                < 1e-5 * std::abs(J.determinant()));
    }
}

TEST_CASE("rank-one triangular solver agrees with the rank-one torus solver", "[intersect]") {
    double beta = 1.1, v = 0.45, w = 0.5;
    Herm g = rotation2(beta);
    auto tor = toric_intersections(1.0, {v}, g, {w});
    auto fla = flag_intersections({{1.0 - w}, {1.0, 0.0}}, g, {1.0 - v});
    // torus coordinates are the trailing diagonal; the triangular chart's
    // first minor is the leading diagonal entry, i.e. the complement
    REQUIRE(tor.points.size() == fla.points.size());
    REQUIRE(fla.points.size() == 2);
    for (const auto& fp : fla.points) {
        REQUIRE(std::abs(fp.alpha(1, 1).real() - w) < 1e-8);
        double best = 1e9;
        for (const auto& tp : tor.points) {
            Herm A = tp.z * tp.z.adjoint();
            best = std::min(best, (A - fp.alpha).norm());
        }
        REQUIRE(best < 1e-7);
        // the complementary coordinates flip both flows, so the pairing
        // determinants coincide
        double dt = std::abs(tor.points[0].pairing(0, 0));
        REQUIRE(std::abs(std::abs(fp.pairing(0, 0)) - dt) < 1e-7);
    }
}

TEST_CASE("regular circle orbit matches a dense border scan", "[intersect]") {
    std::vector<std::vector<double>> wrows = {{0.9}, {1.3, 0.2}};
    double vval = 0.8;
    Herm g = rotation2(0.8);
    auto f = [&](double phi) {
        Herm alpha = fiber_point(wrows, {{phi}});
        return gz_values(g.adjoint() * alpha * g)[0] - vval;
    };
    int scan_roots = 0;
    int N = 20000;
    for (int i = 0; i < N; ++i)
        if ((f(kTwoPi * i / N) < 0) != (f(kTwoPi * (i + 1) / N) < 0)) ++scan_roots;
    auto res = flag_intersections(wrows, g, {vval});
    REQUIRE((int)res.points.size() == scan_roots);
    for (const auto& pt : res.points)
        REQUIRE(std::abs(gz_values(g.adjoint() * pt.alpha * g)[0] - vval) < 1e-9);
}

TEST_CASE("full flag points land on both fibres and are stable in start count",
          "[intersect]") {
    std::vector<std::vector<double>> rows = {{1.0}, {1.5, 0.5}, {2.0, 1.0, 0.0}};
    std::vector<double> vflat = {1.0, 1.5, 0.5};
    std::mt19937 rng(17);
    std::normal_distribution<double> dist(0.0, 1.0);
    Herm H(3, 3);
    for (int i = 0; i < 3; ++i) {
        H(i, i) = dist(rng);
        for (int j = i + 1; j < 3; ++j) {
            H(i, j) = Cd(dist(rng), dist(rng));
            H(j, i) = std::conj(H(i, j));
        }
    }
    Herm g = (Cd(0, 0.45) * H).exp();
    auto res = flag_intersections(rows, g, vflat);
    REQUIRE(!res.points.empty());
    for (const auto& pt : res.points) {
        auto pulled = gz_values(g.adjoint() * pt.alpha * g);
        for (int i = 0; i < 3; ++i) REQUIRE(std::abs(pulled[i] - vflat[i]) < 1e-9);
        auto own = gz_values(pt.alpha);
        REQUIRE(std::abs(own[0] - 1.0) < 1e-9);
        REQUIRE(std::abs(own[1] - 1.5) < 1e-9);
        REQUIRE(std::abs(own[2] - 0.5) < 1e-9);
        REQUIRE(pt.min_jacobian_sv > 1e-8);
        REQUIRE(std::abs(pt.pairing.determinant()) > 1e-10);
    }
    SolveOptions more;
    more.grid_starts = 125;
    more.random_starts = 90;
    auto res2 = flag_intersections(rows, g, vflat, more);
    REQUIRE(res2.points.size() == res.points.size());
    for (size_t i = 0; i < res.points.size(); ++i)
        REQUIRE((res.points[i].alpha - res2.points[i].alpha).norm() < 1e-7);
}
