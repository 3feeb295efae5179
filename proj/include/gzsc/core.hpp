// Shared scalar types and normalization conventions.
//
// Every 2*pi factor in the library traces back to the conventions below;
// modules reference these comments instead of re-deriving signs.
//
//   * u(n)* is identified with Hermitian matrices: the functional attached to
//     a Hermitian A is  xi |-> Tr(A Theta)  where xi = 2*pi*i*Theta, Theta
//     Hermitian.  Under this pairing the weight lattice of the diagonal torus
//     is exactly Z^n.
//   * The orbit symplectic form is  omega(xi1^X, xi2^X) = 2*pi*i*Tr(A [Theta1, Theta2]),
//     a real number.
//   * The integral lattice of the torus T_0 = {diag(1, e^{2 pi i t_2}, ...)}
//     has basis  xi_j = 2*pi*i*E_jj,  j = 2..n.
//   * On CP^{n-1} the form is Fubini-Study normalized so a line has area 1:
//     total Liouville volume 1/(n-1)!.  The compatible metric on horizontal
//     vectors at a unit representative is  g(V,W) = (1/pi) Re<V,W>.
//   * Moment-map fibre over interior v: a torus of Riemannian volume
//     sqrt((4 pi)^{n-1} * v_1 v_2 ... v_n)  with v_1 = 1 - sum_{j>=2} v_j.
//   * Monomial sections of degree p: ||z^nu||^2 = nu! / (p+n-1)!  and the
//     reproducing kernel constant is (p+n-1)!/p!.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace gzsc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// 50 decimal digits: the worst alternating-sum cancellation in the monomial
// path at p = 200 burns ~24 digits, leaving ample headroom over the 1e-10
// test tolerances.
using Hp = boost::multiprecision::cpp_bin_float_50;
using HpC = boost::multiprecision::cpp_complex_50;

inline const double kTwoPi = 6.283185307179586476925286766559;

inline Int factorial(long long m) {
    Int r = 1;
    for (long long i = 2; i <= m; ++i) r *= i;
    return r;
}

inline Int binomial(long long m, long long k) {
    if (k < 0 || k > m) return 0;
    Int r = 1;
    for (long long i = 0; i < k; ++i) { r *= (m - i); r /= (i + 1); }
    return r;
}

template <typename T>
inline T rat_cast(const Rat& q) {
    return T(boost::multiprecision::numerator(q)) / T(boost::multiprecision::denominator(q));
}
template <>
inline double rat_cast<double>(const Rat& q) {
    return q.convert_to<double>();
}

// FNV-1a, used for content-addressed cache names and g-digests.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) { s[i] = d[h & 0xf]; h >>= 4; }
    return s;
}

// Canonical 17-significant-digit form, the round-trip-exact double format;
// cache keys and reports use it so reruns hash identically.
inline std::string sig17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

using IVec = std::vector<long long>;
using RVec = std::vector<Rat>;

// Row-major dense matrix over an arbitrary scalar (exact rationals, surds,
// high-precision complex); Eigen types cover the double-precision paths.
template <typename C>
using Mat = std::vector<std::vector<C>>;

inline std::string ivec_str(const IVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) { if (i) s += ","; s += std::to_string(v[i]); }
    return s + ")";
}

} // namespace gzsc
