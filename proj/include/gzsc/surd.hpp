// Exact arithmetic on sums of quadratic surds  sum_i c_i * sqrt(m_i)  with
// rational c_i and squarefree positive integer m_i.  Generator matrices have
// entries of the form sqrt(rational); products and sums of those live in this
// ring, and the diagonal entries of invariant operators collapse back to
// rationals, which is what the exactness tests verify.
#pragma once

#include "core.hpp"
#include <map>
#include <stdexcept>

namespace gzsc {

namespace detail {
// Split n = s^2 * k with k squarefree (trial division; inputs here stay
// far below the 10^12 bound this is good for).
inline void squarefree_split(Int n, Int& s, Int& k) {
    s = 1; k = 1;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        for (int i = 0; i < e / 2; ++i) s *= d;
        if (e % 2) k *= d;
    }
    k *= n;
}
} // namespace detail

class Surd {
public:
    Surd() {}
    Surd(const Rat& q) { if (q != 0) terms_[1] = q; }
    Surd(long long v) : Surd(Rat(v)) {}

    // sqrt(q) for q >= 0, canonicalized to coef * sqrt(squarefree integer).
    static Surd sqrt_of(const Rat& q) {
        if (q < 0) throw std::domain_error("Surd: sqrt of negative rational");
        if (q == 0) return Surd();
        Int a = boost::multiprecision::numerator(q);
        Int b = boost::multiprecision::denominator(q);
        Int s, k;
        detail::squarefree_split(a * b, s, k);
        Surd r;
        r.terms_[k] = Rat(s, b);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    Rat rational_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_rational()) throw std::domain_error("Surd: not rational");
        return terms_.begin()->second;
    }

    Surd operator-() const {
        Surd r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    Surd& operator+=(const Surd& o) {
        for (const auto& t : o.terms_) add_term(t.first, t.second);
        return *this;
    }
    Surd& operator-=(const Surd& o) { return *this += -o; }
    Surd operator+(const Surd& o) const { Surd r = *this; return r += o; }
    Surd operator-(const Surd& o) const { Surd r = *this; return r -= o; }

    Surd operator*(const Surd& o) const {
        Surd r;
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                // sqrt(m1) sqrt(m2) = g sqrt((m1/g)(m2/g)), g = gcd; both
                // factors squarefree and coprime, so the product is squarefree.
                Int g = boost::multiprecision::gcd(a.first, b.first);
                Int m = (a.first / g) * (b.first / g);
                r.add_term(m, a.second * b.second * Rat(g));
            }
        return r;
    }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }

    // Division by a single-term surd (enough for normalizing coefficients).
    Surd operator/(const Surd& o) const {
        if (o.terms_.size() != 1) throw std::domain_error("Surd: division needs a single term");
        auto [m, c] = *o.terms_.begin();
        // 1/(c sqrt(m)) = sqrt(m)/(c m)
        Surd inv;
        inv.terms_[m] = Rat(1) / (c * Rat(m));
        return *this * inv;
    }

    bool operator==(const Surd& o) const { return terms_ == o.terms_; }
    bool operator!=(const Surd& o) const { return !(*this == o); }

    template <typename T>
    T to() const {
        T v = T(0);
        for (const auto& t : terms_)
            v += rat_cast<T>(t.second) * sqrt(T(t.first));
        return v;
    }
    double to_double() const {
        double v = 0;
        for (const auto& t : terms_)
            v += rat_cast<double>(t.second) * std::sqrt(t.first.convert_to<double>());
        return v;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            std::ostringstream os;
            os << t.second;
            s += os.str();
            if (t.first != 1) { std::ostringstream om; om << t.first; s += "*sqrt(" + om.str() + ")"; }
        }
        return s;
    }

private:
    void add_term(const Int& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_[m] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    std::map<Int, Rat> terms_; // squarefree radicand -> coefficient
};

} // namespace gzsc
