#ifndef HMF_CYCLOTOMIC_HPP
#define HMF_CYCLOTOMIC_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hmf/rational.hpp"

namespace hmf {

// Integer polynomial division helpers for computing cyclotomic polynomials
// from x^n - 1 by exact division.
inline std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    if (den.empty() || den.back() == 0) throw std::invalid_argument("bad divisor");
    if (num.size() < den.size()) {
        for (auto& c : num)
            if (c != 0) throw std::logic_error("non-exact polynomial division");
        return {};
    }
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (size_t i = q.size(); i-- > 0;) {
        Int c = num[i + den.size() - 1];
        if (c % den.back() != 0) throw std::logic_error("non-exact polynomial division");
        Int f = c / den.back();
        q[i] = f;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
    }
    for (auto& c : num)
        if (c != 0) throw std::logic_error("non-exact polynomial division");
    return q;
}

// Phi_n(x), by dividing x^n - 1 by the cyclotomic polynomials of the proper
// divisors of n (recursively).
inline const std::vector<Int>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<Int>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Int> num((size_t)n + 1, Int(0));
    num[0] = -1;
    num[(size_t)n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divide_exact(num, cyclotomic_poly(d));
    }
    return cache.emplace(n, std::move(num)).first->second;
}

// Element of Q(zeta_n), stored as a rational polynomial in zeta of degree
// < phi(n), reduced mod Phi_n.  Exact equality is canonical.
class Cyc {
public:
    Cyc() : n_(1), c_(1, Rat(0)) {}
    explicit Cyc(long n) : n_(n), c_(deg(n), Rat(0)) {}

    static size_t deg(long n) { return cyclotomic_poly(n).size() - 1; }

    static Cyc from_rat(const Rat& r, long n) {
        Cyc z(n);
        z.c_[0] = r;
        return z;
    }

    // e(x) = exp(2 pi i x) for rational x whose denominator divides n
    static Cyc e(const Rat& x, long n) {
        Rat t = x * n;
        if (!is_integer(t)) throw std::invalid_argument("root of unity order does not divide n");
        Int k = t.get_num() % n;
        if (k < 0) k += n;
        std::vector<Rat> raw((size_t)n, Rat(0));
        raw[k.get_ui()] = 1;
        return reduce(raw, n);
    }

    long order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rat rational_value() const {
        if (!is_rational()) throw std::domain_error("not rational");
        return c_[0];
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        check(a, b);
        Cyc r = a;
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        check(a, b);
        Cyc r = a;
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        check(a, b);
        std::vector<Rat> raw(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
        }
        return reduce(raw, a.n_);
    }
    friend Cyc operator*(const Cyc& a, const Rat& s) {
        Cyc r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    // complex conjugation zeta -> zeta^{-1}
    Cyc conj() const {
        std::vector<Rat> raw((size_t)n_, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            raw[(size_t)((n_ - (long)i) % n_)] += c_[i];
        }
        return reduce(raw, n_);
    }

    bool operator==(const Cyc& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    double to_double_real() const {
        double s = 0;
        for (size_t i = 0; i < c_.size(); ++i)
            s += c_[i].get_d() * std::cos(2.0 * M_PI * (double)i / (double)n_);
        return s;
    }

private:
    static void check(const Cyc& a, const Cyc& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("mixed cyclotomic orders");
    }

    // reduce a raw polynomial in zeta_n (any degree) mod Phi_n
    static Cyc reduce(std::vector<Rat> raw, long n) {
        const auto& phi = cyclotomic_poly(n);
        size_t d = phi.size() - 1;
        // first fold exponents mod n (zeta^n = 1)
        if (raw.size() > (size_t)n) {
            std::vector<Rat> folded((size_t)n, Rat(0));
            for (size_t i = 0; i < raw.size(); ++i) folded[i % (size_t)n] += raw[i];
            raw = std::move(folded);
        }
        // then reduce mod Phi_n (monic)
        for (size_t i = raw.size(); i-- > d;) {
            Rat f = raw[i];
            if (f == 0) continue;
            raw[i] = 0;
            for (size_t j = 0; j < d; ++j) raw[i - d + j] -= f * Rat(phi[j]);
        }
        Cyc z(n);
        for (size_t i = 0; i < d && i < raw.size(); ++i) z.c_[i] = raw[i];
        return z;
    }

    long n_;
    std::vector<Rat> c_;
};

}  // namespace hmf

#endif
