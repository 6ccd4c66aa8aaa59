#ifndef HMF_QSERIES_HPP
#define HMF_QSERIES_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "hmf/rational.hpp"

namespace hmf {

// Truncated Laurent series in q with exponents on the grid (1/lambda)*Z and
// exact rational coefficients.  Exponents >= prec are unknown, not zero.
// Stored coefficients are always nonzero and below prec.
class QSeries {
public:
    QSeries() : lambda_(1), prec_(huge_prec()) {}

    explicit QSeries(long lambda, Rat prec = huge_prec())
        : lambda_(lambda), prec_(std::move(prec)) {
        if (lambda_ <= 0) throw std::invalid_argument("lambda must be positive");
    }

    static Rat huge_prec() { return Rat(Int(1) << 62); }

    static QSeries zero(Rat prec = huge_prec()) { return QSeries(1, std::move(prec)); }

    static QSeries one(Rat prec = huge_prec()) {
        QSeries s(1, std::move(prec));
        s.set_coeff(Rat(0), Rat(1));
        return s;
    }

    static QSeries monomial(const Rat& expo, const Rat& coeff, Rat prec = huge_prec()) {
        long lam = (long)expo.get_den().get_ui();
        QSeries s(lam, std::move(prec));
        s.set_coeff(expo, coeff);
        return s;
    }

    long lambda() const { return lambda_; }
    const Rat& prec() const { return prec_; }
    const std::map<Rat, Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Rat coeff(const Rat& expo) const {
        if (expo >= prec_) throw std::out_of_range("coefficient beyond precision");
        auto it = c_.find(expo);
        return it == c_.end() ? Rat(0) : it->second;
    }

    Rat coeff(long n) const { return coeff(Rat(n)); }

    void set_coeff(const Rat& expo, const Rat& val) {
        if (expo >= prec_) return;
        check_on_grid(expo);
        if (val == 0)
            c_.erase(expo);
        else
            c_[expo] = val;
    }

    // Lowest stored exponent; empty series has no valuation.
    std::optional<Rat> valuation() const {
        if (c_.empty()) return std::nullopt;
        return c_.begin()->first;
    }

    QSeries truncated(const Rat& p) const {
        QSeries r(lambda_, std::min(p, prec_));
        for (const auto& [e, v] : c_) {
            if (e >= r.prec_) break;
            r.c_.emplace_hint(r.c_.end(), e, v);
        }
        return r;
    }

    QSeries operator-() const {
        QSeries r(lambda_, prec_);
        for (const auto& [e, v] : c_) r.c_.emplace_hint(r.c_.end(), e, -v);
        return r;
    }

    QSeries scaled(const Rat& s) const {
        if (s == 0) return QSeries(1, prec_);
        QSeries r(lambda_, prec_);
        for (const auto& [e, v] : c_) r.c_.emplace_hint(r.c_.end(), e, v * s);
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        QSeries r(lcm_long(a.lambda_, b.lambda_), std::min(a.prec_, b.prec_));
        for (const auto& [e, v] : a.c_)
            if (e < r.prec_) r.c_[e] += v;
        for (const auto& [e, v] : b.c_)
            if (e < r.prec_) r.c_[e] += v;
        r.drop_zeros();
        return r;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

    // Product precision: coefficients of a*b are complete for all exponents
    // below min(a.prec + val(b), b.prec + val(a)).
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        Rat p = mul_prec(a, b);
        QSeries r(lcm_long(a.lambda_, b.lambda_), p);
        for (const auto& [ea, va] : a.c_) {
            for (const auto& [eb, vb] : b.c_) {
                Rat e = ea + eb;
                if (e >= p) break;  // b iterated in increasing exponent order
                r.c_[e] += va * vb;
            }
        }
        r.drop_zeros();
        return r;
    }

    // Multiplicative inverse; requires a nonzero leading coefficient.
    QSeries inverse() const {
        auto val = valuation();
        if (!val) throw std::domain_error("not invertible: zero series");
        // Normalize to a unit series u = 1 + ..., invert by triangular recursion.
        const Rat v = *val;
        Rat u_prec = prec_ - v;  // precision of q^-v * this
        QSeries inv_u(lambda_, u_prec);
        const Rat lead = c_.begin()->second;
        inv_u.c_[Rat(0)] = Rat(1) / lead;
        // march over the grid in steps of 1/lambda
        Rat step = make_rat(1, lambda_);
        for (Rat e = step; e < u_prec; e += step) {
            // coefficient of q^e in u*inv_u must be zero
            Rat acc(0);
            for (const auto& [eu, vu] : c_) {
                Rat ev = e - (eu - v);
                if (ev < 0) break;  // c_ sorted ascending => eu - v grows
                if (eu - v == 0) continue;
                auto it = inv_u.c_.find(ev);
                if (it != inv_u.c_.end()) acc += vu * it->second;
            }
            if (acc != 0) inv_u.c_[e] = -acc / lead;
        }
        // shift back by q^-v
        QSeries r(lambda_, u_prec - v);
        for (auto& [e, coef] : inv_u.c_) r.c_.emplace_hint(r.c_.end(), e - v, coef);
        return r;
    }

    QSeries pow(long e) const {
        if (e == 0) {
            Rat p = prec_;
            if (auto v = valuation()) p = p - *v;  // same completeness as iterated mul
            QSeries r = one(huge_prec());
            r.prec_ = std::min(p, huge_prec());
            return r;
        }
        const QSeries base = e < 0 ? inverse() : *this;
        unsigned long k = (unsigned long)(e < 0 ? -e : e);
        QSeries acc;
        bool have = false;
        QSeries sq = base;
        while (k) {
            if (k & 1) {
                acc = have ? acc * sq : sq;
                have = true;
            }
            k >>= 1;
            if (k) sq = sq * sq;
        }
        return acc;
    }

    // q -> q^d
    QSeries rescaled(long d) const {
        if (d <= 0) throw std::invalid_argument("rescale factor must be positive");
        long g = gcd_long(lambda_, d);
        QSeries r(lambda_ / g, prec_ * d);
        for (const auto& [e, v] : c_) r.c_.emplace_hint(r.c_.end(), e * d, v);
        return r;
    }

    QSeries shifted(const Rat& e0) const {
        QSeries r(lcm_long(lambda_, (long)e0.get_den().get_ui()), prec_ + e0);
        for (const auto& [e, v] : c_) r.c_.emplace_hint(r.c_.end(), e + e0, v);
        return r;
    }

    bool equals_to_prec(const QSeries& other, const Rat& upto) const {
        Rat p = std::min({upto, prec_, other.prec_});
        auto ita = c_.begin();
        auto itb = other.c_.begin();
        while (true) {
            while (ita != c_.end() && ita->first >= p) ita = c_.end();
            while (itb != other.c_.end() && itb->first >= p) itb = other.c_.end();
            if (ita == c_.end() || itb == other.c_.end()) break;
            if (ita->first != itb->first || ita->second != itb->second) return false;
            ++ita;
            ++itb;
        }
        return (ita == c_.end() || ita->first >= p) && (itb == other.c_.end() || itb->first >= p);
    }

private:
    static Rat mul_prec(const QSeries& a, const QSeries& b) {
        auto va = a.valuation(), vb = b.valuation();
        // A zero operand is zero up to its own precision shifted by the
        // other's valuation.
        Rat pa = a.prec_ + (vb ? *vb : Rat(0));
        Rat pb = b.prec_ + (va ? *va : Rat(0));
        return std::min({pa, pb, huge_prec()});
    }

    void check_on_grid(const Rat& e) const {
        if (!is_integer(e * lambda_)) throw std::invalid_argument("exponent not on grid");
    }

    void drop_zeros() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second == 0)
                it = c_.erase(it);
            else
                ++it;
        }
    }

    long lambda_;
    std::map<Rat, Rat> c_;
    Rat prec_;
};

}  // namespace hmf

#endif
