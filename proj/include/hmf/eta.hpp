#ifndef HMF_ETA_HPP
#define HMF_ETA_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "hmf/characters.hpp"
#include "hmf/qseries.hpp"
#include "hmf/rational.hpp"

namespace hmf {

// E(q) = prod_{n>=1} (1 - q^n), by the pentagonal number expansion.
inline QSeries eta_unit(const Rat& prec) {
    QSeries s(1, prec);
    for (long k = 0;; ++k) {
        Rat e1 = Rat(k * (3 * k - 1) / 2);
        Rat e2 = Rat(k * (3 * k + 1) / 2);
        if (e1 >= prec && e2 >= prec) break;
        Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
        if (e1 < prec) s.set_coeff(e1, sign);
        if (k > 0 && e2 < prec) s.set_coeff(e2, sign);
    }
    return s;
}

// Cached integer powers of E(q) at a given integer precision ceiling.  All
// eta-quotient work funnels through this: powers are computed on the integer
// grid and only rescaled/shifted afterwards, which keeps multiplications
// dense and cheap.
inline const QSeries& eta_unit_pow(long r, const Rat& prec) {
    struct Key {
        long r;
        Rat prec;
        bool operator<(const Key& o) const {
            if (r != o.r) return r < o.r;
            return prec < o.prec;
        }
    };
    static std::map<Key, QSeries> cache;
    auto it = cache.find({r, prec});
    if (it != cache.end()) return it->second;
    QSeries val = eta_unit(prec).pow(r).truncated(prec);
    return cache.emplace(Key{r, prec}, std::move(val)).first->second;
}

// eta(d tau) = q^{d/24} E(q^d), truncated at prec (in q).
inline QSeries eta_expansion(long d, const Rat& prec) {
    Rat shift = make_rat(d, 24);
    Rat base_prec = ceil_rat((prec - shift) / Rat(d)) + 1;
    return eta_unit_pow(1, base_prec).rescaled(d).shifted(shift).truncated(prec);
}

// prod_d eta(d tau)^{r_d}
struct EtaQuotient {
    long level = 1;                // ambient Gamma_0 level M (all d must divide it)
    std::map<long, long> expo;     // d -> r_d

    Rat weight() const {
        long s = 0;
        for (auto& [d, r] : expo) s += r;
        return make_rat(s, 2);
    }

    // q-exponent of the leading term at infinity: (1/24) sum d r_d
    Rat order_at_infinity() const {
        Rat s(0);
        for (auto& [d, r] : expo) s += make_rat(d * r, 24);
        return s;
    }

    // Standard holomorphy bookkeeping conditions at 0 and infinity
    bool satisfies_24_conditions() const {
        long a = 0, b = 0;
        for (auto& [d, r] : expo) {
            a += d * r;
            b += (level / d) * r;
        }
        return a % 24 == 0 && b % 24 == 0;
    }

    // Nebentypus: chi(n) = ((-1)^k s / n) with s = prod d^{r_d}, 2k = weight.
    DirichletChar character() const {
        Rat w = weight();
        if (!is_integer(w)) throw std::logic_error("character only defined for integral weight");
        long k = (long)w.get_num().get_si();
        Int s = 1;
        for (auto& [d, r] : expo) {
            if (r >= 0)
                s *= pow_int(Int(d), (unsigned long)r);
            else {
                // character only depends on the squarefree part; divide instead
                Int dr = pow_int(Int(d), (unsigned long)(-r));
                Rat q = make_rat(s, dr);
                s = q.get_num() * q.get_den();  // same squarefree class
            }
        }
        // reduce to the squarefree kernel before building the table
        Int kern = 1;
        for (Int p = 2; p * p <= s; ++p) {
            int v = 0;
            while (s % p == 0) { s /= p; ++v; }
            if (v % 2 == 1) kern *= p;
        }
        kern *= s;
        Int disc = (k % 2 == 0) ? kern : -kern;
        return DirichletChar::from_disc((long)disc.get_si(), level);
    }

    // Order of vanishing at the cusp 1/c of X_0(level) in terms of the local
    // uniformizer (one point per cusp class):
    //   (M / (24 gcd(c^2, M))) * sum_d r_d gcd(c,d)^2 / d
    Rat cusp_order(long c) const {
        long M = level;
        Rat s(0);
        for (auto& [d, r] : expo) {
            long g = gcd_long(c, d);
            s += make_rat(r * g * g, d);
        }
        return make_rat(M, 24 * gcd_long(c * c, M)) * s;
    }

    // cusp representatives 1/c, c | M, with multiplicity phi(gcd(c, M/c))
    std::vector<std::pair<long, long>> cusp_classes() const {
        std::vector<std::pair<long, long>> out;
        for (long c = 1; c <= level; ++c) {
            if (level % c != 0) continue;
            long g = gcd_long(c, level / c), phi = 0;
            for (long x = 1; x <= g; ++x)
                if (gcd_long(x, g) == 1) ++phi;
            out.emplace_back(c, phi);
        }
        return out;
    }

    bool is_holomorphic() const {
        for (auto& [c, mult] : cusp_classes())
            if (cusp_order(c) < 0) return false;
        return true;
    }

    // sum over cusps of mult * order must equal (k/12) [SL2 : Gamma_0(M)]
    bool valence_check() const {
        Rat total(0);
        for (auto& [c, mult] : cusp_classes()) total += Rat(mult) * cusp_order(c);
        return total == weight() / Rat(12) * Rat(index_gamma0(level));
    }

    QSeries expand(const Rat& prec) const {
        Rat shift(0);
        for (auto& [d, r] : expo) shift += make_rat(d * r, 24);
        QSeries prod = QSeries::one(QSeries::huge_prec());
        for (auto& [d, r] : expo) {
            Rat base_prec = ceil_rat((prec - shift) / Rat(d)) + 1;
            prod = prod * eta_unit_pow(r, base_prec).rescaled(d);
        }
        return prod.shifted(shift).truncated(prec);
    }
};

// Delta(tau) = q prod (1-q^n)^24, exact integer coefficients.
inline QSeries delta_series(const Rat& prec) {
    return eta_unit_pow(24, prec).shifted(Rat(1)).truncated(prec);
}

// E4 = 1 + 240 sum sigma_3(n) q^n
inline QSeries e4_series(const Rat& prec) {
    QSeries s(1, prec);
    s.set_coeff(Rat(0), Rat(1));
    long nmax = (long)floor_rat(prec).get_si();
    std::vector<Int> sig((size_t)nmax + 1, 0);
    for (long d = 1; d <= nmax; ++d) {
        Int d3 = Int(d) * d * d;
        for (long n = d; n <= nmax; n += d) sig[(size_t)n] += d3;
    }
    for (long n = 1; n <= nmax; ++n) s.set_coeff(Rat(n), Rat(240) * Rat(sig[(size_t)n]));
    return s;
}

// E6 = 1 - 504 sum sigma_5(n) q^n
inline QSeries e6_series(const Rat& prec) {
    QSeries s(1, prec);
    s.set_coeff(Rat(0), Rat(1));
    long nmax = (long)floor_rat(prec).get_si();
    std::vector<Int> sig((size_t)nmax + 1, 0);
    for (long d = 1; d <= nmax; ++d) {
        Int d5 = pow_int(Int(d), 5);
        for (long n = d; n <= nmax; n += d) sig[(size_t)n] += d5;
    }
    for (long n = 1; n <= nmax; ++n) s.set_coeff(Rat(n), Rat(-504) * Rat(sig[(size_t)n]));
    return s;
}

// j(N tau) = E4(N tau)^3 / Delta(N tau), starting q^{-N} + 744 + ...
inline QSeries j_rescaled(long N, const Rat& prec) {
    Rat base_prec = ceil_rat(prec / Rat(N)) + 2;
    QSeries e4 = e4_series(base_prec);
    QSeries j = (e4 * e4 * e4) * delta_series(base_prec + 2).inverse();
    return j.rescaled(N).truncated(prec);
}

}  // namespace hmf

#endif
