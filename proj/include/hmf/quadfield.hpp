#ifndef HMF_QUADFIELD_HPP
#define HMF_QUADFIELD_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hmf/rational.hpp"

namespace hmf {

// Element (u + v*sqrt(N1))/w of Q(sqrt(N1)), stored in lowest terms with w > 0.
struct QuadElem {
    Int u, v, w;
    long n1;

    QuadElem() : u(0), v(0), w(1), n1(0) {}
    QuadElem(Int u_, Int v_, Int w_, long n1_) : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)), n1(n1_) {
        normalize();
    }
    static QuadElem from_rat(const Rat& r, long n1) {
        return QuadElem(r.get_num(), 0, r.get_den(), n1);
    }

    void normalize() {
        if (w == 0) throw std::invalid_argument("zero denominator");
        if (w < 0) { u = -u; v = -v; w = -w; }
        Int g = gcd_int(gcd_int(u, v), w);
        if (g > 1) { u /= g; v /= g; w /= g; }
        if (u == 0 && v == 0) w = 1;
    }

    bool is_zero() const { return u == 0 && v == 0; }
    bool is_rational() const { return v == 0; }

    QuadElem conj() const { return QuadElem(u, -v, w, n1); }

    Rat trace() const { return make_rat(2 * u, w); }
    Rat norm() const { return make_rat(u * u - Int(n1) * v * v, w * w); }
    Rat rational_part() const { return make_rat(u, w); }  // only exact when v == 0

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
        return QuadElem(a.u * b.w + b.u * a.w, a.v * b.w + b.v * a.w, a.w * b.w, a.n1);
    }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) { return a + (-b); }
    QuadElem operator-() const { return QuadElem(-u, -v, w, n1); }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        return QuadElem(a.u * b.u + Int(a.n1) * a.v * b.v, a.u * b.v + a.v * b.u, a.w * b.w, a.n1);
    }
    QuadElem inv() const {
        Int d = u * u - Int(n1) * v * v;
        if (d == 0) throw std::domain_error("division by zero element");
        return QuadElem(u * w, -v * w, d, n1) ;
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inv(); }
    friend QuadElem operator*(const QuadElem& a, const Rat& r) {
        return QuadElem(a.u * r.get_num(), a.v * r.get_num(), a.w * r.get_den(), a.n1);
    }

    bool operator==(const QuadElem& o) const { return u == o.u && v == o.v && w == o.w && n1 == o.n1; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    // Sign under the embedding sqrt(N1) > 0, decided exactly.
    int sign() const {
        int su = sgn(u), sv = sgn(v);
        if (sv == 0) return su;
        if (su == 0) return sv;
        if (su == sv) return su;
        // opposite signs: compare u^2 with N1 v^2
        Int d = u * u - Int(n1) * v * v;
        int sd = sgn(d);
        return sd == 0 ? 0 : sd * su;
    }
    bool operator<(const QuadElem& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QuadElem& o) const { return (*this - o).sign() > 0; }
    bool is_totally_positive() const { return sign() > 0 && conj().sign() > 0; }

    QuadElem pow(long e) const {
        if (e < 0) return inv().pow(-e);
        QuadElem acc(1, 0, 1, n1), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    double to_double() const {
        return (u.get_d() + v.get_d() * std::sqrt((double)n1)) / w.get_d();
    }

private:
    static int sgn(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
};

// Total order for map keys (lexicographic, not the embedding order).
struct QuadElemKeyLess {
    bool operator()(const QuadElem& a, const QuadElem& b) const {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.w < b.w;
    }
};

// Continued-fraction (PQa) computation of the fundamental unit of Z[sqrt(N1)]
// or Z[(1+sqrt(N1))/2]; returns the unit > 1 generating the units mod +-1.
inline QuadElem fundamental_unit(long n1) {
    if (n1 <= 1 || !is_squarefree(n1)) throw std::invalid_argument("N1 must be squarefree and > 1");
    // Expand sqrt(D) as a continued fraction where D is N1 (convergents of
    // sqrt(N1) find the solution of |x^2 - N1 y^2| = 1 or 4 as appropriate).
    // For N1 = 1 mod 4 the ring is Z[(1+sqrt(N1))/2]; expand (1+sqrt(N1))/2.
    bool half_ring = (n1 % 4 == 1);
    Int D(n1);
    Int sq = sqrt(D);
    // CF of (P0 + sqrt(D))/Q0
    Int P = half_ring ? Int(1) : Int(0);
    Int Q = half_ring ? Int(2) : Int(1);
    Int a = (P + sq) / Q;
    Int h0(1), h1 = a, k0(0), k1(1);
    const Int P_start = P, Q_start = Q;
    for (int iter = 0; iter < 100000; ++iter) {
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (P + sq) / Q;
        // Unit test: x = h1 + k1*P-part... use the candidate convergent
        // h/k: for the non-half ring, h^2 - D k^2 = +-1.
        if (half_ring) {
            // candidate eps = h1 + k1*(-1+sqrt(D))/2 ... instead test
            // (2h1 - k1)^2 - D k1^2 = +-4 with eps = ((2h1-k1) + k1 sqrt(D))/2
            Int x = 2 * h1 - k1;
            Int t = x * x - D * k1 * k1;
            if (t == 4 || t == -4) {
                QuadElem eps(x, k1, 2, n1);
                if (eps.sign() > 0 && (eps - QuadElem(1, 0, 1, n1)).sign() > 0) return eps;
            }
        } else {
            Int t = h1 * h1 - D * k1 * k1;
            if (t == 1 || t == -1) {
                QuadElem eps(h1, k1, 1, n1);
                if ((eps - QuadElem(1, 0, 1, n1)).sign() > 0) return eps;
            }
        }
        Int h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (P == P_start && Q == Q_start && iter > 0) {
            // full period elapsed; keep going, unit appears at period boundary
        }
    }
    throw std::runtime_error("fundamental unit search did not converge");
}

// Real quadratic field data: discriminant, fundamental unit, inverse different.
struct QuadField {
    long n1 = 0;    // squarefree generator
    long N = 0;     // field discriminant
    QuadElem eps0;  // fundamental unit > 1
    int eps0_norm = 0;

    static QuadField create(long n1) {
        if (n1 <= 1 || !is_squarefree(n1)) throw std::invalid_argument("N1 must be squarefree and > 1");
        QuadField K;
        K.n1 = n1;
        K.N = (n1 % 4 == 1) ? n1 : 4 * n1;
        K.eps0 = fundamental_unit(n1);
        Rat nrm = K.eps0.norm();
        K.eps0_norm = (nrm == 1) ? 1 : -1;
        return K;
    }

    static QuadField from_discriminant(long N) {
        long n1 = (N % 4 == 0) ? N / 4 : N;
        QuadField K = create(n1);
        if (K.N != N) throw std::invalid_argument("not a fundamental discriminant");
        return K;
    }

    QuadElem elem(Int u, Int v, Int w = 1) const { return QuadElem(std::move(u), std::move(v), std::move(w), n1); }
    QuadElem from_rat(const Rat& r) const { return QuadElem::from_rat(r, n1); }
    QuadElem sqrtN() const { return (n1 % 4 == 1) ? elem(0, 1) : elem(0, 2); }
    QuadElem omega() const { return (n1 % 4 == 1) ? elem(1, 1, 2) : elem(0, 1); }  // O_F = Z + Z*omega

    // Z-basis of the inverse different d^-1.
    std::pair<QuadElem, QuadElem> inv_different_basis() const {
        if (n1 % 4 == 1) {
            // (1/sqrt(N1)) O_F
            QuadElem g = elem(0, 1).inv();  // 1/sqrt(N1)
            return {g, g * omega()};
        }
        return {elem(1, 0, 2), elem(0, 1) .inv() * Rat(1, 2)};  // 1/2, 1/(2 sqrt(N1))
    }

    // All of d^-1 is { a/2 + b/(2 sqrt(N1)) : a, b in Z }, with a = b mod 2
    // when N1 = 1 mod 4.  (For N1 = 2,3 mod 4 a and b are unconstrained.)
    QuadElem dual_elem(const Int& a, const Int& b) const {
        // a/2 + b/(2 sqrt(N1)) = (a*N1 + b*sqrt(N1)) / (2*N1)
        return elem(a * Int(n1), b, 2 * Int(n1));
    }

    bool dual_parity_ok(const Int& a, const Int& b) const {
        if (n1 % 4 != 1) return true;
        return ((a - b) % 2) == 0;
    }

    bool in_inv_different(const QuadElem& x) const {
        // tr(x * O_F) in Z  <=>  tr(x) in Z and tr(x * omega) in Z
        return is_integer(x.trace()) && is_integer((x * omega()).trace());
    }

    // grade t(nu) = nu*y1 + nu'*y2 at the interior point (y1, y2) = (1, eps0)
    QuadElem grade(const QuadElem& nu) const { return nu + eps0 * nu.conj(); }
};

// All nu in d^-1 with N*nu*nu' >= norm_min, t(nu) > 0 and t(nu) <= grade_bound,
// where t is the grade at the chamber interior point (1, eps0).  Sorted by
// grade, then lexicographic (u, v).  Completeness from the box bounds below.
inline std::vector<QuadElem> enumerate_dual(const QuadField& K, const Rat& norm_min,
                                            const Rat& grade_bound) {
    if (grade_bound <= 0) throw std::invalid_argument("grade_bound must be positive");
    std::vector<QuadElem> out;
    // Write nu = a/2 + b/(2 sqrt(N1)).  With t = nu + eps0*nu' in (0, B] and
    // N(nu) = nu*nu' >= c0 := norm_min/N, the bounds follow:
    //   nu <= B and eps0*nu' <= B both fail only when the other term is
    //   negative, and nu*nu' >= c0 caps how negative it can get:
    //   from c0/nu <= nu' <= (B - nu)/eps0 (nu > 0) we get
    //   nu^2 - B*nu + eps0*c0 <= 0, so nu <= (B + sqrt(B^2 - 4 eps0 c0))/2,
    //   and symmetrically for nu' with eps0 on the other side.
    // Let c0 = norm_min/N and m0 = max(-c0, 0).  Bounds:
    //   nu  <= B + sqrt(eps0*m0)  (if nu' < 0 then |nu'| < sqrt(m0/eps0) from
    //          t > 0 and nu*nu' >= c0, so nu <= B + eps0|nu'|)
    //   nu' <= (B + sqrt(B^2 + 4*eps0*m0)) / (2*eps0)
    //          (from eps0*nu' <= B + |nu| and |nu|*nu' <= m0 when nu < 0)
    //   nu  >= -eps0 * nu'_max and nu' >= -nu_max / eps0  (from t > 0).
    const Rat c0 = norm_min / K.N;
    const double B = grade_bound.get_d();
    const double e0 = K.eps0.to_double();
    const double m0 = std::max(-c0.get_d(), 0.0);
    const double nu_max = B + std::sqrt(e0 * m0) + 1.0;
    const double nup_max = (B + std::sqrt(B * B + 4.0 * e0 * m0)) / (2.0 * e0) + 1.0;
    const double nu_min = -e0 * nup_max - 1.0;
    const double nup_min = -nu_max / e0 - 1.0;
    // a = nu + nu', b = sqrt(N1)*(nu - nu')
    const double sq = std::sqrt((double)K.n1);
    long alo = (long)std::floor(nu_min + nup_min) - 2;
    long ahi = (long)std::ceil(nu_max + nup_max) + 2;
    long bhi = (long)std::ceil(sq * (nu_max - nup_min)) + 2;
    for (long a = alo; a <= ahi; ++a) {
        for (long b = -bhi; b <= bhi; ++b) {
            if ((a | b) == 0) continue;
            if (!K.dual_parity_ok(a, b)) continue;
            QuadElem nu = K.dual_elem(a, b);
            if (Rat(K.N) * nu.norm() < norm_min) continue;
            QuadElem t = K.grade(nu);
            if (t.sign() <= 0) continue;
            if ((t - K.from_rat(grade_bound)).sign() > 0) continue;
            out.push_back(nu);
        }
    }
    std::sort(out.begin(), out.end(), [&K](const QuadElem& x, const QuadElem& y) {
        QuadElem d = K.grade(x) - K.grade(y);
        int s = d.sign();
        if (s != 0) return s < 0;
        if (x.u != y.u) return x.u < y.u;
        return x.v < y.v;
    });
    return out;
}

}  // namespace hmf

#endif
