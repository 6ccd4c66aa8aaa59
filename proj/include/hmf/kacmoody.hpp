#ifndef HMF_KACMOODY_HPP
#define HMF_KACMOODY_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "hmf/quadfield.hpp"
#include "hmf/whsolver.hpp"

namespace hmf {

// Rank-2 hyperbolic Cartan matrix (2 -a; -a 2) with a >= 3, realized inside
// the real quadratic field of discriminant N where a^2 - 4 = N s^2.
struct CartanData {
    long a = 0;
    long s = 0;
    QuadField K;
    QuadElem eta;  // (a + s sqrt(N))/2, so eta' = eta^{-1} and 1 + eta^2 = a eta
};

inline long squarefree_kernel_long(long d) {
    for (long p = 2; p * p <= d; ++p)
        while (d % (p * p) == 0) d /= p * p;
    return d;
}

inline CartanData cartan_data(long a) {
    if (a < 3) throw std::invalid_argument("Cartan entry must satisfy a >= 3");
    long d = a * a - 4;
    CartanData C;
    C.a = a;
    C.K = QuadField::create(squarefree_kernel_long(d));
    long s2 = d / C.K.N;
    long s = 0;
    while (s * s < s2) ++s;
    if (s * s != s2) throw std::logic_error("a^2 - 4 is not N s^2");
    C.s = s;
    // (a + s sqrt(N))/2 with sqrt(N) = sqrt(n1) or 2 sqrt(n1)
    C.eta = (C.K.from_rat(Rat(a)) + C.K.sqrtN() * Rat(s)) * make_rat(1, 2);
    if (!(C.eta.conj() == C.eta.inv())) throw std::logic_error("eta' != eta^-1");
    QuadElem one = C.K.from_rat(Rat(1));
    if (!(one + C.eta * C.eta == C.eta * Rat(a))) throw std::logic_error("1 + eta^2 != a eta");
    return C;
}

// smallest a >= 3 whose Cartan data lives at discriminant N
inline long a_of_discriminant(long N) {
    for (long a = 3; a <= 10000; ++a) {
        long d = a * a - 4;
        long n1 = squarefree_kernel_long(d);
        long disc = (n1 % 4 == 1) ? n1 : 4 * n1;
        if (disc == N) return a;
    }
    throw std::invalid_argument("no rank-2 Cartan matrix at this discriminant");
}

// <x, y> = -N tr(x y'); the isometric image of the Cartan form
inline Rat km_inner(const CartanData& C, const QuadElem& x, const QuadElem& y) {
    return Rat(-C.K.N) * (x * y.conj()).trace();
}

// images under the isometry psi of the simple roots, fundamental weights and
// the Weyl vector rho = -(omega1 + omega2)
struct SimpleData {
    QuadElem alpha1, alpha2, omega1, omega2, rho;
};

inline SimpleData simple_data(const CartanData& C) {
    SimpleData S;
    QuadElem inv_sqrt = C.K.sqrtN().inv();
    S.alpha1 = C.eta * inv_sqrt;
    S.alpha2 = -inv_sqrt;
    Rat c = make_rat(-1, C.s * C.K.N);
    S.omega1 = C.K.from_rat(c);
    S.omega2 = C.eta * c;
    S.rho = -(S.omega1 + S.omega2);
    return S;
}

// r1 x = eta^2 conj(x), r2 x = conj(x); word applied right-to-left, det = (-1)^len
inline std::pair<QuadElem, int> weyl_act(const CartanData& C, const std::vector<int>& word,
                                         QuadElem x) {
    QuadElem eta2 = C.eta * C.eta;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 1)
            x = eta2 * x.conj();
        else if (*it == 2)
            x = x.conj();
        else
            throw std::invalid_argument("word letters must be 1 or 2");
    }
    return {x, (word.size() % 2 == 0) ? 1 : -1};
}

// positive real roots (eta^j, -conj(eta)^j)/sqrt(N) for j in (0, J] together
// with (-conj(eta)^j, eta^j)/sqrt(N) for j in [0, J]; 2J+1 vectors of norm 2
inline std::vector<QuadElem> real_roots_up_to(const CartanData& C, long J) {
    if (J < 0) throw std::invalid_argument("J must be >= 0");
    std::vector<QuadElem> out;
    QuadElem inv_sqrt = C.K.sqrtN().inv();
    for (long j = 1; j <= J; ++j) out.push_back(C.eta.pow(j) * inv_sqrt);
    for (long j = 0; j <= J; ++j) out.push_back(-(C.eta.conj().pow(j) * inv_sqrt));
    return out;
}

// imaginary-root multiplicities of the corrected algebra: totally positive
// nu in d^-1 with grade t(nu) <= bound receive mult = s(N nu nu') a(N nu nu')
struct MultRow {
    QuadElem nu;
    long n = 0;     // N nu nu'
    long s = 1;     // s(n)
    Rat a;          // a(n) from f_1
    Int mult;       // s(n) a(n), integral
};

inline std::vector<MultRow> mult_table(long a, const Rat& grade_bound, long P = 200) {
    CartanData C = cartan_data(a);
    const WHForm& f1 = basis_form(C.K.N, 1, P);
    std::vector<MultRow> out;
    for (auto& nu : enumerate_dual(C.K, Rat(1), grade_bound)) {
        if (!nu.is_totally_positive()) continue;
        Rat nr = Rat(C.K.N) * nu.norm();
        if (!is_integer(nr)) throw std::logic_error("norm not on the (1/N)Z grid");
        MultRow r;
        r.nu = nu;
        r.n = (long)nr.get_num().get_si();
        r.s = s_factor(r.n, C.K.N);
        if (Rat(r.n) >= f1.coeffs.prec()) throw SolverError("f_1 precision too small for grade bound");
        r.a = f1.coeffs.coeff(Rat(r.n));
        Rat m = Rat(r.s) * r.a;
        if (!is_integer(m)) throw std::logic_error("non-integral root multiplicity");
        r.mult = m.get_num();
        if (km_inner(C, nu, nu) >= 0) throw std::logic_error("table entry is not an imaginary root");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hmf

#endif
