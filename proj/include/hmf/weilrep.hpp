#ifndef HMF_WEILREP_HPP
#define HMF_WEILREP_HPP

#include <set>
#include <vector>

#include "hmf/cyclotomic.hpp"
#include "hmf/qseries.hpp"
#include "hmf/quadfield.hpp"

namespace hmf {

// The discriminant form D = d^-1 / O_F of order N, with q(gamma) = N(gamma)
// mod 1 and (gamma, delta) = tr(gamma delta') mod 1.
struct DiscForm {
    QuadField K;
    std::vector<QuadElem> elements;  // canonical representatives, elements[0] = 0

    long order() const { return (long)elements.size(); }

    static Rat mod1(const Rat& x) {
        Rat r = x - Rat(floor_rat(x));
        return r;
    }

    Rat qval(const QuadElem& g) const { return mod1(g.norm()); }
    Rat bilinear(const QuadElem& g, const QuadElem& d) const {
        return mod1((g * d.conj()).trace());
    }

    // index of the class of g among the representatives
    long index_of(const QuadElem& g) const {
        for (long i = 0; i < order(); ++i) {
            if (is_in_ring(g - elements[(size_t)i])) return i;
        }
        throw std::invalid_argument("element not in d^-1 or no matching class");
    }

    long neg_index(long i) const { return index_of(-elements[(size_t)i]); }

private:
    bool is_in_ring(const QuadElem& x) const {
        // x in O_F: x = p + q*omega with p, q integers
        if (K.n1 % 4 == 1) {
            // omega = (1+sqrt)/2: q = 2v/w, p = (u - v)/w in lowest terms
            Rat q = make_rat(2 * x.v, x.w), p = make_rat(x.u - x.v, x.w);
            return is_integer(q) && is_integer(p);
        }
        return x.w == 1;
    }
};

inline DiscForm disc_form(long n1) {
    DiscForm D;
    D.K = QuadField::create(n1);
    if (n1 % 4 == 1) {
        // d^-1 = (1/sqrt(n1)) O_F; O_F/(sqrt(n1)) is represented by Z
        for (long k = 0; k < n1; ++k)
            D.elements.push_back(D.K.elem(0, k) * make_rat(1, n1));  // k*sqrt/n1 = k/sqrt
    } else {
        // d^-1 = (1/2)Z + (1/(2 sqrt)) Z over O_F = Z + sqrt Z
        for (long a = 0; a < 2; ++a)
            for (long b = 0; b < 2 * n1; ++b) D.elements.push_back(D.K.dual_elem(a, b));
    }
    if ((long)D.elements.size() != D.K.N) throw std::logic_error("discriminant form order mismatch");
    if (!D.elements[0].is_zero()) throw std::logic_error("zero representative must come first");
    return D;
}

using CycMatrix = std::vector<std::vector<Cyc>>;

inline CycMatrix rho_T(const DiscForm& D) {
    long n = D.order(), N = D.K.N;
    CycMatrix M((size_t)n, std::vector<Cyc>((size_t)n, Cyc(N)));
    for (long i = 0; i < n; ++i) M[(size_t)i][(size_t)i] = Cyc::e(D.qval(D.elements[(size_t)i]), N);
    return M;
}

// sqrt(N) * rho_S: entries e(-(gamma, delta)).  The 1/sqrt(N) factor is
// carried symbolically by the callers (relations below square it away).
inline CycMatrix rho_S_scaled(const DiscForm& D) {
    long n = D.order(), N = D.K.N;
    CycMatrix M((size_t)n, std::vector<Cyc>((size_t)n, Cyc(N)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            M[(size_t)i][(size_t)j] =
                Cyc::e(-D.bilinear(D.elements[(size_t)i], D.elements[(size_t)j]), N);
    return M;
}

inline CycMatrix mat_mul(const CycMatrix& A, const CycMatrix& B) {
    size_t n = A.size();
    long N = A[0][0].order();
    CycMatrix C(n, std::vector<Cyc>(n, Cyc(N)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (B[k][j].is_zero()) continue;
                C[i][j] = C[i][j] + A[i][k] * B[k][j];
            }
        }
    return C;
}

inline CycMatrix mat_conj_transpose(const CycMatrix& A) {
    size_t n = A.size();
    long N = A[0][0].order();
    CycMatrix C(n, std::vector<Cyc>(n, Cyc(N)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) C[i][j] = A[j][i].conj();
    return C;
}

inline bool mat_equal(const CycMatrix& A, const CycMatrix& B) {
    for (size_t i = 0; i < A.size(); ++i)
        if (A[i] != B[i]) return false;
    return true;
}

inline CycMatrix mat_scale(const CycMatrix& A, const Cyc& s) {
    CycMatrix C = A;
    for (auto& row : C)
        for (auto& x : row) x = x * s;
    return C;
}

// Milgram/Gauss sum G = sum_gamma e(q(gamma)); for these signature-0 forms
// G = +sqrt(N) (checked: G^2 = N exactly and G > 0 numerically).
inline Cyc milgram_sum(const DiscForm& D) {
    Cyc G(D.K.N);
    for (auto& g : D.elements) G = G + Cyc::e(D.qval(g), D.K.N);
    return G;
}

struct WeilChecks {
    bool unitary = false;        // B * B^dagger = N I where B = sqrt(N) rho_S
    bool s_squared = false;      // B^2 = N * (gamma -> -gamma permutation)
    bool braid = false;          // (BT)^3 = G * B^2, i.e. (ST)^3 = S^2
    bool milgram = false;        // G^2 = N and G > 0
};

inline WeilChecks weil_relation_checks(const DiscForm& D) {
    WeilChecks out;
    long n = D.order(), N = D.K.N;
    CycMatrix B = rho_S_scaled(D), T = rho_T(D);
    Cyc NN = Cyc::from_rat(Rat(N), N);
    // unitarity
    CycMatrix U = mat_mul(B, mat_conj_transpose(B));
    CycMatrix NI((size_t)n, std::vector<Cyc>((size_t)n, Cyc(N)));
    for (long i = 0; i < n; ++i) NI[(size_t)i][(size_t)i] = NN;
    out.unitary = mat_equal(U, NI);
    // S^2 = negation permutation
    CycMatrix B2 = mat_mul(B, B);
    CycMatrix NP((size_t)n, std::vector<Cyc>((size_t)n, Cyc(N)));
    for (long i = 0; i < n; ++i) NP[(size_t)D.neg_index(i)][(size_t)i] = NN;
    out.s_squared = mat_equal(B2, NP);
    // Milgram sum
    Cyc G = milgram_sum(D);
    out.milgram = (G * G == NN) && (G.to_double_real() > 0.5);
    // braid relation with sqrt(N) replaced by its exact avatar G
    CycMatrix BT = mat_mul(B, T);
    CycMatrix BT3 = mat_mul(mat_mul(BT, BT), BT);
    out.braid = mat_equal(BT3, mat_scale(B2, G));
    return out;
}

// { N q(gamma) mod N : gamma in D } as exact residues
inline std::set<long> support_residues(const DiscForm& D) {
    std::set<long> out;
    for (auto& g : D.elements) {
        Rat r = D.qval(g) * D.K.N;
        if (!is_integer(r)) throw std::logic_error("level does not divide N");
        out.insert((long)Int(r.get_num() % D.K.N).get_si());
    }
    return out;
}

// Sub-series of a scalar form's coefficients with n = N q(beta) mod N, on the
// exponent grid (1/N) Z.
inline QSeries collect_component(const QSeries& f, const DiscForm& D, const QuadElem& beta) {
    long N = D.K.N;
    Rat target = D.qval(beta) * Rat(N);
    if (!is_integer(target)) throw std::logic_error("level does not divide N");
    long res = (long)Int(target.get_num() % N).get_si();
    if (res < 0) res += N;
    QSeries out(N, f.prec() / Rat(N));
    for (auto& [e, v] : f.coeffs()) {
        if (!is_integer(e)) throw std::invalid_argument("scalar form must have integer exponents");
        Int n = e.get_num();
        Int r = ((n % N) + N) % N;
        if (r == res) out.set_coeff(e / Rat(N), v);
    }
    return out;
}

}  // namespace hmf

#endif
