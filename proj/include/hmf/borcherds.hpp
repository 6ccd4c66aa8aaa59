#ifndef HMF_BORCHERDS_HPP
#define HMF_BORCHERDS_HPP

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hmf/kacmoody.hpp"
#include "hmf/quadfield.hpp"
#include "hmf/whsolver.hpp"

namespace hmf {

// Weyl chamber of f containing the point (1, eps0), cut out of the positive
// quadrant by the wall lines lambda y1 + lambda' y2 = 0 with N(lambda) = -m/N
// for the poles q^{-m} of f.  A chamber is the open cone of slopes y2/y1
// between r_minus and r_plus (the ratios -lambda/lambda' of the two adjacent
// walls).
struct WeylChamber {
    QuadField K;
    QuadElem r_minus, r_plus;           // boundary slopes, r_minus < eps0 < r_plus
    std::vector<QuadElem> walls;        // the adjacent wall normals (positive embedding)

    // (nu, W) > 0: nu y1 + nu' y2 > 0 on the open cone <=> >= 0 at both rays
    bool positive(const QuadElem& nu) const {
        if (nu.is_zero()) return false;
        return (nu + nu.conj() * r_minus).sign() >= 0 && (nu + nu.conj() * r_plus).sign() >= 0;
    }
    bool negative(const QuadElem& nu) const { return positive(-nu); }
};

namespace detail {

// all lambda in d^-1, lambda > 0 > lambda', with N(lambda) = -m/N and slope
// -lambda/lambda' in [rlo, rhi]
inline std::vector<QuadElem> walls_in_slope_range(const QuadField& K, long m, const QuadElem& rlo,
                                                  const QuadElem& rhi) {
    // lambda = sqrt(m r / N) so the grade lambda + eps0 lambda' is at most
    // sqrt(m rhi / N) (and positive exactly when r > eps0; for r < eps0 use
    // the negated conjugate, which enumerate_dual sees instead)
    double bound = std::sqrt((double)m * rhi.to_double() / K.N) * (1.0 + K.eps0.to_double()) + 2.0;
    std::vector<QuadElem> out;
    for (auto& nu : enumerate_dual(K, Rat(-m), Rat((long)bound + 1))) {
        if (Rat(K.N) * nu.norm() != Rat(-m)) continue;
        QuadElem lam = nu.sign() > 0 ? nu : -nu;
        if (lam.conj().sign() >= 0) continue;
        QuadElem r = -(lam / lam.conj());
        if ((r - rlo).sign() < 0 || (r - rhi).sign() > 0) continue;
        out.push_back(lam);
    }
    return out;
}

}  // namespace detail

// the Weyl chamber of f that contains the interior point (1, eps0)
inline WeylChamber weyl_chamber(const WHForm& f) {
    WeylChamber W;
    W.K = QuadField::from_discriminant(f.N);
    const QuadElem& e0 = W.K.eps0;
    // wall slopes per pole are invariant under r -> eps0^4 r, so a window of
    // two periods around eps0 catches the adjacent walls on both sides
    QuadElem rlo = e0 * e0.pow(-4), rhi = e0 * e0.pow(4);
    std::optional<QuadElem> best_lo, best_hi;
    QuadElem wall_lo, wall_hi;
    for (long m = 1; m <= f.m; ++m) {
        if (f.coeffs.coeff(Rat(-m)) == 0) continue;
        for (auto& lam : detail::walls_in_slope_range(W.K, m, rlo, rhi)) {
            QuadElem r = -(lam / lam.conj());
            int c = (r - e0).sign();
            if (c == 0) throw std::logic_error("interior point lies on a wall");
            if (c < 0) {
                if (!best_lo || (r - *best_lo).sign() > 0) { best_lo = r; wall_lo = lam; }
            } else {
                if (!best_hi || (r - *best_hi).sign() < 0) { best_hi = r; wall_hi = lam; }
            }
        }
    }
    if (!best_lo || !best_hi) throw std::logic_error("no walls found around the interior point");
    W.r_minus = *best_lo;
    W.r_plus = *best_hi;
    W.walls = {wall_lo, wall_hi};
    return W;
}

// rho_{f,W} = (eps0^2 - 1)^{-1} sum_m s(-m) a(-m) sum_{lambda in R(m,W)} lambda
// where R(m,W) = { N(lambda) = -m/N, (lambda,W) > 0, (eps0^{-2} lambda,W) < 0 }
inline QuadElem weyl_vector(const WHForm& f, const WeylChamber& W) {
    const QuadField& K = W.K;
    const QuadElem e0 = K.eps0;
    QuadElem acc = K.from_rat(Rat(0));
    for (long m = 1; m <= f.m; ++m) {
        Rat a = f.coeffs.coeff(Rat(-m));
        if (a == 0) continue;
        Rat sa = Rat(s_factor(m, K.N)) * a;
        // (lambda,W)>0 and (eps0^{-2}lambda,W)<0 force lambda > 0 > lambda'
        // with slope in [r_plus, eps0^4 r_minus]
        QuadElem rhi = e0.pow(4) * W.r_minus;
        QuadElem sum = K.from_rat(Rat(0));
        for (auto& lam : detail::walls_in_slope_range(K, m, W.r_plus, rhi)) {
            if (!W.positive(lam)) continue;
            if (!W.negative(e0.pow(-2) * lam)) continue;
            sum = sum + lam;
        }
        acc = acc + sum * sa;
    }
    return acc * (e0 * e0 - K.from_rat(Rat(1))).inv();
}

// closed form for single-pole f = q^{-1} + O(1) and the chamber at (1, eps0)
inline QuadElem weyl_vector_closed(const QuadField& K) {
    const QuadElem& e0 = K.eps0;
    if (K.eps0_norm == -1) return e0 * K.sqrtN().inv() * (Rat(1) / e0.trace());
    QuadElem one = K.from_rat(Rat(1));
    return (one + e0) * (Rat(1) / (K.sqrtN() * e0).trace());
}

using TermMap = std::map<QuadElem, Int, QuadElemKeyLess>;

// Fourier expansion of the Borcherds product; terms[mu] is the coefficient of
// e(mu z1 + mu' z2), and after to_phi the coefficient of e(-(mu, z)) with the
// pairing (mu, z) = -N (mu z2 + mu' z1).
struct ProductExpansion {
    QuadField K;
    QuadElem weyl_vector;
    TermMap terms;
    Rat grade_bound;
    bool pairing_indexed = false;

    Int coeff(const QuadElem& mu) const {
        auto it = terms.find(mu);
        return it == terms.end() ? Int(0) : it->second;
    }
    bool within_bound(const QuadElem& mu) const {
        return (K.grade(mu) - K.from_rat(grade_bound)).sign() <= 0;
    }
};

namespace detail {

using RatTermMap = std::map<QuadElem, Rat, QuadElemKeyLess>;

inline RatTermMap term_mul(const QuadField& K, const RatTermMap& A, const RatTermMap& B,
                           const QuadElem& max_grade) {
    RatTermMap C;
    for (auto& [x, cx] : A)
        for (auto& [y, cy] : B) {
            QuadElem z = x + y;
            if ((K.grade(z) - max_grade).sign() > 0) continue;
            Rat& slot = C[z];
            slot += cx * cy;
            if (slot == 0) C.erase(z);
        }
    return C;
}

}  // namespace detail

// exponents s(N nu nu') a(N nu nu') of the chamber-positive product factors,
// with the integrality demanded by the product theorem enforced
inline std::vector<std::pair<QuadElem, Int>> product_exponents(const WHForm& f,
                                                               const WeylChamber& W,
                                                               const Rat& B) {
    std::vector<std::pair<QuadElem, Int>> out;
    for (auto& nu : enumerate_dual(W.K, Rat(-f.m), B)) {
        if (!W.positive(nu)) continue;
        Rat nr = Rat(W.K.N) * nu.norm();
        if (!is_integer(nr)) throw std::logic_error("norm not on the (1/N)Z grid");
        long n = (long)nr.get_num().get_si();
        if (Rat(n) >= f.coeffs.prec()) throw SolverError("insufficient f precision for grade bound");
        Rat a = f.coeffs.coeff(Rat(n));
        if (a == 0) continue;
        Rat c = Rat(s_factor(n, W.K.N)) * a;
        if (!is_integer(c)) throw std::logic_error("non-integral product exponent");
        out.emplace_back(nu, c.get_num());
    }
    return out;
}

// Borcherds product expansion of Psi = e(rho z1 + rho' z2) prod (1 - e(nu
// z1 + nu' z2))^{s a}, expanded by formal log/exp and truncated to grades
// t(mu) <= B (grades taken at the chamber interior point (1, eps0))
inline ProductExpansion expand_psi(const WHForm& f, const WeylChamber& W, const Rat& B) {
    ProductExpansion P;
    P.K = W.K;
    P.grade_bound = B;
    P.weyl_vector = weyl_vector(f, W);
    QuadElem max_grade = P.K.from_rat(B) - P.K.grade(P.weyl_vector);
    if (max_grade.sign() < 0) throw std::invalid_argument("grade bound below the Weyl vector grade");

    // L = log(product part) = -sum_nu c(nu) sum_k e(k nu .)/k
    detail::RatTermMap L;
    for (auto& [nu, c] : product_exponents(f, W, B)) {
        for (long k = 1;; ++k) {
            QuadElem sig = nu * Rat(k);
            if ((P.K.grade(sig) - max_grade).sign() > 0) break;
            Rat& slot = L[sig];
            slot -= Rat(c) * make_rat(1, k);
            if (slot == 0) L.erase(sig);
        }
    }
    // exp(L) term by term; L has strictly positive grades so this terminates
    detail::RatTermMap R{{P.K.from_rat(Rat(0)), Rat(1)}};
    detail::RatTermMap pw = R;
    for (long j = 1;; ++j) {
        pw = detail::term_mul(P.K, pw, L, max_grade);
        for (auto& [x, cx] : pw) {
            Rat& slot = R[x];
            slot += cx;
            if (slot == 0) R.erase(x);
        }
        if (pw.empty()) break;
        for (auto& [x, cx] : pw) cx /= Rat(j + 1);
    }
    for (auto& [sig, c] : R) {
        if (!is_integer(c)) throw std::logic_error("non-integral expansion coefficient");
        P.terms.emplace(P.weyl_vector + sig, c.get_num());
    }
    if (P.coeff(P.weyl_vector) != 1) throw std::logic_error("leading coefficient is not 1");
    return P;
}

// Phi(z1, z2) = Psi(N z2, N z1): the same term map, reread as coefficients of
// e(-(mu, z)); grades rescale by the fixed positive factor N.  Applying the
// swap-conjugation twice restores the Psi indexing.
inline ProductExpansion to_phi(const ProductExpansion& P) {
    ProductExpansion Q = P;
    Q.pairing_indexed = !P.pairing_indexed;
    return Q;
}

// reflection action on term indices: r2 mu = conj(mu), r1 mu = eta^2 conj(mu)
inline QuadElem weyl_image(const QuadElem& eta, int which, const QuadElem& mu) {
    switch (which) {
        case 2: return mu.conj();
        case 1: return (eta * eta) * mu.conj();
        case 12: return (eta * eta) * mu;
        default: throw std::invalid_argument("unknown reflection");
    }
}

// coeff(w mu) = det(w) coeff(mu) for w in {r2, r1, r1 r2}, compared wherever
// both grades sit under the bound; requires at least min_rho_images distinct
// Weyl images of rho to take part, else the bound is too small to mean much
inline bool check_antisymmetry(const ProductExpansion& P, const QuadElem& eta,
                               long min_rho_images = 3) {
    long rho_images = 0;
    bool ok = true;
    for (int w : {2, 1, 12}) {
        int det = (w == 12) ? 1 : -1;
        QuadElem wrho = weyl_image(eta, w, P.weyl_vector);
        if (P.within_bound(wrho)) ++rho_images;
        for (auto& [mu, c] : P.terms) {
            QuadElem img = weyl_image(eta, w, mu);
            if (!P.within_bound(img)) continue;
            if (P.coeff(img) != Int(det) * c) ok = false;
        }
    }
    if (P.within_bound(P.weyl_vector)) ++rho_images;  // the identity image
    if (rho_images < min_rho_images)
        throw std::invalid_argument("grade bound covers too few Weyl images of rho");
    return ok;
}

// fundamental-chamber test on the field side: x in D <=> x' <= x <= eta^2 x'
inline bool in_fundamental_chamber(const QuadElem& eta, const QuadElem& x) {
    return (x - x.conj()).sign() >= 0 && ((eta * eta) * x.conj() - x).sign() >= 0;
}

// imaginary simple data m(nu) = -coeff(rho + nu) for nu != 0 in d^-1 cap D
inline TermMap extract_simple_data(const ProductExpansion& P, const QuadElem& eta) {
    TermMap out;
    for (auto& [mu, c] : P.terms) {
        QuadElem nu = mu - P.weyl_vector;
        if (nu.is_zero()) continue;
        if (!in_fundamental_chamber(eta, nu)) continue;
        out.emplace(nu, -c);
    }
    return out;
}

// re-expand the sum side sum_w det(w) (e(-(w rho, z)) - sum_nu m(nu)
// e(-(w(rho+nu), z))) and compare against the stored coefficients; keys whose
// chamber representative falls outside the extraction bound are skipped
inline bool sum_side_matches(const ProductExpansion& P, const QuadElem& eta) {
    TermMap mdata = extract_simple_data(P, eta);
    QuadElem rho = P.weyl_vector;
    const long IMAX = 25;
    // w runs over (r1 r2)^i (det +1) and r2 (r1 r2)^i (det -1)
    auto w_apply = [&](long i, bool flip, const QuadElem& x) {
        QuadElem y = (eta * eta).pow(i) * x;
        return flip ? y.conj() : y;
    };
    TermMap S;
    std::vector<QuadElem> sources;
    sources.push_back(P.K.from_rat(Rat(0)));
    for (auto& [nu, m] : mdata) sources.push_back(nu);
    for (long i = -IMAX; i <= IMAX; ++i)
        for (bool flip : {false, true}) {
            int det = flip ? -1 : 1;
            for (auto& nu : sources) {
                QuadElem key = w_apply(i, flip, rho + nu);
                if (!P.within_bound(key)) continue;
                Int contrib = nu.is_zero() ? Int(det) : Int(-det) * mdata.at(nu);
                Int& slot = S[key];
                slot += contrib;
                if (slot == 0) S.erase(key);
            }
        }
    // a key is verifiable when every chamber preimage was itself extracted
    for (auto& [key, val] : S) {
        bool verifiable = true;
        for (long i = -IMAX; i <= IMAX && verifiable; ++i)
            for (bool flip : {false, true}) {
                // w^{-1} key for w = (r1 r2)^i resp. r2 (r1 r2)^i
                QuadElem inv = (eta * eta).pow(-i) * (flip ? key.conj() : key);
                QuadElem nu = inv - rho;
                if (nu.is_zero()) continue;
                if (in_fundamental_chamber(eta, nu) && !P.within_bound(inv)) verifiable = false;
            }
        if (!verifiable) continue;
        if (P.coeff(key) != val) return false;
    }
    return true;
}

// mu(n a0) along a primitive isotropic direction: the integers with
// 1 - sum m_k t^k = prod (1 - t^n)^{mu_n}
inline std::vector<Int> mu_along_isotropic(const std::vector<Int>& m_seq) {
    long K = (long)m_seq.size();
    // log(1 - sum m_k t^k) up to t^K
    std::vector<Rat> A((size_t)K + 1, Rat(0));
    A[0] = Rat(1);
    for (long k = 1; k <= K; ++k) A[(size_t)k] = Rat(-m_seq[(size_t)k - 1]);
    std::vector<Rat> logA((size_t)K + 1, Rat(0));
    // logA' = A'/A: n logA_n = n A_n - sum_{j=1}^{n-1} j logA_j A_{n-j}
    for (long n = 1; n <= K; ++n) {
        Rat s = Rat(n) * A[(size_t)n];
        for (long j = 1; j < n; ++j) s -= Rat(j) * logA[(size_t)j] * A[(size_t)(n - j)];
        logA[(size_t)n] = s / Rat(n);
    }
    // logA_n = -sum_{d|n} mu_d d / n
    std::vector<Int> mu((size_t)K, 0);
    for (long n = 1; n <= K; ++n) {
        Rat s = Rat(-n) * logA[(size_t)n];
        for (long d = 1; d < n; ++d)
            if (n % d == 0) s -= Rat(d) * Rat(mu[(size_t)d - 1]);
        Rat val = s / Rat(n);
        if (!is_integer(val)) throw std::logic_error("non-integral mu along isotropic direction");
        mu[(size_t)n - 1] = val.get_num();
    }
    return mu;
}

}  // namespace hmf

#endif
