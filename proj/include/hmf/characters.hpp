#ifndef HMF_CHARACTERS_HPP
#define HMF_CHARACTERS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmf/qseries.hpp"
#include "hmf/rational.hpp"

namespace hmf {

// Kronecker symbol (a/n), full generality including n <= 0 and even n.
inline int kronecker(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // strip twos from n: (a/2) depends on a mod 8
    int v2 = 0;
    while (n % 2 == 0) { n /= 2; ++v2; }
    if (v2 % 2 == 1) {
        Int am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    a = ((a % n) + n) % n;
    // now n odd positive, 0 <= a < n; Jacobi loop
    while (a != 0) {
        int v = 0;
        while (a % 2 == 0) { a /= 2; ++v; }
        if (v % 2 == 1) {
            Int nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        // quadratic reciprocity for odd positive a, n
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        Int t = a; a = n % t; n = t;
    }
    return n == 1 ? result : 0;
}

// Real Dirichlet character stored as a value table on Z/m (values -1, 0, 1).
class DirichletChar {
public:
    DirichletChar() : m_(1), vals_{1} {}

    static DirichletChar trivial(long m = 1) {
        DirichletChar c;
        c.m_ = m;
        c.vals_.assign((size_t)m, 0);
        for (long n = 0; n < m; ++n) c.vals_[(size_t)n] = (gcd_long(n, m) == 1) ? 1 : 0;
        return c;
    }

    // chi(n) = Kronecker(d/n), d a (fundamental) discriminant; modulus |d|.
    static DirichletChar from_disc(long d, long modulus = 0) {
        long m = modulus ? modulus : (d < 0 ? -d : d);
        if (m == 0) m = 1;
        DirichletChar c;
        c.m_ = m;
        c.vals_.resize((size_t)m);
        for (long n = 0; n < m; ++n) c.vals_[(size_t)n] = kronecker(d, n);
        return c;
    }

    long modulus() const { return m_; }
    int operator()(const Int& n) const {
        Int r = ((n % m_) + m_) % m_;
        return vals_[r.get_ui()];
    }
    int operator()(long n) const { return (*this)(Int(n)); }

    bool is_trivial() const {
        for (long n = 0; n < m_; ++n)
            if (gcd_long(n, m_) == 1 && vals_[(size_t)n] != 1) return false;
        return true;
    }

    int parity() const { return (*this)(-1); }

    friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b) {
        DirichletChar c;
        c.m_ = lcm_long(a.m_, b.m_);
        c.vals_.resize((size_t)c.m_);
        for (long n = 0; n < c.m_; ++n) c.vals_[(size_t)n] = a(n) * b(n);
        return c;
    }

    // restrict/extend to a new modulus (must preserve values on units)
    DirichletChar to_modulus(long m) const {
        DirichletChar c;
        c.m_ = m;
        c.vals_.assign((size_t)m, 0);
        for (long n = 0; n < m; ++n)
            if (gcd_long(n, m) == 1) c.vals_[(size_t)n] = (*this)(n);
        return c;
    }

    long conductor() const {
        for (long f = 1; f <= m_; ++f) {
            if (m_ % f != 0) continue;
            bool ok = true;
            for (long a = 0; a < m_ && ok; ++a) {
                if (gcd_long(a, m_) != 1) continue;
                for (long b = a; b < m_ && ok; b += f ? f : m_) {
                    if (gcd_long(b, m_) != 1) continue;
                    if ((a - b) % f == 0 && (*this)(a) != (*this)(b)) ok = false;
                }
            }
            if (ok) return f;
        }
        return m_;
    }

    bool operator==(const DirichletChar& o) const {
        long m = lcm_long(m_, o.m_);
        for (long n = 0; n < m; ++n)
            if (gcd_long(n, m) == 1 && (*this)(n) != o(n)) return false;
        return true;
    }

private:
    long m_;
    std::vector<int> vals_;
};

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline bool is_fundamental_discriminant(long d) {
    if (d == 1) return true;
    long m = d % 4;
    if (m < 0) m += 4;
    if (m == 1) return is_squarefree(d < 0 ? -d : d);
    if (d % 4 == 0) {
        long q = d / 4;
        long qm = q % 4; if (qm < 0) qm += 4;
        return (qm == 2 || qm == 3) && is_squarefree(q < 0 ? -q : q);
    }
    return false;
}

// chi_D = (N/.) for the field discriminant N.
inline DirichletChar chi_D(long N) {
    if (!is_fundamental_discriminant(N) || N <= 1)
        throw std::invalid_argument("N must be a fundamental discriminant > 1");
    return DirichletChar::from_disc(N);
}

// Local components of chi_D: chi_p = (./p) for odd p; the 2-component per the
// three congruence cases of N1 mod 8.
inline std::map<long, DirichletChar> local_components(long N) {
    if (!is_fundamental_discriminant(N) || N <= 1)
        throw std::invalid_argument("N must be a fundamental discriminant > 1");
    long n1 = (N % 4 == 0) ? N / 4 : N;
    std::map<long, DirichletChar> comp;
    for (long p : prime_divisors(N)) {
        if (p == 2) {
            long c = n1 % 8;
            long d;
            if (n1 % 4 == 3) d = -4;
            else if (c == 2) d = 8;
            else if (c == 6) d = -8;
            else throw std::logic_error("unexpected 2-adic case");
            comp[2] = DirichletChar::from_disc(d);
        } else {
            // (./p) as a Kronecker symbol: (p*/.) with p* = (-1)^((p-1)/2) p
            long pstar = (p % 4 == 1) ? p : -p;
            comp[p] = DirichletChar::from_disc(pstar);
        }
    }
    return comp;
}

struct SignVector {
    std::vector<long> primes;
    std::vector<int> sign;
    int at(long p) const {
        for (size_t i = 0; i < primes.size(); ++i)
            if (primes[i] == p) return sign[i];
        throw std::out_of_range("prime not in sign vector");
    }
};

// (epsilon, epsilon*) per the local-sign definitions; epsilon*_p = 1 always.
inline std::pair<SignVector, SignVector> epsilon_vectors(long N) {
    auto comp = local_components(N);
    SignVector eps, eps_star;
    for (auto& [p, chi] : comp) {
        int e = chi(-1);  // local parity; eps*_p = chi_p(-1) * eps_p = 1 always
        eps.primes.push_back(p);
        eps.sign.push_back(e);
        eps_star.primes.push_back(p);
        eps_star.sign.push_back(1);
    }
    return {eps, eps_star};
}

// true iff n may carry a nonzero coefficient under the delta-condition:
// only n with (n, N) = 1 are constrained, and those need chi_p(n) != -delta_p
// for every p | N.
inline bool delta_condition_ok(const Int& n, const SignVector& delta, long N) {
    if (gcd_int(n, Int(N)) != 1) return true;
    auto comp = local_components(N);
    for (auto& [p, chi] : comp)
        if (chi(n) == -delta.at(p)) return false;
    return true;
}

// B_0 .. B_k (second Bernoulli convention, B_1 = -1/2)
inline std::vector<Rat> bernoulli_upto(int k) {
    std::vector<Rat> B((size_t)k + 1);
    std::vector<std::vector<Int>> C((size_t)k + 2);
    for (int i = 0; i <= k + 1; ++i) {
        C[(size_t)i].resize((size_t)i + 1);
        C[(size_t)i][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[(size_t)i][(size_t)j] = (j == i) ? Int(1) : C[(size_t)i - 1][(size_t)j - 1] + C[(size_t)i - 1][(size_t)j];
    }
    B[0] = 1;
    for (int m = 1; m <= k; ++m) {
        Rat s(0);
        for (int j = 0; j < m; ++j) s += Rat(C[(size_t)m + 1][(size_t)j]) * B[(size_t)j];
        B[(size_t)m] = -s / Rat(C[(size_t)m + 1][(size_t)m]);
    }
    if (k >= 1) B[1] = Rat(-1, 2);
    return B;
}

// Generalized Bernoulli number B_{k,chi} via the finite sum over residues
// against Bernoulli polynomials: B_{k,chi} = f^{k-1} sum_a chi(a) B_k(a/f).
inline Rat gen_bernoulli(int k, const DirichletChar& chi) {
    long f = chi.modulus();
    auto B = bernoulli_upto(k);
    // binomials
    std::vector<Int> C((size_t)k + 1);
    C[0] = 1;
    for (int j = 1; j <= k; ++j) C[(size_t)j] = C[(size_t)j - 1] * (k - j + 1) / j;
    Rat total(0);
    for (long a = 1; a <= f; ++a) {
        int ca = chi(a);
        if (ca == 0) continue;
        // B_k(x) = sum_j C(k,j) B_j x^{k-j} at x = a/f
        Rat x = make_rat(a, f), poly(0), xp(1);
        for (int j = k; j >= 0; --j) {
            poly += Rat(C[(size_t)j]) * B[(size_t)j] * xp;
            xp *= x;
        }
        total += Rat(ca) * poly;
    }
    return pow_rat(Rat(f), k - 1) * total;
}

// Eisenstein series E_k^{psi,phi}(t tau): constant + sum_n (sum_{d|n}
// psi(n/d) phi(d) d^{k-1}) q^{tn}.  Constant term is -B_{k,phi}/(2k) when psi
// is trivial, 0 otherwise.
inline QSeries eisenstein_pair(const DirichletChar& psi, const DirichletChar& phi, int k,
                               const Rat& prec, long t = 1) {
    if (psi.parity() * phi.parity() != ((k % 2 == 0) ? 1 : -1))
        throw std::invalid_argument("character parity does not match weight");
    QSeries s(1, prec);
    if (psi.is_trivial()) s.set_coeff(Rat(0), -gen_bernoulli(k, phi) / Rat(2 * k));
    long nmax = (long)floor_rat(prec / t).get_si();
    std::vector<Rat> coef((size_t)nmax + 1, Rat(0));
    for (long d = 1; d <= nmax; ++d) {
        int pd = phi(d);
        if (pd == 0) continue;
        Int dk = pow_int(Int(d), (unsigned long)(k - 1));
        for (long n = d; n <= nmax; n += d) {
            int pn = psi(n / d);
            if (pn == 0) continue;
            coef[(size_t)n] += Rat(pn * pd) * Rat(dk);
        }
    }
    for (long n = 1; n <= nmax; ++n)
        if (coef[(size_t)n] != 0) s.set_coeff(Rat(t) * Rat(n), coef[(size_t)n]);
    return s;
}

// E2(tau) = 1 - 24 sum sigma_1(n) q^n (quasi-modular)
inline QSeries e2_series(const Rat& prec) {
    QSeries s(1, prec);
    s.set_coeff(Rat(0), Rat(1));
    long nmax = (long)floor_rat(prec).get_si();
    std::vector<Int> sig((size_t)nmax + 1, 0);
    for (long d = 1; d <= nmax; ++d)
        for (long n = d; n <= nmax; n += d) sig[(size_t)n] += d;
    for (long n = 1; n <= nmax; ++n) s.set_coeff(Rat(n), Rat(-24) * Rat(sig[(size_t)n]));
    return s;
}

// E2(tau) - t E2(t tau): weight 2, level t, trivial character
inline QSeries e2_diff(long t, const Rat& prec) {
    QSeries a = e2_series(prec);
    return a - a.rescaled(t).truncated(prec).scaled(Rat(t));
}

inline long index_gamma0(long N) {
    long mu = N;
    for (long p : prime_divisors(N)) mu = mu / p * (p + 1);
    return mu;
}

// Index convention without the 1/2 PSL factor ([SL2:Gamma_1(17)] = 288).
inline long index_gamma1(long N) {
    if (N == 1) return 1;
    if (N == 2) return 3;
    long mu = N * N;
    for (long p : prime_divisors(N)) mu = mu / (p * p) * (p * p - 1);
    return mu;
}

// Cohen-Oesterle dimension of S_k(Gamma_0(N), chi), even k >= 2.
inline long dim_cusp(long N, int k, const DirichletChar& chi_in) {
    if (k < 2) throw std::invalid_argument("unsupported weight");
    DirichletChar chi = chi_in.to_modulus(N);
    if (chi.parity() != ((k % 2 == 0) ? 1 : -1))
        throw std::invalid_argument("parity mismatch");
    if (k % 2 != 0) throw std::invalid_argument("odd weight unsupported");
    long f = chi.conductor();
    Rat dim = Rat(k - 1, 12) * Rat(index_gamma0(N));
    Rat lam(1);
    for (long p : prime_divisors(N)) {
        long rp = 0, np = N;
        while (np % p == 0) { np /= p; ++rp; }
        long sp = 0, fp = f;
        while (fp % p == 0) { fp /= p; ++sp; }
        Rat l;
        if (2 * sp <= rp) {
            long rh = rp / 2;
            if (rp % 2 == 0)
                l = Rat(pow_int(Int(p), (unsigned long)rh) + pow_int(Int(p), (unsigned long)(rh - 1)));
            else
                l = Rat(2 * pow_int(Int(p), (unsigned long)rh));
        } else {
            l = Rat(2 * pow_int(Int(p), (unsigned long)(rp - sp)));
        }
        lam *= l;
    }
    dim -= lam / 2;
    // elliptic terms
    Rat g4 = (k % 4 == 0) ? Rat(1, 4) : Rat(-1, 4);
    Rat g3 = (k % 3 == 0) ? Rat(1, 3) : ((k % 3 == 2) ? Rat(-1, 3) : Rat(0));
    long s4 = 0, s3 = 0;
    for (long x = 0; x < N; ++x) {
        if ((x * x + 1) % N == 0) s4 += chi(x);
        if ((x * x + x + 1) % N == 0) s3 += chi(x);
    }
    dim += g4 * Rat(s4) + g3 * Rat(s3);
    if (k == 2 && chi.is_trivial()) dim += 1;  // formula computes dim S_2 - dim M_0
    if (!is_integer(dim)) throw std::logic_error("dimension formula returned non-integer");
    long d = (long)dim.get_num().get_si();
    return d < 0 ? 0 : d;
}

// Dimension of the Eisenstein subspace of M_k(Gamma_0(N), chi) for primitive
// chi mod N and k >= 3: the number of decompositions chi = psi*phi with
// cond(psi) cond(phi) = N (one per subset of the primes dividing N).
inline long eisenstein_dim_primitive(long N, int k) {
    if (k < 3) throw std::invalid_argument("only k >= 3 supported");
    return 1L << prime_divisors(N).size();
}

inline long dim_modular(long N, int k, const DirichletChar& chi) {
    return dim_cusp(N, k, chi) + eisenstein_dim_primitive(N, k);
}

inline long sturm_bound(long index, int k) {
    return (long)floor_rat(Rat(k, 12) * Rat(index)).get_si();
}

struct IntegralityReport {
    long bound = 0;
    bool all_integral = false;
    std::vector<Rat> bad_exponents;
};

// Checks integrality of all coefficients with exponent <= bound.  The series
// must be known at least that far.
inline IntegralityReport integrality_check(const QSeries& f, long bound) {
    if (f.prec() <= Rat(bound)) throw std::runtime_error("insufficient precision for Sturm bound");
    IntegralityReport rep;
    rep.bound = bound;
    rep.all_integral = true;
    for (const auto& [e, v] : f.coeffs()) {
        if (e > bound) break;
        if (!is_integer(v)) {
            rep.all_integral = false;
            rep.bad_exponents.push_back(e);
        }
    }
    return rep;
}

// All decompositions chi_D = psi * phi into products of the local components
// (psi over subsets of primes).  Returned as (psi, phi) with exact conductor
// moduli.
inline std::vector<std::pair<DirichletChar, DirichletChar>> chi_decompositions(long N) {
    auto comp = local_components(N);
    std::vector<long> ps;
    for (auto& [p, c] : comp) ps.push_back(p);
    size_t n = ps.size();
    std::vector<std::pair<DirichletChar, DirichletChar>> out;
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        DirichletChar psi = DirichletChar::trivial(1), phi = DirichletChar::trivial(1);
        for (size_t i = 0; i < n; ++i) {
            if (mask & (size_t(1) << i))
                psi = psi * comp[ps[i]];
            else
                phi = phi * comp[ps[i]];
        }
        out.emplace_back(psi, phi);
    }
    return out;
}

// The normalized Eisenstein series E^delta = 1 + sum B(n) q^n in
// M(N, k, chi_D) whose coefficients satisfy the delta-condition.
inline QSeries eisenstein_delta(long N, int k, const SignVector& delta, const Rat& prec) {
    auto decomps = chi_decompositions(N);
    std::vector<QSeries> basis;
    for (auto& [psi, phi] : decomps) basis.push_back(eisenstein_pair(psi, phi, k, prec));
    size_t nv = basis.size();
    // conditions: constant term 1; coefficient at n vanishes whenever
    // (n,N)=1 and chi_p(n) = -delta_p for some p.
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    {
        std::vector<Rat> r(nv);
        for (size_t i = 0; i < nv; ++i) r[i] = basis[i].coeff(0L);
        rows.push_back(r);
        rhs.push_back(Rat(1));
    }
    long cond_max = std::min(4 * N, (long)floor_rat(prec).get_si() - 1);
    for (long n = 1; n <= cond_max; ++n) {
        if (delta_condition_ok(Int(n), delta, N)) continue;
        std::vector<Rat> r(nv);
        for (size_t i = 0; i < nv; ++i) r[i] = basis[i].coeff(n);
        rows.push_back(r);
        rhs.push_back(Rat(0));
    }
    // solve least-norm exact: Gaussian elimination, require unique solution
    size_t nr = rows.size();
    std::vector<size_t> pivot_col;
    for (size_t col = 0, row = 0; col < nv && row < nr; ++col) {
        size_t pr = row;
        while (pr < nr && rows[pr][col] == 0) ++pr;
        if (pr == nr) continue;
        std::swap(rows[pr], rows[row]);
        std::swap(rhs[pr], rhs[row]);
        Rat inv = Rat(1) / rows[row][col];
        for (size_t c = col; c < nv; ++c) rows[row][c] *= inv;
        rhs[row] *= inv;
        for (size_t r2 = 0; r2 < nr; ++r2) {
            if (r2 == row || rows[r2][col] == 0) continue;
            Rat f = rows[r2][col];
            for (size_t c = col; c < nv; ++c) rows[r2][c] -= f * rows[row][c];
            rhs[r2] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() != nv) throw std::runtime_error("E^delta: underdetermined system");
    for (size_t r2 = pivot_col.size(); r2 < nr; ++r2)
        if (rhs[r2] != 0) throw std::runtime_error("E^delta: inconsistent system");
    std::vector<Rat> x(nv);
    for (size_t i = 0; i < nv; ++i) x[i] = rhs[i];
    QSeries out = QSeries::zero(prec);
    for (size_t i = 0; i < nv; ++i) out = out + basis[i].scaled(x[i]);
    return out;
}

}  // namespace hmf

#endif
