#ifndef HMF_WHSOLVER_HPP
#define HMF_WHSOLVER_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

#include "hmf/characters.hpp"
#include "hmf/eta.hpp"
#include "hmf/qseries.hpp"
#include "hmf/weilrep.hpp"

namespace hmf {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// s(n) = 2^omega(gcd(n, N)); s(0) = 2^omega(N)
inline long s_factor(long n, long N) {
    long g = (n == 0) ? N : gcd_long(n, N);
    return 1L << omega(Int(g));
}

struct WHForm {
    long N = 0;
    long m = 0;
    QSeries coeffs;  // integer exponent grid, principal part (1/s_m) q^-m
    long s_m = 1;
    // provenance of the solve
    long space_dim = 0;
    long rank = 0;
    int weight = 0;
    long cutoff_used = 0;
};

inline long n1_of(long N) { return (N % 4 == 0) ? N / 4 : N; }

inline const DiscForm& disc_form_cached(long N) {
    static std::map<long, DiscForm> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    return cache.emplace(N, disc_form(n1_of(N))).first->second;
}

// Existence of f_m with principal part (1/s(m)) q^{-m}.  The support residue
// rule handles everything when the weight-2 cusp space vanishes; for m=1 a
// nonzero cusp space always obstructs (a newform with a(1)=1 pairs
// nontrivially).  Other m against a nonzero obstruction space would need an
// explicit cusp basis, which is out of scope.
inline bool exists_fm(long N, long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!is_fundamental_discriminant(N) || N <= 1)
        throw std::invalid_argument("N must be a fundamental discriminant > 1");
    const DiscForm& D = disc_form_cached(N);
    long r = ((-m) % N + N) % N;
    if (!support_residues(D).count(r)) return false;
    long dim = dim_cusp(N, 2, chi_D(N));
    if (dim == 0) return true;
    if (m == 1) return false;
    throw SolverError("obstruction space nontrivial: unsupported");
}

// true iff a coefficient at exponent n is allowed to be nonzero for a form in
// the epsilon-conditioned space at discriminant N
inline bool coeff_allowed(long N, const Int& n, const SignVector& eps) {
    if (n == 0) return true;
    const DiscForm& D = disc_form_cached(N);
    Int r = ((n % N) + N) % N;
    if (!support_residues(D).count((long)r.get_si())) return false;
    return delta_condition_ok(n, eps, N);
}

namespace detail {

// one spanning-pool generator: q-expansion plus its weight and nebentypus
struct Factor {
    QSeries s;
    int k = 0;
    DirichletChar chi;
};

// fundamental discriminants d (including 1) with |d| dividing N
inline std::vector<long> char_discs(long N) {
    std::vector<long> out;
    for (long a = 1; a <= N; ++a) {
        if (N % a != 0) continue;
        for (long d : {a, -a})
            if (is_fundamental_discriminant(d) || d == 1) {
                if (d == 1 && a != 1) continue;
                out.push_back(d);
            }
    }
    return out;
}

inline std::vector<Factor> factor_pool(long N, const Rat& prec) {
    std::vector<Factor> fs;
    auto discs = char_discs(N);
    for (long d1 : discs)
        for (long d2 : discs) {
            long c1 = (d1 < 0 ? -d1 : d1), c2 = (d2 < 0 ? -d2 : d2);
            if (c1 * c2 > N || N % (c1 * c2) != 0) continue;
            DirichletChar psi = DirichletChar::from_disc(d1);
            DirichletChar phi = DirichletChar::from_disc(d2);
            int par = psi.parity() * phi.parity();
            for (long t = 1; t * c1 * c2 <= N; ++t) {
                if (N % (t * c1 * c2) != 0) continue;
                for (int k = 1; k <= 23; ++k) {
                    if (par != ((k % 2 == 0) ? 1 : -1)) continue;
                    // E2(t tau) alone is quasimodular for trivial characters;
                    // only the differences below are genuine forms
                    if (k == 2 && c1 == 1 && c2 == 1) continue;
                    // weight 1 is symmetric in (psi, phi); keep only the
                    // ordering whose constant term matches the genuine form
                    if (k == 1 && c1 != 1) continue;
                    Factor f;
                    f.s = eisenstein_pair(psi, phi, k, prec, t);
                    f.k = k;
                    f.chi = psi * phi;
                    fs.push_back(std::move(f));
                }
            }
        }
    // weight-2 E2 differences, trivial character
    for (long t = 2; t <= N; ++t) {
        if (N % t != 0) continue;
        Factor f;
        f.s = e2_diff(t, prec);
        f.k = 2;
        f.chi = DirichletChar::trivial(1);
        fs.push_back(std::move(f));
    }
    // Delta(d tau), trivial character, weight 12
    for (long d = 1; d <= N; ++d) {
        if (N % d != 0) continue;
        Factor f;
        f.s = delta_series(ceil_rat(prec / d) + 1).rescaled(d).truncated(prec);
        f.k = 12;
        f.chi = DirichletChar::trivial(1);
        fs.push_back(std::move(f));
    }
    return fs;
}

}  // namespace detail

// forward declaration; defined with the integrality machinery below
inline EtaQuotient integrality_multiplier(long N);

namespace detail {

inline void add_eta_factor(std::vector<Factor>& fs, long N, const Rat& prec) {
    if (N != 8 && N != 12 && N != 17 && N != 21) return;
    EtaQuotient g = integrality_multiplier(N);
    Factor f;
    f.s = g.expand(prec);
    f.k = (int)g.weight().get_num().get_si();
    f.chi = g.character();
    fs.push_back(std::move(f));
}

// incremental exact row echelon over Q, rows indexed by leading exponent
class Echelon {
public:
    bool insert(QSeries row) {
        for (;;) {
            auto v = row.valuation();
            if (!v) return false;  // reduced to zero (up to prec)
            auto it = pivots_.find(*v);
            if (it == pivots_.end()) {
                row = row.scaled(Rat(1) / row.coeff(*v));
                pivots_.emplace(*v, std::move(row));
                return true;
            }
            row = row - it->second.scaled(row.coeff(*v));
        }
    }
    long rank() const { return (long)pivots_.size(); }
    std::vector<QSeries> rows() const {
        std::vector<QSeries> out;
        for (auto& [e, r] : pivots_) out.push_back(r);
        return out;
    }

private:
    std::map<Rat, QSeries> pivots_;
};

// exact dense linear solve: A x = b.  Returns (solution, nullity); throws on
// inconsistency.
inline std::pair<std::vector<Rat>, long> solve_system(std::vector<std::vector<Rat>> A,
                                                      std::vector<Rat> b) {
    size_t rows = A.size(), cols = rows ? 0 : 0;
    for (auto& r : A) cols = std::max(cols, r.size());
    for (auto& r : A) r.resize(cols, Rat(0));
    std::vector<long> pivot_of_col(cols, -1);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pr = rank;
        while (pr < rows && A[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[rank]);
        std::swap(b[pr], b[rank]);
        Rat inv = Rat(1) / A[rank][col];
        for (size_t c = col; c < cols; ++c) A[rank][c] *= inv;
        b[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (size_t c = col; c < cols; ++c) A[r][c] -= f * A[rank][c];
            b[r] -= f * b[rank];
        }
        pivot_of_col[col] = (long)rank;
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) throw SolverError("no solution");
    std::vector<Rat> x(cols, Rat(0));
    for (size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col] >= 0) x[col] = b[(size_t)pivot_of_col[col]];
    return {x, (long)(cols - rank)};
}

}  // namespace detail

// Direct solve for m <= N by clearing the pole with H = Delta(tau)Delta(N tau)
// and solving exact linear conditions in M(Gamma_0(N), 24, chi_D).
inline WHForm solve_fm(long N, long m, long P = 200, bool reverse_pool = false) {
    if (m < 1 || m > N) throw std::invalid_argument("direct solve requires 1 <= m <= N");
    if (!exists_fm(N, m)) throw SolverError("f_m does not exist");
    auto chi = chi_D(N);
    auto [eps, eps_star] = epsilon_vectors(N);

    long dim = dim_cusp(N, 24, chi) + eisenstein_dim_primitive(N, 24);
    // enough headroom that basis/H is still complete past exponent P
    Rat prec_g = Rat(P + 2 * N + 4);

    // span M(Gamma_0(N), 24, chi_D) by products of pool factors
    detail::Echelon ech;
    auto factors = detail::factor_pool(N, prec_g);
    detail::add_eta_factor(factors, N, prec_g);
    // uniqueness must not depend on which spanning set is found first
    if (reverse_pool) std::reverse(factors.begin(), factors.end());
    for (size_t i = 0; i < factors.size() && ech.rank() < dim; ++i) {
        if (factors[i].k == 24 && (factors[i].chi * chi).is_trivial())
            ech.insert(factors[i].s.truncated(prec_g));
        for (size_t j = i; j < factors.size() && ech.rank() < dim; ++j) {
            if (factors[i].k + factors[j].k != 24) continue;
            if (!((factors[i].chi * factors[j].chi) == chi)) continue;
            ech.insert((factors[i].s * factors[j].s).truncated(prec_g));
        }
    }
    if (ech.rank() != dim)
        throw SolverError("span deficient: generator pool does not fill the space");

    // divide the whole basis by H
    QSeries H = delta_series(prec_g) * delta_series(ceil_rat(prec_g / N) + 2).rescaled(N);
    QSeries Hinv = H.truncated(prec_g).inverse();
    std::vector<QSeries> fbasis;
    for (auto& g : ech.rows()) fbasis.push_back((g * Hinv).truncated(Rat(P + 1)));

    // escalate the support-condition cutoff until the solution is unique
    long B = (24 / 12) * index_gamma0(N) + m + 1;
    for (;; B *= 2) {
        if (B > P) B = P;
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> rhs;
        auto add_condition = [&](long e, const Rat& val) {
            std::vector<Rat> row((size_t)dim);
            for (long i = 0; i < dim; ++i) row[(size_t)i] = fbasis[(size_t)i].coeff(Rat(e));
            A.push_back(std::move(row));
            rhs.push_back(val);
        };
        for (long j = N + 1; j >= 1; --j)
            add_condition(-j, j == m ? Rat(1, s_factor(m, N)) : Rat(0));
        for (long n = 0; n <= B; ++n)
            if (!coeff_allowed(N, Int(n), eps)) add_condition(n, Rat(0));
        auto [x, nullity] = detail::solve_system(A, rhs);
        if (nullity > 0) {
            if (B >= P) throw SolverError("ambiguous: nullspace remains at full precision");
            continue;
        }
        QSeries f = QSeries::zero(Rat(P + 1));
        for (long i = 0; i < dim; ++i)
            if (x[(size_t)i] != 0) f = f + fbasis[(size_t)i].scaled(x[(size_t)i]);
        // verify support and delta-condition to full precision
        for (auto& [e, v] : f.coeffs()) {
            if (e < 0) continue;
            if (!coeff_allowed(N, e.get_num(), eps))
                throw SolverError("support violation beyond cutoff: escalation failed");
        }
        WHForm out;
        out.N = N;
        out.m = m;
        out.coeffs = f.truncated(Rat(P + 1));
        out.s_m = s_factor(m, N);
        out.space_dim = dim;
        out.rank = ech.rank();
        out.weight = 24;
        out.cutoff_used = B;
        return out;
    }
}

// f_m for m > N via multiplication by j(N tau) and clearing the other poles.
inline WHForm extend_fm(long N, long m, long P = 200);

inline const WHForm& basis_form(long N, long m, long P = 200) {
    static std::map<std::tuple<long, long, long>, WHForm> cache;
    auto key = std::make_tuple(N, m, P);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    WHForm f = (m <= N) ? solve_fm(N, m, P) : extend_fm(N, m, P);
    return cache.emplace(key, std::move(f)).first->second;
}

inline WHForm extend_fm(long N, long m, long P) {
    if (m <= N) return solve_fm(N, m, P);
    if (!exists_fm(N, m)) throw SolverError("f_m does not exist");
    const WHForm& low = basis_form(N, m - N, P + N);
    QSeries jN = j_rescaled(N, Rat(P + (m - N) + 1));
    QSeries f = (low.coeffs * jN).truncated(Rat(P + 1));
    for (long j = m - 1; j >= 1; --j) {
        Rat c = f.coeff(Rat(-j));
        if (c == 0) continue;
        if (!exists_fm(N, j)) throw std::logic_error("cascade failure: needed lower form missing");
        const WHForm& fj = basis_form(N, j, P);
        f = f - fj.coeffs.scaled(c * Rat(s_factor(j, N)));
    }
    if (f.coeff(Rat(-m)) != Rat(1, s_factor(m, N)))
        throw std::logic_error("pole normalization lost in extension");
    WHForm out;
    out.N = N;
    out.m = m;
    out.coeffs = f.truncated(Rat(P + 1));
    out.s_m = s_factor(m, N);
    out.weight = 24 * (long)((m + N - 1) / N);
    return out;
}

// a(0) of f_m must equal -B(m)/s(0) where B(m) is the m-th coefficient of the
// dual Eisenstein series E^{eps*} of weight 2.
inline bool constant_duality_check(long N, long m, long P = 200) {
    const WHForm& f = basis_form(N, m, P);
    auto [eps, eps_star] = epsilon_vectors(N);
    QSeries E = eisenstein_delta(N, 2, eps_star, Rat(std::max(m + 2, 4 * N + 2)));
    Rat B = E.coeff(Rat(m));
    return f.coeffs.coeff(Rat(0)) == -B / Rat(s_factor(0, N));
}

// The weight-2/6/4 eta multipliers used for the integrality argument.
inline EtaQuotient integrality_multiplier(long N) {
    EtaQuotient g;
    g.level = N;
    switch (N) {
        case 12: g.expo = {{1, 2}, {3, -2}, {4, 1}, {6, 2}, {12, 1}}; break;
        case 8:  g.expo = {{1, -2}, {2, 3}, {4, 1}, {8, 2}}; break;
        case 21: g.expo = {{1, 12}, {3, -3}, {7, 3}}; break;
        case 17: g.expo = {{1, 7}, {17, 1}}; break;
        default: throw std::invalid_argument("no integrality multiplier for this discriminant");
    }
    return g;
}

struct SturmReport {
    long N = 0;
    long bound = 0;
    int weight = 0;
    bool used_half_shift = false;  // f1 - 1/2 is checked when the constant term is 1/2 (N = 21, 17)
    bool integral = false;
};

// Multiply f1 (or f1 - 1/2) by the holomorphic eta multiplier and check
// integrality of the product up to the Sturm bound; by the bounded-denominator
// argument this certifies integrality of every coefficient.
inline SturmReport integrality_report(long N, long P = 200) {
    SturmReport rep;
    rep.N = N;
    EtaQuotient g = integrality_multiplier(N);
    Rat wt = g.weight();
    rep.weight = (int)wt.get_num().get_si();
    rep.bound = sturm_bound(index_gamma1(N), rep.weight);
    rep.used_half_shift = (N == 21 || N == 17);
    const WHForm& f1 = basis_form(N, 1, P);
    QSeries h = f1.coeffs;
    if (rep.used_half_shift) {
        QSeries half = QSeries::one(h.prec()).scaled(make_rat(1, 2));
        h = h - half;
    }
    QSeries prod = h * g.expand(Rat(rep.bound + 3));
    if (prod.prec() <= Rat(rep.bound)) throw SolverError("insufficient precision");
    auto r = integrality_check(prod, rep.bound);
    rep.integral = r.all_integral;
    return rep;
}

}  // namespace hmf

#endif
