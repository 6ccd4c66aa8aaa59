#ifndef HMF_ASYMPT_HPP
#define HMF_ASYMPT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hmf/characters.hpp"
#include "hmf/whsolver.hpp"

namespace hmf {

// modified Bessel function I_1: power series for small x, asymptotic
// expansion e^x/sqrt(2 pi x) sum_k t_k beyond the crossover
inline double bessel_i1(double x) {
    if (x < 0) throw std::invalid_argument("bessel_i1: x must be >= 0");
    const double pi = std::numbers::pi;
    if (x <= 15.0) {
        double h = x / 2, h2 = h * h;
        double term = h, sum = h;
        for (int k = 1; k < 200; ++k) {
            term *= h2 / (double(k) * double(k + 1));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum;
    }
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
        double next = term * (-(4.0 - double(2 * k - 1) * double(2 * k - 1)) / (8.0 * k * x));
        if (std::abs(next) >= std::abs(term)) break;  // divergent tail
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2 * pi * x) * sum;
}

// character sum A(c, n, nu) = sum_{d mod c, (d,c)=1} chi_N(d) e((n d - nu d^-1)/c)
// evaluated by brute force; the oracle for the closed forms below
inline std::complex<double> a_sum_brute(long N, long c, long n, long nu) {
    const double pi = std::numbers::pi;
    std::complex<double> sum = 0.0;
    for (long d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        int chi = kronecker(Int(N), Int(d));
        if (chi == 0) continue;
        long dbar = 0;  // d^-1 mod c
        for (long e = 1; e < c; ++e)
            if ((d * e) % c == 1) { dbar = e; break; }
        double arg = 2 * pi * double((n % c) * d - (nu % c) * dbar) / double(c);
        sum += double(chi) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return sum;
}

// closed forms of A(N, n, m) at the dominant cusp, m in {1, N}
inline double a_closed(long N, long n, long m) {
    const double pi = std::numbers::pi;
    if (m == 1) {
        if (N == 12) return 4 * std::sin(pi * (n - 1) / 2) * std::sin(pi * (n - 1) / 3);
        if (N == 8) return 4 * std::sin(pi * (n - 1) / 2) * std::sin(pi * (n - 1) / 4);
        if (N == 21) {
            // sqrt(21) sum_{v^2 = -n mod 21} e(2v/21); the quadratic-symbol
            // prefactor sometimes written here is redundant for (n,21)=1 and
            // wrong on the ramified classes, where the sum can be nonzero
            double s = 0.0;
            for (long v = 0; v < 21; ++v)
                if ((v * v + n) % 21 == 0) s += std::cos(4 * pi * v / 21);
            return std::sqrt(21.0) * s;
        }
    } else if (m == N) {
        if (N == 12) return 4 * std::sin(pi * n / 2) * std::sin(pi * n / 3);
        if (N == 8) return 4 * std::sin(pi * n / 2) * std::sin(pi * n / 4);
    }
    throw std::invalid_argument("a_closed: unsupported (N, m)");
}

// circle-method main term of the coefficient a_m(n), m in {1, N}
inline double main_term(long N, long m, long n) {
    if (n < 1) throw std::invalid_argument("main_term: n must be >= 1");
    const double pi = std::numbers::pi;
    double sn = std::sqrt(double(n));
    if (N == 12 && m == 1)
        return 2 * pi / (3 * sn) * std::sin(pi * (n - 1) / 2) * std::sin(pi * (n - 1) / 3) *
               bessel_i1(pi * sn / 3);
    if (N == 12 && m == 12)
        return pi / sn *
               ((std::sin(pi * n / 2) * std::sin(pi * n / 3) - std::sin(2 * pi * n / 3)) /
                    std::sqrt(3.0) +
                (1 - std::sin(pi * n / 2)) / 2) *
               bessel_i1(4 * pi * sn / std::sqrt(12.0));
    if (N == 8 && m == 1)
        return pi / sn * std::sin(pi * (n - 1) / 2) * std::sin(pi * (n - 1) / 4) *
               bessel_i1(pi * sn / 2);
    if (N == 8 && m == 8)
        return pi / sn * (1 + std::sqrt(2.0) * std::sin(pi * n / 2) * std::sin(pi * n / 4)) *
               bessel_i1(pi * std::sqrt(2.0 * n));
    if (N == 21 && m == 1)
        return 2 * pi / std::sqrt(21.0 * n) * a_closed(21, n, 1) / std::sqrt(21.0) *
               bessel_i1(4 * pi * sn / 21);
    throw std::invalid_argument("main_term: unsupported (N, m)");
}

// the stated error-term bound expressions, evaluated verbatim for display
inline double error_bound(long N, long m, long n) {
    const double pi = std::numbers::pi;
    double sn = std::sqrt(double(n)), n14 = std::pow(double(n), 0.25);
    if (N == 12 && m == 1)
        return 8 * std::pow(pi, 1.5) * std::log(pi * sn / 3) / (3 * n14) * bessel_i1(pi * sn / 6);
    if (N == 12 && m == 12)
        return 16 * std::sqrt(pi) * std::pow(12.0 * n, 0.25) *
               std::log(4 * pi * sn / std::sqrt(12.0)) * bessel_i1(2 * pi * sn / std::sqrt(12.0));
    if (N == 8 && m == 1)
        return 2 * std::sqrt(pi) * std::log(pi * sn / 2) / n14 * bessel_i1(pi * sn / 4);
    if (N == 8 && m == 8)
        return std::pow(2.0, 0.25) * std::sqrt(pi) * std::log(pi * std::sqrt(2.0 * n)) / n14 *
               bessel_i1(pi * sn / std::sqrt(2.0));
    if (N == 21 && m == 1)
        return 4 * std::pow(pi, 1.5) * std::log(4 * pi * sn / 21) / (21 * n14) *
               bessel_i1(2 * pi * sn / 21);
    throw std::invalid_argument("error_bound: unsupported (N, m)");
}

// comparison row: exact coefficient (never recomputed here), main term,
// relative error and the displayed error-bound value
struct AsymptRow {
    long n = 0;
    Rat exact;
    double main = 0;
    double rel_err = 0;
    double bound = 0;
};

inline std::vector<AsymptRow> asympt_report(const WHForm& f, long from, long to) {
    if (from < 1 || to < from) throw std::invalid_argument("asympt_report: bad range");
    if (Rat(to) >= f.coeffs.prec()) throw std::invalid_argument("asympt_report: range beyond form precision");
    std::vector<AsymptRow> out;
    for (long n = from; n <= to; ++n) {
        AsymptRow r;
        r.n = n;
        r.exact = f.coeffs.coeff(Rat(n));
        r.main = main_term(f.N, f.m, n);
        double ex = r.exact.get_d();
        r.rel_err = ex == 0.0 ? std::abs(r.main) : std::abs(r.main - ex) / std::abs(ex);
        r.bound = error_bound(f.N, f.m, n);
        out.push_back(r);
    }
    return out;
}

struct PositivityReport {
    bool ok = true;
    long witness = -1;   // first n with a negative coefficient, if any
    Rat min_value;
    long min_at = 0;
};

inline PositivityReport positivity_scan(const WHForm& f, long n_max) {
    if (Rat(n_max) >= f.coeffs.prec()) throw std::invalid_argument("positivity_scan: range beyond form precision");
    PositivityReport rep;
    rep.min_value = f.coeffs.coeff(Rat(0));
    for (long n = 0; n <= n_max; ++n) {
        Rat c = f.coeffs.coeff(Rat(n));
        if (c < rep.min_value) { rep.min_value = c; rep.min_at = n; }
        if (c < 0 && rep.ok) { rep.ok = false; rep.witness = n; }
    }
    return rep;
}

}  // namespace hmf

#endif
