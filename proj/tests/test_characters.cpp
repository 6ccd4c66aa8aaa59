#include <catch2/catch_amalgamated.hpp>

#include "hmf/characters.hpp"
#include "hmf/eta.hpp"

using namespace hmf;

namespace {
// Euler-criterion oracle for odd primes
int legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}
}  // namespace

TEST_CASE("Kronecker symbol vs Euler criterion") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
        for (long a = -30; a <= 30; ++a)
            CHECK(kronecker(a, p) == legendre(a, p));
}

TEST_CASE("Kronecker special values") {
    // second supplement: (2/n) for odd n
    for (long n = 1; n < 50; n += 2) {
        long m = n % 8;
        int expect = (m == 1 || m == 7) ? 1 : -1;
        CHECK(kronecker(2, n) == expect);
    }
    CHECK(kronecker(-1, -1) == -1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(4, 2) == 0);
    CHECK(kronecker(21, 2) == -1);  // 21 = 5 mod 8
    // complete multiplicativity in the top argument
    for (long n : {9L, 15L, 35L})
        for (long a = -10; a <= 10; ++a)
            for (long b = -10; b <= 10; ++b)
                CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
}

TEST_CASE("chi_D values and periodicity") {
    auto c12 = chi_D(12);
    CHECK(c12(1) == 1);
    CHECK(c12(5) == -1);
    CHECK(c12(7) == -1);
    CHECK(c12(11) == 1);
    CHECK(c12(13) == 1);
    CHECK(c12(-1) == 1);
    auto c8 = chi_D(8);
    CHECK(c8(1) == 1);
    CHECK(c8(3) == -1);
    CHECK(c8(5) == -1);
    CHECK(c8(7) == 1);
    CHECK_THROWS(chi_D(20));
}

TEST_CASE("local components multiply to chi_D") {
    for (long N : {8L, 12L, 17L, 21L}) {
        auto comp = local_components(N);
        auto cD = chi_D(N);
        for (long n = -2 * N; n <= 2 * N; ++n) {
            int prod = 1;
            for (auto& [p, chi] : comp) prod *= chi(n);
            CHECK(prod == cD(n));
        }
    }
    auto comp12 = local_components(12);
    CHECK(comp12.at(2)(11) == -1);
    auto comp8 = local_components(8);
    CHECK(comp8.at(2)(7) == 1);
}

TEST_CASE("epsilon vectors") {
    auto [e12, es12] = epsilon_vectors(12);
    CHECK(e12.at(2) == -1);
    CHECK(e12.at(3) == -1);
    CHECK(es12.at(2) == 1);
    CHECK(es12.at(3) == 1);
    auto [e8, es8] = epsilon_vectors(8);
    CHECK(e8.at(2) == 1);
    auto [e21, es21] = epsilon_vectors(21);
    CHECK(e21.at(3) == -1);
    CHECK(e21.at(7) == -1);
    // eps*_p = 1 for all fundamental 1 < N <= 21
    for (long N : {5L, 8L, 12L, 13L, 17L, 21L}) {
        auto [e, es] = epsilon_vectors(N);
        for (int s : es.sign) CHECK(s == 1);
    }
}

TEST_CASE("delta condition") {
    auto [e12, es12] = epsilon_vectors(12);
    CHECK(delta_condition_ok(Int(-1), e12, 12));
    CHECK_FALSE(delta_condition_ok(Int(1), e12, 12));
    CHECK(delta_condition_ok(Int(6), e12, 12));   // gcd > 1 always allowed
    CHECK(delta_condition_ok(Int(4), e12, 12));
    // epsilon* keeps exactly n = 1 mod 12 among units
    for (long n = 1; n <= 24; ++n) {
        if (gcd_long(n, 12) != 1) continue;
        CHECK(delta_condition_ok(Int(n), es12, 12) == (n % 12 == 1));
    }
}

TEST_CASE("Bernoulli numbers") {
    auto B = bernoulli_upto(12);
    CHECK(B[0] == 1);
    CHECK(B[1] == make_rat(-1, 2));
    CHECK(B[2] == make_rat(1, 6));
    CHECK(B[3] == 0);
    CHECK(B[4] == make_rat(-1, 30));
    CHECK(B[6] == make_rat(1, 42));
    CHECK(B[8] == make_rat(-1, 30));
    CHECK(B[10] == make_rat(5, 66));
    CHECK(B[12] == make_rat(-691, 2730));
}

TEST_CASE("generalized Bernoulli numbers") {
    CHECK(gen_bernoulli(2, DirichletChar::trivial(1)) == make_rat(1, 6));
    CHECK(gen_bernoulli(1, DirichletChar::from_disc(-4)) == make_rat(-1, 2));
    CHECK(gen_bernoulli(1, DirichletChar::from_disc(-3)) == make_rat(-1, 3));
    // B_{2,chi_5}: chi = (5/.), known value 4/5
    CHECK(gen_bernoulli(2, DirichletChar::from_disc(5)) == make_rat(4, 5));
    // B_{2,chi_8} = 3/2 (L(-1, chi_8) = -3/4... check internal consistency
    // against a lattice-sum identity instead): sum over one period
    // chi(a)(a^2/f - a + f/6) equals B_{2,chi}
    for (long d : {8L, 12L, -4L, -3L, 5L}) {
        auto chi = DirichletChar::from_disc(d);
        long f = chi.modulus();
        Rat s(0);
        for (long a = 1; a <= f; ++a)
            s += Rat(chi(a)) * (make_rat(a * a, f) - Rat(a) + make_rat(f, 6));
        CHECK(gen_bernoulli(2, chi) == s);
    }
}

TEST_CASE("Eisenstein pair series") {
    auto triv = DirichletChar::trivial(1);
    QSeries e4 = eisenstein_pair(triv, triv, 4, Rat(30));
    CHECK(e4.coeff(0L) == make_rat(1, 240));
    // 240*E = classical E4
    CHECK(e4.scaled(Rat(240)).equals_to_prec(e4_series(Rat(30)), Rat(30)));
    // prime coefficient identity psi(p) + phi(p) p^{k-1}
    auto psi = DirichletChar::from_disc(-3), phi = DirichletChar::from_disc(-4);
    QSeries e2 = eisenstein_pair(psi, phi, 2, Rat(40));
    CHECK(e2.coeff(0L) == 0);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        CHECK(e2.coeff(p) == Rat(psi(p)) + Rat(phi(p)) * Rat(p));
    CHECK_THROWS(eisenstein_pair(psi, triv, 2, Rat(10)));  // parity mismatch
}

TEST_CASE("E2 and level-raising difference") {
    QSeries e2 = e2_series(Rat(10));
    CHECK(e2.coeff(0L) == 1);
    CHECK(e2.coeff(1L) == -24);
    CHECK(e2.coeff(2L) == -72);
    CHECK(e2.coeff(3L) == -96);
    QSeries d = e2_diff(2, Rat(10));
    CHECK(d.coeff(0L) == -1);
    CHECK(d.coeff(1L) == -24);
    CHECK(d.coeff(2L) == -72 + 2 * 24);  // -24
}

TEST_CASE("group indices") {
    CHECK(index_gamma0(12) == 24);
    CHECK(index_gamma0(8) == 12);
    CHECK(index_gamma0(21) == 32);
    CHECK(index_gamma0(17) == 18);
    CHECK(index_gamma0(1) == 1);
    CHECK(index_gamma1(17) == 288);
    CHECK(index_gamma1(12) == 96);
    CHECK(index_gamma1(8) == 48);
    CHECK(index_gamma1(21) == 384);
}

TEST_CASE("Sturm bounds") {
    CHECK(sturm_bound(index_gamma1(17), 4) == 96);
    CHECK(sturm_bound(index_gamma1(12), 2) == 16);
    CHECK(sturm_bound(index_gamma1(8), 2) == 8);
    CHECK(sturm_bound(index_gamma1(21), 6) == 192);
}

TEST_CASE("cusp dimensions against known tables") {
    auto triv = DirichletChar::trivial(1);
    CHECK(dim_cusp(11, 2, triv) == 1);
    CHECK(dim_cusp(37, 2, triv) == 2);
    CHECK(dim_cusp(1, 12, triv) == 1);
    CHECK(dim_cusp(1, 2, triv) == 0);
    CHECK(dim_cusp(8, 4, triv) == 1);   // eta(2tau)^8
    CHECK(dim_cusp(4, 6, triv) == 1);   // eta(2tau)^12
    CHECK(dim_cusp(1, 26, triv) == 1);
    // character spaces
    CHECK(dim_cusp(21, 24, chi_D(21)) == 60);
    CHECK(dim_cusp(17, 24, chi_D(17)) == 34);
    // the weight-2 chi_D spaces vanish exactly for the small fundamental
    // discriminants
    for (long N = 5; N <= 60; ++N) {
        if (!is_fundamental_discriminant(N) || N < 5) continue;
        long d = dim_cusp(N, 2, chi_D(N));
        bool expect_zero = (N == 5 || N == 8 || N == 12 || N == 13 || N == 17 || N == 21);
        CHECK((d == 0) == expect_zero);
    }
    CHECK_THROWS(dim_cusp(12, 1, chi_D(12)));
}

TEST_CASE("Eisenstein dimension for primitive characters") {
    CHECK(eisenstein_dim_primitive(12, 24) == 4);
    CHECK(eisenstein_dim_primitive(17, 24) == 2);
    CHECK(eisenstein_dim_primitive(21, 24) == 4);
    CHECK(eisenstein_dim_primitive(8, 24) == 2);
}

TEST_CASE("integrality report") {
    QSeries f(1, Rat(10));
    f.set_coeff(Rat(1), Rat(2));
    f.set_coeff(Rat(3), make_rat(1, 2));
    auto rep = integrality_check(f, 5);
    CHECK_FALSE(rep.all_integral);
    REQUIRE(rep.bad_exponents.size() == 1);
    CHECK(rep.bad_exponents[0] == 3);
    f.set_coeff(Rat(3), Rat(0));
    CHECK(integrality_check(f, 5).all_integral);
    CHECK_THROWS(integrality_check(f, 12));
}

TEST_CASE("character decompositions of chi_D") {
    for (long N : {8L, 12L, 17L, 21L}) {
        auto dec = chi_decompositions(N);
        CHECK((long)dec.size() == (1L << prime_divisors(N).size()));
        auto cD = chi_D(N);
        for (auto& [psi, phi] : dec) {
            CHECK((psi * phi) == cD);
            CHECK(psi.modulus() * phi.modulus() == N);
        }
    }
}

TEST_CASE("E^{eps*} for discriminant 12 weight 2") {
    auto [e, es] = epsilon_vectors(12);
    QSeries E = eisenstein_delta(12, 2, es, Rat(18));
    CHECK(E.coeff(0L) == 1);
    CHECK(E.coeff(1L) == -4);
    CHECK(E.coeff(4L) == -10);
    CHECK(E.coeff(6L) == -12);
    CHECK(E.coeff(9L) == -20);
    CHECK(E.coeff(10L) == -8);
    CHECK(E.coeff(12L) == -6);
    CHECK(E.coeff(13L) == -56);
    CHECK(E.coeff(16L) == -34);
    // everything else vanishes below 18
    for (long n : {2L, 3L, 5L, 7L, 8L, 11L, 14L, 15L, 17L}) CHECK(E.coeff(n) == 0);
    // and the delta-condition holds everywhere it applies
    for (long n = 1; n < 18; ++n)
        if (!delta_condition_ok(Int(n), es, 12)) CHECK(E.coeff(n) == 0);
}
