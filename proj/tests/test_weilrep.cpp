#include <catch2/catch_amalgamated.hpp>

#include "hmf/weilrep.hpp"

using namespace hmf;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<Int>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_poly(8) == std::vector<Int>{1, 0, 0, 0, 1});
    CHECK(Cyc::deg(21) == 12);
    CHECK(Cyc::deg(17) == 16);
}

TEST_CASE("exact roots of unity") {
    long n = 12;
    CHECK(Cyc::e(make_rat(1, 2), n) == Cyc::from_rat(Rat(-1), n));
    CHECK(Cyc::e(Rat(0), n) == Cyc::from_rat(Rat(1), n));
    CHECK(Cyc::e(Rat(1), n) == Cyc::from_rat(Rat(1), n));
    // e(1/3) + e(2/3) = -1
    Cyc s = Cyc::e(make_rat(1, 3), n) + Cyc::e(make_rat(2, 3), n);
    CHECK(s == Cyc::from_rat(Rat(-1), n));
    // sum of all 12th roots = 0
    Cyc t(n);
    for (long k = 0; k < 12; ++k) t = t + Cyc::e(make_rat(k, 12), n);
    CHECK(t.is_zero());
    // multiplication adds angles; conjugation inverts
    Cyc a = Cyc::e(make_rat(5, 12), n);
    CHECK(a * a.conj() == Cyc::from_rat(Rat(1), n));
    CHECK(a * Cyc::e(make_rat(7, 12), n) == Cyc::from_rat(Rat(1), n));
    CHECK_THROWS(Cyc::e(make_rat(1, 5), 12));
}

TEST_CASE("discriminant form structure") {
    DiscForm D3 = disc_form(3);
    CHECK(D3.order() == 12);
    CHECK(D3.elements[0].is_zero());
    // gamma = 1/(2 sqrt 3): q = -1/12 = 11/12 mod 1
    CHECK(D3.qval(D3.K.dual_elem(0, 1)) == make_rat(11, 12));
    CHECK(D3.qval(D3.K.elem(0, 0)) == 0);
    DiscForm D2 = disc_form(2);
    CHECK(D2.order() == 8);
    CHECK(D2.qval(D2.K.dual_elem(0, 1)) == make_rat(7, 8));
    DiscForm D21 = disc_form(21);
    CHECK(D21.order() == 21);
    DiscForm D17 = disc_form(17);
    CHECK(D17.order() == 17);
}

TEST_CASE("quadratic form axioms on D") {
    for (long n1 : {2L, 3L, 21L}) {
        DiscForm D = disc_form(n1);
        for (long i = 0; i < D.order(); ++i) {
            const QuadElem& g = D.elements[(size_t)i];
            CHECK(D.qval(-g) == D.qval(g));
            // representative of -g has the same q
            CHECK(D.qval(D.elements[(size_t)D.neg_index(i)]) == D.qval(g));
            for (long j = 0; j < D.order(); ++j) {
                const QuadElem& d = D.elements[(size_t)j];
                Rat lhs = D.bilinear(g, d);
                Rat rhs = DiscForm::mod1(D.qval(g + d) - D.qval(g) - D.qval(d));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("Weil representation relations") {
    for (long n1 : {2L, 3L, 21L, 17L}) {
        DiscForm D = disc_form(n1);
        WeilChecks c = weil_relation_checks(D);
        CHECK(c.unitary);
        CHECK(c.s_squared);
        CHECK(c.braid);
        CHECK(c.milgram);
    }
}

TEST_CASE("rho_S zero row and rho_T diagonal") {
    DiscForm D = disc_form(3);
    CycMatrix B = rho_S_scaled(D), T = rho_T(D);
    long N = D.K.N;
    for (long j = 0; j < D.order(); ++j) {
        CHECK(B[0][(size_t)j] == Cyc::from_rat(Rat(1), N));  // gamma = 0 row, before 1/sqrt(N)
        for (long i = 0; i < D.order(); ++i)
            if (i != j) CHECK(T[(size_t)i][(size_t)j].is_zero());
        CHECK(T[(size_t)j][(size_t)j] == Cyc::e(D.qval(D.elements[(size_t)j]), N));
    }
}

TEST_CASE("support residues") {
    CHECK(support_residues(disc_form(3)) == std::set<long>{0, 2, 3, 6, 8, 11});
    CHECK(support_residues(disc_form(2)) == std::set<long>{0, 1, 2, 4, 6, 7});
    // N=21: 21*q = -b^2 mod 21 over b/sqrt(21): residues -QR(21)
    std::set<long> s21;
    for (long b = 0; b < 21; ++b) s21.insert(((-b * b) % 21 + 21) % 21);
    CHECK(support_residues(disc_form(21)) == s21);
}

TEST_CASE("component collection") {
    DiscForm D = disc_form(3);
    QSeries f(1, Rat(30));
    for (long n = -1; n < 30; ++n) f.set_coeff(Rat(n), Rat(n + 100));
    // beta = 1/(2 sqrt 3): N q(beta) = 11 mod 12
    QSeries c = collect_component(f, D, D.K.dual_elem(0, 1));
    CHECK(c.coeff(make_rat(-1, 12)) == 99);
    CHECK(c.coeff(make_rat(11, 12)) == 111);
    CHECK(c.coeff(make_rat(23, 12)) == 123);
    CHECK(c.coeff(make_rat(12, 12)) == 0);
    // beta = 0 component has integer exponents only
    QSeries c0 = collect_component(f, D, D.K.elem(0, 0));
    for (auto& [e, v] : c0.coeffs()) CHECK(is_integer(e));
    CHECK(c0.coeff(Rat(0)) == 100);
    CHECK(c0.coeff(Rat(1)) == 112);
}
