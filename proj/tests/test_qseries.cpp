#include <catch2/catch_amalgamated.hpp>

#include "hmf/qseries.hpp"

using namespace hmf;

TEST_CASE("rational helpers") {
    CHECK(rat_str(make_rat(6, 4)) == "3/2");
    CHECK(rat_str(make_rat(-8, 2)) == "-4");
    CHECK(rat_parse("3/2") == make_rat(3, 2));
    CHECK(rat_parse("-7") == Rat(-7));
    CHECK(floor_rat(make_rat(-3, 2)) == -2);
    CHECK(ceil_rat(make_rat(-3, 2)) == -1);
    CHECK(pow_rat(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK(omega(Int(12)) == 2);
    CHECK(omega(Int(1)) == 0);
    CHECK(omega(Int(-30)) == 3);
}

TEST_CASE("coefficients beyond precision are unknown") {
    QSeries s(1, Rat(5));
    s.set_coeff(Rat(2), Rat(3));
    CHECK(s.coeff(2L) == 3);
    CHECK(s.coeff(4L) == 0);
    CHECK_THROWS_AS(s.coeff(5L), std::out_of_range);
    CHECK_THROWS_AS(s.coeff(7L), std::out_of_range);
}

TEST_CASE("grid enforcement") {
    QSeries s(3, Rat(10));
    s.set_coeff(make_rat(1, 3), Rat(1));
    CHECK_THROWS_AS(s.set_coeff(make_rat(1, 2), Rat(1)), std::invalid_argument);
}

TEST_CASE("product precision propagation") {
    // a = q^-2 + ..., prec 5; b = q^3 + ..., prec 7
    QSeries a(1, Rat(5)), b(1, Rat(7));
    a.set_coeff(Rat(-2), Rat(1));
    b.set_coeff(Rat(3), Rat(1));
    QSeries p = a * b;
    // complete below min(5 + 3, 7 + (-2)) = 5
    CHECK(p.prec() == Rat(5));
    CHECK(p.coeff(1L) == 1);
}

TEST_CASE("geometric series inverse") {
    // (1 - q)^-1 = 1 + q + q^2 + ...
    QSeries s(1, Rat(20));
    s.set_coeff(Rat(0), Rat(1));
    s.set_coeff(Rat(1), Rat(-1));
    QSeries inv = s.inverse();
    for (long n = 0; n < 19; ++n) CHECK(inv.coeff(n) == 1);
    CHECK((s * inv).equals_to_prec(QSeries::one(), Rat(19)));
}

TEST_CASE("inverse with negative valuation") {
    // (q^-1 + 1)^-1 = q - q^2 + q^3 - ...
    QSeries s(1, Rat(10));
    s.set_coeff(Rat(-1), Rat(1));
    s.set_coeff(Rat(0), Rat(1));
    QSeries inv = s.inverse();
    CHECK(inv.coeff(1L) == 1);
    CHECK(inv.coeff(2L) == -1);
    CHECK(inv.coeff(3L) == 1);
    CHECK((s * inv).coeff(0L) == 1);
    CHECK((s * inv).coeff(5L) == 0);
}

TEST_CASE("pow against repeated multiplication") {
    QSeries s(2, Rat(8));
    s.set_coeff(make_rat(1, 2), Rat(2));
    s.set_coeff(Rat(1), Rat(-3));
    s.set_coeff(Rat(2), make_rat(1, 5));
    QSeries p5 = s.pow(5);
    QSeries m = s;
    for (int i = 1; i < 5; ++i) m = m * s;
    CHECK(p5.equals_to_prec(m, m.prec()));
    CHECK(p5.prec() == m.prec());
}

TEST_CASE("pow with negative exponent round-trips") {
    QSeries s(1, Rat(15));
    s.set_coeff(Rat(0), Rat(1));
    s.set_coeff(Rat(1), Rat(7));
    s.set_coeff(Rat(3), Rat(-2));
    QSeries r = s.pow(3) * s.pow(-3);
    CHECK(r.coeff(0L) == 1);
    for (long n = 1; n < 10; ++n) CHECK(r.coeff(n) == 0);
}

TEST_CASE("rescale and shift") {
    QSeries s(2, Rat(4));
    s.set_coeff(make_rat(1, 2), Rat(5));
    s.set_coeff(Rat(1), Rat(-1));
    QSeries r = s.rescaled(3);
    CHECK(r.coeff(make_rat(3, 2)) == 5);
    CHECK(r.coeff(Rat(3)) == -1);
    CHECK(r.prec() == Rat(12));
    QSeries sh = s.shifted(make_rat(-1, 2));
    CHECK(sh.coeff(Rat(0)) == 5);
    CHECK(sh.coeff(make_rat(1, 2)) == -1);
    CHECK(sh.prec() == make_rat(7, 2));
}

TEST_CASE("associativity and distributivity spot checks") {
    QSeries a(1, Rat(12)), b(1, Rat(12)), c(1, Rat(12));
    a.set_coeff(Rat(-1), Rat(2));
    a.set_coeff(Rat(2), Rat(1));
    b.set_coeff(Rat(0), Rat(3));
    b.set_coeff(Rat(1), Rat(-1));
    c.set_coeff(Rat(1), make_rat(1, 2));
    c.set_coeff(Rat(4), Rat(9));
    QSeries lhs = (a * b) * c, rhs = a * (b * c);
    CHECK(lhs.equals_to_prec(rhs, std::min(lhs.prec(), rhs.prec())));
    QSeries d1 = a * (b + c), d2 = a * b + a * c;
    CHECK(d1.equals_to_prec(d2, std::min(d1.prec(), d2.prec())));
}
