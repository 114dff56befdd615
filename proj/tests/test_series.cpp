#include <doctest.h>

#include "n2coset/io.hpp"
#include "n2coset/series.hpp"
#include "oracles.hpp"

using namespace n2coset;

namespace {

Series2 poly(std::initializer_list<Monomial> ms, long order = 10) {
    Series2 s = Series2::zero(Rational(order));
    for (const auto& m : ms) s.add_term(m.q_exp, m.z_exp, m.coeff);
    return s;
}

}  // namespace

TEST_CASE("polynomial addition and additive identity") {
    Series2 a = poly({{Int(1), 0, 0}, {Int(1), 0, 1}});            // 1 + q
    Series2 b = poly({{Int(1), 0, 1}, {Int(-1), 0, 2}});           // q - q^2
    Series2 sum = add(a, b);
    CHECK(sum.coeff(Rational(0), Rational(0)) == 1);
    CHECK(sum.coeff(Rational(1), Rational(0)) == 2);
    CHECK(sum.coeff(Rational(2), Rational(0)) == -1);
    CHECK(equal_to_order(add(a, Series2::zero(Rational(10))), a, Rational(10)));
}

TEST_CASE("lattice merge on addition") {
    Series2 a = poly({{Int(1), rat(1, 1), rat(1, 2)}});   // z q^{1/2}
    Series2 b = poly({{Int(1), rat(-1, 1), rat(1, 3)}});  // z^{-1} q^{1/3}
    Series2 sum = add(a, b);
    CHECK(sum.dq() == 6);
    CHECK(sum.coeff(rat(1, 2), Rational(1)) == 1);
    CHECK(sum.coeff(rat(1, 3), Rational(-1)) == 1);
}

TEST_CASE("telescoping product (1-q) * geometric = 1") {
    Series2 one_minus_q = poly({{Int(1), 0, 0}, {Int(-1), 0, 1}}, 5);
    Series2 geo = Series2::zero(Rational(5));
    for (long n = 0; n <= 5; ++n) geo.add_term(Rational(n), Rational(0), Int(1));
    CHECK(equal_to_order(mul(one_minus_q, geo), Series2::one(Rational(5)), Rational(5)));
}

TEST_CASE("(z + 1/z)^2 = z^2 + 2 + z^-2") {
    Series2 a = poly({{Int(1), 1, 0}, {Int(1), -1, 0}});
    Series2 sq = mul(a, a);
    CHECK(sq.coeff(Rational(0), Rational(2)) == 1);
    CHECK(sq.coeff(Rational(0), Rational(0)) == 2);
    CHECK(sq.coeff(Rational(0), Rational(-2)) == 1);
    CHECK(sq.term_count() == 3);
}

TEST_CASE("mul_inverse: geometric series and the partition oracle") {
    Series2 one_minus_q = poly({{Int(1), 0, 0}, {Int(-1), 0, 1}}, 8);
    Series2 inv = mul_inverse(one_minus_q);
    for (long n = 0; n <= 8; ++n) CHECK(inv.coeff(Rational(n), Rational(0)) == 1);

    // Euler product to q^10; its inverse carries the partition numbers
    Series2 euler = Series2::one(Rational(10));
    for (long i = 1; i <= 10; ++i) {
        Series2 f = poly({{Int(1), 0, 0}, {Int(-1), 0, i}});
        euler = mul(euler, f);
    }
    Series2 ip = mul_inverse(euler);
    auto p = oracle::partitions_direct(10);
    for (long n = 0; n <= 10; ++n) CHECK(ip.coeff(Rational(n), Rational(0)) == p[n]);
    CHECK(equal_to_order(mul(euler, ip), Series2::one(Rational(10)), Rational(10)));
}

TEST_CASE("mul_inverse with a leading monomial carrying z") {
    Series2 a = poly({{Int(1), 1, rat(1, 2)}, {Int(-1), 1, rat(3, 2)}}, 6);  // z q^{1/2} (1 - q)
    Series2 inv = mul_inverse(a);
    CHECK(inv.coeff(rat(-1, 2), Rational(-1)) == 1);
    CHECK(inv.coeff(rat(1, 2), Rational(-1)) == 1);
    CHECK(equal_to_order(mul(a, inv), Series2::one(Rational(5)), Rational(5)));
}

TEST_CASE("mul_inverse rejects non-unit leading terms") {
    CHECK_THROWS_AS(mul_inverse(poly({{Int(2), 0, 0}})), MathError);
    CHECK_THROWS_AS(mul_inverse(poly({{Int(1), 1, 0}, {Int(1), -1, 0}})), MathError);
}

TEST_CASE("substitute: involutions and shifts") {
    Series2 pal = poly({{Int(1), 1, 0}, {Int(1), -1, 0}});
    CHECK(equal_to_order(substitute(pal, false, Rational(0), true), pal, Rational(10)));

    Series2 zq0 = poly({{Int(1), 1, 0}});
    Series2 shifted = substitute(zq0, false, Rational(1), false);
    CHECK(shifted.coeff(Rational(1), Rational(1)) == 1);

    oracle::Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Series2 s = oracle::random_series(rng, Rational(8));
        CHECK(equal_to_order(substitute(substitute(s, false, Rational(0), true), false, Rational(0), true), s,
                             Rational(8)));
        // sign flips need odd z-denominators
        Series2 si = oracle::random_series(rng, Rational(8), 1);
        CHECK(equal_to_order(substitute(substitute(si, true, Rational(0), false), true, Rational(0), false), si,
                             Rational(8)));
    }
}

TEST_CASE("substitute rejects sign flips on even-denominator z-exponents") {
    Series2 a = poly({{Int(1), rat(1, 2), 0}});
    CHECK_THROWS_AS(substitute(a, true, Rational(0), false), MathError);
}

TEST_CASE("coeff_z extraction and linearity") {
    Series2 a = poly({{Int(2), 1, 0}, {Int(3), 1, 1}, {Int(5), -1, 1}});
    Series2 c1 = coeff_z(a, Rational(1));
    CHECK(c1.coeff(Rational(0), Rational(0)) == 2);
    CHECK(c1.coeff(Rational(1), Rational(0)) == 3);
    CHECK(coeff_z(a, rat(1, 2)).is_zero());

    oracle::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Series2 x = oracle::random_series(rng, Rational(8));
        Series2 y = oracle::random_series(rng, Rational(8));
        Rational alpha = rat(rng.range(-3, 3), 1);
        CHECK(equal_to_order(coeff_z(add(x, y), alpha), add(coeff_z(x, alpha), coeff_z(y, alpha)),
                             Rational(8)));
    }
}

TEST_CASE("equal_to_order respects the truncation window") {
    Series2 a = poly({{Int(1), 0, 0}, {Int(1), 0, 1}}, 50);
    Series2 b = poly({{Int(1), 0, 0}, {Int(1), 0, 1}, {Int(1), 0, 40}}, 50);
    CHECK(equal_to_order(a, a, Rational(50)));
    CHECK(equal_to_order(a, b, Rational(5)));
    CHECK(!equal_to_order(a, b, Rational(45)));
    // windows shorter than the request cannot certify equality
    Series2 c = poly({{Int(1), 0, 0}}, 3);
    CHECK(!equal_to_order(c, Series2::one(Rational(10)), Rational(10)));
}

TEST_CASE("ring axioms on random sparse series") {
    oracle::Rng rng(2026);
    for (int trial = 0; trial < 15; ++trial) {
        Series2 a = oracle::random_series(rng, Rational(6));
        Series2 b = oracle::random_series(rng, Rational(6));
        Series2 c = oracle::random_series(rng, Rational(6));
        CHECK(equal_to_order(add(a, b), add(b, a), Rational(6)));
        CHECK(equal_to_order(mul(a, b), mul(b, a), Rational(6)));
        CHECK(equal_to_order(mul(mul(a, b), c), mul(a, mul(b, c)), Rational(5)));
        CHECK(equal_to_order(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), Rational(6)));
    }
}

TEST_CASE("JSON round-trip is bit-exact") {
    Series2 a = poly({{Int(3), rat(1, 2), rat(-1, 24)}, {Int(-7), rat(-3, 2), rat(5, 3)}}, 9);
    std::string j1 = series_to_json(a);
    Series2 back = series_from_json(j1);
    CHECK(series_to_json(back) == j1);
    CHECK(equal_to_order(a, back, Rational(9)));

    Int big("123456789012345678901234567890");
    Series2 b = Series2::zero(Rational(4));
    b.add_term(Rational(1), Rational(0), big);
    Series2 nb = series_from_json(series_to_json(b));
    CHECK(nb.coeff(Rational(1), Rational(0)) == big);
}

TEST_CASE("delta-comb container holds its pieces") {
    DeltaChar d;
    d.z_prefactor_exp = rat(-3, 2);
    d.qseries = poly({{Int(1), 0, 0}});
    CHECK(d.z_coset_step == 2);
    CHECK(d.qseries.coeff(Rational(0), Rational(0)) == 1);
}
