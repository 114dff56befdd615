#include <doctest.h>

#include "n2coset/special_functions.hpp"
#include "oracles.hpp"

using namespace n2coset;

TEST_CASE("eta_inv carries the partition numbers") {
    Series2 ei = eta_inv(Rational(20));
    auto p = oracle::partitions_direct(20);
    for (long n = 0; n <= 20; ++n) CHECK(ei.coeff(Rational(n) - rat(1, 24), Rational(0)) == p[n]);
    CHECK(equal_to_order(mul(eta(Rational(21)), ei), Series2::one(Rational(20)), Rational(20)));
}

TEST_CASE("eta matches the pentagonal pattern") {
    Series2 e = eta(Rational(13));
    Rational off = rat(1, 24);
    CHECK(e.coeff(off, Rational(0)) == 1);
    CHECK(e.coeff(off + 1, Rational(0)) == -1);
    CHECK(e.coeff(off + 2, Rational(0)) == -1);
    CHECK(e.coeff(off + 3, Rational(0)) == 0);
    CHECK(e.coeff(off + 5, Rational(0)) == 1);
    CHECK(e.coeff(off + 7, Rational(0)) == 1);
    CHECK(e.coeff(off + 12, Rational(0)) == -1);
}

TEST_CASE("theta leading terms") {
    Series2 t3 = theta(ThetaIndex{3}, rat(1, 2));
    CHECK(t3.coeff(Rational(0), Rational(0)) == 1);
    CHECK(t3.coeff(rat(1, 2), Rational(1)) == 1);
    CHECK(t3.coeff(rat(1, 2), Rational(-1)) == 1);
    CHECK(t3.term_count() == 3);

    Series2 t2 = theta(ThetaIndex{2}, rat(1, 4));
    CHECK(t2.coeff(rat(1, 8), rat(1, 2)) == 1);
    CHECK(t2.coeff(rat(1, 8), rat(-1, 2)) == 1);
    CHECK(t2.term_count() == 2);

    Series2 t1 = theta(ThetaIndex{1}, rat(1, 4));  // returned as i*theta_1
    CHECK(t1.coeff(rat(1, 8), rat(1, 2)) == 1);
    CHECK(t1.coeff(rat(1, 8), rat(-1, 2)) == -1);
}

TEST_CASE("theta sum form equals the triple product form") {
    for (int idx : {1, 2, 3, 4})
        CHECK(equal_to_order(theta(ThetaIndex{idx}, Rational(8)), theta_product_form(ThetaIndex{idx}, Rational(8)),
                             Rational(8)));
}

TEST_CASE("theta_3 with z -> -z gives theta_4") {
    Series2 t3 = theta(ThetaIndex{3}, Rational(8));
    Series2 flipped = substitute(t3, true, Rational(0), false);
    CHECK(equal_to_order(flipped, theta(ThetaIndex{4}, Rational(8)), Rational(8)));
}

TEST_CASE("phi_ell by direct evaluation") {
    Series2 p0 = phi_ell(0, Rational(6));
    CHECK(p0.coeff(Rational(0), Rational(0)) == 1);
    CHECK(p0.coeff(Rational(1), Rational(0)) == -1);
    CHECK(p0.coeff(Rational(3), Rational(0)) == 1);
    CHECK(p0.coeff(Rational(6), Rational(0)) == -1);
    CHECK(p0.term_count() == 4);

    Series2 p1 = phi_ell(1, Rational(3));
    CHECK(p1.coeff(Rational(0), Rational(0)) == 1);
    CHECK(p1.coeff(Rational(2), Rational(0)) == -1);
    CHECK(p1.term_count() == 2);

    for (long ell = 0; ell <= 5; ++ell)
        CHECK(phi_ell(ell, Rational(0)).coeff(Rational(0), Rational(0)) == 1);

    // negative index: the finitely many low terms cancel pairwise
    Series2 pm2 = phi_ell(-2, Rational(6));
    CHECK(pm2.min_q_exponent() == 2);
    CHECK(pm2.coeff(Rational(2), Rational(0)) == 1);
    CHECK(pm2.coeff(Rational(5), Rational(0)) == -1);
}

namespace {

/* prod_{i>=1} (1 - w^2 q^{i-1}) (1 - w^{-2} q^i) expanded directly. */
Series2 kernel_product(const Rational& N, long factors) {
    Series2 acc = Series2::one(N);
    for (long i = 1; i <= factors; ++i) {
        Series2 f = Series2::one(N);
        f.add_term(Rational(i - 1), Rational(2), Int(-1));
        acc = mul(acc, f);
        Series2 g = Series2::one(N);
        g.add_term(Rational(i), Rational(-2), Int(-1));
        acc = mul(acc, g);
    }
    return acc;
}

}  // namespace

TEST_CASE("eg_kernel inverts its defining product") {
    Rational N(8);
    long w = 40;
    Series2 K = eg_kernel(N, w);
    Series2 P = kernel_product(N, 10);
    Series2 prod = mul(K, P);
    // exact on the window that survives the w-support cut
    Series2 window = prod.z_windowed(Rational(10));
    CHECK(equal_to_order(window, Series2::one(N), N));
}

TEST_CASE("eg_kernel invariance under w^2 -> q w^{-2}") {
    // the substitution shifts q by half the w-exponent, so feed it extra
    // order to keep the compared window complete
    Rational N(6);
    Series2 K = eg_kernel(N, 48);
    Series2 Ksub = substitute(eg_kernel(Rational(12), 48), false, rat(1, 2), true);
    CHECK(equal_to_order(K.z_windowed(Rational(8)), Ksub.truncated(N).z_windowed(Rational(8)), N));
}

TEST_CASE("appell_lerch: q^0 row is the geometric sum in xy") {
    // n = 2, x and y q-free: only j = 0 contributes at q^0
    AppellArgs args;
    args.level = 2;
    args.x = Monomial{Int(1), Rational(1), Rational(0)};
    args.y = Monomial{Int(1), Rational(1), Rational(0)};
    args.base = Monomial{Int(1), Rational(0), Rational(2)};
    CHECK_THROWS_AS(appell_lerch(args, Rational(4)), MathError);  // flat growth at j = 0

    args.x = Monomial{Int(1), Rational(1), rat(1, 2)};
    args.y = Monomial{Int(-1), Rational(-1), rat(1, 2)};
    Series2 al = appell_lerch(args, Rational(4));
    // j = 0 row: sum_i (xy)^i = sum_i (-1)^i q^i
    for (long i = 0; i <= 4; ++i) CHECK(al.coeff(Rational(i), Rational(0)) == ((i % 2 == 0) ? 1 : -1));
}

TEST_CASE("appell_lerch: the (-1,-1) corner term sits at the stated exponent") {
    // term -x^{i+nj} y^i q^{ij + n j^2/2} at (i,j) = (-1,-1), n = 2:
    // -x^{-3} y^{-1} base^{2} = -q^{-9/2} z^{-1} q^{1} q^{2} = -z^{-1} q^{-3/2}
    AppellArgs args;
    args.level = 2;
    args.x = Monomial{Int(1), Rational(0), rat(3, 2)};
    args.y = Monomial{Int(1), Rational(1), rat(-1, 1)};
    args.base = Monomial{Int(1), Rational(0), Rational(1)};
    Series2 al = appell_lerch(args, Rational(0));
    CHECK(al.coeff(rat(-3, 2), Rational(-1)) == -1);
}

TEST_CASE("vir_char: the c = 0 vacuum is trivial") {
    Series2 v = vir_char(3, 2, 1, 1, Rational(8));
    CHECK(equal_to_order(v, Series2::one(Rational(8)), Rational(8)));
}

TEST_CASE("vir_char: Ising vacuum against the free-fermion oracle") {
    Series2 v = vir_char(4, 3, 1, 1, Rational(10));
    Series2 ff = oracle::ising_vacuum_char(Rational(10));
    CHECK(equal_to_order(v, ff, Rational(10)));
    // spot values: 1 + q^2 + q^3 + 2 q^4 + ... relative to the leading exponent
    Rational lead = v.min_q_exponent();
    CHECK(v.coeff(lead, Rational(0)) == 1);
    CHECK(v.coeff(lead + 1, Rational(0)) == 0);
    CHECK(v.coeff(lead + 2, Rational(0)) == 1);
    CHECK(v.coeff(lead + 3, Rational(0)) == 1);
}

TEST_CASE("vir_char leading exponent and positivity") {
    const long cases[][4] = {{3, 2, 1, 1}, {4, 3, 1, 2}, {5, 2, 2, 1}, {5, 3, 3, 1}, {7, 2, 4, 1}};
    for (const auto& c : cases) {
        long u = c[0], v = c[1], r = c[2], s = c[3];
        Series2 chi = vir_char(u, v, r, s, Rational(6));
        Rational delta = rat((v * r - u * s) * (v * r - u * s) - (v - u) * (v - u), 4 * u * v);
        Rational cvir = Rational(1) - rat(6 * (u - v) * (u - v), u * v);
        CHECK(chi.min_q_exponent() == delta - cvir / 24);
        for (const auto& mo : chi.monomials()) CHECK(mo.coeff > 0);
    }
    CHECK_THROWS_AS(vir_char(4, 2, 1, 1, Rational(4)), MathError);  // gcd != 1
    CHECK_THROWS_AS(vir_char(3, 2, 3, 1, Rational(4)), MathError);  // r out of range
}
