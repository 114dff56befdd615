#pragma once

#include "n2coset/series.hpp"

namespace n2coset {

/* Jacobi theta index, 1..4.  theta(1, ...) returns the real series i*theta_1
 * so that all four outputs have integer coefficients; every use downstream
 * involves theta_1 only through i*theta_1 or its reciprocal. */
struct ThetaIndex {
    int i;
};

/* Arguments of the level-n Appell-Lerch sum AL_n(x, y; base).  x and y are
 * signed monomials in z and q; base is a pure positive q-power (supports
 * q -> q^u). */
struct AppellArgs {
    long level = 1;
    Monomial x;
    Monomial y;
    Monomial base{Int(1), Rational(0), Rational(1)};
};

/* 1/eta(q) = q^{-1/24} sum p(n) q^n to order N. */
Series2 eta_inv(const Rational& N);

/* eta(q) = q^{1/24} prod (1-q^i), expanded directly (test oracle and
 * building block). */
Series2 eta(const Rational& N);

/* Sum-form theta series:
 *   theta_3 = sum_{n in Z} z^n q^{n^2/2}            theta_4: extra (-1)^n
 *   theta_2 = sum_{n in Z+1/2} z^n q^{n^2/2}        i*theta_1: extra (-1)^{n-1/2}
 */
Series2 theta(ThetaIndex idx, const Rational& N);

/* Triple-product form of the same four series (independent route). */
Series2 theta_product_form(ThetaIndex idx, const Rational& N);

/* theta with one geometric denominator absorbed:
 *   denominator (1 + eps z^{-1} q^e)  when z_inverse_dir,
 *   denominator (1 + eps z^{+1} q^e)  otherwise,
 * expanded on the side dictated by the sign of e so the quotient is a
 * genuine series (the denominator is treated as a factor of the theta
 * product).  e == 0 is admissible only for indices 1 and 2, whose products
 * carry the exceptional zero-power factor. */
Series2 theta_quotient(ThetaIndex idx, bool z_inverse_dir, const Rational& e, int eps, const Rational& N);

/* phi_l(q) = sum_{s>=0} (-1)^s q^{l s + s(s+1)/2}; negative l allowed. */
Series2 phi_ell(long ell, const Rational& N);

/* Expansion kernel of 1/prod (1-w^2 q^{i-1})(1-w^{-2} q^i) in the annulus
 * |q| < |w^2| < 1, as q^{1/12} eta^{-2} sum_l phi_l(q) w^{2l}.  The w-comb
 * is infinite at fixed q-order, so the caller supplies the w-exponent
 * window |w-exp| <= z_window. */
Series2 eg_kernel(const Rational& N, long z_window);

/* AL_n(x,y;q) via the two-quadrant expansion
 *   [sum_{i,j>=0} - sum_{i,j<=-1}] x^{i+nj} y^i q^{ij+nj^2/2},
 * with q replaced by `base` throughout.  Errors with NonTerminating when the
 * enumeration keeps producing terms at or below order N. */
Series2 appell_lerch(const AppellArgs& args, const Rational& N);

/* Irreducible Virasoro minimal-model character
 *   chi_{r,s}(q) = eta^{-1} sum_n [q^{(2uvn+vr-us)^2/4uv} - q^{(2uvn+vr+us)^2/4uv}]. */
Series2 vir_char(long u, long v, long r, long s, const Rational& N);

}  // namespace n2coset
