#pragma once

#include <map>
#include <vector>

#include "n2coset/arith.hpp"
#include "n2coset/errors.hpp"

namespace n2coset {

struct Monomial {
    Int coeff{1};
    Rational z_exp{0};
    Rational q_exp{0};
};

/* Truncated bivariate Puiseux series in q and z.
 *
 * Exponents live on the lattices (1/Dq)Z and (1/Dz)Z and are stored scaled
 * as integer keys (exponent * D).  Coefficients are exact big integers.
 * The truncation window is [q_offset, q_order], inclusive at the top:
 * coefficients with q-exponent <= q_order are reliable, anything above is
 * unknown.  Binary operations merge lattices by lcm and record the tightest
 * valid truncation bound for the result.  Zero coefficients are never
 * stored; the zero series is an empty table with an explicit window.
 */
class Series2 {
  public:
    using ZLevel = std::map<long, Int>;          // scaled z-exponent -> coeff
    using Table = std::map<long, ZLevel>;        // scaled q-exponent -> level

    Series2() = default;

    static Series2 zero(const Rational& order, const Rational& offset = Rational(0));
    static Series2 one(const Rational& order);
    static Series2 monomial(const Monomial& m, const Rational& order);

    long dz() const { return dz_; }
    long dq() const { return dq_; }
    const Rational& q_order() const { return q_order_; }
    const Rational& q_offset() const { return q_offset_; }
    const Table& table() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    std::size_t term_count() const;

    /* Rescale exponent lattices to multiples of the current ones. */
    void ensure_lattice(long dz, long dq);

    /* Add c * z^ze * q^qe; drops the term if qe lies above q_order and
     * extends q_offset downward if needed. */
    void add_term(const Rational& qe, const Rational& ze, const Int& c);

    Int coeff(const Rational& qe, const Rational& ze) const;

    /* Lowest stored q-exponent (q_offset for the zero series). */
    Rational min_q_exponent() const;
    /* Pull q_offset up to the actual lowest stored exponent.  Producers call
     * this after interior cancellations so later truncation bookkeeping works
     * with the tightest support bound. */
    void tighten_offset();
    /* Largest |z-exponent| appearing anywhere (0 for the zero series). */
    Rational max_abs_z_exponent() const;

    std::vector<Monomial> monomials() const;

    Series2 truncated(const Rational& new_order) const;
    /* Drop all terms with |z-exponent| > w; window metadata unchanged. */
    Series2 z_windowed(const Rational& w) const;
    /* this * (c * z^ze * q^qe); the truncation window shifts by qe. */
    Series2 shifted(const Int& c, const Rational& ze, const Rational& qe) const;
    Series2 negated() const;

    friend Series2 add(const Series2& a, const Series2& b);
    friend Series2 sub(const Series2& a, const Series2& b);
    friend Series2 mul(const Series2& a, const Series2& b);

    Series2& operator+=(const Series2& b);
    Series2& operator-=(const Series2& b);

  private:
    long dz_ = 1;
    long dq_ = 1;
    Rational q_offset_{0};
    Rational q_order_{0};
    Table t_;

    void set_window(const Rational& offset, const Rational& order);
    friend class SeriesBuilder;
};

Series2 add(const Series2& a, const Series2& b);
Series2 sub(const Series2& a, const Series2& b);

/* Cauchy product, truncated at min(Na + offset_b, Nb + offset_a). */
Series2 mul(const Series2& a, const Series2& b);

/* Multiplicative inverse to truncation order.  The lowest q-level of the
 * input must consist of a single monomial with coefficient +-1. */
Series2 mul_inverse(const Series2& a);

/* Monomial substitution z -> (-1)^{flip} z^{+-1} q^{z_qshift}.  Each term
 * c z^a q^b maps to c (-1)^{a flip} z^{+-a} q^{b + a z_qshift}; the result
 * keeps the original q_order (terms pushed above it are dropped, terms
 * pushed below extend q_offset). */
Series2 substitute(const Series2& a, bool z_flip, const Rational& z_qshift, bool z_invert);

/* q-series of the coefficient of z^alpha (zero series if alpha is off-lattice). */
Series2 coeff_z(const Series2& a, const Rational& alpha);

/* Exact coefficient agreement for all q-exponents <= N.  False when either
 * window is too short to certify the comparison. */
bool equal_to_order(const Series2& a, const Series2& b, const Rational& N);

/* Distribution-valued character: z^{prefactor} * sum_n z^{base + n*step} * f(q)
 * with the same q-series f at every comb tooth. */
struct DeltaChar {
    Rational z_prefactor_exp{0};
    Rational z_coset_base{0};
    Rational z_coset_step{2};
    Series2 qseries;
};

}  // namespace n2coset
