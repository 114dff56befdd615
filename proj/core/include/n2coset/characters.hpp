#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "n2coset/catalog.hpp"
#include "n2coset/series.hpp"
#include "n2coset/special_functions.hpp"

namespace n2coset {

/* Annulus of convergence in the Jacobi variable for 1/theta_1 expansions:
 * inner means |q| < |w^2| < 1, outer means 1 < |w^2| < |q|^{-1}. */
enum class AnnulusRegime { InnerAnnulus, OuterAnnulus };

/* Ordinary truncated series or a delta-comb distribution (relaxed sl2
 * characters are the latter). */
struct CharKind {
    std::variant<Series2, DeltaChar> body;

    bool is_delta() const { return std::holds_alternative<DeltaChar>(body); }
    const Series2& series() const { return std::get<Series2>(body); }
    const DeltaChar& delta() const { return std::get<DeltaChar>(body); }
};

enum class CharMethod { ResidueEG, AppellLerch, Resolution, Typical, SpectralFlowTransport };

/* Ghost character theta_3/eta (i even) or theta_2/eta (i odd); the
 * supercharacters use theta_4 resp. i*theta_1 with a sign flip for the
 * parity-reversed sectors i = 2, 3. */
Series2 char_ghost(long i, bool super, const Rational& N);

/* Fock character y^p q^{p^2/4t} / eta, with y stored in the z slot. */
Series2 char_fock(const Rational& p, const Rational& t, const Rational& N);

/* sl2 minimal-model characters.  L-family labels require the inner
 * annulus, D+ the outer, D- the inner (it is the conjugate of D+).
 * Relaxed families come back as delta-comb distributions.  w_window caps
 * |w-exponent| of the returned series (the grade-0 D ladders are infinite). */
CharKind char_sl2(const MinimalModel& m, const ModuleLabel& label, AnnulusRegime regime, const Rational& N,
                  long w_window);

/* N=2 minimal-model (super)characters by the requested derivation route. */
Series2 char_n2(const MinimalModel& m, const ModuleLabel& label, CharMethod method, bool super,
                const Rational& N);

/* Resolution-method character on an explicit z-window: complete to order N
 * for all z-exponents with |z| <= z_window (the alternating resolution only
 * converges columnwise). */
Series2 char_n2_resolution(const MinimalModel& m, const ModuleLabel& label, bool super, const Rational& N,
                           const Rational& z_window);

/* z^{c l/3} q^{c l^2/6} ch(z q^l; q) with l = ell_half/2, re-truncated to N.
 * The caller is responsible for supplying enough input order for the shifted
 * window to be complete. */
Series2 sflow_transform(const Series2& ch, const Rational& c, long ell_half, const Rational& N);

/* z-support bound of the character read off the convergent Appell-Lerch
 * route; used to pick the resolution window. */
Rational al_support_window(const MinimalModel& m, const ModuleLabel& label, bool super, const Rational& N);

struct Discrepancy {
    std::string where;
    Rational q_exp{0};
    Rational z_exp{0};
    std::string expected;
    std::string got;
};

struct CheckReport {
    std::string check;
    std::string labels;
    Rational q_order{0};
    bool pass = true;
    std::vector<std::string> notes;
    std::optional<Discrepancy> first_discrepancy;
};

/* Record the first coefficient mismatch of got vs expected below order N. */
bool compare_series(const std::string& where, const Series2& expected, const Series2& got, const Rational& N,
                    CheckReport& report);

/* Branching oracle: expands ch[sl2](y z^{1/t}; q) * (s)ch[ghost_i](y^2 z^{-k/t}; q)
 * as a trivariate series, extracts each Fock sector y^p with |p| <= y_window,
 * divides by the Fock character and compares against the dictionary label's
 * N=2 (super)character, exactly to order N. */
CheckReport branch_verify(const MinimalModel& m, const ModuleLabel& sl2_label, long i, bool super,
                          const Rational& N, long y_window);

/* Character additivity over the short exact sequences of the atypical
 * standard modules: standard (typical-formula) character == sum of the
 * composition factors' characters. */
CheckReport ses_char_check(const MinimalModel& m, const ModuleLabel& e_label, const Rational& N);

struct MagicSample {
    std::complex<double> q;
    std::complex<double> a;
    std::complex<double> b;
};

/* Numerical verification of the theta-quotient partial-fraction identities
 * (plain form for |q| < |a| < 1, primed form for 1 < |a| < |q|^{-1}; the
 * form is selected per sample from |a|).  Sums truncated at +-truncation. */
CheckReport magic_check(const std::vector<MagicSample>& samples, long truncation, double tol);

/* Thread cap from N2COSET_THREADS (defaults to hardware concurrency). */
unsigned verification_threads();

}  // namespace n2coset
