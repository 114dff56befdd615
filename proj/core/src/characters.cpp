#include "n2coset/characters.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace n2coset {

namespace {

/* Theta index and sign conventions shared by every character formula:
 * characters use theta_3 (NS) / theta_2 (R), supercharacters theta_4 (NS) /
 * i*theta_1 (R) with geometric denominators flipped, and the parity-reversed
 * sectors i = 2, 3 negate the supercharacter only. */
struct ThetaChoice {
    int idx;
    int eps;   // sign inside the geometric denominators
    int sign;  // global sign
};

ThetaChoice theta_choice(long i, bool super) {
    ThetaChoice c;
    bool ramond = (imod(i, 4) % 2) == 1;
    if (!super) {
        c.idx = ramond ? 2 : 3;
        c.eps = +1;
        c.sign = +1;
    } else {
        c.idx = ramond ? 1 : 4;
        c.eps = -1;
        c.sign = imod(i, 4) >= 2 ? -1 : +1;
    }
    return c;
}

/* Sign convention for the coset (super)characters.  The Ramond supercharacter
 * inherits an extra minus sign from the ghost residue: i theta_1 contributes
 * (-1)^{n-1/2} on x^n and the momentum extraction sets n = -a.  Pinned by the
 * branching oracle. */
ThetaChoice n2_theta_choice(long i, bool super) {
    ThetaChoice c = theta_choice(i, super);
    if (super && (imod(i, 4) % 2) == 1) c.sign = -c.sign;
    return c;
}

Series2 eta_inv_pow(const Rational& N, int pow) {
    Series2 ei = eta_inv(N);
    Series2 acc = ei;
    for (int k = 1; k < pow; ++k) acc = mul(acc, ei);
    return acc;
}

/* One geometric row of a theta-quotient sum: prefix_q * theta / (1 + eps z^{dir} q^{e}),
 * expanded on the side dictated by the sign of e. */
struct AlRow {
    Rational prefix_q;
    Rational e;
    bool z_inverse_dir;
    int sign;
};

Series2 al_theta_rows(int idx, int eps, const std::vector<AlRow>& rows, const Rational& N) {
    Series2 geom = Series2::zero(N);
    Series2 special = Series2::zero(N);
    bool have_geom = false;
    for (const auto& row : rows) {
        if (row.prefix_q > N) continue;
        if (row.e == 0) {
            Series2 q0 = theta_quotient(ThetaIndex{idx}, row.z_inverse_dir, Rational(0), eps, N - row.prefix_q);
            Series2 sh = q0.shifted(Int(row.sign), Rational(0), row.prefix_q);
            special += sh;
            continue;
        }
        have_geom = true;
        long zdir = row.z_inverse_dir ? -1 : +1;
        if (row.e > 0) {
            for (long s = 0; row.prefix_q + Rational(s) * row.e <= N; ++s) {
                Int c((s % 2 == 0) ? row.sign : -eps * row.sign);
                geom.add_term(row.prefix_q + Rational(s) * row.e, rat(zdir * s, 1), c);
            }
        } else {
            Rational ae = -row.e;
            for (long s = 1; row.prefix_q + Rational(s) * ae <= N; ++s) {
                Int c((s % 2 == 0) ? -row.sign : eps * row.sign);
                geom.add_term(row.prefix_q + Rational(s) * ae, rat(-zdir * s, 1), c);
            }
        }
    }
    Series2 out = have_geom ? mul(theta(ThetaIndex{idx}, N), geom) : Series2::zero(N);
    out += special;
    return out;
}

/* Atypical L-family rows at arbitrary momentum (unitary included, v = 1). */
Series2 al_char_L(const MinimalModel& m, long i, const Rational& p, long r, bool super, const Rational& N) {
    ThetaChoice tc = n2_theta_choice(i, super);
    long u = m.u, v = m.v;
    Rational E0 = rat(v, 4 * u) * (Rational(r) * r - p * p);
    Rational Nrows = N - std::min(E0, Rational(0)) + 1;
    std::vector<AlRow> rows;
    for (long dir : {+1, -1}) {
        for (long j = (dir > 0 ? 0 : -1);; j += dir) {
            Rational prefix = rat(v, 1) * Rational(j) * (Rational(u) * j + r);
            if (prefix > Nrows) break;
            rows.push_back({prefix, (p + r) / 2 + Rational(u) * j, true, +1});
            rows.push_back({prefix, (p - r) / 2 - Rational(u) * j, true, -1});
        }
    }
    Series2 body = al_theta_rows(tc.idx, tc.eps, rows, Nrows);
    body = mul(body, eta_inv_pow(Nrows, 3));
    return body.shifted(Int(tc.sign), p / m.t(), E0).truncated(N);
}

/* D+-family rows (v >= 2). */
Series2 al_char_D(const MinimalModel& m, long i, const Rational& p, long r, long s, bool super,
                  const Rational& N) {
    ThetaChoice tc = n2_theta_choice(i, super);
    long u = m.u, v = m.v;
    Rational t = m.t();
    Rational ts = t * s;
    Rational E0 = rat((v * r - u * s) * (v * r - u * s), 4 * u * v) - rat(v, 4 * u) * p * p;
    Rational Nrows = N - std::min(E0, Rational(0)) + 1;
    std::vector<AlRow> rows;
    for (long dir : {+1, -1}) {
        for (long j = (dir > 0 ? 0 : -1);; j += dir) {
            Rational jj(j);
            Rational prefA = Rational(u * v) * jj * jj + Rational(v * r - u * s) * jj;
            Rational prefB = Rational(u * v) * jj * jj - Rational(v * r + u * s) * jj + Rational(r * s);
            bool anyA = prefA <= Nrows, anyB = prefB <= Nrows;
            if (!anyA && !anyB) break;  // both prefixes grow monotonically past |j| = 1
            if (anyA) rows.push_back({prefA, (Rational(r) - ts - p) / 2 + Rational(u) * j, false, +1});
            if (anyB) rows.push_back({prefB, -(Rational(r) + ts + p) / 2 + Rational(u) * j, false, -1});
        }
    }
    Series2 body = al_theta_rows(tc.idx, tc.eps, rows, Nrows);
    body = mul(body, eta_inv_pow(Nrows, 3));
    return body.shifted(Int(tc.sign), p / t, E0).truncated(N);
}

/* Standard-module character z^{p/t} q^{-p^2/4t} theta chi^{Vir}_{r,s} / eta^2
 * (shared by typical and atypical standard modules). */
Series2 estandard_char(const MinimalModel& m, long i, const Rational& p, long r, long s, bool super,
                       const Rational& N) {
    ThetaChoice tc = n2_theta_choice(i, super);
    Rational shift = -p * p / (4 * m.t());
    Rational Nq = N - shift + 1;
    Series2 body = mul(theta(ThetaIndex{tc.idx}, Nq), mul(vir_char(m.u, m.v, r, s, Nq), eta_inv_pow(Nq, 2)));
    return body.shifted(Int(tc.sign), p / m.t(), shift).truncated(N);
}

/* Unitary spectral-flow orbit representative at p = 0 via the kernel route. */
Series2 residue_rep_unitary(const MinimalModel& m, long i0, long r, bool super, const Rational& N) {
    ThetaChoice tc = n2_theta_choice(i0, super);
    long u = m.u;
    Rational E0 = rat(r * r, 4 * u);
    Rational Nrows = N + 1;
    std::vector<AlRow> rows;
    for (long dir : {+1, -1}) {
        for (long j = (dir > 0 ? 0 : -1);; j += dir) {
            Rational prefix = Rational(j) * (Rational(u) * j + r);
            if (prefix > Nrows) break;
            Rational e = Rational(u) * j + rat(r, 2);
            rows.push_back({prefix, e, true, +1});
            rows.push_back({prefix, -e, true, -1});
        }
    }
    Series2 body = al_theta_rows(tc.idx, tc.eps, rows, Nrows);
    body = mul(body, eta_inv_pow(Nrows, 3));
    return body.shifted(Int(tc.sign), Rational(0), E0).truncated(N);
}

/* Transport a base character by ell_half half-flows, growing the base order
 * until the image window [<= N] is certified complete.  The base characters
 * have theta-type support growth |z| <= C + sqrt(4u(b - bmin)); C is read off
 * the computed series and the certificate re-checked after each extension. */
template <typename BaseFn>
Series2 transported_char(const MinimalModel& m, BaseFn base_fn, long ell_half, const Rational& N) {
    Rational c = m.central_charge();
    Rational ell = rat(ell_half, 2);
    double la = std::abs(ell.get_d());
    double u = static_cast<double>(m.u);
    Rational qshift = c * ell * ell / 6;
    double Nd = N.get_d();
    double guess = std::max(Nd, 0.0) + u * la * la + la * std::sqrt(4 * u * (Nd + u * la * la + 4)) + 4;
    Rational Nbase(static_cast<long>(guess) + 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Series2 base = base_fn(Nbase);
        if (ell_half == 0) return base.truncated(N);
        Rational bmin = base.min_q_exponent();
        double C = 0;
        for (const auto& mo : base.monomials()) {
            double b = Rational(mo.q_exp - bmin).get_d();
            double a = std::abs(mo.z_exp.get_d());
            C = std::max(C, a - std::sqrt(std::max(4 * u * b, 0.0)));
        }
        double Np = Nbase.get_d(), bm = bmin.get_d();
        bool past_vertex = (Np - bm) >= u * la * la;
        double worst_image = Np - la * (C + std::sqrt(std::max(4 * u * (Np - bm), 0.0)) + 0.5) + qshift.get_d();
        if (past_vertex && worst_image > Nd + 0.5) {
            Series2 out = substitute(base, false, ell, false);
            out = out.shifted(Int(1), c * ell / 3, qshift);
            return out.truncated(N);
        }
        Nbase = Rational(to_long(rat_ceil(Nbase * 3 / 2)) + 8);
    }
    throw MathError(Errc::NonTerminating, "spectral-flow transport window failed to certify");
}

int theta_sum_coeff(int idx, const Rational& n) {
    switch (idx) {
        case 3: return 1;
        case 4: return parity_sign(n);
        case 2: return 1;
        case 1: return parity_sign(n - rat(1, 2));
    }
    return 0;
}

/* Columnwise resolution sum for the L-family.  Each atypical standard term
 * contributes one theta power per output column, so the alternating sum
 * terminates column by column; the output is complete to order N on
 * |z-exponent| <= z_window. */
Series2 resolution_char_L(const MinimalModel& m, long i, const Rational& p, long r, bool super,
                          const Rational& N, const Rational& z_window) {
    ThetaChoice tc = n2_theta_choice(i, super);
    long u = m.u, v = m.v;
    Rational t = m.t();
    bool ramond = (imod(i, 4) % 2) == 1;

    // output z-columns live on p/t + Z (NS) or p/t + Z + 1/2 (R)
    std::vector<Rational> columns;
    {
        Rational base = ramond ? rat(1, 2) : Rational(0);
        for (long cix = to_long(rat_floor(-z_window - p / t - base)) - 1;
             Rational(cix) + base + p / t <= z_window; ++cix) {
            Rational alpha = p / t + base + Rational(cix);
            if (alpha >= -z_window && alpha <= z_window) columns.push_back(alpha);
        }
    }
    // both families of the alternating sum share chi_{r,s'} = chi_{u-r,v-s'}
    struct TermFamily {
        long s1;   // chi_{r, s1}
        long res;  // M = 2 v l + res, l >= 0
        int sign;
    };
    std::vector<TermFamily> fams;
    for (long s1 = 1; s1 <= v - 1; ++s1) {
        int sg = (s1 % 2 == 1) ? +1 : -1;  // (-1)^{s1-1}
        fams.push_back({s1, s1, sg});
        fams.push_back({s1, 2 * v - s1, -sg});
    }
    // pass 1: find the base order needed per s1
    std::vector<Rational> need(v, Rational(-1));
    auto b0 = [&](long s1) -> Rational {
        long a = v * r - u * s1;
        return rat(a * a, 4 * u * v) - rat(3, 24);
    };
    for (const auto& fam : fams) {
        for (const auto& alpha : columns) {
            Rational prev_min(0);
            bool started = false;
            for (long l = 0;; ++l) {
                Rational M(2 * v * l + fam.res);
                Rational n = alpha - p / t + M;
                Rational shift = -(p - M * t) * (p - M * t) / (4 * t);
                Rational mn = n * n / 2 + b0(fam.s1) + shift;
                if (mn > N && started && mn > prev_min) break;
                if (l > 4 * u * v + 400)
                    throw MathError(Errc::NonTerminating, "resolution column failed to terminate");
                Rational want = N - n * n / 2 - shift;
                if (want > need[fam.s1]) need[fam.s1] = want;
                prev_min = mn;
                started = true;
            }
        }
    }
    std::vector<Series2> base(v, Series2::zero(Rational(0)));
    for (long s1 = 1; s1 <= v - 1; ++s1)
        if (need[s1] >= 0) base[s1] = mul(vir_char(u, v, r, s1, need[s1] + 1), eta_inv_pow(need[s1] + 1, 2));
    // pass 2: assemble
    Series2 out = Series2::zero(N);
    for (const auto& fam : fams) {
        const Series2& bs = base[fam.s1];
        if (need[fam.s1] < 0) continue;
        for (const auto& alpha : columns) {
            Rational prev_min(0);
            bool started = false;
            for (long l = 0;; ++l) {
                Rational M(2 * v * l + fam.res);
                Rational n = alpha - p / t + M;
                Rational shift = n * n / 2 - (p - M * t) * (p - M * t) / (4 * t);
                Rational mn = shift + b0(fam.s1);
                if (mn > N && started && mn > prev_min) break;
                if (l > 4 * u * v + 400)
                    throw MathError(Errc::NonTerminating, "resolution column failed to terminate");
                prev_min = mn;
                started = true;
                int thc = theta_sum_coeff(tc.idx, n);
                if (thc == 0) continue;
                Int c(fam.sign * thc * tc.sign);
                for (const auto& mo : bs.monomials()) {
                    Rational e = mo.q_exp + shift;
                    if (e > N) break;
                    out.add_term(e, alpha, Int(mo.coeff * c));
                }
            }
        }
    }
    out.tighten_offset();
    return out;
}

Series2 resolution_char_D(const MinimalModel& m, long i, const Rational& p, long r, long s, bool super,
                          const Rational& N, const Rational& z_window) {
    long v = m.v;
    Rational t = m.t();
    int lead = ((v - 1 - s) % 2 == 0) ? +1 : -1;
    Series2 out = resolution_char_L(m, i, p - Rational(v - s) * t, m.u - r, super, N, z_window);
    if (lead < 0) out = out.negated();
    for (long j2 = 1; j2 <= v - s - 1; ++j2) {
        Series2 term = estandard_char(m, i, p - t * j2, r, s + j2, super, N).z_windowed(z_window);
        if (j2 % 2 == 1)
            out += term;
        else
            out -= term;
    }
    return out;
}

/* Bare expansion comb sum_l phi_l(q) w^{2l}; together with eta^{-3} and the
 * w^{1/2}-type prefactor this realises 1/(i theta_1(w^2; q)) in the inner
 * annulus. */
Series2 phi_comb(const Rational& N, long z_window) {
    Series2 sum = Series2::zero(N);
    long lmax = z_window / 2;
    long lmin = -std::min<long>(lmax, std::max<long>(0, to_long(rat_floor(N))));
    for (long l = lmin; l <= lmax; ++l) sum += phi_ell(l, N).shifted(Int(1), rat(2 * l, 1), Rational(0));
    sum.tighten_offset();
    return sum;
}

ModuleLabel fold_dminus(const MinimalModel& m, const ModuleLabel& l) {
    if (l.algebra != Algebra::N2 || l.family != Family::DMinus) return l;
    long s = l.s, r = l.r;
    if (s == m.v - 1) {
        ModuleLabel out = n2_L(l.i - 2, l.p + m.t(), m.u - r);
        return out;
    }
    return n2_D(l.i - 2, l.p + m.t(), m.u - r, m.v - 1 - s, true);
}

}  // namespace

Series2 char_ghost(long i, bool super, const Rational& N) {
    if (i < 0 || i > 3) throw MathError(Errc::LabelOutOfRange, "ghost sector must be 0..3");
    ThetaChoice tc = theta_choice(i, super);
    Series2 body = mul(theta(ThetaIndex{tc.idx}, N + 1), eta_inv(N + 1));
    if (tc.sign < 0) body = body.negated();
    return body.truncated(N);
}

Series2 char_fock(const Rational& p, const Rational& t, const Rational& N) {
    if (t == 0) throw MathError(Errc::BadInput, "char_fock needs t != 0");
    Rational shift = p * p / (4 * t);
    Series2 ei = eta_inv(N - shift);
    return ei.shifted(Int(1), p, shift).truncated(N);
}

CharKind char_sl2(const MinimalModel& m, const ModuleLabel& label, AnnulusRegime regime, const Rational& N,
                  long w_window) {
    validate_label(m, label);
    if (label.algebra != Algebra::SL2) throw MathError(Errc::LabelOutOfRange, "char_sl2 needs an sl2 label");
    if (label.flow != 0) throw MathError(Errc::LabelOutOfRange, "char_sl2 covers flow-free labels");
    long u = m.u, v = m.v, r = label.r;

    if (label.family == Family::ETypical || label.family == Family::EPlus || label.family == Family::EMinus) {
        DeltaChar d;
        d.z_prefactor_exp =
            label.family == Family::ETypical ? label.lambda : weights(m, label.r, label.s, Rational(0)).lambda;
        d.z_coset_base = Rational(0);
        d.z_coset_step = Rational(2);
        d.qseries = mul(vir_char(u, v, label.r, label.s, N + 1), eta_inv_pow(N + 1, 2)).truncated(N);
        return CharKind{d};
    }
    if (label.family == Family::DMinus) {
        if (regime != AnnulusRegime::InnerAnnulus)
            throw MathError(Errc::RegimeMismatch, "D- characters expand in the inner annulus");
        ModuleLabel plus = sl2_D(label.r, label.s, true);
        CharKind ck = char_sl2(m, plus, AnnulusRegime::OuterAnnulus, N, w_window);
        return CharKind{substitute(ck.series(), false, Rational(0), true)};
    }

    Rational Nint = N + 1;
    Series2 J = Series2::zero(Nint);
    long maxw = 0;
    if (label.family == Family::L) {
        if (regime != AnnulusRegime::InnerAnnulus)
            throw MathError(Errc::RegimeMismatch, "L characters expand in the inner annulus");
        for (long dir : {+1, -1}) {
            for (long j = (dir > 0 ? 0 : -1);; j += dir) {
                long a = 2 * u * j + r;
                Rational e = rat(v * a * a, 4 * u);
                if (e > Nint) break;
                J.add_term(e, Rational(-a), Int(1));
                J.add_term(e, Rational(a), Int(-1));
                maxw = std::max(maxw, std::labs(a));
            }
        }
        Series2 K = phi_comb(Nint, w_window + maxw + 2);
        Series2 body = mul(mul(J, K), eta_inv_pow(Nint, 3));
        return CharKind{body.shifted(Int(1), Rational(1), Rational(0)).z_windowed(Rational(w_window)).truncated(N)};
    }
    // D+ in the outer annulus
    if (regime != AnnulusRegime::OuterAnnulus)
        throw MathError(Errc::RegimeMismatch, "D+ characters expand in the outer annulus");
    long s = label.s;
    for (long dir : {+1, -1}) {
        for (long j = (dir > 0 ? 0 : -1);; j += dir) {
            Rational e1 = Rational(j) * (Rational(u * v) * j + (v * r - u * s));
            Rational e2 = Rational(u * j - r) * (Rational(v) * j - s);
            bool a1 = e1 <= Nint, a2 = e2 <= Nint;
            if (!a1 && !a2) break;
            if (a1) {
                J.add_term(e1, Rational(2 * u * j), Int(1));
                maxw = std::max(maxw, std::labs(2 * u * j));
            }
            if (a2) {
                J.add_term(e2, Rational(2 * u * j - 2 * r), Int(-1));
                maxw = std::max(maxw, std::labs(2 * u * j - 2 * r));
            }
        }
    }
    Series2 K = substitute(phi_comb(Nint, w_window + maxw + 2), false, Rational(0), true);
    Series2 body = mul(mul(J, K), eta_inv_pow(Nint, 3));
    Rational lam = weights(m, r, s, Rational(0)).lambda;
    Rational E0 = rat((v * r - u * s) * (v * r - u * s), 4 * u * v);
    return CharKind{body.shifted(Int(1), lam, E0).z_windowed(Rational(w_window)).truncated(N)};
}

Series2 sflow_transform(const Series2& ch, const Rational& c, long ell_half, const Rational& N) {
    Rational ell = rat(ell_half, 2);
    Series2 out = substitute(ch, false, ell, false);
    out = out.shifted(Int(1), c * ell / 3, c * ell * ell / 6);
    return out.truncated(N);
}

Series2 char_n2_resolution(const MinimalModel& m, const ModuleLabel& label, bool super, const Rational& N,
                           const Rational& z_window) {
    if (m.unitary()) throw MathError(Errc::RegimeMismatch, "resolutions apply to the non-unitary models");
    if (m.level() > 0)
        throw MathError(Errc::DivergentResolution, "resolution sums diverge for k > 0 (u > 2v)");
    ModuleLabel l = fold_dminus(m, label);
    validate_label(m, l);
    if (l.family == Family::L) return resolution_char_L(m, l.i, l.p, l.r, super, N, z_window);
    if (l.family == Family::DPlus) return resolution_char_D(m, l.i, l.p, l.r, l.s, super, N, z_window);
    throw MathError(Errc::RegimeMismatch, "resolution method covers L and D labels");
}

Series2 char_n2(const MinimalModel& m, const ModuleLabel& label, CharMethod method, bool super,
                const Rational& N) {
    ModuleLabel l = fold_dminus(m, label);
    validate_label(m, l);
    if (l.algebra != Algebra::N2) throw MathError(Errc::LabelOutOfRange, "char_n2 needs an N=2 label");
    switch (method) {
        case CharMethod::AppellLerch: {
            if (l.family == Family::L) return al_char_L(m, l.i, l.p, l.r, super, N);
            if (l.family == Family::DPlus) return al_char_D(m, l.i, l.p, l.r, l.s, super, N);
            throw MathError(Errc::RegimeMismatch, "Appell-Lerch method covers L and D labels");
        }
        case CharMethod::Typical: {
            if (l.family != Family::ETypical && l.family != Family::EPlus && l.family != Family::EMinus)
                throw MathError(Errc::RegimeMismatch, "typical method covers E-type labels");
            return estandard_char(m, l.i, l.p, l.r, l.s, super, N);
        }
        case CharMethod::Resolution: {
            Rational zw = al_support_window(m, l, super, N);
            return char_n2_resolution(m, l, super, N, zw);
        }
        case CharMethod::ResidueEG: {
            if (!m.unitary())
                throw MathError(Errc::RegimeMismatch, "the residue route is the unitary method (v = 1)");
            if (l.family != Family::L) throw MathError(Errc::LabelOutOfRange, "unitary labels are L-family");
            if (!is_integer(l.p)) throw MathError(Errc::LabelOutOfRange, "unitary momentum must be integral");
            long h = to_long(rat_num(l.p));
            long i0 = imod(l.i - h, 4);
            long r = l.r;
            auto base_fn = [&, i0, r, super](const Rational& Nb) {
                return residue_rep_unitary(m, i0, r, super, Nb);
            };
            return transported_char(m, base_fn, -h, N);
        }
        case CharMethod::SpectralFlowTransport: {
            if (l.family != Family::L && l.family != Family::DPlus)
                throw MathError(Errc::RegimeMismatch, "flow transport covers L and D labels");
            long h = to_long(rat_floor(l.p));
            Rational p0 = l.p - h;
            long i0 = imod(l.i - h, 4);
            ModuleLabel base = l;
            base.i = i0;
            base.p = p0;
            auto base_fn = [&, base, super](const Rational& Nb) {
                return base.family == Family::L ? al_char_L(m, base.i, base.p, base.r, super, Nb)
                                                : al_char_D(m, base.i, base.p, base.r, base.s, super, Nb);
            };
            return transported_char(m, base_fn, -h, N);
        }
    }
    throw MathError(Errc::BadInput, "unknown character method");
}

Rational al_support_window(const MinimalModel& m, const ModuleLabel& label, bool super, const Rational& N) {
    ModuleLabel l = fold_dminus(m, label);
    Series2 al = char_n2(m, l, CharMethod::AppellLerch, super, N);
    return al.max_abs_z_exponent() + 2;
}

bool compare_series(const std::string& where, const Series2& expected, const Series2& got, const Rational& N,
                    CheckReport& report) {
    if (equal_to_order(expected, got, N)) return true;
    report.pass = false;
    if (expected.q_order() < N || got.q_order() < N) {
        report.notes.push_back(where + ": truncation window too short for the comparison");
        return false;
    }
    if (!report.first_discrepancy) {
        Series2 d = sub(expected, got);
        for (const auto& mo : d.monomials()) {
            if (mo.q_exp > N) continue;
            Discrepancy disc;
            disc.where = where;
            disc.q_exp = mo.q_exp;
            disc.z_exp = mo.z_exp;
            disc.expected = expected.coeff(mo.q_exp, mo.z_exp).get_str();
            disc.got = got.coeff(mo.q_exp, mo.z_exp).get_str();
            report.first_discrepancy = disc;
            break;
        }
    }
    report.notes.push_back(where + ": mismatch");
    return false;
}

unsigned verification_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("N2COSET_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

namespace {

template <typename F>
void parallel_for(long n, F&& f) {
    unsigned threads = verification_threads();
    if (threads <= 1 || n <= 1) {
        for (long k = 0; k < n; ++k) f(k);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            long k = next.fetch_add(1);
            if (k >= n) return;
            f(k);
        }
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

CheckReport branch_verify(const MinimalModel& m, const ModuleLabel& sl2_label, long i, bool super,
                          const Rational& N, long y_window) {
    CheckReport report;
    report.check = super ? "branching-super" : "branching";
    report.labels = label_str(sl2_label) + ", i=" + std::to_string(imod(i, 4));
    report.q_order = N;
    validate_label(m, sl2_label);
    if (sl2_label.algebra != Algebra::SL2 ||
        (sl2_label.family != Family::L && sl2_label.family != Family::DPlus &&
         sl2_label.family != Family::DMinus))
        throw MathError(Errc::RegimeMismatch,
                        "branch_verify covers sl2 L and D labels (standard families go through the "
                        "exact-sequence check)");
    long v = m.v;
    Rational t = m.t();
    Rational k = m.level();
    long i0 = imod(i, 4);

    // weight support of the sl2 module: lambda + 2Z
    Rational supp = sl2_label.family == Family::L ? Rational(sl2_label.r - 1)
                                                  : weights(m, sl2_label.r, sl2_label.s, Rational(0)).lambda;
    if (sl2_label.family == Family::DMinus) supp = -supp;

    Rational max_shift(0);
    std::vector<Rational> momenta;
    {
        Rational start = supp + i0;
        start = start - 2 * Rational(rat_floor((start + y_window) / 2));  // smallest >= -y_window
        for (Rational p = start; p <= y_window; p += 2) {
            if (p < -Rational(y_window)) continue;
            momenta.push_back(p);
            Rational shift = p * p / (4 * t);
            if (shift > max_shift) max_shift = shift;
        }
    }
    Rational Nhat = N + max_shift + 1;

    AnnulusRegime regime = sl2_label.family == Family::DPlus ? AnnulusRegime::OuterAnnulus
                                                             : AnnulusRegime::InnerAnnulus;
    long b_max = static_cast<long>(std::sqrt(std::max(2 * Nhat.get_d(), 0.0))) + 2;
    long W = y_window + 2 * b_max + 2;
    CharKind sl2ck = char_sl2(m, sl2_label, regime, Nhat, W);
    Series2 gh = char_ghost(i0, super, Nhat);

    // trivariate product: w^a -> y^a z^{a/t}, x^b -> y^{2b} z^{-k b / t}
    const long Dy = 2 * v;
    auto sl2m = sl2ck.series().monomials();
    auto ghm = gh.monomials();
    Rational off1 = sl2ck.series().min_q_exponent(), off2 = gh.min_q_exponent();
    Rational Nprod = std::min(Nhat + off2, Nhat + off1);

    std::map<long, std::map<std::pair<Rational, Rational>, Int>> sectors;  // y-key -> (q,z) -> coeff
    for (const auto& m1 : sl2m) {
        Rational y1 = m1.z_exp;
        Rational z1 = m1.z_exp / t;
        for (const auto& m2 : ghm) {
            Rational q = m1.q_exp + m2.q_exp;
            if (q > Nprod) continue;
            Rational y = y1 + 2 * m2.z_exp;
            if (y > y_window || y < -Rational(y_window)) continue;
            Rational yk = y * Dy;
            yk.canonicalize();
            if (yk.get_den() != 1) throw MathError(Errc::BadInput, "y-exponent off lattice");
            long ykey = to_long(Int(yk.get_num()));
            Rational z = z1 - k * m2.z_exp / t;
            auto& level = sectors[ykey];
            Int& slot = level[{q, z}];
            slot += m1.coeff * m2.coeff;
            if (slot == 0) level.erase({q, z});
        }
    }

    Series2 etaN = eta(Nprod + 2);
    struct Task {
        Rational p;
        CheckReport sub;
        bool ok = true;
    };
    std::vector<Task> tasks;
    for (const auto& p : momenta) tasks.push_back({p, {}, true});
    parallel_for(static_cast<long>(tasks.size()), [&](long ix) {
        auto& task = tasks[ix];
        const Rational& p = task.p;
        Rational pk = p * Dy;
        pk.canonicalize();
        Series2 lhs = Series2::zero(Nprod);
        auto it = sectors.find(to_long(Int(pk.get_num())));
        if (it != sectors.end())
            for (const auto& [key, c] : it->second) lhs.add_term(key.first, key.second, c);
        lhs = mul(lhs, etaN);
        lhs = lhs.shifted(Int(1), Rational(0), -p * p / (4 * t)).truncated(N);
        ModuleLabel dict;
        if (sl2_label.family == Family::L)
            dict = n2_L(i0, p, sl2_label.r);
        else
            dict = n2_D(i0, p, sl2_label.r, sl2_label.s, sl2_label.family == Family::DPlus);
        Series2 rhs = char_n2(m, dict, CharMethod::AppellLerch, super, N);
        task.sub.q_order = N;
        task.ok = compare_series("p=" + rational_str(p), lhs, rhs, N, task.sub);
    });
    for (auto& task : tasks) {
        if (!task.ok) {
            report.pass = false;
            for (auto& n : task.sub.notes) report.notes.push_back(n);
            if (!report.first_discrepancy && task.sub.first_discrepancy)
                report.first_discrepancy = task.sub.first_discrepancy;
        }
    }
    report.notes.push_back("momenta checked: " + std::to_string(momenta.size()));
    return report;
}

CheckReport ses_char_check(const MinimalModel& m, const ModuleLabel& e_label, const Rational& N) {
    CheckReport report;
    report.check = "ses-char";
    report.labels = label_str(e_label);
    report.q_order = N;
    validate_label(m, e_label);
    if (m.unitary() || (e_label.family != Family::EPlus && e_label.family != Family::EMinus))
        throw MathError(Errc::LabelOutOfRange, "ses_char_check covers E+ / E- labels of v >= 2 models");
    GrothVector factors = groth_decompose(m, e_label);
    for (bool super : {false, true}) {
        Series2 lhs = char_n2(m, e_label, CharMethod::Typical, super, N);
        Series2 rhs = Series2::zero(N);
        for (const auto& [lbl, mult] : factors.terms) {
            Series2 piece = char_n2(m, lbl, CharMethod::AppellLerch, super, N);
            rhs += piece.shifted(Int(mult), Rational(0), Rational(0));
        }
        compare_series(super ? "super" : "char", lhs, rhs, N, report);
    }
    return report;
}

namespace {

using Cmplx = std::complex<double>;

Cmplx theta1_numeric(Cmplx z, Cmplx q, long terms) {
    // -i q^{1/8} (sqrt(z) - 1/sqrt(z)) prod (1-q^i)(1-z q^i)(1-q^i/z)
    Cmplx sq = std::sqrt(z);
    Cmplx acc = std::pow(q, 0.125) * (sq - 1.0 / sq);
    for (long i = 1; i <= terms; ++i) {
        Cmplx qi = std::pow(q, static_cast<double>(i));
        acc *= (1.0 - qi) * (1.0 - z * qi) * (1.0 - qi / z);
    }
    return Cmplx(0, -1) * acc;
}

Cmplx eta_numeric(Cmplx q, long terms) {
    Cmplx acc = std::pow(q, 1.0 / 24.0);
    for (long i = 1; i <= terms; ++i) acc *= (1.0 - std::pow(q, static_cast<double>(i)));
    return acc;
}

}  // namespace

CheckReport magic_check(const std::vector<MagicSample>& samples, long truncation, double tol) {
    CheckReport report;
    report.check = "magic";
    report.q_order = Rational(truncation);
    double worst = 0;
    long idx = 0;
    for (const auto& s : samples) {
        ++idx;
        double aq = std::abs(s.q), aa = std::abs(s.a);
        if (!(aq > 0 && aq < 1)) throw MathError(Errc::RegimeViolation, "need 0 < |q| < 1");
        bool primed;
        if (aq < aa && aa < 1)
            primed = false;
        else if (1 < aa && aa < 1 / aq)
            primed = true;
        else
            throw MathError(Errc::RegimeViolation,
                            "|a| outside both annuli (|q| < |a| < 1 and 1 < |a| < 1/|q|)");
        long pterms = truncation;
        Cmplx lhs = theta1_numeric(s.a * s.b, s.q, pterms) * std::pow(eta_numeric(s.q, pterms), 3.0) /
                    (theta1_numeric(s.a, s.q, pterms) * theta1_numeric(s.b, s.q, pterms));
        Cmplx rhs(0, 0);
        for (long mm = -truncation; mm <= truncation; ++mm) {
            Cmplx qm = std::pow(s.q, static_cast<double>(mm));
            Cmplx den = 1.0 - s.b * qm;
            if (std::abs(den) < 1e-12) throw MathError(Errc::RegimeViolation, "sample hits a pole of the sum");
            Cmplx num = primed ? std::pow(s.a, static_cast<double>(mm)) * s.b * qm
                               : std::pow(s.a, static_cast<double>(mm));
            rhs += num / den;
        }
        rhs *= Cmplx(0, -1);
        double dev = std::abs(lhs - rhs);
        worst = std::max(worst, dev);
        if (dev >= tol) {
            report.pass = false;
            report.notes.push_back("sample " + std::to_string(idx) + (primed ? " (primed)" : "") +
                                   " deviates by " + std::to_string(dev));
        }
    }
    report.notes.push_back("max deviation " + std::to_string(worst) + " over " +
                           std::to_string(samples.size()) + " samples");
    return report;
}

}  // namespace n2coset
