#include "n2coset/fusion.hpp"

#include <algorithm>

namespace n2coset {

namespace {

/* N^{(u)} with out-of-range input rows treated as zero (the boundary
 * convention for the shifted s-indices in the Grothendieck rules). */
long ncoef0(long u, long r, long rp, long rpp) {
    if (r < 1 || r > u - 1 || rp < 1 || rp > u - 1 || rpp < 1 || rpp > u - 1) return 0;
    if ((r + rp + rpp) % 2 == 0) return 0;
    long lo = std::labs(r - rp) + 1;
    long hi = std::min(r + rp - 1, 2 * u - r - rp - 1);
    return (lo <= rpp && rpp <= hi) ? 1 : 0;
}

Rational lambda_ext(const MinimalModel& m, long r, long s) { return Rational(r - 1) - m.t() * s; }

bool cong_mod2(const Rational& a, const Rational& b) {
    Rational d = (a - b) / 2;
    d.canonicalize();
    return d.get_den() == 1;
}

/* Class of "the standard module at (i, p, r, s)": the typical irreducible
 * off the atypical points, otherwise the composition series of the
 * reducible standard with the matching highest weight. */
void add_e_class(const MinimalModel& m, GrothVector& out, long i, const Rational& p, long r, long s,
                 long mult) {
    if (mult == 0) return;
    if (s < 1 || s > m.v - 1 || r < 1 || r > m.u - 1) return;
    Rational lam = rat_mod(p - imod(i, 4), Rational(2));
    if (cong_mod2(lam, lambda_ext(m, r, s))) {
        GrothVector dec = groth_decompose(m, n2_Epm(i, p, r, s, true));
        for (const auto& [l, mm] : dec.terms) out.add(l, mm * mult);
        return;
    }
    if (cong_mod2(lam, lambda_ext(m, m.u - r, m.v - s))) {
        GrothVector dec = groth_decompose(m, n2_Epm(i, p, m.u - r, m.v - s, true));
        for (const auto& [l, mm] : dec.terms) out.add(l, mm * mult);
        return;
    }
    out.add(canonical_label(m, n2_E(i, p, r, s)), mult);
}

void add_d_class(const MinimalModel& m, GrothVector& out, long i, const Rational& p, long r, long s,
                 long mult) {
    if (mult == 0) return;
    if (s == 0) {
        out.add(canonical_label(m, n2_L(i, p, r)), mult);
        return;
    }
    out.add(canonical_label(m, n2_D(i, p, r, s, true)), mult);
}

/* Grothendieck product of two canonical irreducible N=2 classes (v >= 2). */
GrothVector groth_pair_n2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    long u = m.u, v = m.v;
    Rational t = m.t();
    // L is the easy factor; put it first
    if (b.family == Family::L && a.family != Family::L) return groth_pair_n2(m, b, a);
    // the ED rule is stated with E first
    if (a.family == Family::DPlus && b.family == Family::ETypical) return groth_pair_n2(m, b, a);
    long i2 = a.i + b.i;
    Rational p2 = a.p + b.p;
    GrothVector out;
    if (a.family == Family::L && b.family == Family::L) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) out.add(canonical_label(m, n2_L(i2, p2, rpp)), 1);
        return out;
    }
    if (a.family == Family::L && b.family == Family::ETypical) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) add_e_class(m, out, i2, p2, rpp, b.s, 1);
        return out;
    }
    if (a.family == Family::L && b.family == Family::DPlus) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) add_d_class(m, out, i2, p2, rpp, b.s, 1);
        return out;
    }
    if (a.family == Family::ETypical && b.family == Family::ETypical) {
        for (long rpp = 1; rpp <= u - 1; ++rpp) {
            if (!ncoef0(u, a.r, b.r, rpp)) continue;
            for (long spp = 1; spp <= v - 1; ++spp) {
                long nvv = ncoef0(v, a.s, b.s, spp);
                if (nvv) {
                    add_e_class(m, out, i2 - 2, p2 - t, rpp, spp, nvv);
                    add_e_class(m, out, i2 + 2, p2 + t, rpp, spp, nvv);
                }
                long mid = ncoef0(v, a.s, b.s - 1, spp) + ncoef0(v, a.s, b.s + 1, spp);
                add_e_class(m, out, i2, p2, rpp, spp, mid);
            }
        }
        return out;
    }
    if (a.family == Family::ETypical && b.family == Family::DPlus) {
        for (long rpp = 1; rpp <= u - 1; ++rpp) {
            if (!ncoef0(u, a.r, b.r, rpp)) continue;
            for (long spp = 1; spp <= v - 1; ++spp) {
                add_e_class(m, out, i2, p2, rpp, spp, ncoef0(v, a.s, b.s + 1, spp));
                add_e_class(m, out, i2 - 2, p2 - t, rpp, spp, ncoef0(v, a.s, b.s, spp));
            }
        }
        return out;
    }
    if (a.family == Family::DPlus && b.family == Family::DPlus) {
        if (a.s + b.s < v) {
            for (long rpp = 1; rpp <= u - 1; ++rpp) {
                if (!ncoef0(u, a.r, b.r, rpp)) continue;
                for (long spp = 1; spp <= v - 1; ++spp)
                    add_e_class(m, out, i2 - 2, p2 - t, rpp, spp, ncoef0(v, a.s, b.s, spp));
                add_d_class(m, out, i2, p2, rpp, a.s + b.s, 1);
            }
        } else {
            for (long rpp = 1; rpp <= u - 1; ++rpp) {
                if (!ncoef0(u, a.r, b.r, rpp)) continue;
                for (long spp = 1; spp <= v - 1; ++spp)
                    add_e_class(m, out, i2 - 2, p2 - t, rpp, spp, ncoef0(v, a.s + 1, b.s + 1, spp));
                add_d_class(m, out, i2 - 2, p2 - t, u - rpp, a.s + b.s - v + 1, 1);
            }
        }
        return out;
    }
    throw MathError(Errc::LabelOutOfRange, "no Grothendieck rule for this label pair");
}

/* sl2 atypical standards decompose through the short exact sequences. */
GrothVector sl2_decompose(const MinimalModel& m, const ModuleLabel& l) {
    GrothVector g;
    if (l.family == Family::EPlus || l.family == Family::EMinus) {
        bool plus = l.family == Family::EPlus;
        g.add(canonical_label(m, sl2_D(l.r, l.s, plus, l.flow)), 1);
        g.add(canonical_label(m, sl2_D(m.u - l.r, m.v - l.s, !plus, l.flow)), 1);
        return g;
    }
    g.add(canonical_label(m, l), 1);
    return g;
}

void add_sl2_e_class(const MinimalModel& m, GrothVector& out, const Rational& lambda, long r, long s,
                     long flow, long mult) {
    if (mult == 0 || s < 1 || s > m.v - 1 || r < 1 || r > m.u - 1) return;
    Rational lam = rat_mod(lambda, Rational(2));
    if (cong_mod2(lam, lambda_ext(m, r, s))) {
        ModuleLabel ep = sl2_E(lam, r, s, flow);
        ep.family = Family::EPlus;
        ep.lambda = Rational(0);
        GrothVector dec = sl2_decompose(m, ep);
        for (const auto& [l, mm] : dec.terms) out.add(l, mm * mult);
        return;
    }
    if (cong_mod2(lam, lambda_ext(m, m.u - r, m.v - s))) {
        ModuleLabel ep = sl2_E(lam, m.u - r, m.v - s, flow);
        ep.family = Family::EPlus;
        ep.lambda = Rational(0);
        GrothVector dec = sl2_decompose(m, ep);
        for (const auto& [l, mm] : dec.terms) out.add(l, mm * mult);
        return;
    }
    out.add(canonical_label(m, sl2_E(lam, r, s, flow)), mult);
}

void add_sl2_d_class(const MinimalModel& m, GrothVector& out, long r, long s, long flow, long mult) {
    if (mult == 0) return;
    if (s == 0) {
        out.add(canonical_label(m, sl2_L(r, flow)), mult);
        return;
    }
    out.add(canonical_label(m, sl2_D(r, s, true, flow)), mult);
}

GrothVector groth_pair_sl2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    long u = m.u, v = m.v;
    Rational k = m.level();
    long fl = a.flow + b.flow;
    if (b.family == Family::L && a.family != Family::L) return groth_pair_sl2(m, b, a);
    if (a.family == Family::DPlus && b.family == Family::ETypical) return groth_pair_sl2(m, b, a);
    GrothVector out;
    if (a.family == Family::L && b.family == Family::L) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) add_sl2_d_class(m, out, rpp, 0, fl, 1);
        return out;
    }
    if (a.family == Family::L && b.family == Family::ETypical) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) add_sl2_e_class(m, out, b.lambda + (a.r - 1), rpp, b.s, fl, 1);
        return out;
    }
    if (a.family == Family::L && b.family == Family::DPlus) {
        for (long rpp = 1; rpp <= u - 1; ++rpp)
            if (ncoef0(u, a.r, b.r, rpp)) add_sl2_d_class(m, out, rpp, b.s, fl, 1);
        return out;
    }
    if (a.family == Family::ETypical && b.family == Family::ETypical) {
        for (long rpp = 1; rpp <= u - 1; ++rpp) {
            if (!ncoef0(u, a.r, b.r, rpp)) continue;
            for (long spp = 1; spp <= v - 1; ++spp) {
                long nvv = ncoef0(v, a.s, b.s, spp);
                if (nvv) {
                    add_sl2_e_class(m, out, a.lambda + b.lambda - k, rpp, spp, fl + 1, nvv);
                    add_sl2_e_class(m, out, a.lambda + b.lambda + k, rpp, spp, fl - 1, nvv);
                }
                long mid = ncoef0(v, a.s, b.s - 1, spp) + ncoef0(v, a.s, b.s + 1, spp);
                add_sl2_e_class(m, out, a.lambda + b.lambda, rpp, spp, fl, mid);
            }
        }
        return out;
    }
    if (a.family == Family::ETypical && b.family == Family::DPlus) {
        // stated with D first: swap roles of (a, b)
        for (long rpp = 1; rpp <= u - 1; ++rpp) {
            if (!ncoef0(u, b.r, a.r, rpp)) continue;
            for (long spp = 1; spp <= v - 1; ++spp) {
                add_sl2_e_class(m, out, a.lambda + lambda_ext(m, b.r, b.s), rpp, spp, fl,
                                ncoef0(v, b.s + 1, a.s, spp));
                add_sl2_e_class(m, out, a.lambda + lambda_ext(m, b.r, b.s + 1), rpp, spp, fl + 1,
                                ncoef0(v, b.s, a.s, spp));
            }
        }
        return out;
    }
    if (a.family == Family::DPlus && b.family == Family::DPlus) {
        if (a.s + b.s < v) {
            for (long rpp = 1; rpp <= u - 1; ++rpp) {
                if (!ncoef0(u, a.r, b.r, rpp)) continue;
                for (long spp = 1; spp <= v - 1; ++spp)
                    add_sl2_e_class(m, out, lambda_ext(m, rpp, a.s + b.s + 1), rpp, spp, fl + 1,
                                    ncoef0(v, a.s, b.s, spp));
                add_sl2_d_class(m, out, rpp, a.s + b.s, fl, 1);
            }
        } else {
            for (long rpp = 1; rpp <= u - 1; ++rpp) {
                if (!ncoef0(u, a.r, b.r, rpp)) continue;
                for (long spp = 1; spp <= v - 1; ++spp)
                    add_sl2_e_class(m, out, lambda_ext(m, rpp, a.s + b.s + 1), rpp, spp, fl + 1,
                                    ncoef0(v, a.s + 1, b.s + 1, spp));
                add_sl2_d_class(m, out, u - rpp, a.s + b.s - v + 1, fl + 1, 1);
            }
        }
        return out;
    }
    throw MathError(Errc::LabelOutOfRange, "no sl2 Grothendieck rule for this label pair");
}

}  // namespace

long fusion_coeff(const FusionCoeffQuery& q) {
    if (q.u < 2 || q.r < 1 || q.r > q.u - 1 || q.rp < 1 || q.rp > q.u - 1 || q.rpp < 1 || q.rpp > q.u - 1)
        throw MathError(Errc::LabelOutOfRange, "fusion_coeff indices out of range");
    return ncoef0(q.u, q.r, q.rp, q.rpp);
}

FusionResult fuse_unitary(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    if (!m.unitary()) throw MathError(Errc::LabelOutOfRange, "fuse_unitary needs v = 1");
    ModuleLabel ca = canonical_label(m, a), cb = canonical_label(m, b);
    GrothVector out;
    for (long rpp = 1; rpp <= m.u - 1; ++rpp)
        if (ncoef0(m.u, ca.r, cb.r, rpp))
            out.add(canonical_label(m, n2_L(ca.i + cb.i, ca.p + cb.p, rpp)), 1);
    FusionResult res;
    res.exact = out;
    res.grothendieck = out;
    res.conjectural = false;
    return res;
}

GrothVector groth_fuse_n2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    if (m.unitary()) return fuse_unitary(m, a, b).grothendieck;
    GrothVector ga = groth_decompose(m, a), gb = groth_decompose(m, b);
    GrothVector out;
    for (const auto& [la, mult_a] : ga.terms)
        for (const auto& [lb, mult_b] : gb.terms) {
            GrothVector p = groth_pair_n2(m, la, lb);
            for (const auto& [l, mm] : p.terms) out.add(l, mm * mult_a * mult_b);
        }
    return out;
}

GrothVector groth_fuse_sl2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    if (m.unitary()) throw MathError(Errc::LabelOutOfRange, "groth_fuse_sl2 covers the v >= 2 models");
    validate_label(m, a);
    validate_label(m, b);
    if (a.algebra != Algebra::SL2 || b.algebra != Algebra::SL2)
        throw MathError(Errc::LabelOutOfRange, "groth_fuse_sl2 needs sl2 labels");
    GrothVector ga = sl2_decompose(m, canonical_label(m, a));
    GrothVector gb = sl2_decompose(m, canonical_label(m, b));
    GrothVector out;
    for (const auto& [la, mult_a] : ga.terms)
        for (const auto& [lb, mult_b] : gb.terms) {
            GrothVector p = groth_pair_sl2(m, la, lb);
            for (const auto& [l, mm] : p.terms) out.add(l, mm * mult_a * mult_b);
        }
    return out;
}

GrothVector sl2_to_coset(const MinimalModel& m, const GrothVector& sl2vec, long i_total,
                         const Rational& p_total) {
    GrothVector out;
    Rational t = m.t();
    for (const auto& [l, mult] : sl2vec.terms) {
        if (l.algebra != Algebra::SL2) throw MathError(Errc::LabelOutOfRange, "expected sl2 classes");
        long i = i_total + 2 * l.flow;
        Rational p = p_total - t * l.flow;
        switch (l.family) {
            case Family::L: out.add(canonical_label(m, n2_L(i, p, l.r)), mult); break;
            case Family::DPlus: add_d_class(m, out, i, p, l.r, l.s, mult); break;
            case Family::DMinus: {
                ModuleLabel folded = canonical_label(m, l);
                i = i_total + 2 * folded.flow;
                p = p_total - t * folded.flow;
                if (folded.family == Family::L)
                    out.add(canonical_label(m, n2_L(i, p, folded.r)), mult);
                else
                    add_d_class(m, out, i, p, folded.r, folded.s, mult);
                break;
            }
            case Family::ETypical: add_e_class(m, out, i, p, l.r, l.s, mult); break;
            default: throw MathError(Errc::LabelOutOfRange, "unexpected sl2 class " + label_str(l));
        }
    }
    return out;
}

FusionResult fuse_exact(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    if (m.unitary()) return fuse_unitary(m, a, b);
    ModuleLabel ca = canonical_label(m, a), cb = canonical_label(m, b);
    auto is_irr = [](const ModuleLabel& l) {
        return l.family == Family::L || l.family == Family::DPlus || l.family == Family::ETypical;
    };
    if (!is_irr(ca) || !is_irr(cb))
        throw MathError(Errc::NoKnownExactRule, "exact rules cover irreducible factors only");
    if (cb.family == Family::L && ca.family != Family::L) std::swap(ca, cb);
    FusionResult res;
    res.grothendieck = groth_fuse_n2(m, ca, cb);
    long u = m.u, v = m.v;
    Rational t = m.t();
    long i2 = ca.i + cb.i;
    Rational p2 = ca.p + cb.p;
    if (ca.family == Family::L) {
        GrothVector ex;
        for (long rpp = 1; rpp <= u - 1; ++rpp) {
            if (!ncoef0(u, ca.r, cb.r, rpp)) continue;
            switch (cb.family) {
                case Family::L: ex.add(canonical_label(m, n2_L(i2, p2, rpp)), 1); break;
                case Family::DPlus: add_d_class(m, ex, i2, p2, rpp, cb.s, 1); break;
                case Family::ETypical: {
                    // exact L x E output: the standard module at the shifted weight
                    Rational lam = rat_mod(p2 - imod(i2, 4), Rational(2));
                    if (cong_mod2(lam, lambda_ext(m, rpp, cb.s)))
                        ex.add(canonical_label(m, n2_Epm(i2, p2, rpp, cb.s, true)), 1);
                    else if (cong_mod2(lam, lambda_ext(m, u - rpp, v - cb.s)))
                        ex.add(canonical_label(m, n2_Epm(i2, p2, u - rpp, v - cb.s, true)), 1);
                    else
                        ex.add(canonical_label(m, n2_E(i2, p2, rpp, cb.s)), 1);
                    break;
                }
                default: break;
            }
        }
        res.exact = ex;
        res.conjectural = false;
        return res;
    }
    // E x E with a (1,1) factor
    if (ca.family == Family::ETypical && cb.family == Family::ETypical) {
        ModuleLabel ea = ca, eb = cb;
        if (!(ea.r == 1 && ea.s == 1)) std::swap(ea, eb);
        if (!(ea.r == 1 && ea.s == 1))
            throw MathError(Errc::NoKnownExactRule, "E x E exact rule needs an E_{(1,1)} factor");
        long r = eb.r, s = eb.s;
        Rational lam2 = rat_mod(p2 - imod(i2, 4), Rational(2));
        auto epm_or_e = [&](long i, Rational p, long rr, long ss) -> std::optional<ModuleLabel> {
            if (ss < 1 || ss > v - 1) return std::nullopt;  // boundary trimming
            Rational lam = rat_mod(p - imod(i, 4), Rational(2));
            if (cong_mod2(lam, lambda_ext(m, rr, ss)))
                return canonical_label(m, n2_Epm(i, p, rr, ss, true));
            if (cong_mod2(lam, lambda_ext(m, u - rr, v - ss)))
                return canonical_label(m, n2_Epm(i, p, u - rr, v - ss, true));
            return canonical_label(m, n2_E(i, p, rr, ss));
        };
        auto staggered = [&](long i, Rational p, long rr, long ss) {
            return canonical_label(m, n2_S(i, p, rr, ss));
        };
        std::vector<std::vector<ModuleLabel>> branches;
        auto push_branch = [&](std::vector<std::optional<ModuleLabel>> entries) {
            std::vector<ModuleLabel> list;
            for (auto& e : entries)
                if (e) list.push_back(*e);
            std::sort(list.begin(), list.end());
            branches.push_back(std::move(list));
        };
        if (cong_mod2(lam2, lambda_ext(m, r, s - 1)))
            push_branch({staggered(i2, p2, r, s - 1), epm_or_e(i2 + 2, p2 + t, r, s),
                         epm_or_e(i2, p2, r, s + 1)});
        if (cong_mod2(lam2, lambda_ext(m, u - r, v - s - 1)))
            push_branch({staggered(i2, p2, u - r, v - s - 1), epm_or_e(i2 + 2, p2 + t, r, s),
                         epm_or_e(i2, p2, r, s - 1)});
        if (cong_mod2(lam2, lambda_ext(m, r, s + 1)))
            push_branch({staggered(i2 + 2, p2 + t, r, s), epm_or_e(i2 - 2, p2 - t, r, s),
                         epm_or_e(i2, p2, r, s - 1)});
        if (cong_mod2(lam2, lambda_ext(m, u - r, v - s + 1)))
            push_branch({staggered(i2 + 2, p2 + t, u - r, v - s), epm_or_e(i2 - 2, p2 - t, r, s),
                         epm_or_e(i2, p2, r, s + 1)});
        GrothVector ex;
        if (branches.empty()) {
            for (auto& e : {epm_or_e(i2 - 2, p2 - t, r, s), epm_or_e(i2 + 2, p2 + t, r, s),
                            epm_or_e(i2, p2, r, s - 1), epm_or_e(i2, p2, r, s + 1)})
                if (e) ex.add(*e, 1);
        } else {
            // coincident conditions keep only the common direct summands
            std::vector<ModuleLabel> common = branches[0];
            for (std::size_t bi = 1; bi < branches.size(); ++bi) {
                std::vector<ModuleLabel> inter;
                std::set_intersection(common.begin(), common.end(), branches[bi].begin(),
                                      branches[bi].end(), std::back_inserter(inter));
                common = std::move(inter);
            }
            for (const auto& l : common) ex.add(l, 1);
        }
        res.exact = ex;
        res.conjectural = true;
        return res;
    }
    throw MathError(Errc::NoKnownExactRule,
                    "no exact rule for " + label_str(ca) + " x " + label_str(cb) +
                        " (Grothendieck product available)");
}

GrothVector pair_product(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b) {
    if (m.unitary()) return fuse_unitary(m, a, b).grothendieck;
    return groth_fuse_n2(m, a, b);
}

namespace {

GrothVector conj_vector(const MinimalModel& m, const GrothVector& g) {
    GrothVector out;
    for (const auto& [l, mult] : g.terms) out.add(twist_label(m, l, 0, true), mult);
    return out;
}

}  // namespace

RingReport ring_check(const MinimalModel& m, const std::vector<ModuleLabel>& labels, bool exact,
                      const Rational& p_window) {
    RingReport rep;
    (void)exact;  // the unitary product is exact by construction
    ModuleLabel vac = canonical_label(m, n2_L(0, Rational(0), 1));
    auto in_window = [&](const GrothVector& g) {
        for (const auto& [l, mult] : g.terms)
            if (l.p > p_window || l.p < -p_window) return false;
        return true;
    };
    std::map<std::pair<ModuleLabel, ModuleLabel>, GrothVector> cache;
    auto product = [&](const ModuleLabel& a, const ModuleLabel& b) -> const GrothVector& {
        auto key = std::make_pair(a, b);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, pair_product(m, a, b)).first;
        return it->second;
    };
    auto gv_times = [&](const GrothVector& g, const ModuleLabel& b) {
        GrothVector out;
        for (const auto& [l, mult] : g.terms) {
            const GrothVector& p = product(l, b);
            for (const auto& [ll, mm] : p.terms) out.add(ll, mm * mult);
        }
        return out;
    };
    std::vector<const GrothVector*> prods(labels.size() * labels.size());
    for (std::size_t x = 0; x < labels.size(); ++x)
        for (std::size_t y = 0; y < labels.size(); ++y) {
            prods[x * labels.size() + y] = &product(labels[x], labels[y]);
            if (!in_window(*prods[x * labels.size() + y])) ++rep.out_of_window;
        }
    // unit
    for (std::size_t x = 0; x < labels.size(); ++x) {
        const GrothVector& left = product(vac, labels[x]);
        const GrothVector& right = product(labels[x], vac);
        GrothVector expect;
        expect.add(canonical_label(m, labels[x]), 1);
        if (!(left == expect) || !(right == expect)) {
            rep.pass = false;
            rep.failures.push_back("vacuum unit fails on " + label_str(labels[x]));
        }
    }
    // commutativity + conjugation compatibility
    for (std::size_t x = 0; x < labels.size(); ++x)
        for (std::size_t y = x; y < labels.size(); ++y) {
            ++rep.pairs_checked;
            const GrothVector& xy = *prods[x * labels.size() + y];
            const GrothVector& yx = *prods[y * labels.size() + x];
            if (!(xy == yx)) {
                rep.pass = false;
                rep.failures.push_back("commutativity fails: " + label_str(labels[x]) + " x " +
                                       label_str(labels[y]));
            }
            GrothVector lhs = conj_vector(m, xy);
            const GrothVector& rhs =
                product(twist_label(m, labels[x], 0, true), twist_label(m, labels[y], 0, true));
            if (!(lhs == rhs)) {
                rep.pass = false;
                rep.failures.push_back("conjugation compatibility fails: " + label_str(labels[x]) + " x " +
                                       label_str(labels[y]));
            }
        }
    // associativity
    for (std::size_t x = 0; x < labels.size(); ++x)
        for (std::size_t y = 0; y < labels.size(); ++y) {
            const GrothVector& xy = *prods[x * labels.size() + y];
            for (std::size_t z = 0; z < labels.size(); ++z) {
                ++rep.triples_checked;
                GrothVector lhs = gv_times(xy, labels[z]);
                const GrothVector& yz = *prods[y * labels.size() + z];
                GrothVector rhs;
                for (const auto& [l, mult] : yz.terms) {
                    const GrothVector& p = product(labels[x], l);
                    for (const auto& [ll, mm] : p.terms) rhs.add(ll, mm * mult);
                }
                if (!(lhs == rhs)) {
                    rep.pass = false;
                    rep.failures.push_back("associativity fails: " + label_str(labels[x]) + ", " +
                                           label_str(labels[y]) + ", " + label_str(labels[z]));
                }
            }
        }
    return rep;
}

std::vector<ModuleLabel> ring_label_set(const MinimalModel& m, const Rational& p_window) {
    std::vector<ModuleLabel> out;
    if (m.unitary()) {
        for (long r = 1; r <= m.u - 1; ++r)
            for (long p = -r; p <= r - 1; ++p)
                for (long i = 0; i < 4; ++i)
                    if (imod(p - (i + r - 1), 2) == 0) out.push_back(canonical_label(m, n2_L(i, Rational(p), r)));
        return out;
    }
    long u = m.u, v = m.v;
    auto push_lattice = [&](Family fam, long r, long s) {
        Rational lam = lambda_ext(m, r, s);
        for (long i = 0; i < 4; ++i) {
            Rational start = lam + i;
            start = start - 2 * Rational(rat_floor((start + p_window) / 2));
            for (Rational p = start; p <= p_window; p += 2) {
                if (p < -p_window) continue;
                if (fam == Family::L) {
                    out.push_back(canonical_label(m, n2_L(i, p, r)));
                } else {
                    out.push_back(canonical_label(m, n2_D(i, p, r, s, true)));
                }
            }
        }
    };
    for (long r = 1; r <= u - 1; ++r) push_lattice(Family::L, r, 0);
    for (long r = 1; r <= u - 1; ++r)
        for (long s = 1; s <= v - 2; ++s) push_lattice(Family::DPlus, r, s);
    // typical sample on the (1/v)Z momentum lattice
    for (long r = 1; r <= u - 1; ++r)
        for (long s = 1; s <= v - 1; ++s) {
            if (std::make_pair(s, r) > std::make_pair(v - s, u - r)) continue;  // canonical (r,s) rep
            for (long i = 0; i < 4; ++i) {
                for (long num = to_long(rat_ceil(-p_window * v)); Rational(num) <= p_window * v; ++num) {
                    Rational p = rat(num, v);
                    Rational lam = rat_mod(p - i, Rational(2));
                    if (cong_mod2(lam, lambda_ext(m, r, s)) || cong_mod2(lam, lambda_ext(m, u - r, v - s)))
                        continue;
                    out.push_back(canonical_label(m, n2_E(i, p, r, s)));
                }
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ModuleLabel& a, const ModuleLabel& b) { return a == b; }),
              out.end());
    return out;
}

}  // namespace n2coset
