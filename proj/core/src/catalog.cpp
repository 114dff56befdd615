#include "n2coset/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace n2coset {

MinimalModel::MinimalModel(long u_, long v_) : u(u_), v(v_) {
    if (u < 2 || v < 1 || std::gcd(u, v) != 1)
        throw MathError(Errc::LabelOutOfRange, "minimal model needs u >= 2, v >= 1, gcd(u,v) = 1");
}

const char* algebra_name(Algebra a) {
    switch (a) {
        case Algebra::N2: return "N2";
        case Algebra::SL2: return "SL2";
        case Algebra::Ghost: return "GH";
        case Algebra::Fock: return "FOCK";
        case Algebra::Virasoro: return "VIR";
    }
    return "?";
}

const char* family_name(Family f) {
    switch (f) {
        case Family::L: return "L";
        case Family::DPlus: return "D+";
        case Family::DMinus: return "D-";
        case Family::ETypical: return "E";
        case Family::EPlus: return "E+";
        case Family::EMinus: return "E-";
        case Family::Staggered: return "S";
        case Family::GhostSector: return "GH";
        case Family::FockMomentum: return "F";
        case Family::VirKac: return "VIR";
    }
    return "?";
}

long imod(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

Rational rat_mod(const Rational& x, const Rational& m) {
    Rational q = x / m;
    Rational f(rat_floor(q));
    Rational r = x - m * f;
    r.canonicalize();
    return r;
}

bool operator==(const ModuleLabel& a, const ModuleLabel& b) {
    return a.algebra == b.algebra && a.family == b.family && a.i == b.i && a.p == b.p && a.r == b.r &&
           a.s == b.s && a.lambda == b.lambda && a.flow == b.flow && a.parity == b.parity;
}

bool operator<(const ModuleLabel& a, const ModuleLabel& b) {
    if (a.algebra != b.algebra) return a.algebra < b.algebra;
    if (a.family != b.family) return a.family < b.family;
    if (a.r != b.r) return a.r < b.r;
    if (a.s != b.s) return a.s < b.s;
    if (a.i != b.i) return a.i < b.i;
    int c = mpq_cmp(a.p.get_mpq_t(), b.p.get_mpq_t());
    if (c != 0) return c < 0;
    c = mpq_cmp(a.lambda.get_mpq_t(), b.lambda.get_mpq_t());
    if (c != 0) return c < 0;
    if (a.flow != b.flow) return a.flow < b.flow;
    return a.parity < b.parity;
}

std::string label_str(const ModuleLabel& l) {
    std::ostringstream os;
    os << algebra_name(l.algebra) << ":";
    switch (l.algebra) {
        case Algebra::Ghost: os << l.i; return os.str();
        case Algebra::Fock: os << rational_str(l.p); return os.str();
        case Algebra::Virasoro: os << "[r=" << l.r << ",s=" << l.s << "]"; return os.str();
        default: break;
    }
    os << family_name(l.family) << "[";
    if (l.algebra == Algebra::N2) {
        os << "i=" << l.i << ",p=" << rational_str(l.p) << ",r=" << l.r;
        if (l.family != Family::L) os << ",s=" << l.s;
        if (l.family == Family::ETypical) os << ",lambda=" << rational_str(l.lambda);
    } else {  // SL2
        if (l.family == Family::ETypical) os << "lambda=" << rational_str(l.lambda) << ",";
        os << "r=" << l.r;
        if (l.family != Family::L) os << ",s=" << l.s;
        if (l.flow != 0) os << ",flow=" << l.flow;
    }
    os << "]";
    return os.str();
}

ModuleLabel n2_L(long i, Rational p, long r) {
    ModuleLabel l;
    l.algebra = Algebra::N2;
    l.family = Family::L;
    l.i = imod(i, 4);
    l.p = std::move(p);
    l.r = r;
    return l;
}

ModuleLabel n2_D(long i, Rational p, long r, long s, bool plus) {
    ModuleLabel l;
    l.algebra = Algebra::N2;
    l.family = plus ? Family::DPlus : Family::DMinus;
    l.i = imod(i, 4);
    l.p = std::move(p);
    l.r = r;
    l.s = s;
    return l;
}

ModuleLabel n2_E(long i, Rational p, long r, long s) {
    ModuleLabel l;
    l.algebra = Algebra::N2;
    l.family = Family::ETypical;
    l.i = imod(i, 4);
    l.lambda = rat_mod(p - l.i, Rational(2));
    l.p = std::move(p);
    l.r = r;
    l.s = s;
    return l;
}

ModuleLabel n2_Epm(long i, Rational p, long r, long s, bool plus) {
    ModuleLabel l;
    l.algebra = Algebra::N2;
    l.family = plus ? Family::EPlus : Family::EMinus;
    l.i = imod(i, 4);
    l.p = std::move(p);
    l.r = r;
    l.s = s;
    return l;
}

ModuleLabel n2_S(long i, Rational p, long r, long s) {
    ModuleLabel l;
    l.algebra = Algebra::N2;
    l.family = Family::Staggered;
    l.i = imod(i, 4);
    l.p = std::move(p);
    l.r = r;
    l.s = s;
    return l;
}

ModuleLabel sl2_L(long r, long flow) {
    ModuleLabel l;
    l.algebra = Algebra::SL2;
    l.family = Family::L;
    l.r = r;
    l.flow = flow;
    return l;
}

ModuleLabel sl2_D(long r, long s, bool plus, long flow) {
    ModuleLabel l;
    l.algebra = Algebra::SL2;
    l.family = plus ? Family::DPlus : Family::DMinus;
    l.r = r;
    l.s = s;
    l.flow = flow;
    return l;
}

ModuleLabel sl2_E(Rational lambda, long r, long s, long flow) {
    ModuleLabel l;
    l.algebra = Algebra::SL2;
    l.family = Family::ETypical;
    l.lambda = rat_mod(lambda, Rational(2));
    l.r = r;
    l.s = s;
    l.flow = flow;
    return l;
}

void GrothVector::add(const ModuleLabel& l, long mult) {
    if (mult == 0) return;
    long& slot = terms[l];
    slot += mult;
    if (slot == 0) terms.erase(l);
}

GrothVector& GrothVector::operator+=(const GrothVector& o) {
    for (const auto& [l, m] : o.terms) add(l, m);
    return *this;
}

bool operator==(const GrothVector& a, const GrothVector& b) { return a.terms == b.terms; }

long GrothVector::total_multiplicity() const {
    long t = 0;
    for (const auto& [l, m] : terms) t += m;
    return t;
}

std::string groth_str(const GrothVector& g) {
    if (g.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, m] : g.terms) {
        if (!first) os << " + ";
        first = false;
        if (m != 1) os << m << "*";
        os << label_str(l);
    }
    return os.str();
}

Weights weights(const MinimalModel& m, long r, long s, const Rational& p) {
    if (r < 1 || r > m.u - 1 || s < 0 || s > m.v - 1)
        throw MathError(Errc::LabelOutOfRange, "weights: (r,s) out of range");
    Rational t = m.t();
    Weights w;
    w.lambda = Rational(r - 1) - t * s;
    Rational rts = Rational(r) - t * s;
    w.delta_sl2 = (rts * rts - 1) / (4 * t);
    w.h_n2 = w.delta_sl2 - p * p / (4 * t);
    return w;
}

namespace {

bool on_two_lattice(const Rational& a, const Rational& b) {
    Rational d = (a - b) / 2;
    d.canonicalize();
    return d.get_den() == 1;
}

/* lambda_{r,s} for arbitrary integers r, s (extended range). */
Rational lambda_ext(const MinimalModel& m, long r, long s) { return Rational(r - 1) - m.t() * s; }

}  // namespace

void validate_label(const MinimalModel& m, const ModuleLabel& l) {
    auto bad = [&](const std::string& msg) { throw MathError(Errc::LabelOutOfRange, msg + ": " + label_str(l)); };
    auto parity_bad = [&](const std::string& msg) { throw MathError(Errc::ParityMismatch, msg + ": " + label_str(l)); };
    switch (l.algebra) {
        case Algebra::Ghost:
            if (l.i < 0 || l.i > 3) bad("ghost sector out of range");
            return;
        case Algebra::Fock:
            return;
        case Algebra::Virasoro:
            if (l.r < 1 || l.r > m.u - 1 || l.s < 1 || l.s > m.v - 1) bad("Virasoro Kac label out of range");
            return;
        case Algebra::SL2: {
            if (l.r < 1 || l.r > m.u - 1) bad("sl2 r out of range");
            switch (l.family) {
                case Family::L:
                    if (l.s != 0) bad("sl2 L needs s = 0");
                    return;
                case Family::DPlus:
                case Family::DMinus:
                    if (m.v < 2 || l.s < 1 || l.s > m.v - 1) bad("sl2 D needs 1 <= s <= v-1");
                    return;
                case Family::ETypical: {
                    if (m.v < 2 || l.s < 1 || l.s > m.v - 1) bad("sl2 E needs 1 <= s <= v-1");
                    Rational lam = rat_mod(l.lambda, Rational(2));
                    if (on_two_lattice(lam, lambda_ext(m, l.r, l.s)) ||
                        on_two_lattice(lam, lambda_ext(m, m.u - l.r, m.v - l.s)))
                        bad("sl2 E weight is atypical");
                    return;
                }
                case Family::EPlus:
                case Family::EMinus:
                    if (m.v < 2 || l.s < 1 || l.s > m.v - 1) bad("sl2 E+- needs 1 <= s <= v-1");
                    return;
                default: bad("not an sl2 family");
            }
            return;
        }
        case Algebra::N2: {
            if (l.i < 0 || l.i > 3) bad("sector index out of range");
            if (l.r < 1 || l.r > m.u - 1) bad("r out of range");
            long smin = 1, smax = m.v - 1;
            switch (l.family) {
                case Family::L: smin = 0; smax = 0; break;
                case Family::Staggered: smin = 0; smax = m.v - 1; break;
                case Family::DPlus:
                case Family::DMinus:
                case Family::ETypical:
                case Family::EPlus:
                case Family::EMinus:
                    if (m.v < 2) bad("family requires v >= 2");
                    break;
                default: bad("not an N=2 family");
            }
            if (l.family == Family::Staggered && m.v < 2) bad("staggered modules require v >= 2");
            if (l.s < smin || l.s > smax) bad("s out of range");
            Rational lam = lambda_ext(m, l.r, l.s);
            // the E- standard is the conjugate of E+: its weight support is -lambda_{r,s} + 2Z
            if (l.family == Family::EMinus) lam = lambda_ext(m, m.u - l.r, m.v - l.s);
            if (l.family == Family::ETypical) {
                lam = rat_mod(l.p - l.i, Rational(2));
                if (!on_two_lattice(l.lambda, lam)) parity_bad("stored lambda inconsistent with p and i");
                if (on_two_lattice(lam, lambda_ext(m, l.r, l.s)) ||
                    on_two_lattice(lam, lambda_ext(m, m.u - l.r, m.v - l.s)))
                    bad("typical weight lies on an atypical point");
                return;
            }
            if (!on_two_lattice(l.p, lam + l.i)) parity_bad("momentum off the sector lattice");
            return;
        }
    }
}

HighestWeightData dictionary_unitary(const MinimalModel& m, long i, long p, long r) {
    if (!m.unitary()) throw MathError(Errc::LabelOutOfRange, "dictionary_unitary needs v = 1");
    long u = m.u;
    if (r < 1 || r > u - 1) throw MathError(Errc::LabelOutOfRange, "dictionary_unitary: r out of range");
    long i0 = imod(i, 4);
    if (imod(p - (i0 + r - 1), 2) != 0)
        throw MathError(Errc::ParityMismatch, "dictionary_unitary: p is off the sector lattice");
    // reduce into the fundamental window p in {-r, ..., 2u-r-1}
    long pw = imod(p + r, 2 * u) - r;
    bool flip = i0 >= 2;
    bool ramond = (i0 % 2) == 1;
    Rational dtilde = rat(r * r - pw * pw - 1, 4 * u);
    HighestWeightData h;
    h.sector = ramond ? Sector::R : Sector::NS;
    bool plus;
    if (!ramond) {
        if (pw <= r - 1) {
            plus = true;
            h.j = rat(pw, u);
            h.delta = dtilde;
        } else {
            plus = false;
            h.j = rat(pw, u) - 1;
            h.delta = dtilde + rat(pw - r, 2);
        }
    } else {
        if (pw <= r - 2) {
            plus = false;
            h.j = rat(pw, u) + rat(1, 2);
            h.delta = dtilde + rat(1, 8);
        } else {
            plus = true;
            h.j = rat(pw, u) - rat(1, 2);
            h.delta = dtilde + rat(1, 8) + rat(pw - r, 2);
        }
    }
    if (flip) plus = !plus;
    h.parity = plus ? Parity::Even : Parity::Odd;
    return h;
}

namespace {

/* Case analysis for folded labels: L, D+ with s <= v-2, or typical E. */
HighestWeightData dictionary_nonunitary_core(const MinimalModel& m, const ModuleLabel& l) {
    Rational t = m.t();
    Weights w = weights(m, l.r, l.s, l.p);
    bool ramond = (l.i % 2) == 1;
    bool flip = l.i >= 2;
    HighestWeightData h;
    h.sector = ramond ? Sector::R : Sector::NS;
    bool plus = true;
    const Rational& p = l.p;
    if (l.family == Family::L) {
        Rational rr(l.r);
        if (!ramond) {
            if (p <= -rr - 1) {
                plus = false; h.j = p / t + 1; h.delta = w.h_n2 - (p + rr) / 2;
            } else if (p <= rr - 1) {
                plus = true; h.j = p / t; h.delta = w.h_n2;
            } else {
                plus = false; h.j = p / t - 1; h.delta = w.h_n2 + (p - rr) / 2;
            }
        } else {
            if (p <= -rr - 2) {
                plus = true; h.j = p / t + rat(3, 2); h.delta = w.h_n2 + rat(1, 8) - (p + rr) / 2;
            } else if (p <= rr - 2) {
                plus = false; h.j = p / t + rat(1, 2); h.delta = w.h_n2 + rat(1, 8);
            } else {
                plus = true; h.j = p / t - rat(1, 2); h.delta = w.h_n2 + rat(1, 8) + (p - rr) / 2;
            }
        }
    } else if (l.family == Family::DPlus) {
        const Rational& lam = w.lambda;
        if (!ramond) {
            if (p <= lam) {
                plus = true; h.j = p / t; h.delta = w.h_n2;
            } else {
                plus = false; h.j = p / t - 1; h.delta = w.h_n2 + (p - lam - 1) / 2;
            }
        } else {
            if (p <= lam - 1) {
                plus = false; h.j = p / t + rat(1, 2); h.delta = w.h_n2 + rat(1, 8);
            } else {
                plus = true; h.j = p / t - rat(1, 2); h.delta = w.h_n2 + rat(1, 8) + (p - lam - 1) / 2;
            }
        }
    } else {  // ETypical
        if (!ramond) {
            plus = true; h.j = p / t; h.delta = w.h_n2;
        } else {
            plus = false; h.j = p / t + rat(1, 2); h.delta = w.h_n2 + rat(1, 8);
        }
    }
    if (flip) plus = !plus;
    h.parity = plus ? Parity::Even : Parity::Odd;
    return h;
}

}  // namespace

HighestWeightData dictionary_nonunitary(const MinimalModel& m, const ModuleLabel& label) {
    if (m.unitary()) throw MathError(Errc::LabelOutOfRange, "dictionary_nonunitary needs v >= 2");
    validate_label(m, label);
    if (label.algebra != Algebra::N2 ||
        (label.family != Family::L && label.family != Family::DPlus && label.family != Family::DMinus &&
         label.family != Family::ETypical))
        throw MathError(Errc::LabelOutOfRange, "dictionary covers L, D and E labels only: " + label_str(label));
    // the boundary family D_{r,v-1} is a flow image of L; its extremal data
    // is the L-family entry, so fold aliases away first
    ModuleLabel l = label.family == Family::ETypical ? label : canonical_label(m, label);
    return dictionary_nonunitary_core(m, l);
}

HighestWeightData dictionary(const MinimalModel& m, const ModuleLabel& label) {
    if (m.unitary()) {
        if (label.algebra != Algebra::N2 || label.family != Family::L)
            throw MathError(Errc::LabelOutOfRange, "unitary dictionary covers L labels only");
        if (!is_integer(label.p)) throw MathError(Errc::LabelOutOfRange, "unitary momentum must be integral");
        return dictionary_unitary(m, label.i, to_long(rat_num(label.p)), label.r);
    }
    ModuleLabel c = canonical_label(m, label);
    return dictionary_nonunitary(m, c);
}

ModuleLabel canonical_label(const MinimalModel& m, const ModuleLabel& label) {
    ModuleLabel l = label;
    l.i = imod(l.i, 4);
    if (l.algebra == Algebra::Ghost || l.algebra == Algebra::Fock || l.algebra == Algebra::Virasoro) {
        validate_label(m, l);
        return l;
    }
    Rational t = m.t();
    if (l.algebra == Algebra::SL2) {
        // D- is a flow image of D+ (or of L at the s boundary); fold it away.
        if (l.family == Family::DMinus) {
            long r = l.r, s = l.s;
            l.flow -= 1;
            if (s == m.v - 1) {
                l.family = Family::L;
                l.r = m.u - r;
                l.s = 0;
            } else {
                l.family = Family::DPlus;
                l.r = m.u - r;
                l.s = m.v - 1 - s;
            }
        }
        // sigma(L_r) = D+_{u-r, v-1}: fold the boundary D+ back onto L
        if (l.family == Family::DPlus && l.s == m.v - 1) {
            l.family = Family::L;
            l.r = m.u - l.r;
            l.s = 0;
            l.flow += 1;
        }
        if (l.family == Family::ETypical) {
            l.lambda = rat_mod(l.lambda, Rational(2));
            long r2 = m.u - l.r, s2 = m.v - l.s;
            if (std::make_pair(l.s, l.r) > std::make_pair(s2, r2)) {
                l.r = r2;
                l.s = s2;
            }
        }
        validate_label(m, l);
        return l;
    }
    // N=2 labels
    if (m.unitary()) {
        if (l.family != Family::L) throw MathError(Errc::LabelOutOfRange, "unitary model has only L labels");
        validate_label(m, l);
        long u = m.u;
        long p = to_long(rat_num(l.p));  // integral by validation
        long pw = imod(p + l.r, 2 * u) - l.r;
        if (pw >= l.r) {  // map to the reduced half-window via (i+2, p-u, u-r)
            l.i = imod(l.i + 2, 4);
            pw -= u;
            l.r = u - l.r;
        }
        l.p = Rational(pw);
        l.parity = dictionary_unitary(m, l.i, pw, l.r).parity;
        return l;
    }
    // v >= 2
    if (l.family == Family::DMinus) {
        // coset of D-_{r,s} at (i,p) = coset of sigma^{-1} X at (i,p) = X at (i-2, p+t)
        long r = l.r, s = l.s;
        l.i = imod(l.i - 2, 4);
        l.p = l.p + t;
        if (s == m.v - 1) {
            l.family = Family::L;
            l.r = m.u - r;
            l.s = 0;
        } else {
            l.family = Family::DPlus;
            l.r = m.u - r;
            l.s = m.v - 1 - s;
        }
    }
    if (l.family == Family::DPlus && l.s == m.v - 1) {
        // D^{[i]}_{p; r, v-1} = L^{[i+2]}_{p-t; u-r}
        l.family = Family::L;
        l.i = imod(l.i + 2, 4);
        l.p = l.p - t;
        l.r = m.u - l.r;
        l.s = 0;
    }
    if (l.family == Family::Staggered && l.s == m.v - 1) {
        // S^{[i]}_{p; r, v-1} = S^{[i-2]}_{p-t; u-r, 0}
        l.i = imod(l.i - 2, 4);
        l.p = l.p - t;
        l.r = m.u - l.r;
        l.s = 0;
    }
    if (l.family == Family::ETypical) {
        l.lambda = rat_mod(l.p - l.i, Rational(2));
        long r2 = m.u - l.r, s2 = m.v - l.s;
        if (std::make_pair(l.s, l.r) > std::make_pair(s2, r2)) {
            l.r = r2;
            l.s = s2;
        }
    }
    validate_label(m, l);
    if (l.family == Family::L || l.family == Family::DPlus || l.family == Family::ETypical)
        l.parity = dictionary_nonunitary_core(m, l).parity;
    return l;
}

ModuleLabel twist_label(const MinimalModel& m, const ModuleLabel& label, long half_flows, bool conjugate) {
    ModuleLabel l = canonical_label(m, label);
    Rational t = m.t();
    if (l.algebra == Algebra::SL2) {
        if (conjugate) {
            l.flow = -l.flow;
            switch (l.family) {
                case Family::L: break;
                case Family::DPlus: l.family = Family::DMinus; break;
                case Family::DMinus: l.family = Family::DPlus; break;
                case Family::ETypical: l.lambda = rat_mod(-l.lambda, Rational(2)); break;
                case Family::EPlus: l.family = Family::EMinus; break;
                case Family::EMinus: l.family = Family::EPlus; break;
                default: break;
            }
        }
        if (half_flows % 2 != 0)
            throw MathError(Errc::LabelOutOfRange, "sl2 labels admit only integer spectral flow");
        l.flow += half_flows / 2;
        return canonical_label(m, l);
    }
    if (l.algebra != Algebra::N2)
        throw MathError(Errc::LabelOutOfRange, "twist_label covers N=2 and sl2 labels");
    if (conjugate) {
        l.i = imod(-l.i, 4);
        l.p = Rational(-l.p);
        switch (l.family) {
            case Family::L: break;
            case Family::DPlus: l.family = Family::DMinus; break;
            case Family::ETypical: l.lambda = rat_mod(-l.lambda, Rational(2)); break;
            case Family::EPlus: l.family = Family::EMinus; break;
            case Family::EMinus: l.family = Family::EPlus; break;
            case Family::Staggered:
                // conj(S^{[i]}_{p;r,s}) = S^{[-i-2]}_{t-p; u-r, v-1-s}
                l.i = imod(l.i - 2, 4);
                l.p = l.p + t;
                l.r = m.u - l.r;
                l.s = m.v - 1 - l.s;
                break;
            default: break;
        }
    }
    // each sigma^{1/2}: (i, p) -> (i-1, p-1)
    l.i = imod(l.i - half_flows, 4);
    l.p = l.p - half_flows;
    return canonical_label(m, l);
}

std::vector<Orbit> orbits(long u) {
    MinimalModel m(u, 1);
    std::vector<ModuleLabel> all;
    for (long r = 1; r <= u - 1; ++r)
        for (long p = -r; p <= r - 1; ++p)
            for (long i = 0; i < 4; ++i)
                if (imod(p - (i + r - 1), 2) == 0) all.push_back(canonical_label(m, n2_L(i, Rational(p), r)));
    std::set<ModuleLabel> seen;
    std::vector<Orbit> out;
    for (const auto& start : all) {
        if (seen.count(start)) continue;
        Orbit orb;
        orb.representative = start;
        std::set<ModuleLabel> members;
        ModuleLabel cur = start;
        while (!members.count(cur)) {
            members.insert(cur);
            cur = twist_label(m, cur, 1, false);
        }
        orb.length = static_cast<long>(members.size());
        orb.parity_closed = false;
        for (const auto& lbl : members) {
            ModuleLabel rev = lbl;
            rev.i = imod(rev.i + 2, 4);
            rev = canonical_label(m, rev);
            if (members.count(rev)) {
                orb.parity_closed = true;
                break;
            }
        }
        for (const auto& lbl : members) seen.insert(lbl);
        out.push_back(orb);
    }
    return out;
}

KacTable kac_table(long u) {
    MinimalModel m(u, 1);
    KacTable kt;
    kt.u = u;
    for (long r = 1; r <= u - 1; ++r) {
        for (long p = -r; p <= 2 * u - r - 1; ++p) {
            long i = imod(p + r, 2) == 0 ? 1 : 0;  // Ramond cells have p+r even
            kt.full[{r, p}] = dictionary_unitary(m, i, p, r);
        }
        for (long p = -r; p <= r - 1; ++p) {
            long i = imod(p + r, 2) == 0 ? 1 : 0;
            kt.reduced[{r, p}] = dictionary_unitary(m, i, p, r);
        }
    }
    return kt;
}

namespace {

/* D-family factor with the boundary conventions applied:
 *   s = -1: D^{[i]}_{p;r,-1} = D^{[i+2]}_{p+t;u-r,v-2}
 *   s =  0: the L-family label
 *   s =  v: D^{[i]}_{p;r,v}  = D^{[i-2]}_{p-t;u-r,1}
 */
ModuleLabel d_factor(const MinimalModel& m, long i, Rational p, long r, long s) {
    Rational t = m.t();
    if (s == -1) {
        i += 2;
        p = p + t;
        r = m.u - r;
        s = m.v - 2;
    } else if (s == m.v) {
        i -= 2;
        p = p - t;
        r = m.u - r;
        s = 1;
    }
    if (s == 0) return canonical_label(m, n2_L(i, p, r));
    return canonical_label(m, n2_D(i, p, r, s, true));
}

}  // namespace

GrothVector groth_decompose(const MinimalModel& m, const ModuleLabel& label) {
    ModuleLabel l = canonical_label(m, label);
    GrothVector g;
    Rational t = m.t();
    switch (l.family) {
        case Family::EPlus:
            g.add(d_factor(m, l.i, l.p, l.r, l.s), 1);
            g.add(d_factor(m, l.i + 2, l.p + t, l.r, l.s - 1), 1);
            break;
        case Family::EMinus:
            g.add(d_factor(m, l.i + 2, l.p + t, m.u - l.r, m.v - l.s - 1), 1);
            g.add(d_factor(m, l.i, l.p, m.u - l.r, m.v - l.s), 1);
            break;
        case Family::Staggered:
            g.add(d_factor(m, l.i, l.p, l.r, l.s), 2);
            g.add(d_factor(m, l.i + 2, l.p + t, l.r, l.s - 1), 1);
            g.add(d_factor(m, l.i - 2, l.p - t, l.r, l.s + 1), 1);
            break;
        default:
            g.add(l, 1);
            break;
    }
    return g;
}

bool is_highest_weight(const MinimalModel& m, const ModuleLabel& label) {
    if (label.family != Family::EPlus)
        throw MathError(Errc::LabelOutOfRange, "is_highest_weight applies to E+ labels");
    validate_label(m, label);
    Rational lam = lambda_ext(m, label.r, label.s);
    return label.p >= lam + 1;
}

}  // namespace n2coset
