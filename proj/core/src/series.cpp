#include "n2coset/series.hpp"

#include <algorithm>

namespace n2coset {

namespace {

/* exponent * D as an exact integer key; throws if off-lattice. */
bool scaled_key(const Rational& e, long d, long& out) {
    Rational s = e * d;
    s.canonicalize();
    if (s.get_den() != 1) return false;
    out = to_long(Int(s.get_num()));
    return true;
}

long scaled_key_or_throw(const Rational& e, long d, const char* what) {
    long k;
    if (!scaled_key(e, d, k)) throw MathError(Errc::BadInput, std::string("exponent off lattice in ") + what);
    return k;
}

/* smallest lattice refinement factor f with e on (1/(d*f))Z */
long lattice_refinement(const Rational& e, long d) {
    Rational s = e * d;
    s.canonicalize();
    return to_long(Int(s.get_den()));
}

}  // namespace

void Series2::set_window(const Rational& offset, const Rational& order) {
    q_offset_ = offset;
    q_order_ = order;
}

Series2 Series2::zero(const Rational& order, const Rational& offset) {
    Series2 s;
    s.set_window(offset, order);
    return s;
}

Series2 Series2::one(const Rational& order) {
    Series2 s = zero(order);
    s.add_term(Rational(0), Rational(0), Int(1));
    return s;
}

Series2 Series2::monomial(const Monomial& m, const Rational& order) {
    Series2 s = zero(order, std::min(m.q_exp, Rational(0)));
    s.add_term(m.q_exp, m.z_exp, m.coeff);
    return s;
}

std::size_t Series2::term_count() const {
    std::size_t n = 0;
    for (const auto& [q, lvl] : t_) n += lvl.size();
    return n;
}

void Series2::ensure_lattice(long dz, long dq) {
    long ndz = lcm_long(dz_, dz), ndq = lcm_long(dq_, dq);
    if (ndz == dz_ && ndq == dq_) return;
    long fz = ndz / dz_, fq = ndq / dq_;
    Table nt;
    for (auto& [q, lvl] : t_) {
        ZLevel nl;
        for (auto& [z, c] : lvl) nl.emplace(z * fz, std::move(c));
        nt.emplace(q * fq, std::move(nl));
    }
    t_ = std::move(nt);
    dz_ = ndz;
    dq_ = ndq;
}

void Series2::add_term(const Rational& qe, const Rational& ze, const Int& c) {
    if (c == 0) return;
    if (qe > q_order_) return;
    long fq = lattice_refinement(qe, dq_);
    long fz = lattice_refinement(ze, dz_);
    if (fq != 1 || fz != 1) ensure_lattice(dz_ * fz, dq_ * fq);
    long qk = scaled_key_or_throw(qe, dq_, "add_term");
    long zk = scaled_key_or_throw(ze, dz_, "add_term");
    auto& lvl = t_[qk];
    Int& slot = lvl[zk];
    slot += c;
    if (slot == 0) {
        lvl.erase(zk);
        if (lvl.empty()) t_.erase(qk);
    }
    if (qe < q_offset_) q_offset_ = qe;
}

Int Series2::coeff(const Rational& qe, const Rational& ze) const {
    long qk, zk;
    if (!scaled_key(qe, dq_, qk) || !scaled_key(ze, dz_, zk)) return Int(0);
    auto it = t_.find(qk);
    if (it == t_.end()) return Int(0);
    auto jt = it->second.find(zk);
    return jt == it->second.end() ? Int(0) : jt->second;
}

Rational Series2::min_q_exponent() const {
    if (t_.empty()) return q_offset_;
    return rat(t_.begin()->first, dq_);
}

void Series2::tighten_offset() {
    if (!t_.empty()) q_offset_ = rat(t_.begin()->first, dq_);
}

Rational Series2::max_abs_z_exponent() const {
    long m = 0;
    for (const auto& [q, lvl] : t_) {
        if (!lvl.empty()) {
            m = std::max({m, std::abs(lvl.begin()->first), std::abs(lvl.rbegin()->first)});
        }
    }
    return rat(m, dz_);
}

std::vector<Monomial> Series2::monomials() const {
    std::vector<Monomial> out;
    out.reserve(term_count());
    for (const auto& [q, lvl] : t_)
        for (const auto& [z, c] : lvl) out.push_back(Monomial{c, rat(z, dz_), rat(q, dq_)});
    return out;
}

Series2 Series2::truncated(const Rational& new_order) const {
    Series2 r = *this;
    r.q_order_ = std::min(q_order_, new_order);
    long cut;
    if (!scaled_key(r.q_order_, dq_, cut)) cut = to_long(rat_floor(r.q_order_ * dq_));
    r.t_.erase(r.t_.upper_bound(cut), r.t_.end());
    return r;
}

Series2 Series2::z_windowed(const Rational& w) const {
    Series2 r = zero(q_order_, q_offset_);
    r.dz_ = dz_;
    r.dq_ = dq_;
    Rational wd = w * dz_;
    for (const auto& [q, lvl] : t_) {
        ZLevel nl;
        for (const auto& [z, c] : lvl)
            if (Rational(std::abs(z)) <= wd) nl.emplace(z, c);
        if (!nl.empty()) r.t_.emplace(q, std::move(nl));
    }
    return r;
}

Series2 Series2::shifted(const Int& c, const Rational& ze, const Rational& qe) const {
    Series2 r;
    r.set_window(q_offset_ + qe, q_order_ + qe);
    if (c == 0) return r;
    r.dz_ = dz_ * lattice_refinement(ze, dz_);
    r.dq_ = dq_ * lattice_refinement(qe, dq_);
    long fz = r.dz_ / dz_, fq = r.dq_ / dq_;
    long zk = scaled_key_or_throw(ze, r.dz_, "shifted");
    long qk = scaled_key_or_throw(qe, r.dq_, "shifted");
    for (const auto& [q, lvl] : t_) {
        ZLevel nl;
        for (const auto& [z, co] : lvl) nl.emplace(z * fz + zk, Int(co * c));
        r.t_.emplace(q * fq + qk, std::move(nl));
    }
    return r;
}

Series2 Series2::negated() const {
    Series2 r = *this;
    for (auto& [q, lvl] : r.t_)
        for (auto& [z, c] : lvl) c = -c;
    return r;
}

Series2 add(const Series2& a, const Series2& b) {
    Series2 x = a, y = b;
    x.ensure_lattice(y.dz_, y.dq_);
    y.ensure_lattice(x.dz_, x.dq_);
    Series2 r = Series2::zero(std::min(x.q_order_, y.q_order_), std::min(x.q_offset_, y.q_offset_));
    r.dz_ = x.dz_;
    r.dq_ = x.dq_;
    long cut = to_long(rat_floor(r.q_order_ * r.dq_));
    r.t_ = std::move(x.t_);
    r.t_.erase(r.t_.upper_bound(cut), r.t_.end());
    for (auto& [q, lvl] : y.t_) {
        if (q > cut) break;
        auto& rl = r.t_[q];
        for (auto& [z, c] : lvl) {
            Int& slot = rl[z];
            slot += c;
            if (slot == 0) rl.erase(z);
        }
        if (rl.empty()) r.t_.erase(q);
    }
    r.tighten_offset();
    return r;
}

Series2 sub(const Series2& a, const Series2& b) { return add(a, b.negated()); }

Series2& Series2::operator+=(const Series2& b) {
    *this = add(*this, b);
    return *this;
}

Series2& Series2::operator-=(const Series2& b) {
    *this = add(*this, b.negated());
    return *this;
}

Series2 mul(const Series2& a, const Series2& b) {
    Series2 x = a, y = b;
    x.ensure_lattice(y.dz_, y.dq_);
    y.ensure_lattice(x.dz_, x.dq_);
    Rational order = std::min(x.q_order_ + y.q_offset_, y.q_order_ + x.q_offset_);
    Series2 r = Series2::zero(order, x.q_offset_ + y.q_offset_);
    r.dz_ = x.dz_;
    r.dq_ = x.dq_;
    if (x.t_.empty() || y.t_.empty()) return r;
    long cut = to_long(rat_floor(order * r.dq_));
    for (const auto& [qa, la] : x.t_) {
        long qb_max = cut - qa;
        if (!y.t_.empty() && y.t_.begin()->first > qb_max) continue;
        for (const auto& [qb, lb] : y.t_) {
            if (qb > qb_max) break;
            auto& rl = r.t_[qa + qb];
            for (const auto& [za, ca] : la) {
                for (const auto& [zb, cb] : lb) {
                    Int& slot = rl[za + zb];
                    slot += ca * cb;
                    if (slot == 0) rl.erase(za + zb);
                }
            }
            if (rl.empty()) r.t_.erase(qa + qb);
        }
    }
    r.tighten_offset();
    return r;
}

Series2 mul_inverse(const Series2& a) {
    if (a.is_zero()) throw MathError(Errc::NonInvertibleLeadingTerm, "zero series");
    const auto& lead_level = *a.table().begin();
    if (lead_level.second.size() != 1)
        throw MathError(Errc::NonInvertibleLeadingTerm, "lowest q-level has more than one z-term");
    const Int& lead_coeff = lead_level.second.begin()->second;
    if (lead_coeff != 1 && lead_coeff != -1)
        throw MathError(Errc::NonInvertibleLeadingTerm, "leading coefficient is not +-1");
    Rational lead_q = rat(lead_level.first, a.dq());
    Rational lead_z = rat(lead_level.second.begin()->first, a.dz());

    // a = L(1 - c) with val_q(c) > 0; a^{-1} = L^{-1} sum c^k.
    Rational tail_order = a.q_order() - lead_q;
    Series2 c = Series2::zero(tail_order);
    for (const auto& m : a.monomials()) {
        if (m.q_exp == lead_q && m.z_exp == lead_z) continue;
        // -(rest / L): divide by the leading monomial and flip sign
        Int cc = -m.coeff * lead_coeff;
        c.add_term(m.q_exp - lead_q, m.z_exp - lead_z, cc);
    }
    Series2 acc = Series2::one(tail_order);
    Series2 pw = Series2::one(tail_order);
    if (!c.is_zero()) {
        Rational val = c.min_q_exponent();
        if (val <= 0) throw MathError(Errc::NonInvertibleLeadingTerm, "tail has non-positive q-valuation");
        while (true) {
            pw = mul(pw, c);
            if (pw.is_zero()) break;
            acc += pw;
            if (pw.min_q_exponent() > tail_order) break;
        }
    }
    Int inv_lead = lead_coeff;  // (+-1)^{-1} = +-1
    return acc.shifted(inv_lead, -lead_z, -lead_q);
}

Series2 substitute(const Series2& a, bool z_flip, const Rational& z_qshift, bool z_invert) {
    Series2 r = Series2::zero(a.q_order(), std::min(a.q_offset(), Rational(0)));
    for (const auto& m : a.monomials()) {
        Int c = m.coeff;
        if (z_flip) {
            Rational ze = m.z_exp;
            ze.canonicalize();
            if (mpz_even_p(ze.get_den().get_mpz_t()))
                throw MathError(Errc::NonIntegralSignExponent,
                                "z-exponent " + rational_str(ze) + " has even denominator");
            if (parity_sign(ze) < 0) c = -c;
        }
        Rational nq = m.q_exp + m.z_exp * z_qshift;
        Rational nz = z_invert ? Rational(-m.z_exp) : m.z_exp;
        r.add_term(nq, nz, c);
    }
    return r;
}

Series2 coeff_z(const Series2& a, const Rational& alpha) {
    Series2 r = Series2::zero(a.q_order(), a.q_offset());
    long zk;
    if (!scaled_key(alpha, a.dz(), zk)) return r;
    for (const auto& [q, lvl] : a.table()) {
        auto it = lvl.find(zk);
        if (it != lvl.end()) r.add_term(rat(q, a.dq()), Rational(0), it->second);
    }
    return r;
}

bool equal_to_order(const Series2& a, const Series2& b, const Rational& N) {
    if (a.q_order() < N || b.q_order() < N) return false;
    Series2 d = sub(a, b);
    if (d.is_zero()) return true;
    return d.min_q_exponent() > N;
}

}  // namespace n2coset
