#include "n2coset/special_functions.hpp"

#include <cstdlib>
#include <numeric>

namespace n2coset {

namespace {

const Rational kEta24 = rat(1, 24);

/* prod_{i>=1} (1-q^i) to order N, exponents on Z. */
Series2 euler_product(const Rational& N) {
    Series2 acc = Series2::one(N);
    for (long i = 1; Rational(i) <= N; ++i) {
        Series2 f = Series2::one(N);
        f.add_term(Rational(i), Rational(0), Int(-1));
        acc = mul(acc, f);
    }
    return acc;
}

void check_theta_index(ThetaIndex idx) {
    if (idx.i < 1 || idx.i > 4) throw MathError(Errc::BadInput, "theta index must be 1..4");
}

}  // namespace

Series2 eta(const Rational& N) {
    return euler_product(N - kEta24).shifted(Int(1), Rational(0), kEta24);
}

Series2 eta_inv(const Rational& N) {
    // partition numbers by the pentagonal recurrence
    long nmax = to_long(rat_floor(N + kEta24));
    if (nmax < 0) return Series2::zero(N, -kEta24);
    std::vector<Int> p(static_cast<std::size_t>(nmax) + 1);
    p[0] = 1;
    for (long n = 1; n <= nmax; ++n) {
        Int acc = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int term = 0;
            if (g1 <= n) term += p[n - g1];
            if (g2 <= n) term += p[n - g2];
            if (k % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        p[n] = acc;
    }
    Series2 r = Series2::zero(N, -kEta24);
    for (long n = 0; n <= nmax; ++n) r.add_term(Rational(n) - kEta24, Rational(0), p[n]);
    return r;
}

Series2 theta(ThetaIndex idx, const Rational& N) {
    check_theta_index(idx);
    bool half = (idx.i == 1 || idx.i == 2);
    bool alternating = (idx.i == 1 || idx.i == 4);
    Series2 r = Series2::zero(N);
    for (long twice_n = half ? 1 : 0;; twice_n += 2) {
        Rational n = rat(twice_n, 2);
        Rational e = n * n / 2;
        if (e > N) break;
        for (int sgn : {+1, -1}) {
            if (twice_n == 0 && sgn < 0) continue;
            Rational nn = sgn > 0 ? n : Rational(-n);
            Int c = 1;
            if (alternating) {
                Rational ex = half ? nn - rat(1, 2) : nn;  // (-1)^n resp. (-1)^{n-1/2}
                if (parity_sign(ex) < 0) c = -1;
            }
            r.add_term(e, nn, c);
        }
    }
    return r;
}

Series2 theta_product_form(ThetaIndex idx, const Rational& N) {
    check_theta_index(idx);
    bool half = (idx.i == 1 || idx.i == 2);
    int zsign = (idx.i == 1 || idx.i == 4) ? -1 : +1;
    Series2 acc = Series2::one(N);
    for (long i = 1;; ++i) {
        Rational e = half ? Rational(i) : Rational(i) - rat(1, 2);
        if (e > N && Rational(i) > N) break;
        if (Rational(i) <= N) {
            Series2 f = Series2::one(N);
            f.add_term(Rational(i), Rational(0), Int(-1));
            acc = mul(acc, f);
        }
        if (e <= N) {
            Series2 g = Series2::one(N);
            g.add_term(e, Rational(1), Int(zsign));
            acc = mul(acc, g);
            Series2 h = Series2::one(N);
            h.add_term(e, Rational(-1), Int(zsign));
            acc = mul(acc, h);
        }
    }
    if (half) {
        Series2 pre = Series2::zero(N);
        pre.add_term(rat(1, 8), rat(1, 2), Int(1));
        pre.add_term(rat(1, 8), rat(-1, 2), Int(zsign));
        acc = mul(acc, pre);
    }
    acc.tighten_offset();
    return acc;
}

Series2 theta_quotient(ThetaIndex idx, bool z_inverse_dir, const Rational& e, int eps, const Rational& N) {
    check_theta_index(idx);
    if (eps != 1 && eps != -1) throw MathError(Errc::BadInput, "eps must be +-1");
    if (e == 0) {
        bool half = (idx.i == 1 || idx.i == 2);
        int zsign = (idx.i == 1) ? -1 : +1;
        if (!half || zsign != eps)
            throw MathError(Errc::BadInput, "denominator at q^0 is not a factor of this theta");
        Series2 acc = Series2::one(N);
        for (long i = 1; Rational(i) <= N; ++i) {
            Series2 f = Series2::one(N);
            f.add_term(Rational(i), Rational(0), Int(-1));
            Series2 g = Series2::one(N);
            g.add_term(Rational(i), Rational(1), Int(zsign));
            Series2 h = Series2::one(N);
            h.add_term(Rational(i), Rational(-1), Int(zsign));
            acc = mul(acc, mul(f, mul(g, h)));
        }
        // theta/(1 + eps z^{-1}) leaves z^{1/2} * prod, theta/(1 + eps z)
        // leaves eps z^{-1/2} * prod (split of z^{1/2} + eps z^{-1/2})
        Rational zpre = z_inverse_dir ? rat(1, 2) : rat(-1, 2);
        Int c = z_inverse_dir ? Int(1) : Int(eps);
        return acc.shifted(c, zpre, rat(1, 8));
    }
    Series2 th = theta(idx, N);
    Series2 geom = Series2::zero(N);
    long zdir = z_inverse_dir ? -1 : +1;
    if (e > 0) {
        // 1/(1 + eps z^{zdir} q^e) = sum_{s>=0} (-eps)^s z^{zdir s} q^{e s}
        for (long s = 0; Rational(s) * e <= N; ++s)
            geom.add_term(Rational(s) * e, rat(zdir * s, 1), (s % 2 == 0) ? Int(1) : Int(-eps));
    } else {
        // wrap to the convergent side: -sum_{s>=1} (-eps)^s z^{-zdir s} q^{|e| s}
        Rational ae = -e;
        for (long s = 1; Rational(s) * ae <= N; ++s)
            geom.add_term(Rational(s) * ae, rat(-zdir * s, 1), (s % 2 == 0) ? Int(-1) : Int(eps));
    }
    return mul(th, geom);
}

Series2 phi_ell(long ell, const Rational& N) {
    Series2 r = Series2::zero(N);
    long abs_ell = std::labs(ell);
    for (long s = 0;; ++s) {
        Rational e = Rational(ell) * s + rat(s, 2) * Rational(s + 1);
        if (e > N && s > abs_ell) break;  // monotone past the vertex
        if (e <= N) r.add_term(e, Rational(0), (s % 2 == 0) ? Int(1) : Int(-1));
    }
    r.tighten_offset();
    return r;
}

Series2 eg_kernel(const Rational& N, long z_window) {
    Series2 sum = Series2::zero(N);
    long lmax = z_window / 2;
    long lmin = -std::min<long>(lmax, std::max<long>(0, to_long(rat_floor(N))));
    for (long l = lmin; l <= lmax; ++l) sum += phi_ell(l, N).shifted(Int(1), rat(2 * l, 1), Rational(0));
    Series2 ep = euler_product(N);
    Series2 inv2 = mul_inverse(mul(ep, ep)).truncated(N);
    Series2 r = mul(sum, inv2);
    r.tighten_offset();
    return r;
}

Series2 appell_lerch(const AppellArgs& args, const Rational& N) {
    const long n = args.level;
    if (n < 1) throw MathError(Errc::BadInput, "Appell-Lerch level must be >= 1");
    if (args.base.z_exp != 0 || args.base.coeff != 1 || args.base.q_exp <= 0)
        throw MathError(Errc::BadInput, "base must be a pure positive q-power");
    if ((args.x.coeff != 1 && args.x.coeff != -1) || (args.y.coeff != 1 && args.y.coeff != -1))
        throw MathError(Errc::BadInput, "x and y must carry coefficient +-1");
    const Rational& bq = args.base.q_exp;
    const bool xneg = args.x.coeff < 0, yneg = args.y.coeff < 0;

    Series2 r = Series2::zero(N);
    auto term_sign = [&](long xpow_parity, long ypow_parity) -> Int {
        int s = 1;
        if (xneg && xpow_parity != 0) s = -s;
        if (yneg && ypow_parity != 0) s = -s;
        return Int(s);
    };

    // quadrant i, j >= 0: rows in j, geometric direction in i
    Rational prev_base{0};
    for (long j = 0;; ++j) {
        Rational row_base = Rational(n * j) * args.x.q_exp + rat(n, 2) * Rational(j) * Rational(j) * bq;
        if (j > 1 && row_base > N && row_base > prev_base) break;
        Rational growth = args.x.q_exp + args.y.q_exp + Rational(j) * bq;
        if (growth < 0)
            throw MathError(Errc::NonTerminating, "negative q-growth along i at j=" + std::to_string(j));
        if (growth == 0) {
            if (row_base <= N)
                throw MathError(Errc::NonTerminating, "flat q-growth along i at j=" + std::to_string(j));
        } else {
            for (long i = 0;; ++i) {
                Rational e = row_base + Rational(i) * growth;
                if (e > N) break;
                Rational ze = Rational(i + n * j) * args.x.z_exp + Rational(i) * args.y.z_exp;
                r.add_term(e, ze, term_sign((i + n * j) % 2, i % 2));
            }
        }
        prev_base = row_base;
    }
    // quadrant i, j <= -1 (overall minus sign); substitute i=-i', j=-j'
    prev_base = 0;
    for (long jp = 1;; ++jp) {
        Rational row_base = Rational(-(n * jp)) * args.x.q_exp + rat(n, 2) * Rational(jp) * Rational(jp) * bq;
        Rational growth = Rational(jp) * bq - args.x.q_exp - args.y.q_exp;
        Rational row_min = row_base + growth;  // at i' = 1
        if (jp > 1 && row_min > N && row_base > prev_base) break;
        if (growth < 0)
            throw MathError(Errc::NonTerminating, "negative q-growth along i at j=-" + std::to_string(jp));
        if (growth == 0) {
            if (row_min <= N)
                throw MathError(Errc::NonTerminating, "flat q-growth along i at j=-" + std::to_string(jp));
        } else {
            for (long ip = 1;; ++ip) {
                Rational e = row_base + Rational(ip) * growth;
                if (e > N) break;
                Rational ze = Rational(-(ip + n * jp)) * args.x.z_exp + Rational(-ip) * args.y.z_exp;
                r.add_term(e, ze, -term_sign((ip + n * jp) % 2, ip % 2));
            }
        }
        prev_base = row_base;
    }
    r.tighten_offset();
    return r;
}

Series2 vir_char(long u, long v, long r, long s, const Rational& N) {
    if (u < 2 || v < 2 || std::gcd(u, v) != 1 || r < 1 || r > u - 1 || s < 1 || s > v - 1)
        throw MathError(Errc::LabelOutOfRange, "vir_char label (u,v,r,s) out of range");
    Rational Nt = N + 1;
    Series2 numer = Series2::zero(Nt);
    for (long nn = 0;; ++nn) {
        bool any = false;
        for (long sgn : {+1, -1}) {
            if (nn == 0 && sgn < 0) continue;
            long m = sgn * nn;
            long a1 = 2 * u * v * m + v * r - u * s;
            long a2 = 2 * u * v * m + v * r + u * s;
            Rational e1 = rat(a1 * a1, 4 * u * v);
            Rational e2 = rat(a2 * a2, 4 * u * v);
            if (e1 <= Nt) {
                numer.add_term(e1, Rational(0), Int(1));
                any = true;
            }
            if (e2 <= Nt) {
                numer.add_term(e2, Rational(0), Int(-1));
                any = true;
            }
        }
        if (!any && nn > 0) break;
    }
    Series2 res = mul(eta_inv(Nt), numer).truncated(N);
    res.tighten_offset();
    return res;
}

}  // namespace n2coset
