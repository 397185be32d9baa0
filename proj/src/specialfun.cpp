#include "ell32/specialfun.hpp"

#include "ell32/quadrature.hpp"

#include <algorithm>
#include <vector>

namespace ell32::sf {

namespace {

Real eps_target(int slack_bits = 10) {
    return ldexp(Real(1), int(-(precision_bits() - slack_bits)));
}

} // namespace

Cplx agm(Cplx a, Cplx g) {
    if (a.is_zero() || g.is_zero()) throw MathError("agm of zero");
    Real tol = ldexp(Real(1), int(-(precision_bits() - 4)));
    for (int it = 0; it < 400; ++it) {
        Cplx am = (a + g) / Real(2);
        Cplx gm = sqrt(a * g);
        // principal AGM: pick the square root with |am - gm| <= |am + gm|,
        // breaking ties toward Im(gm/am) > 0
        Cplx diff = am - gm, sum = am + gm;
        Real nd = norm(diff), ns = norm(sum);
        if (nd > ns) gm = -gm;
        else if (nd == ns && !am.is_zero() && (gm / am).im < 0) gm = -gm;
        a = am;
        g = gm;
        if (abs(a - g) <= tol * abs(a)) return (a + g) / Real(2);
    }
    throw MathError("agm did not converge");
}

Real agm(Real a, Real g) {
    if (a <= 0 || g <= 0) throw MathError("real agm requires positive arguments");
    Real tol = ldexp(Real(1), int(-(precision_bits() - 4)));
    for (int it = 0; it < 400; ++it) {
        Real am = (a + g) / 2;
        Real gm = sqrt(a * g);
        a = am;
        g = gm;
        if (abs(a - g) <= tol * a) return (a + g) / 2;
    }
    throw MathError("agm did not converge");
}

Cplx F_hyp(const Cplx& u) {
    if (u.im.is_zero()) return F_hyp(u.re);
    return inv(agm(Cplx(Real(1)), sqrt(Cplx(Real(1)) - u)));
}

Cplx F_hyp(const Real& u) {
    if (u == 1) throw MathError("F(1) is logarithmically divergent");
    if (u < 1) return Cplx(1 / agm(Real(1), sqrt(1 - u)));
    // continuation below the cut: F(u) = u^{-1/2} (F(1/u) - i F(1-1/u))
    Real ru = sqrt(u);
    Cplx a = F_hyp(1 / u);
    Cplx b = F_hyp(1 - 1 / u);
    return Cplx(a.re / ru, -b.re / ru);
}

Cplx F_hyp_quadrature(const Real& u) {
    quad::Options opt;
    opt.max_level = 9;
    Real pi = pi_value();
    if (u < 1) {
        auto f = [&u](const Real& t, const Real& dl, const Real& dr) {
            return Cplx(1 / sqrt(dl * dr * (1 - u * t)));
        };
        auto r = quad::integrate_1d(f, Real(0), Real(1), opt);
        return r.value / pi;
    }
    auto f = [&u](const Real& t, const Real& dl, const Real& dr) {
        Real base = 1 / sqrt(dl * dr);
        Real p1 = 1 / sqrt(u - t);
        Real p2 = 1 / sqrt(u - (u - 1) * t);
        return Cplx(base * p1, -base * p2);
    };
    auto r = quad::integrate_1d(f, Real(0), Real(1), opt);
    return r.value / pi;
}

Rat bernoulli_number(unsigned n) {
    static std::vector<Rat> cache{Rat(1)};
    while (cache.size() <= n) {
        unsigned m = unsigned(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat acc(0);
        Rat binom(1);
        for (unsigned j = 0; j < m; ++j) {
            binom = (j == 0) ? Rat(m + 1) : binom * Rat(m + 1 - j) / Rat(j + 1);
            // binom = C(m+1, j+... recompute cleanly below
            acc += binom * cache[j];
        }
        // recompute with explicit binomials to stay obviously correct
        acc = 0;
        Rat c(1);   // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += c * cache[j];
            c = c * Rat(long(m + 1 - j)) / Rat(long(j + 1));
        }
        cache.push_back(-acc / Rat(long(m + 1)));
    }
    return cache[n];
}

Real hurwitz_zeta(const Real& s, const Real& t) {
    if (t <= 0) throw MathError("hurwitz zeta requires t > 0");
    if (s == 1) throw MathError("hurwitz zeta pole at s = 1");
    long prec = precision_bits();
    Real eps = ldexp(Real(1), int(-(prec + 8)));
    long R = std::max<long>(24, prec / 5);
    long J = std::max<long>(R, long(0.2 * double(prec)) + 8);
    for (int attempt = 0; attempt < 6; ++attempt) {
        Real N = t + Real(J);
        Real acc(0);
        for (long j = J - 1; j >= 0; --j) acc += pow(t + Real(j), -s);
        Real tail = pow(N, 1 - s) / (s - 1) + pow(N, -s) / 2;
        Real corr(0), last_term(0);
        Real poch = s;                       // (s)_{2r-1} running product
        for (long r = 1; r <= R; ++r) {
            Rat b2r = bernoulli_number(unsigned(2 * r));
            Rat fact(1);
            for (long i = 2; i <= 2 * r; ++i) fact *= i;
            Real term = to_real(b2r / fact) * poch * pow(N, -s - Real(2 * r - 1));
            corr += term;
            last_term = abs(term);
            poch *= (s + Real(2 * r - 1)) * (s + Real(2 * r));
        }
        Real value = acc + tail + corr;
        if (last_term <= eps * (abs(value) + 1)) return value;
        J *= 2;
        R += R / 2;
    }
    throw MathError("hurwitz zeta did not reach the requested precision");
}

Real riemann_zeta(const Real& s) {
    Real r;
    if (s == floor(s) && s > 1 && s < 1000) {
        mpfr_zeta_ui(r.backend().data(), unsigned(long(s)), MPFR_RNDN);
        return r;
    }
    return hurwitz_zeta(s, Real(1));
}

Real digamma(const Real& t) {
    if (t <= 0) throw MathError("digamma requires t > 0");
    long prec = precision_bits();
    Real eps = ldexp(Real(1), int(-(prec + 8)));
    long R = std::max<long>(24, prec / 5);
    long J = std::max<long>(R, long(0.2 * double(prec)) + 8);
    for (int attempt = 0; attempt < 6; ++attempt) {
        Real N = t + Real(J);
        Real acc(0);
        for (long j = J - 1; j >= 0; --j) acc -= 1 / (t + Real(j));
        Real value = acc + log(N) - 1 / (2 * N);
        Real last_term(0);
        Real N2 = N * N;
        Real Npow = N2;
        for (long r = 1; r <= R; ++r) {
            Rat b2r = bernoulli_number(unsigned(2 * r));
            Real term = to_real(b2r / Rat(2 * r)) / Npow;
            value -= term;
            last_term = abs(term);
            Npow *= N2;
        }
        if (last_term <= eps * (abs(value) + 1)) return value;
        J *= 2;
        R += R / 2;
    }
    throw MathError("digamma did not reach the requested precision");
}

namespace {

// base of the Landen ladder: |m| is tiny, use sin/cos with the first-order
// correction (error O(m^2))
JacobiTriple jacobi_small_m(const Cplx& u, const Cplx& m) {
    Cplx s = sin(u), c = cos(u);
    Cplx corr = (u - s * c) * (m / Real(4));
    JacobiTriple t;
    t.sn = s - corr * c;
    t.cn = c + corr * s;
    t.dn = Cplx(Real(1)) - (m / Real(2)) * (s * s);
    return t;
}

} // namespace

JacobiEvaluator::JacobiEvaluator(const Cplx& m) : m_(m) {
    Real am = abs(m);
    Real a1m = abs(Cplx(Real(1)) - m);
    bool near_real_above_1 = abs(m.im) <= Real(Rat(1, 1000000)) * (1 + abs(m.re)) && m.re > 1;
    if (a1m <= Real(Rat(11, 20))) {
        route_ = Route::Imaginary;
        m_work_ = Cplx(Real(1)) - m;
    } else if (am >= 3 || near_real_above_1) {
        kappa_ = sqrt(m);
        Cplx mr = inv(m);
        if (abs(Cplx(Real(1)) - mr) <= Real(Rat(11, 20))) {
            route_ = Route::ReciprocalImaginary;
            m_work_ = Cplx(Real(1)) - mr;
        } else {
            route_ = Route::Reciprocal;
            m_work_ = mr;
        }
    } else {
        route_ = Route::Direct;
        m_work_ = m;
    }
    // descending Landen ladder on m_work_
    Cplx mj = m_work_;
    Real stop = ldexp(Real(1), int(-(precision_bits() / 2 + 16)));
    int it = 0;
    while (abs(mj) >= stop && it++ < 80) {
        Cplx kp = sqrt(Cplx(Real(1)) - mj);
        Cplx k1 = (Cplx(Real(1)) - kp) / (Cplx(Real(1)) + kp);
        ladder_.push_back(k1);
        mj = k1 * k1;
    }
    if (abs(mj) >= stop)
        throw MathError("Landen ladder failed to converge for this modulus");
    m_work_final_tiny_ = mj;
}

JacobiTriple JacobiEvaluator::operator()(const Cplx& u) const {
    auto ladder_eval = [this](const Cplx& arg) {
        Cplx v = arg;
        for (const Cplx& k1 : ladder_) v = v / (Cplx(Real(1)) + k1);
        JacobiTriple t = jacobi_small_m(v, m_work_final_tiny_);
        for (size_t i = ladder_.size(); i-- > 0;) {
            const Cplx& k1 = ladder_[i];
            Cplx sn2 = t.sn * t.sn;
            Cplx denom = Cplx(Real(1)) + k1 * sn2;
            JacobiTriple up;
            up.sn = (Cplx(Real(1)) + k1) * t.sn / denom;
            up.cn = t.cn * t.dn / denom;
            up.dn = (Cplx(Real(1)) - k1 * sn2) / denom;
            t = up;
        }
        return t;
    };

    auto imaginary_wrap = [&](const Cplx& arg) {
        // sn(iu, 1-mw) route: sn(u,m) = i sn(v,mw)/cn(v,mw), v = -iu
        Cplx v(arg.im, -arg.re);
        JacobiTriple in = ladder_eval(v);
        if (abs(in.cn) == 0) throw MathError("jacobi: argument at a pole");
        JacobiTriple t;
        Cplx icn = inv(in.cn);
        t.sn = Cplx::i() * in.sn * icn;
        t.cn = icn;
        t.dn = in.dn * icn;
        return t;
    };

    switch (route_) {
    case Route::Direct:
        return ladder_eval(u);
    case Route::Imaginary:
        return imaginary_wrap(u);
    case Route::Reciprocal: {
        JacobiTriple in = ladder_eval(kappa_ * u);
        JacobiTriple t;
        t.sn = in.sn / kappa_;
        t.cn = in.dn;
        t.dn = in.cn;
        return t;
    }
    case Route::ReciprocalImaginary: {
        JacobiTriple in = imaginary_wrap(kappa_ * u);
        JacobiTriple t;
        t.sn = in.sn / kappa_;
        t.cn = in.dn;
        t.dn = in.cn;
        return t;
    }
    }
    throw MathError("unreachable");
}

JacobiTriple jacobi(const Cplx& u, const JacobiModulus& mod) {
    PrecisionGuard guard(64);
    JacobiEvaluator ev(mod.m);
    return ev(u);
}

namespace {

Cplx quotient(const Cplx& num, const Cplx& den, const char* name) {
    if (abs(den) < ldexp(Real(1), int(-(precision_bits() / 2))))
        throw MathError(std::string("jacobi quotient ") + name + " evaluated at (or too near) a pole");
    return num / den;
}

} // namespace

Cplx jacobi_sd(const Cplx& u, const JacobiModulus& mod) {
    auto t = jacobi(u, mod);
    return quotient(t.sn, t.dn, "sd");
}

Cplx jacobi_nc(const Cplx& u, const JacobiModulus& mod) {
    auto t = jacobi(u, mod);
    return quotient(Cplx(Real(1)), t.cn, "nc");
}

Cplx jacobi_cd(const Cplx& u, const JacobiModulus& mod) {
    auto t = jacobi(u, mod);
    return quotient(t.cn, t.dn, "cd");
}

Cplx jacobi_nd(const Cplx& u, const JacobiModulus& mod) {
    auto t = jacobi(u, mod);
    return quotient(Cplx(Real(1)), t.dn, "nd");
}

JacobiTriple jacobi_maclaurin(const Cplx& u, const Cplx& m, int n_terms) {
    const auto& table = gf::elliptic_maclaurin(n_terms);
    JacobiTriple t;
    Cplx up(Real(1), Real(0));
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) up *= u;
        if (!table.sn[size_t(n)].is_zero()) t.sn += table.sn[size_t(n)].eval(m) * up;
        if (!table.cn[size_t(n)].is_zero()) t.cn += table.cn[size_t(n)].eval(m) * up;
        if (!table.dn[size_t(n)].is_zero()) t.dn += table.dn[size_t(n)].eval(m) * up;
    }
    return t;
}

Cplx pfq(const std::vector<Rat>& a, const std::vector<Rat>& b, const Cplx& z) {
    if (abs(z) >= 1) throw MathError("pfq series requires |z| < 1");
    Real eps = eps_target();
    Cplx term(Real(1), Real(0));
    Cplx acc = term;
    for (long n = 0; n < 100000; ++n) {
        Cplx ratio(Real(1), Real(0));
        for (const auto& ai : a) ratio *= Cplx(to_real(ai) + Real(n));
        for (const auto& bi : b) ratio = ratio / Cplx(to_real(bi) + Real(n));
        ratio = ratio * z / Real(n + 1);
        term *= ratio;
        acc += term;
        if (abs(term) < eps * (abs(acc) + 1)) return acc;
    }
    throw MathError("pfq series did not converge within the term budget");
}

namespace {

// G1(w) = int_0^1 dy/(1 + w(1-y^2)) = asinh(sqrt(w))/sqrt(w(1+w)); analytic
// at w = 0
Real G1(const Real& w) {
    if (w < Real(Rat(1, 1024))) {
        // short Taylor expansion of asinh(sqrt w)/sqrt(w(1+w)) around 0
        Real acc(0), term(1);
        Real eps = eps_target();
        // coefficients: G1(w) = sum_{n>=0} (-w)^n n!^2 4^n / ((2n+1)! ) ... use
        // the defining series int (1-y^2)^n: G1(w) = sum (-w)^n * c_n with
        // c_n = int_0^1 (1-y^2)^n dy = (2n)!! / (2n+1)!!
        Real c(1);
        for (long n = 0; n < 10000; ++n) {
            Real t = c * term;
            acc += t;
            if (abs(t) < eps * (abs(acc) + 1)) break;
            term *= -w;
            c = c * Real(2 * (n + 1)) / Real(2 * n + 3);
        }
        return acc;
    }
    Real rw = sqrt(w);
    return asinh(rw) / (rw * sqrt(1 + w));
}

} // namespace

Real H_neg(const Real& t) {
    if (t < 0) throw MathError("H_neg expects t >= 0");
    Real eps = eps_target();
    if (t <= Real(Rat(9, 10))) {
        // Taylor: term ratio -t ((n+1)/(n+3/2))^3
        Real term(1), acc(1);
        for (long n = 0;; ++n) {
            Real r = Real(n + 1) / (Real(n) + Real(Rat(3, 2)));
            term *= -t * r * r * r;
            acc += term;
            if (abs(term) < eps * (abs(acc) + 1)) return acc;
            if (n > 2000000) throw MathError("H_neg series stalled");
        }
    }
    // H(-t) = (pi/4) int_0^1 G1(t w) F(1-w) dw  (the u1 u2 level-set integral
    // is a complete elliptic integral); log substitution w = e^{-s} keeps the
    // knee at w ~ 1/t resolved for any t
    quad::Options opt;
    opt.max_level = 8;
    auto f = [&t](const Real& s, const Real&, const Real&) {
        Real w = exp(-s);
        // F(1-w) = 1/agm(1, sqrt(w)), stable down to w ~ 0
        Real fval = 1 / agm(Real(1), sqrt(w));
        return Cplx(w * G1(t * w) * fval);
    };
    auto r = quad::integrate_semi_infinite(f, Real(0), opt);
    return pi_value() / 4 * r.value.re;
}

Real H_neg_quad3d(const Real& t) {
    if (t < 0) throw MathError("H_neg expects t >= 0");
    // 1/4 int int G1(t u1 u2) du1 du2 / sqrt((1-u1)(1-u2))
    quad::Options outer;
    outer.max_level = 7;
    quad::Options inner = outer;
    auto f2 = [&t](const Real& u1, const Real&, const Real& dr1) {
        quad::Options in;
        in.max_level = 7;
        auto f1 = [&](const Real& u2, const Real&, const Real& dr2) {
            return Cplx(G1(t * u1 * u2) / sqrt(dr2));
        };
        auto r = quad::integrate_1d(f1, Real(0), Real(1), in);
        return r.value / sqrt(dr1);
    };
    auto r = quad::integrate_1d(f2, Real(0), Real(1), outer);
    return r.value.re / 4;
}

} // namespace ell32::sf
