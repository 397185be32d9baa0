#include "ell32/eisenstein.hpp"

#include "ell32/specialfun.hpp"

#include <cmath>
#include <sstream>

namespace ell32::eis {

namespace {

long mod_residue(long x, unsigned N) {
    long r = x % long(N);
    return r < 0 ? r + long(N) : r;
}

} // namespace

EisIndex::EisIndex(unsigned N_, int k_, long a_, long b_) : N(N_), k(k_) {
    if (N == 0) throw MathError("level must be positive");
    a = int(mod_residue(a_, N));
    b = int(mod_residue(b_, N));
}

bool EisIndex::operator<(const EisIndex& o) const {
    return std::tie(N, k, a, b) < std::tie(o.N, o.k, o.a, o.b);
}

std::string EisIndex::str() const {
    std::ostringstream os;
    os << "E[" << N << "," << k << "](" << a << "," << b << ")";
    return os.str();
}

std::pair<EisIndex, int> negated_index(const EisIndex& idx) {
    EisIndex neg(idx.N, idx.k, -long(idx.a), -long(idx.b));
    return {neg, idx.k % 2 == 0 ? 1 : -1};
}

Real primed_power_sum(unsigned N, int k, long b) {
    long br = mod_residue(b, N);
    if (k >= 2) {
        if (br == 0) {
            if (k % 2 == 1) return Real(0);
            return 2 * sf::riemann_zeta(Real(k)) / pow_int(Real(long(N)), k);
        }
        Real zb = sf::hurwitz_zeta(Real(k), Real(br) / Real(long(N)));
        Real zmb = sf::hurwitz_zeta(Real(k), Real(long(N) - br) / Real(long(N)));
        Real sum = (k % 2 == 0) ? Real(zb + zmb) : Real(zb - zmb);
        return sum / pow_int(Real(long(N)), k);
    }
    if (k == 1) {
        // lim_{s->0} (zeta(1+s,{b/N}) - zeta(1+s,{-b/N})) = psi({-b/N}) - psi({b/N})
        if (br == 0) return Real(0);
        Real x = Real(br) / Real(long(N));
        return (sf::digamma(1 - x) - sf::digamma(x)) / Real(long(N));
    }
    throw MathError("primed power sum needs k >= 1");
}

namespace {

Cplx beta_factor(int k) {
    // beta_k = (k-1)! / (-2 pi i)^k
    Real fact(1);
    for (int i = 2; i < k; ++i) fact *= i;
    Cplx denom = pow_int(Cplx(Real(0), -2 * pi_value()), k);
    return Cplx(fact) / denom;
}

} // namespace

ConstantTerm constant_term(const EisIndex& idx, bool allow_k1) {
    if (idx.k < 1) throw MathError("constant term needs k >= 1");
    if (idx.k == 1 && !allow_k1)
        throw MathError("k = 1 constants are experimental; pass allow_k1");
    ConstantTerm ct;
    Cplx beta = beta_factor(idx.k);
    Cplx alpha_sum;
    if (idx.k >= 2) {
        if (idx.a == 0)
            alpha_sum = Cplx(primed_power_sum(idx.N, idx.k, idx.b));
    } else {
        // literal k = 1 formula: b-part plus the -(pi i/N)({a/N} - ... ) piece
        Real bpart = primed_power_sum(idx.N, 1, idx.b);
        Real apart(0);
        if (idx.a != 0) {
            // zeta(0,{a/N}) - zeta(0,{-a/N}) = {-a/N} - {a/N}
            Real fa = Real(idx.a) / Real(long(idx.N));
            apart = (1 - fa) - fa;
        }
        alpha_sum = Cplx(bpart) - Cplx(Real(0), pi_value() / Real(long(idx.N))) * Cplx(apart);
    }
    ct.alpha = beta * alpha_sum;
    if (idx.k == 2) {
        // completed weight-2 series: gamma carries beta_2 * (-2 pi i)/(N tau - N taubar),
        // i.e. + 1/(4 pi N Im tau).  This is the unique coefficient for which
        // E_{a,b}(tau) (N tau)^2 = E_{-b,a}(-1/(N^2 tau)) holds (checked
        // numerically at N = 2,3,4 to ~80 digits; at N = 1 it reduces to the
        // classical completion E_2(tau) - 3/(pi Im tau)).
        ct.imtau_coeff = 1 / (4 * pi_value() * Real(long(idx.N)));
    }
    return ct;
}

Puiseux eis_fourier(const EisIndex& idx, const Rat& order) {
    if (idx.k < 1) throw MathError("Fourier part needs k >= 1");
    Puiseux s(1, order);
    long bound = static_cast<long>(numerator(order) / denominator(order)) + 1;
    int sign = idx.k % 2 == 0 ? 1 : -1;
    auto add_sum = [&](long a_res, long b_coef, bool negate) {
        long first = a_res == 0 ? long(idx.N) : a_res;
        for (long m = first; m < bound; m += long(idx.N)) {
            for (long n = 1; n * m < bound; ++n) {
                Cyclo c = Cyclo::zeta_pow(idx.N, b_coef * n)
                              .scaled(Rat(Int(pow(Int(n), unsigned(idx.k - 1)))));
                if (negate) c = -c;
                s.add_term(Rat(n * m), c);
            }
        }
    };
    add_sum(idx.a, idx.b, false);
    add_sum(mod_residue(-idx.a, idx.N), -long(idx.b), sign < 0);
    return s;
}

EisSeries eis_qexp(const EisIndex& idx, const Rat& order, bool allow_k1) {
    return EisSeries{idx, eis_fourier(idx, order), constant_term(idx, allow_k1)};
}

namespace {

// tail of sum_{j >= M} 2 j^k x^j (coefficients of either double sum are
// bounded by j^k); infinite when x e^{k/M} >= 1
Real fourier_tail_bound(long M, int k, const Real& absq) {
    Real ratio = absq * exp(Real(k) / Real(M));
    if (ratio >= 1) return Real(-1);   // signals failure
    return 2 * pow_int(absq, M) * pow_int(Real(M), k) / (1 - ratio);
}

} // namespace

Cplx eval_eis(const EisSeries& s, const Cplx& tau, const Real& tol, Real* tail_bound) {
    if (tau.im <= 0) throw MathError("Eisenstein evaluation requires Im(tau) > 0");
    Real absq = exp(-2 * pi_value() * tau.im);
    long M = (static_cast<long>(numerator(s.fourier.order())) /
              static_cast<long>(denominator(s.fourier.order())));
    Real tb = fourier_tail_bound(M, s.idx.k, absq);
    if (tb < 0 || tb > tol) {
        // report the order that would certify tol
        long need = M;
        for (; need < 100000000; need = need * 3 / 2 + 16) {
            Real t2 = fourier_tail_bound(need, s.idx.k, absq);
            if (t2 >= 0 && t2 <= tol) break;
        }
        throw MathError("cannot certify requested precision at this tau: stored order " +
                        std::to_string(M) + ", required about " + std::to_string(need));
    }
    if (tail_bound) *tail_bound = tb;
    Cplx v = s.fourier.eval_at_tau(tau);
    v += s.constant.alpha;
    if (!s.constant.imtau_coeff.is_zero())
        v += Cplx(s.constant.imtau_coeff / tau.im);
    return v;
}

PartialTransform partial_transform(unsigned N, int k, long d, long b, const Rat& order) {
    if (k < 1) throw MathError("partial transform needs k >= 1");
    PartialTransform out{Puiseux(1, order), ConstantTerm{}};
    long bound = static_cast<long>(numerator(order) / denominator(order)) + 1;
    int sign = k % 2 == 0 ? 1 : -1;
    for (long m = 1; m < bound; ++m) {
        for (long n = 1; n * m < bound; ++n) {
            Rat nk(Int(pow(Int(n), unsigned(k - 1))));
            Cyclo c = Cyclo::zeta_pow(N, d * m + b * n).scaled(nk);
            Cyclo c2 = Cyclo::zeta_pow(N, -(d * m + b * n)).scaled(nk);
            out.fourier.add_term(Rat(n * m), sign > 0 ? c + c2 : c - c2);
        }
    }
    out.constant.alpha = Cplx(primed_power_sum(N, k, b)) * beta_factor(k);
    // sum over a of N identical 1/Im tau coefficients survives only at d = 0
    if (k == 2 && mod_residue(d, N) == 0)
        out.constant.imtau_coeff = 1 / (4 * pi_value());
    return out;
}

CuspExpansion cusp_expansion(const EisIndex& idx, long c) {
    CuspExpansion out{
        int(-long(idx.a) * c - idx.b),
        int(long(idx.a) * (c * c + 1) + long(idx.b) * c),
        EisIndex(idx.N, idx.k, idx.a, 0),
        Cplx(),
        EisIndex(idx.N, idx.k, 0, idx.a),
        Cplx()};
    out.direct_index = EisIndex(idx.N, idx.k, idx.a, -long(out.a_dash));
    out.dual_index = EisIndex(idx.N, idx.k, out.a_dash, idx.a);
    ConstantTerm g_ab = constant_term(idx);
    ConstantTerm g_a_ma = constant_term(out.direct_index);
    out.direct_gamma_diff = g_ab.alpha - g_a_ma.alpha;
    ConstantTerm g_ad_bd = constant_term(EisIndex(idx.N, idx.k, out.a_dash, out.b_dash));
    ConstantTerm g_ad_a = constant_term(out.dual_index);
    out.dual_gamma_diff = g_ad_bd.alpha - g_ad_a.alpha;
    return out;
}

qs::PeriodicSeq finite_fourier_hat(const qs::PeriodicSeq& f) {
    qs::PeriodicSeq out;
    out.N = f.N;
    out.v.resize(f.N);
    Rat invN(1, long(f.N));
    for (long n = 0; n < long(f.N); ++n) {
        Cyclo acc = Cyclo::zero_at(1);
        for (long a = 0; a < long(f.N); ++a) {
            if (f.v[size_t(a)].is_zero()) continue;
            acc += Cyclo::zeta_pow(f.N, -a * n) * f.v[size_t(a)];
        }
        out.v[size_t(n)] = acc.scaled(invN);
    }
    return out;
}

std::map<std::pair<int, int>, Cyclo>
double_sum_decompose(const qs::PeriodicSeq& f, const qs::PeriodicSeq& g, int k) {
    if (f.N != g.N) throw MathError("periodic sequences must share a period");
    unsigned N = f.N;
    int sign = k % 2 == 0 ? 1 : -1;
    for (long a = 0; a < long(N); ++a)
        for (long b = 0; b < long(N); ++b) {
            Cyclo lhs = f.at(-a) * g.at(-b);
            Cyclo rhs = f.at(a) * g.at(b);
            if (sign < 0) rhs = -rhs;
            if (lhs != rhs)
                throw MathError("parity constraint f(-a)g(-b) = (-1)^k f(a)g(b) fails at (a,b) = (" +
                                std::to_string(a) + "," + std::to_string(b) + ")");
        }
    qs::PeriodicSeq fhat = finite_fourier_hat(f);
    std::map<std::pair<int, int>, Cyclo> out;
    Rat half(1, 2);
    for (int a = 0; a < int(N); ++a)
        for (int b = 0; b < int(N); ++b) {
            Cyclo c = (fhat.v[size_t(b)] * g.v[size_t(a)]).scaled(half);
            if (!c.is_zero()) out[{a, b}] = c;
        }
    return out;
}

Puiseux EisCombo::fourier(const Rat& order) const {
    Puiseux acc(1, order);
    for (const auto& [idx, coef] : terms)
        acc = acc + eis_fourier(idx, order).scaled(coef);
    return acc;
}

ConstantTerm EisCombo::constant() const {
    ConstantTerm out;
    Cplx alpha;
    Real imtau(0);
    for (const auto& [idx, coef] : terms) {
        ConstantTerm ct = constant_term(idx);
        Cplx cc = coef.to_complex();
        alpha += cc * ct.alpha;
        // the 1/Im tau coefficient is index-independent at fixed (N,k); it
        // survives only if the combo coefficients do not cancel
        imtau += (cc * Cplx(ct.imtau_coeff)).re;
        if (abs((cc * Cplx(ct.imtau_coeff)).im) > machine_eps() * 16 && idx.k == 2)
            throw MathError("complex 1/Im tau coefficient in combo");
    }
    out.alpha = alpha;
    out.imtau_coeff = imtau;
    return out;
}

CompiledCombo::CompiledCombo(const EisCombo& combo, const Rat& order) {
    Puiseux four = combo.fourier(order);
    den_ = four.den();
    order_num_ = static_cast<long>(numerator(four.order() * den_));
    k_ = combo.k;
    for (const auto& [e, c] : four.terms())
        terms_.emplace_back(e, c.to_complex());
    ConstantTerm ct = combo.constant();
    alpha_ = ct.alpha;
    imtau_ = ct.imtau_coeff;
    Real scale(0);
    for (const auto& [idx, coef] : combo.terms) {
        (void)idx;
        scale += abs(coef.to_complex());
    }
    coeff_scale_ = scale < 1 ? Real(1) : scale;
}

Cplx CompiledCombo::eval(const Cplx& tau, const Real& tol) const {
    if (tau.im <= 0) throw MathError("Eisenstein evaluation requires Im(tau) > 0");
    Real absq = exp(-2 * pi_value() * tau.im);
    long M = order_num_ / den_;
    Real tb = fourier_tail_bound(M, k_, absq) * coeff_scale_;
    if (tb < 0 || tb > tol)
        throw MathError("combo evaluation cannot certify tolerance at Im tau = " +
                        real_str(tau.im, 8) + " with order " + std::to_string(M));
    Cplx w = exp((2 * pi_value() / Real(den_)) * Cplx(-tau.im, tau.re));
    Cplx acc;
    Cplx wp(Real(1), Real(0));
    long last = 0;
    for (const auto& [e, c] : terms_) {
        wp *= pow_int(w, e - last);
        last = e;
        acc += c * wp;
    }
    acc += alpha_;
    if (!imtau_.is_zero()) acc += Cplx(imtau_ / tau.im);
    return acc;
}

Level32Pair level32_pair(int k) {
    if (k < 2) throw MathError("level32 pair needs k >= 2");
    Level32Pair out;
    out.k = k;
    Rat half(1, 2), quarter(1, 4);
    Cyclo i_half = Cyclo::zeta_pow(4, 1).scaled(half);
    EisCombo e1hat;
    e1hat.N = 4;
    e1hat.k = k;
    e1hat.terms = {{EisIndex(4, k, 1, -1), i_half}, {EisIndex(4, k, 1, 1), -i_half}};
    out.E1hat = e1hat;
    if (k % 2 == 0) {
        out.E1 = e1hat;
        EisCombo e2;
        e2.N = 2;
        e2.k = k;
        e2.terms = {{EisIndex(2, k, 1, 0), Cyclo(Rat(1, 4))},
                    {EisIndex(2, k, 1, 1), Cyclo(Rat(-1, 4))}};
        out.E2 = e2;
    } else {
        EisCombo e1;
        e1.N = 4;
        e1.k = k;
        e1.terms = {{EisIndex(4, k, 1, 1), i_half}, {EisIndex(4, k, 1, -1), i_half}};
        out.E1 = e1;
        EisCombo e2;
        e2.N = 4;
        e2.k = k;
        for (long a = 0; a < 4; ++a) {
            Cyclo coef = Cyclo::zeta_pow(4, 1 - a).scaled(quarter);   // (i/4) i^{-a}
            e2.terms.emplace_back(EisIndex(4, k, a, 0), coef);
            e2.terms.emplace_back(EisIndex(4, k, a, 2), -coef);
        }
        out.E2 = e2;
    }
    return out;
}

} // namespace ell32::eis
