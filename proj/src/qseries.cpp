#include "ell32/qseries.hpp"

#include <algorithm>
#include <set>

namespace ell32::qs {

Rat EtaQuotientSpec::leading_exponent() const {
    Rat e(0);
    for (auto [m, ex] : factors) e += Rat(m * ex, 24);
    return e;
}

void EtaQuotientSpec::validate() const {
    std::set<long> seen;
    for (auto [m, e] : factors) {
        (void)e;
        if (m <= 0) throw MathError("eta scale must be positive");
        if (!seen.insert(m).second) throw MathError("duplicate eta scale " + std::to_string(m));
    }
}

namespace {

// pentagonal-number expansion of prod_{j>=1} (1 - x^j) up to exponent < bound
std::vector<std::pair<long, int>> pentagonal_terms(long bound) {
    std::vector<std::pair<long, int>> t;
    t.emplace_back(0, 1);
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        int sign = (k % 2 == 0) ? 1 : -1;
        bool any = false;
        if (e1 < bound) { t.emplace_back(e1, sign); any = true; }
        if (e2 < bound) { t.emplace_back(e2, sign); any = true; }
        if (!any) break;
    }
    std::sort(t.begin(), t.end());
    return t;
}

// prod_{j>=1} (1 - q^{m j}) as a Puiseux series on the given grid
Puiseux euler_product(long m, long den, const Rat& order) {
    Puiseux p(den, order);
    Rat bound_r = order / m;
    long bound = static_cast<long>(numerator(bound_r) / denominator(bound_r)) + 1;
    for (auto [e, s] : pentagonal_terms(bound))
        p.add_term(Rat(e * m), Cyclo(Rat(s)));
    return p;
}

} // namespace

Puiseux eta_quotient_qexp(const EtaQuotientSpec& spec, const Rat& order) {
    spec.validate();
    Rat lead = spec.leading_exponent();
    if (order <= lead)
        throw MathError("order too small: eta quotient starts at q^(" +
                        numerator(lead).str() + "/" + denominator(lead).str() + ")");
    // unit-part order needed so that after shifting by the leading exponent
    // the requested order is certified
    Rat unit_order = order - lead;
    Puiseux acc = Puiseux::one(kEtaGrid, unit_order);
    for (auto [m, e] : spec.factors) {
        if (e == 0) continue;
        Puiseux base = euler_product(m, kEtaGrid, unit_order);
        acc = acc * base.pow(e);
    }
    return acc.shifted(lead);
}

Puiseux theta_qexp(const Rat& order) {
    if (order < 1) throw MathError("theta expansion needs order >= 1");
    Puiseux t(1, order);
    t.set_coeff(Rat(0), Cyclo(Rat(1)));
    for (long n = 1; Rat(n) * n < order; ++n)
        t.set_coeff(Rat(n * n), Cyclo(Rat(2)));
    return t;
}

const Cyclo& PeriodicSeq::at(long n) const {
    long r = n % long(N);
    if (r < 0) r += N;
    return v[size_t(r)];
}

PeriodicSeq::Parity PeriodicSeq::parity() const {
    bool even = true, odd = true;
    for (long r = 0; r < long(N); ++r) {
        const Cyclo& a = at(r);
        const Cyclo& b = at(-r);
        if (b != a) even = false;
        if (b != -a) odd = false;
    }
    if (even) return Parity::Even;
    if (odd) return Parity::Odd;
    return Parity::None;
}

Puiseux lambert_double_sum(const PeriodicSeq& f, const PeriodicSeq& g, int k,
                           const Rat& order) {
    if (f.N == 0 || g.N == 0) throw MathError("periodic sequence has non-positive period");
    if (k < 1) throw MathError("lambert sum requires k >= 1");
    Puiseux s(1, order);
    long bound = static_cast<long>(numerator(order) / denominator(order)) + 1;
    for (long n = 1; n < bound; ++n) {
        const Cyclo& fn = f.at(n);
        if (fn.is_zero()) continue;
        Cyclo weight = fn.scaled(Rat(Int(pow(Int(n), unsigned(k - 1))), Int(1)));
        for (long m = 1; n * m < bound; ++m) {
            const Cyclo& gm = g.at(m);
            if (gm.is_zero()) continue;
            s.add_term(Rat(n * m), weight * gm);
        }
    }
    return s;
}

std::vector<Rat> product_exponents(const Puiseux& s, long n_max) {
    Cyclo c0 = s.coeff(Rat(0));
    if (!(c0.is_rational() && c0.rational_part() == 1))
        throw MathError("product exponents require constant term 1");
    if (s.order() <= Rat(n_max))
        throw MathError("series order too small for requested n_max");
    for (const auto& [e, c] : s.terms()) {
        (void)c;
        if (e % s.den() != 0)
            throw MathError("product exponents require integer-grid support");
    }

    // b = coefficients of the logarithmic derivative q (d/dq) log s = (delta s)/s
    Puiseux trunc = s.truncated(Rat(n_max + 1)).rebased(s.den());
    Puiseux ds(trunc.den(), trunc.order());
    for (const auto& [e, c] : trunc.terms())
        ds.add_term(Rat(e, trunc.den()), c.scaled(Rat(e, trunc.den())));
    Puiseux logd = ds / trunc;

    std::vector<Rat> b(size_t(n_max) + 1, Rat(0));
    for (long l = 1; l <= n_max; ++l) {
        Cyclo c = logd.coeff(Rat(l));
        b[size_t(l)] = c.is_zero() ? Rat(0) : c.rational_part();
    }

    // Mobius sieve
    std::vector<int> mu(size_t(n_max) + 1, 1);
    std::vector<bool> comp(size_t(n_max) + 1, false);
    std::vector<long> primes;
    for (long i = 2; i <= n_max; ++i) {
        if (!comp[size_t(i)]) { primes.push_back(i); mu[size_t(i)] = -1; }
        for (long p : primes) {
            if (i * p > n_max) break;
            comp[size_t(i * p)] = true;
            mu[size_t(i * p)] = (i % p == 0) ? 0 : -mu[size_t(i)];
            if (i % p == 0) break;
        }
    }

    std::vector<Rat> a(size_t(n_max) + 1, Rat(0));
    for (long n = 1; n <= n_max; ++n) {
        Rat acc(0);
        for (long l = 1; l * l <= n; ++l) {
            if (n % l != 0) continue;
            long l2 = n / l;
            acc += Rat(mu[size_t(n / l)]) * b[size_t(l)];
            if (l2 != l) acc += Rat(mu[size_t(l)]) * b[size_t(l2)];
        }
        a[size_t(n)] = -acc / n;
    }
    a.erase(a.begin());
    return a;
}

long gamma1_index(long level) {
    if (level <= 0) throw MathError("level must be positive");
    if (level == 1) return 1;
    if (level == 2) return 3;
    // N^2 prod_{p|N} (1 - 1/p^2), exact
    Rat idx(level * level);
    long n = level;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        idx *= Rat(p * p - 1, p * p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) idx *= Rat(n * n - 1, n * n);
    if (denominator(idx) != 1) throw MathError("internal: index not integral");
    return static_cast<long>(numerator(idx));
}

SturmResult sturm_equal(const Puiseux& s1, const Puiseux& s2, int weight, long level) {
    if (weight <= 0) throw MathError("weight must be positive");
    Rat br = Rat(weight * gamma1_index(level), 12);
    Int bi = numerator(br) / denominator(br);
    long B = static_cast<long>(bi);
    if (Rat(B) < br) B += 1;   // ceil
    if (s1.order() <= Rat(B) || s2.order() <= Rat(B))
        throw MathError("series truncated below the Sturm bound; need order > " + std::to_string(B));
    auto d = s1.first_difference(s2);
    if (d && *d > Rat(B)) d.reset();   // disagreement beyond the certified range
    return SturmResult{!d.has_value(), B, d};
}

std::vector<Int> eta_product_integer_coeffs(const EtaQuotientSpec& spec, long n_max) {
    spec.validate();
    Rat lead = spec.leading_exponent();
    if (denominator(lead) != 1)
        throw MathError("integer-coefficient path needs an integer leading exponent");
    long shift = static_cast<long>(numerator(lead));
    if (shift < 0) throw MathError("integer-coefficient path needs a nonnegative leading exponent");

    long len = n_max + 1;
    std::vector<Int> acc(size_t(len), Int(0));
    acc[0] = 1;
    for (auto [m, e] : spec.factors) {
        if (e < 0)
            throw MathError("integer-coefficient path supports nonnegative exponents only");
        auto pent = pentagonal_terms((len + m - 1) / m);
        for (long rep = 0; rep < e; ++rep) {
            std::vector<Int> next(size_t(len), Int(0));
            for (auto [pe, ps] : pent) {
                long off = pe * m;
                if (off >= len) break;
                for (long i = 0; i + off < len; ++i) {
                    if (acc[size_t(i)] == 0) continue;
                    if (ps > 0) next[size_t(i + off)] += acc[size_t(i)];
                    else        next[size_t(i + off)] -= acc[size_t(i)];
                }
            }
            acc = std::move(next);
        }
    }
    // apply q^shift
    if (shift > 0) {
        std::vector<Int> out(size_t(len), Int(0));
        for (long i = 0; i + shift < len; ++i) out[size_t(i + shift)] = acc[size_t(i)];
        acc = std::move(out);
    }
    return acc;
}

namespace {

// pentagonal series for eta with |q| small; returns eta(tau)
Cplx eta_series(const Cplx& tau) {
    // eta = q^{1/24} sum_{n in Z} (-1)^n q^{n(3n-1)/2}
    Real two_pi = 2 * pi_value();
    Cplx itau(-tau.im, tau.re);   // i*tau
    Cplx q = exp(two_pi * itau);
    Real absq = abs(q);
    Cplx pref = exp(two_pi * itau / Real(24));
    Cplx acc(Real(1), Real(0));
    Real eps = machine_eps();
    for (long n = 1;; ++n) {
        long e1 = n * (3 * n - 1) / 2;
        long e2 = n * (3 * n + 1) / 2;
        Cplx t = pow_int(q, e1) + pow_int(q, e2);
        if (n % 2 == 1) acc -= t;
        else acc += t;
        if (pow_int(absq, e1) < eps) break;
        if (n > 200) throw MathError("eta series did not converge (|q| too close to 1)");
    }
    return pref * acc;
}

} // namespace

Cplx eta_eval(const Cplx& tau) {
    if (tau.im <= 0) throw MathError("eta requires Im(tau) > 0");
    // reduce: tau -> tau+1 (phase e^{i pi/12}) and tau -> -1/tau (factor sqrt(-i tau))
    Cplx t = tau;
    Cplx factor(Real(1), Real(0));
    Real half(Rat(1, 2));
    for (int iter = 0; iter < 64; ++iter) {
        // center the real part
        Real shift = floor(t.re + half);
        if (!shift.is_zero()) {
            t.re -= shift;
            // eta(tau+n) = e^{i pi n/12} eta(tau)
            Real ang = pi_value() * shift / 12;
            factor *= Cplx(cos(ang), sin(ang));
        }
        if (norm(t) >= 1) break;
        // eta(tau) = eta(-1/tau) / sqrt(-i tau)
        Cplx minus_i_tau(t.im, -t.re);
        factor = factor / sqrt(minus_i_tau);
        t = -inv(t);
    }
    return factor * eta_series(t);
}

Cplx eta_quotient_eval(const EtaQuotientSpec& spec, const Cplx& tau) {
    spec.validate();
    Cplx acc(Real(1), Real(0));
    for (auto [m, e] : spec.factors)
        acc *= pow_int(eta_eval(Real(m) * tau), e);
    return acc;
}

} // namespace ell32::qs
