#include "ell32/hp.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ell32 {

namespace {

long g_bits = 0;

unsigned digits_for_bits(long bits) {
    // decimal digits covering `bits` binary digits, plus slack
    return static_cast<unsigned>(std::ceil(double(bits) * 0.3010299957) + 4);
}

} // namespace

void set_precision_bits(long bits) {
    if (bits < 32) throw MathError("precision must be at least 32 bits");
    g_bits = bits;
    Real::default_precision(digits_for_bits(bits));
}

long precision_bits() {
    if (g_bits == 0) set_precision_bits(192);
    return g_bits;
}

PrecisionGuard::PrecisionGuard(long extra_bits) {
    saved_digits_ = Real::default_precision();
    long bits = precision_bits() + extra_bits;
    Real::default_precision(digits_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() {
    Real::default_precision(saved_digits_);
}

namespace {

// constants cached per mpfr working precision
template <typename F>
Real cached_const(int which, F compute) {
    static std::map<std::pair<int, unsigned>, Real> cache;
    unsigned d = Real::default_precision();
    auto key = std::make_pair(which, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Real v = compute();
    cache.emplace(key, v);
    return v;
}

} // namespace

Real pi_value() {
    return cached_const(1, [] {
        Real r;
        mpfr_const_pi(r.backend().data(), MPFR_RNDN);
        return r;
    });
}

Real euler_gamma() {
    return cached_const(2, [] {
        Real r;
        mpfr_const_euler(r.backend().data(), MPFR_RNDN);
        return r;
    });
}

Real log2_value() {
    return cached_const(3, [] {
        Real r;
        mpfr_const_log2(r.backend().data(), MPFR_RNDN);
        return r;
    });
}

Real zeta3_value() {
    return cached_const(4, [] {
        Real r;
        mpfr_zeta_ui(r.backend().data(), 3, MPFR_RNDN);
        return r;
    });
}

Real machine_eps() {
    Real one(1);
    return ldexp(one, int(1 - precision_bits()));
}

Real to_real(const Rat& r) {
    return Real(numerator(r).str()) / Real(denominator(r).str());
}

Real to_real(const Int& n) {
    return Real(n.str());
}

std::string real_str(const Real& x, int sig_digits) {
    return x.str(sig_digits, std::ios_base::scientific);
}

Cplx& Cplx::operator*=(const Cplx& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
}

Cplx& Cplx::operator/=(const Cplx& o) {
    Real d = o.re * o.re + o.im * o.im;
    if (d.is_zero()) throw MathError("complex division by zero");
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
}

Real abs(const Cplx& z) { return hypot(z.re, z.im); }

Real norm(const Cplx& z) { return z.re * z.re + z.im * z.im; }

Cplx sqrt(const Cplx& z) {
    if (z.im.is_zero()) {
        if (z.re >= 0) return Cplx(sqrt(z.re), Real(0));
        return Cplx(Real(0), sqrt(-z.re));
    }
    Real m = abs(z);
    Real w = sqrt((m + abs(z.re)) / 2);
    if (z.re >= 0) return Cplx(w, z.im / (2 * w));
    Real u = abs(z.im) / (2 * w);
    return z.im >= 0 ? Cplx(u, w) : Cplx(u, -w);
}

Cplx exp(const Cplx& z) {
    Real m = exp(z.re);
    return Cplx(m * cos(z.im), m * sin(z.im));
}

Cplx log(const Cplx& z) {
    if (z.is_zero()) throw MathError("log of zero");
    return Cplx(log(abs(z)), atan2(z.im, z.re));
}

Cplx sin(const Cplx& z) {
    return Cplx(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im));
}

Cplx cos(const Cplx& z) {
    return Cplx(cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im));
}

Cplx inv(const Cplx& z) {
    Real d = norm(z);
    if (d.is_zero()) throw MathError("complex inverse of zero");
    return Cplx(z.re / d, -z.im / d);
}

Cplx pow_int(Cplx base, long e) {
    if (e < 0) { base = inv(base); e = -e; }
    Cplx r(Real(1), Real(0));
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Real pow_int(Real base, long e) {
    bool neg = e < 0;
    if (neg) e = -e;
    Real r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? 1 / r : r;
}

std::string cplx_str(const Cplx& z, int sig_digits) {
    return real_str(z.re, sig_digits) + (z.im < 0 ? " - " : " + ") +
           real_str(abs(z.im), sig_digits) + "i";
}

} // namespace ell32
