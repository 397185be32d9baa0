// High-precision real/complex arithmetic used throughout.
//
// Reals are MPFR floats (via boost::multiprecision) with a process-wide
// working precision; complex values are a plain re/im pair on top.  All
// numeric kernels assume the precision has been set once at startup (see
// set_precision_bits) and may raise it locally with PrecisionGuard.
#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace ell32 {

using Real = boost::multiprecision::mpfr_float;
using Int  = boost::multiprecision::mpz_int;
using Rat  = boost::multiprecision::mpq_rational;

// Raised by numeric kernels on domain errors and uncertifiable requests.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

void set_precision_bits(long bits);
long precision_bits();

// Temporarily raises the working precision by `extra_bits`.
class PrecisionGuard {
public:
    explicit PrecisionGuard(long extra_bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;
private:
    unsigned saved_digits_;
};

Real pi_value();
Real euler_gamma();
Real log2_value();
Real zeta3_value();
Real machine_eps();          // 2^(1-precision_bits)

Real to_real(const Rat& r);
Real to_real(const Int& n);

// Deterministic decimal rendering (scientific, fixed digit count).
std::string real_str(const Real& x, int sig_digits = 36);

struct Cplx {
    Real re, im;

    Cplx() : re(0), im(0) {}
    Cplx(Real r) : re(std::move(r)), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(long r) : re(r), im(0) {}
    Cplx(int r) : re(r), im(0) {}

    static Cplx i() { return Cplx(Real(0), Real(1)); }

    Cplx operator-() const { return Cplx(-re, -im); }
    Cplx conj() const { return Cplx(re, -im); }

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o);
    Cplx& operator/=(const Cplx& o);

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Cplx operator+(Cplx a, const Cplx& b) { a += b; return a; }
inline Cplx operator-(Cplx a, const Cplx& b) { a -= b; return a; }
inline Cplx operator*(Cplx a, const Cplx& b) { a *= b; return a; }
inline Cplx operator/(Cplx a, const Cplx& b) { a /= b; return a; }
inline Cplx operator*(const Real& s, Cplx a) { a.re *= s; a.im *= s; return a; }
inline Cplx operator*(Cplx a, const Real& s) { a.re *= s; a.im *= s; return a; }
inline Cplx operator/(Cplx a, const Real& s) { a.re /= s; a.im /= s; return a; }

Real abs(const Cplx& z);
Real norm(const Cplx& z);               // re^2 + im^2
Cplx sqrt(const Cplx& z);               // principal branch
Cplx exp(const Cplx& z);
Cplx log(const Cplx& z);                // principal branch
Cplx sin(const Cplx& z);
Cplx cos(const Cplx& z);
Cplx inv(const Cplx& z);
Cplx pow_int(Cplx base, long e);        // e may be negative
Real pow_int(Real base, long e);

std::string cplx_str(const Cplx& z, int sig_digits = 36);

} // namespace ell32
