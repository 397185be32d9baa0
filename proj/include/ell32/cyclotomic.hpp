// Exact elements of Q(zeta_N), stored as rational vectors on the power
// basis 1, zeta, ..., zeta^{phi(N)-1} modulo the N-th cyclotomic polynomial.
// Level 1 is plain Q.  Mixed-level arithmetic embeds into Q(zeta_lcm).
#pragma once

#include "ell32/hp.hpp"

#include <vector>

namespace ell32 {

unsigned euler_phi(unsigned n);
std::vector<long> cyclotomic_polynomial(unsigned n);   // monic, ascending coeffs

class Cyclo {
public:
    Cyclo() : level_(1), c_(1, Rat(0)) {}
    explicit Cyclo(const Rat& r) : level_(1), c_(1, r) {}
    Cyclo(long n) : level_(1), c_(1, Rat(n)) {}

    static Cyclo zeta_pow(unsigned level, long e);     // zeta_level^e, reduced
    static Cyclo zero_at(unsigned level);

    unsigned level() const { return level_; }
    const std::vector<Rat>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;                          // true iff coords beyond 1 vanish
    Rat rational_part() const;                         // requires is_rational()

    Cyclo embedded(unsigned new_level) const;          // level() | new_level
    Cyclo conj() const;                                // zeta -> zeta^{-1}
    Cplx to_complex() const;                           // zeta_N = exp(2*pi*i/N)

    Cyclo operator-() const;
    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
    Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
    Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    Cyclo scaled(const Rat& r) const;

    // "p/q" when rational, otherwise "[c0,c1,...]@N"
    std::string to_string() const;

private:
    Cyclo(unsigned level, std::vector<Rat> c) : level_(level), c_(std::move(c)) {}
    void trim();

    unsigned level_;
    std::vector<Rat> c_;
};

} // namespace ell32
