// Exact rational polynomials and the Maclaurin tables of sn, cn, dn over
// Q[m] (m = kappa^2), computed by differentiating the defining ODE system
//   sn' = cn dn,  cn' = -sn dn,  dn' = -m sn cn.
// The mu_k/nu_k families are read off the sd, nc and cd(t/2) series with
// m = 1 - x.
#pragma once

#include "ell32/cyclotomic.hpp"

#include <vector>

namespace ell32::gf {

class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyQ constant(const Rat& r) { return PolyQ({r}); }
    static PolyQ x() { return PolyQ({Rat(0), Rat(1)}); }

    long degree() const { return long(c_.size()) - 1; }   // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    PolyQ operator-() const;
    friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    PolyQ& operator+=(const PolyQ& o) { *this = *this + o; return *this; }
    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

    PolyQ scaled(const Rat& r) const;
    PolyQ compose_linear(const Rat& a, const Rat& b) const;   // p(a + b x)

    Rat eval(const Rat& x) const;
    Real eval(const Real& x) const;
    Cplx eval(const Cplx& x) const;

    bool is_integer() const;

    // "1+44x+16x^2" style rendering
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

struct EllipticTaylorTable {
    // entry [n] is the coefficient of u^n as a polynomial in m
    std::vector<PolyQ> sn, cn, dn;
    int n_terms = 0;
};

// exact table with coefficients of u^0..u^{n_terms-1}
const EllipticTaylorTable& elliptic_maclaurin(int n_terms);

// Maclaurin coefficient table of a Jacobi quotient over Q[m]:
// entry [n] is the u^n coefficient
std::vector<PolyQ> jacobi_quotient_series(const char* name, int n_terms);  // "sd", "nc", "cd", "nd"

PolyQ mu_poly(int k);                 // k >= 1
PolyQ nu_poly(int k);                 // odd k >= 1; nu_1 = 1

struct IntegralityReport {
    int k_max;
    bool mu_integer;                  // mu_k in Z[x] for 2 <= k <= k_max
    bool nu_4x_integer;               // nu_k(4x) in Z[x] for odd k <= k_max
    bool nu_vanishes_at_zero;         // nu_k(0) = 0 for odd 3 <= k <= k_max
    std::vector<std::string> failures;
};

IntegralityReport integrality_check(int k_max);

} // namespace ell32::gf
