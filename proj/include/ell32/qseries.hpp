// q-expansion toolkit: eta quotients and theta on the exact series engine,
// Lambert double sums with periodic coefficients, product-exponent
// extraction by Mobius inversion, Sturm-bound equality certificates, and a
// high-precision numeric Dedekind eta.
#pragma once

#include "ell32/puiseux.hpp"

#include <vector>

namespace ell32::qs {

// finite product prod_j eta(m_j tau)^{e_j}; scales must be distinct
struct EtaQuotientSpec {
    std::vector<std::pair<long, long>> factors;   // (scale m, exponent e)

    Rat leading_exponent() const;                 // sum m*e/24
    void validate() const;
};

inline constexpr long kEtaGrid = 24;

// exact expansion on the 1/24 grid; order must exceed the leading exponent
Puiseux eta_quotient_qexp(const EtaQuotientSpec& spec, const Rat& order);

// theta = 1 + 2 sum_{n>=1} q^{n^2}, integer grid
Puiseux theta_qexp(const Rat& order);

// N-periodic coefficient table; v[r] is the value at residue r
struct PeriodicSeq {
    unsigned N = 1;
    std::vector<Cyclo> v;

    const Cyclo& at(long n) const;
    enum class Parity { Even, Odd, None };
    Parity parity() const;
};

// sum_{n,m>=1, nm<order} n^{k-1} f(n) g(m) q^{nm}
Puiseux lambert_double_sum(const PeriodicSeq& f, const PeriodicSeq& g, int k,
                           const Rat& order);

// exponents a(1..n_max) with prod (1-q^n)^{a(n)} = s + O(q^{n_max+1});
// s must have constant term 1 and integer-grid support
std::vector<Rat> product_exponents(const Puiseux& s, long n_max);

struct SturmResult {
    bool equal;
    long bound;                     // coefficient index certified through
    std::optional<Rat> first_diff;  // set when unequal
};

// Sturm certificate on Gamma_1(level): B = ceil(weight * index / 12) with
// index = level^2 prod_{p | level} (1 - 1/p^2); both series must reach B
SturmResult sturm_equal(const Puiseux& s1, const Puiseux& s2, int weight, long level);

long gamma1_index(long level);

// fast integer-coefficient expansion of an eta product (integer leading
// exponent required): returns c[0..n_max] with the series = sum c[n] q^n
std::vector<Int> eta_product_integer_coeffs(const EtaQuotientSpec& spec, long n_max);

// numeric eta(tau), Im tau > 0, certified to ~2^-precision_bits() via
// eta(-1/tau) = sqrt(-i tau) eta(tau) and eta(tau+1) = e^{i pi/12} eta(tau)
Cplx eta_eval(const Cplx& tau);

// numeric value of an eta quotient at tau
Cplx eta_quotient_eval(const EtaQuotientSpec& spec, const Cplx& tau);

} // namespace ell32::qs
