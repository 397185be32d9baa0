// Truncated Puiseux series: sparse exact series in q^{1/d} with Cyclo
// coefficients and an explicit (exclusive) truncation order.  Every
// operation returns the tightest order it can certify, so an identity
// check never claims agreement beyond what was actually computed.
#pragma once

#include "ell32/cyclotomic.hpp"

#include <functional>
#include <map>
#include <optional>

namespace ell32 {

class Puiseux {
public:
    // zero series on the 1/den grid, valid below `order`
    Puiseux(long den, const Rat& order);

    static Puiseux constant(const Cyclo& c, long den, const Rat& order);
    static Puiseux one(long den, const Rat& order) { return constant(Cyclo(1), den, order); }
    static Puiseux monomial(const Rat& exponent, const Cyclo& c, long den, const Rat& order);

    long den() const { return den_; }
    Rat order() const { return Rat(order_num_, den_); }
    unsigned level() const { return level_; }
    const std::map<long, Cyclo>& terms() const { return a_; }   // exponent numerators
    bool is_zero() const { return a_.empty(); }

    Cyclo coeff(const Rat& exponent) const;                       // 0 if absent
    std::optional<Rat> leading_exponent() const;
    Cyclo leading_coeff() const;

    void set_coeff(const Rat& exponent, const Cyclo& c);          // exponent on grid, < order
    void add_term(const Rat& exponent, const Cyclo& c);

    Puiseux rebased(long new_den) const;                          // den | new_den
    Puiseux truncated(const Rat& new_order) const;                // new_order <= order
    Puiseux scaled(const Cyclo& c) const;
    Puiseux shifted(const Rat& dexp) const;                       // multiply by q^{dexp}
    Puiseux exponents_scaled(long m) const;                       // q -> q^m
    Puiseux operator-() const;

    friend Puiseux operator+(const Puiseux& x, const Puiseux& y);
    friend Puiseux operator-(const Puiseux& x, const Puiseux& y);
    friend Puiseux operator*(const Puiseux& x, const Puiseux& y);
    friend Puiseux operator/(const Puiseux& x, const Puiseux& y);

    Puiseux inverse() const;                                      // needs invertible leading coeff
    Puiseux pow(long e) const;                                    // e may be negative
    // exact n-th root; leading coefficient must be an n-th power in Q
    Puiseux root(unsigned n) const;

    // first exponent (numerator over common grid) where the series differ,
    // comparing only below min(order(), o.order())
    std::optional<Rat> first_difference(const Puiseux& o) const;
    bool agrees_with(const Puiseux& o) const { return !first_difference(o).has_value(); }

    // evaluate with q = exp(2*pi*i*tau); |q|^(1/den) must be < 1
    Cplx eval_at_tau(const Cplx& tau) const;

    std::string to_string(int max_terms = 12) const;

private:
    void normalize();

    long den_;         // exponent grid denominator
    long order_num_;   // truncation order = order_num_/den_, exclusive
    unsigned level_;   // cyclotomic level of all stored coefficients
    std::map<long, Cyclo> a_;
};

// rational n-th root helper: returns r with r^n == x, if one exists in Q
std::optional<Rat> rational_nth_root(const Rat& x, unsigned n);

} // namespace ell32
