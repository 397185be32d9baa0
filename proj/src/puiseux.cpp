#include "ell32/puiseux.hpp"

#include <numeric>
#include <sstream>

namespace ell32 {

namespace {

long checked_grid(const Rat& x, long den, const char* what) {
    Rat scaled = x * den;
    if (denominator(scaled) != 1)
        throw MathError(std::string(what) + " does not lie on the 1/" + std::to_string(den) + " grid");
    Int n = numerator(scaled);
    return static_cast<long>(n);
}

} // namespace

Puiseux::Puiseux(long den, const Rat& order)
    : den_(den), order_num_(checked_grid(order, den, "truncation order")), level_(1) {
    if (den <= 0) throw MathError("grid denominator must be positive");
}

Puiseux Puiseux::constant(const Cyclo& c, long den, const Rat& order) {
    Puiseux s(den, order);
    s.set_coeff(Rat(0), c);
    return s;
}

Puiseux Puiseux::monomial(const Rat& exponent, const Cyclo& c, long den, const Rat& order) {
    Puiseux s(den, order);
    s.set_coeff(exponent, c);
    return s;
}

Cyclo Puiseux::coeff(const Rat& exponent) const {
    Rat scaled = exponent * den_;
    if (denominator(scaled) != 1) return Cyclo();
    auto it = a_.find(static_cast<long>(numerator(scaled)));
    return it == a_.end() ? Cyclo() : it->second;
}

std::optional<Rat> Puiseux::leading_exponent() const {
    if (a_.empty()) return std::nullopt;
    return Rat(a_.begin()->first, den_);
}

Cyclo Puiseux::leading_coeff() const {
    if (a_.empty()) return Cyclo();
    return a_.begin()->second;
}

void Puiseux::set_coeff(const Rat& exponent, const Cyclo& c) {
    long e = checked_grid(exponent, den_, "exponent");
    if (e >= order_num_) return;
    if (c.is_zero())
        a_.erase(e);
    else {
        a_[e] = c;
        level_ = std::lcm(level_, c.level());
    }
}

void Puiseux::add_term(const Rat& exponent, const Cyclo& c) {
    long e = checked_grid(exponent, den_, "exponent");
    if (e >= order_num_ || c.is_zero()) return;
    auto it = a_.find(e);
    if (it == a_.end()) {
        a_[e] = c;
        level_ = std::lcm(level_, c.level());
    } else {
        it->second += c;
        if (it->second.is_zero()) a_.erase(it);
        else level_ = std::lcm(level_, it->second.level());
    }
}

void Puiseux::normalize() {
    unsigned lv = 1;
    for (auto it = a_.begin(); it != a_.end();) {
        if (it->second.is_zero()) it = a_.erase(it);
        else { lv = std::lcm(lv, it->second.level()); ++it; }
    }
    level_ = lv;
}

Puiseux Puiseux::rebased(long new_den) const {
    if (new_den == den_) return *this;
    if (new_den % den_ != 0) throw MathError("grid rebase requires divisible denominators");
    long f = new_den / den_;
    Puiseux out(new_den, order());
    for (const auto& [e, c] : a_) out.a_[e * f] = c;
    out.level_ = level_;
    return out;
}

Puiseux Puiseux::truncated(const Rat& new_order) const {
    long on = checked_grid(new_order, den_, "truncation order");
    if (on > order_num_)
        throw MathError("cannot extend a truncated series");
    Puiseux out(den_, new_order);
    for (const auto& [e, c] : a_) {
        if (e >= on) break;
        out.a_[e] = c;
    }
    out.normalize();
    return out;
}

Puiseux Puiseux::scaled(const Cyclo& c) const {
    Puiseux out(den_, order());
    if (c.is_zero()) return out;
    for (const auto& [e, v] : a_) out.a_[e] = v * c;
    out.normalize();
    return out;
}

Puiseux Puiseux::shifted(const Rat& dexp) const {
    long d = checked_grid(dexp, den_, "shift exponent");
    Puiseux out(den_, order() + dexp);
    for (const auto& [e, c] : a_) out.a_[e + d] = c;
    out.level_ = level_;
    return out;
}

Puiseux Puiseux::exponents_scaled(long m) const {
    if (m <= 0) throw MathError("exponent scale must be positive");
    Puiseux out(den_, order() * m);
    for (const auto& [e, c] : a_) out.a_[e * m] = c;
    out.level_ = level_;
    return out;
}

Puiseux Puiseux::operator-() const {
    Puiseux out(den_, order());
    for (const auto& [e, c] : a_) out.a_[e] = -c;
    out.level_ = level_;
    return out;
}

namespace {

std::pair<Puiseux, Puiseux> aligned(const Puiseux& x, const Puiseux& y) {
    long den = std::lcm(x.den(), y.den());
    return {x.rebased(den), y.rebased(den)};
}

} // namespace

Puiseux operator+(const Puiseux& x, const Puiseux& y) {
    auto [a, b] = aligned(x, y);
    Rat order = std::min(a.order(), b.order());
    Puiseux out(a.den(), order);
    for (const auto& [e, c] : a.terms()) out.add_term(Rat(e, a.den()), c);
    for (const auto& [e, c] : b.terms()) out.add_term(Rat(e, b.den()), c);
    return out;
}

Puiseux operator-(const Puiseux& x, const Puiseux& y) {
    return x + (-y);
}

Puiseux operator*(const Puiseux& x, const Puiseux& y) {
    auto [a, b] = aligned(x, y);
    long den = a.den();
    // certifiable order of a product: min(ord_a + min_b, ord_b + min_a).
    // An empty factor is exactly zero below its order, so the product is too.
    long amin = a.terms().empty() ? 0 : a.terms().begin()->first;
    long bmin = b.terms().empty() ? 0 : b.terms().begin()->first;
    long oa = checked_grid(a.order(), den, "order");
    long ob = checked_grid(b.order(), den, "order");
    long on;
    if (a.terms().empty() && b.terms().empty()) on = oa + ob;
    else if (a.terms().empty()) on = oa + bmin;
    else if (b.terms().empty()) on = ob + amin;
    else on = std::min(oa + bmin, ob + amin);
    Puiseux out(den, Rat(on, den));
    for (const auto& [ea, ca] : a.terms()) {
        if (ea + bmin >= on) break;
        for (const auto& [eb, cb] : b.terms()) {
            long e = ea + eb;
            if (e >= on) break;
            out.add_term(Rat(e, den), ca * cb);
        }
    }
    return out;
}

Puiseux Puiseux::inverse() const {
    if (a_.empty())
        throw MathError("cannot invert a series with zero leading coefficient");
    long v = a_.begin()->first;
    const Cyclo& lead = a_.begin()->second;
    if (!lead.is_rational() || lead.rational_part() == 0)
        throw MathError("series inverse requires an invertible rational leading coefficient, got " + lead.to_string());
    Rat linv = Rat(1) / lead.rational_part();

    // u = s / (lead q^v) = 1 + tail; invert the unit part by recursion
    long m = order_num_ - v;   // number of valid grid slots of the unit part
    if (m <= 0) throw MathError("series order too small to invert");
    std::vector<Cyclo> r(static_cast<size_t>(m));
    r[0] = Cyclo(Rat(1));
    for (long j = 1; j < m; ++j) {
        Cyclo acc = Cyclo(Rat(0));
        for (const auto& [e, c] : a_) {
            long i = e - v;
            if (i == 0 || i > j) continue;
            Cyclo term = c.scaled(linv) * r[size_t(j - i)];
            acc += term;
        }
        r[size_t(j)] = -acc;
    }
    Puiseux out(den_, Rat(order_num_ - 2 * v, den_));
    for (long j = 0; j < m; ++j) {
        if (r[size_t(j)].is_zero()) continue;
        out.add_term(Rat(j - v, den_), r[size_t(j)].scaled(linv));
    }
    return out;
}

Puiseux operator/(const Puiseux& x, const Puiseux& y) {
    return x * y.inverse();
}

Puiseux Puiseux::pow(long e) const {
    if (e == 0) return Puiseux::one(den_, order());
    Puiseux base = e > 0 ? *this : inverse();
    long n = e > 0 ? e : -e;
    Puiseux acc = Puiseux::one(base.den(), base.order());
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

std::optional<Rat> rational_nth_root(const Rat& x, unsigned n) {
    if (x == 0) return Rat(0);
    if (x < 0 && n % 2 == 0) return std::nullopt;
    Int num = numerator(x), den = denominator(x);
    bool neg = num < 0;
    if (neg) num = -num;
    Int rn, rd;
    int exact_n = mpz_root(rn.backend().data(), num.backend().data(), n);
    int exact_d = mpz_root(rd.backend().data(), den.backend().data(), n);
    if (!exact_n || !exact_d) return std::nullopt;
    Rat r(rn, rd);
    return neg ? -r : r;
}

Puiseux Puiseux::root(unsigned n) const {
    if (n == 0) throw MathError("0-th root is undefined");
    if (n == 1) return *this;
    if (a_.empty()) throw MathError("cannot take a root of an (identically truncated) zero series");
    long v = a_.begin()->first;
    if (v % long(n) != 0)
        throw MathError("leading exponent " + std::to_string(v) + "/" + std::to_string(den_) +
                        " is not divisible by " + std::to_string(n) + " on the grid");
    const Cyclo& lead = a_.begin()->second;
    if (!lead.is_rational())
        throw MathError("root requires a rational leading coefficient, got " + lead.to_string());
    auto lr = rational_nth_root(lead.rational_part(), n);
    if (!lr)
        throw MathError("leading coefficient " + lead.to_string() + " is not an exact " +
                        std::to_string(n) + "-th power in Q");

    // s = lead q^v (1 + S);  r = lr q^{v/n} (1 + R),  (1+R)^n = 1+S.
    long m = order_num_ - v;
    std::vector<Cyclo> S(static_cast<size_t>(m));
    for (auto& c : S) c = Cyclo(Rat(0));
    Rat linv = Rat(1) / lead.rational_part();
    for (const auto& [e, c] : a_)
        if (e != v) S[size_t(e - v)] = c.scaled(linv);

    // R and powers (1+R)^j tracked incrementally: coefficient recursion
    //   [(1+R)^n]_j = S_j  determines R_j given R_1..R_{j-1}.
    std::vector<Cyclo> R(static_cast<size_t>(m));
    std::vector<std::vector<Cyclo>> P(n + 1);   // P[j] = coeffs of (1+R)^j
    for (auto& row : P) { row.assign(size_t(m), Cyclo(Rat(0))); row[0] = Cyclo(Rat(1)); }
    for (long j = 1; j < m; ++j) {
        // with R_j unknown: [(1+R)^n]_j = n*R_j + K_j where K_j collects the
        // contributions of R_1..R_{j-1}; rows hold the known part until fixup
        for (unsigned p = 1; p <= n; ++p) {
            Cyclo acc = Cyclo(Rat(0));
            for (long i = 1; i < j; ++i) {
                if (R[size_t(i)].is_zero()) continue;
                acc += R[size_t(i)] * P[p - 1][size_t(j - i)];
            }
            P[p][size_t(j)] = P[p - 1][size_t(j)] + acc;
        }
        Cyclo K = P[n][size_t(j)];
        Cyclo Sj = S[size_t(j)];
        Cyclo Rj = (Sj - K).scaled(Rat(1, long(n)));
        R[size_t(j)] = Rj;
        if (!Rj.is_zero()) {
            // fix up P rows with the unknown-term contribution p * R_j
            for (unsigned p = 1; p <= n; ++p)
                P[p][size_t(j)] += Rj.scaled(Rat(long(p), 1));
        }
    }

    Puiseux out(den_, Rat(order_num_ - v + v / long(n), den_));
    for (long j = 0; j < m; ++j) {
        Cyclo c = (j == 0) ? Cyclo(Rat(1)) : R[size_t(j)];
        if (c.is_zero()) continue;
        out.add_term(Rat(j + v / long(n), den_), c.scaled(*lr));
    }
    return out;
}

std::optional<Rat> Puiseux::first_difference(const Puiseux& o) const {
    auto [a, b] = aligned(*this, o);
    long on = std::min(
        checked_grid(a.order(), a.den(), "order"),
        checked_grid(b.order(), b.den(), "order"));
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        long ea = ia == a.terms().end() ? on : ia->first;
        long eb = ib == b.terms().end() ? on : ib->first;
        long e = std::min(ea, eb);
        if (e >= on) break;
        Cyclo ca = (ea == e) ? ia->second : Cyclo();
        Cyclo cb = (eb == e) ? ib->second : Cyclo();
        if (ca != cb) return Rat(e, a.den());
        if (ea == e) ++ia;
        if (eb == e) ++ib;
    }
    return std::nullopt;
}

Cplx Puiseux::eval_at_tau(const Cplx& tau) const {
    if (tau.im <= 0) throw MathError("series evaluation requires Im(tau) > 0");
    // w = q^{1/den} = exp(2*pi*i*tau/den)
    Cplx w = exp((2 * pi_value() / Real(den_)) * Cplx(-tau.im, tau.re));
    Cplx acc;
    long last_e = 0;
    Cplx wp(Real(1), Real(0));
    for (const auto& [e, c] : a_) {
        wp *= pow_int(w, e - last_e);
        last_e = e;
        acc += c.to_complex() * wp;
    }
    return acc;
}

std::string Puiseux::to_string(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (const auto& [e, c] : a_) {
        if (shown++ >= max_terms) { os << " + ..."; break; }
        if (shown > 1) os << " + ";
        os << "(" << c.to_string() << ")q^(" << e << "/" << den_ << ")";
    }
    if (a_.empty()) os << "0";
    os << "  [O(q^" << order_num_ << "/" << den_ << ")]";
    return os.str();
}

} // namespace ell32
