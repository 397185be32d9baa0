#include "ell32/polyq.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

namespace ell32::gf {

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::operator-() const {
    PolyQ out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) c[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyQ(std::move(c));
}

PolyQ PolyQ::scaled(const Rat& r) const {
    PolyQ out = *this;
    for (auto& x : out.c_) x *= r;
    out.trim();
    return out;
}

PolyQ PolyQ::compose_linear(const Rat& a, const Rat& b) const {
    // Horner over the linear argument
    PolyQ lin({a, b});
    PolyQ acc;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * lin;
        acc += PolyQ::constant(c_[i]);
    }
    return acc;
}

Rat PolyQ::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Real PolyQ::eval(const Real& x) const {
    Real acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + to_real(c_[i]);
    return acc;
}

Cplx PolyQ::eval(const Cplx& x) const {
    Cplx acc;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * x;
        acc += Cplx(to_real(c_[i]));
    }
    return acc;
}

bool PolyQ::is_integer() const {
    for (const auto& x : c_)
        if (denominator(x) != 1) return false;
    return true;
}

std::string PolyQ::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? "-" : "+");
            if (a < 0) a = -a;
        }
        bool unit = (a == 1) && i > 0;
        if (!unit) os << a;
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

namespace {

using Series = std::vector<PolyQ>;   // coefficient of u^n at index n

Series series_mul(const Series& a, const Series& b, int n_terms) {
    Series c(static_cast<size_t>(n_terms));
    for (int i = 0; i < n_terms; ++i) {
        if (a[size_t(i)].is_zero()) continue;
        for (int j = 0; i + j < n_terms; ++j) {
            if (b[size_t(j)].is_zero()) continue;
            c[size_t(i + j)] += a[size_t(i)] * b[size_t(j)];
        }
    }
    return c;
}

// reciprocal of a series with constant term 1
Series series_inv(const Series& a, int n_terms) {
    Series r(static_cast<size_t>(n_terms));
    r[0] = PolyQ::constant(Rat(1));
    for (int n = 1; n < n_terms; ++n) {
        PolyQ acc;
        for (int i = 1; i <= n; ++i) {
            if (a[size_t(i)].is_zero()) continue;
            acc += a[size_t(i)] * r[size_t(n - i)];
        }
        r[size_t(n)] = -acc;
    }
    return r;
}

} // namespace

const EllipticTaylorTable& elliptic_maclaurin(int n_terms) {
    if (n_terms < 4) throw MathError("elliptic table needs n_terms >= 4");
    static std::map<int, EllipticTaylorTable> cache;
    // serve any request from the largest computed table
    auto it = cache.lower_bound(n_terms);
    if (it != cache.end()) return it->second;

    EllipticTaylorTable t;
    t.n_terms = n_terms;
    t.sn.assign(size_t(n_terms), PolyQ());
    t.cn.assign(size_t(n_terms), PolyQ());
    t.dn.assign(size_t(n_terms), PolyQ());
    t.sn[1] = PolyQ::constant(Rat(1));
    t.cn[0] = PolyQ::constant(Rat(1));
    t.dn[0] = PolyQ::constant(Rat(1));
    PolyQ m = PolyQ::x();
    for (int n = 0; n + 1 < n_terms; ++n) {
        // u^n coefficients of the products drive the u^{n+1} coefficients
        PolyQ cndn, sndn, sncn;
        for (int i = 0; i <= n; ++i) {
            cndn += t.cn[size_t(i)] * t.dn[size_t(n - i)];
            sndn += t.sn[size_t(i)] * t.dn[size_t(n - i)];
            sncn += t.sn[size_t(i)] * t.cn[size_t(n - i)];
        }
        Rat inv(1, n + 1);
        t.sn[size_t(n + 1)] = cndn.scaled(inv);
        t.cn[size_t(n + 1)] = (-sndn).scaled(inv);
        t.dn[size_t(n + 1)] = (-(m * sncn)).scaled(inv);
    }
    auto [pos, ok] = cache.emplace(n_terms, std::move(t));
    (void)ok;
    return pos->second;
}

std::vector<PolyQ> jacobi_quotient_series(const char* name, int n_terms) {
    const auto& t = elliptic_maclaurin(n_terms);
    auto take = [&](const Series& s) { return Series(s.begin(), s.begin() + n_terms); };
    if (std::strcmp(name, "sd") == 0)
        return series_mul(take(t.sn), series_inv(take(t.dn), n_terms), n_terms);
    if (std::strcmp(name, "nc") == 0)
        return series_inv(take(t.cn), n_terms);
    if (std::strcmp(name, "cd") == 0)
        return series_mul(take(t.cn), series_inv(take(t.dn), n_terms), n_terms);
    if (std::strcmp(name, "nd") == 0)
        return series_inv(take(t.dn), n_terms);
    throw MathError(std::string("unknown Jacobi quotient ") + name);
}

namespace {

Rat factorial(int n) {
    Rat r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

PolyQ mu_poly(int k) {
    if (k < 1) throw MathError("mu_poly requires k >= 1");
    int n_terms = std::max(k + 1, 4);
    // even k from SD(t) = sd(t, sqrt(1-x)); odd k from NC(t) = nc(t, sqrt(1-x))
    auto series = jacobi_quotient_series(k % 2 == 0 ? "sd" : "nc", n_terms);
    PolyQ in_m = series[size_t(k - 1)].scaled(factorial(k - 1));
    return in_m.compose_linear(Rat(1), Rat(-1));   // m = 1 - x
}

PolyQ nu_poly(int k) {
    if (k < 1 || k % 2 == 0) throw MathError("nu_poly requires odd k >= 1");
    if (k == 1) return PolyQ::constant(Rat(1));
    int n_terms = std::max(k + 1, 4);
    // CD(t) = cd(t/2, sqrt(1-x)): the t^{k-1} coefficient picks up 2^{1-k}
    auto series = jacobi_quotient_series("cd", n_terms);
    Rat scale = factorial(k - 1) / Rat(Int(1) << unsigned(k - 1));
    PolyQ in_m = series[size_t(k - 1)].scaled(scale);
    return in_m.compose_linear(Rat(1), Rat(-1));
}

IntegralityReport integrality_check(int k_max) {
    if (k_max < 3) throw MathError("integrality check needs k_max >= 3");
    IntegralityReport r{k_max, true, true, true, {}};
    for (int k = 2; k <= k_max; ++k) {
        PolyQ mu = mu_poly(k);
        if (!mu.is_integer()) {
            r.mu_integer = false;
            r.failures.push_back("mu_" + std::to_string(k) + " not in Z[x]: " + mu.to_string());
        }
        if (mu.degree() > k) {
            r.failures.push_back("mu_" + std::to_string(k) + " degree exceeds k");
        }
    }
    for (int k = 3; k <= k_max; k += 2) {
        PolyQ nu = nu_poly(k);
        PolyQ nu4 = nu.compose_linear(Rat(0), Rat(4));   // nu(4x)
        if (!nu4.is_integer()) {
            r.nu_4x_integer = false;
            r.failures.push_back("nu_" + std::to_string(k) + "(4x) not in Z[x]: " + nu4.to_string());
        }
        if (nu.eval(Rat(0)) != 0) {
            r.nu_vanishes_at_zero = false;
            r.failures.push_back("nu_" + std::to_string(k) + "(0) != 0");
        }
    }
    return r;
}

} // namespace ell32::gf
