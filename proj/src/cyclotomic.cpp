#include "ell32/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace ell32 {

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// exact division of integer polynomials, used only where divisibility holds
std::vector<long> poly_divide(std::vector<long> num, const std::vector<long>& den) {
    std::vector<long> q(num.size() - den.size() + 1, 0);
    for (long i = long(q.size()) - 1; i >= 0; --i) {
        long c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    return q;
}

struct CycloContext {
    unsigned n = 1;
    unsigned phi = 1;
    std::vector<long> poly;                    // Phi_n, ascending, monic
    std::vector<std::vector<Rat>> power;       // zeta^j mod Phi_n for j = 0..n-1
    std::vector<std::vector<Rat>> product_row; // zeta^j for j = 0..2*phi-2
};

const CycloContext& context(unsigned n) {
    static std::map<unsigned, CycloContext> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    CycloContext ctx;
    ctx.n = n;
    ctx.phi = euler_phi(n);
    ctx.poly = cyclotomic_polynomial(n);

    unsigned phi = ctx.phi;
    size_t rows = std::max<size_t>(n, 2 * phi - 1);
    std::vector<std::vector<Rat>> red(rows, std::vector<Rat>(phi, Rat(0)));
    red[0][0] = 1;
    for (size_t j = 1; j < rows; ++j) {
        // red[j] = zeta * red[j-1], replacing zeta^phi by -(lower part of Phi)
        std::vector<Rat> r(phi, Rat(0));
        const auto& prev = red[j - 1];
        Rat top = prev[phi - 1];
        for (unsigned i = 0; i + 1 < phi; ++i) r[i + 1] = prev[i];
        if (top != 0)
            for (unsigned i = 0; i < phi; ++i)
                r[i] -= top * ctx.poly[i];
        red[j] = std::move(r);
    }
    ctx.product_row.assign(red.begin(), red.begin() + (2 * phi - 1));
    ctx.power.assign(red.begin(), red.begin() + n);

    auto [pos, ok] = cache.emplace(n, std::move(ctx));
    return pos->second;
}

} // namespace

std::vector<long> cyclotomic_polynomial(unsigned n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divide(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

Cyclo Cyclo::zeta_pow(unsigned level, long e) {
    const auto& ctx = context(level);
    long r = e % long(level);
    if (r < 0) r += level;
    return Cyclo(level, ctx.power[size_t(r)]);
}

Cyclo Cyclo::zero_at(unsigned level) {
    return Cyclo(level, std::vector<Rat>(euler_phi(level), Rat(0)));
}

bool Cyclo::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclo::rational_part() const {
    if (!is_rational()) throw MathError("cyclotomic value is not rational: " + to_string());
    return c_[0];
}

Cyclo Cyclo::embedded(unsigned new_level) const {
    if (new_level == level_) return *this;
    if (new_level % level_ != 0)
        throw MathError("cyclotomic embedding requires divisible levels");
    unsigned step = new_level / level_;
    Cyclo out = zero_at(new_level);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        out += zeta_pow(new_level, long(i) * step).scaled(c_[i]);
    }
    return out;
}

Cyclo Cyclo::conj() const {
    Cyclo out = zero_at(level_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        out += zeta_pow(level_, -long(i)).scaled(c_[i]);
    }
    return out;
}

Cplx Cyclo::to_complex() const {
    Real ang = 2 * pi_value() / long(level_);
    Cplx zeta(cos(ang), sin(ang));
    Cplx acc;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * zeta;
        if (c_[i] != 0) acc += Cplx(to_real(c_[i]));
    }
    return acc;
}

Cyclo Cyclo::operator-() const {
    Cyclo out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

namespace {
unsigned align_level(const Cyclo& a, const Cyclo& b) {
    return std::lcm(a.level(), b.level());
}
} // namespace

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    unsigned L = align_level(a, b);
    if (a.level() != L) return a.embedded(L) + b.embedded(L);
    if (b.level() != L) return a + b.embedded(L);
    Cyclo out = a;
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
    return out;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    return a + (-b);
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    unsigned L = align_level(a, b);
    if (a.level() != L || b.level() != L) return a.embedded(L) * b.embedded(L);
    const auto& ctx = context(L);
    unsigned phi = ctx.phi;
    std::vector<Rat> conv(2 * phi - 1, Rat(0));
    for (unsigned i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (unsigned j = 0; j < phi; ++j) {
            if (b.c_[j] == 0) continue;
            conv[i + j] += a.c_[i] * b.c_[j];
        }
    }
    std::vector<Rat> out(phi, Rat(0));
    for (unsigned d = 0; d < conv.size(); ++d) {
        if (conv[d] == 0) continue;
        const auto& row = ctx.product_row[d];
        for (unsigned i = 0; i < phi; ++i)
            if (row[i] != 0) out[i] += conv[d] * row[i];
    }
    return Cyclo(L, std::move(out));
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    unsigned L = align_level(a, b);
    if (a.level() != L || b.level() != L) return a.embedded(L) == b.embedded(L);
    return a.c_ == b.c_;
}

Cyclo Cyclo::scaled(const Rat& r) const {
    Cyclo out = *this;
    for (auto& x : out.c_) x *= r;
    return out;
}

std::string Cyclo::to_string() const {
    if (is_rational()) {
        std::ostringstream os;
        os << c_[0];
        return os.str();
    }
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]@" << level_;
    return os.str();
}

} // namespace ell32
