#include "ell32/quadrature.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ell32::quad {

Options::Options() {
    rel_tol = ldexp(Real(1), int(-(precision_bits() - 40)));
}

Integrand plain(std::function<Cplx(const Real&)> f) {
    return [f = std::move(f)](const Real& x, const Real&, const Real&) { return f(x); };
}

namespace {

// deterministic compensated accumulation: sort by |weighted value| ascending,
// ties broken by insertion index
Cplx sorted_sum(std::vector<Cplx>& terms) {
    std::vector<size_t> idx(terms.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        return norm(terms[i]) < norm(terms[j]);
    });
    Cplx acc;
    for (size_t i : idx) acc += terms[i];
    return acc;
}

std::string hex_of(const Real& x) {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 16, 0, x.backend().data(), MPFR_RNDN);
    std::string out = std::string(s) + "@" + std::to_string(e);
    mpfr_free_str(s);
    return out;
}

Real real_of_hex(const std::string& s) {
    auto at = s.rfind('@');
    std::string mant = s.substr(0, at);
    long e = std::stol(s.substr(at + 1));
    Real r;
    mpfr_set_str(r.backend().data(), (mant + "@" + std::to_string(0)).c_str(), 16, MPFR_RNDN);
    // mantissa is 0.xxxx * 16^e in mpfr_get_str convention
    mpfr_mul_2si(r.backend().data(), r.backend().data(), 4 * e - 4 * long(mant.size() - (mant[0] == '-' ? 1 : 0)) + 0, MPFR_RNDN);
    return r;
}

struct CacheKey {
    int kind;
    int size;
    long bits;
    bool operator<(const CacheKey& o) const {
        return std::tie(kind, size, bits) < std::tie(o.kind, o.size, o.bits);
    }
};

std::map<CacheKey, Rule>& rule_cache() {
    static std::map<CacheKey, Rule> c;
    return c;
}

std::string& cache_path_ref() {
    static std::string p;
    return p;
}

void save_cache() {
    if (cache_path_ref().empty()) return;
    std::ofstream os(cache_path_ref(), std::ios::trunc);
    for (const auto& [key, rule] : rule_cache()) {
        os << key.kind << " " << key.size << " " << key.bits << " "
           << rule.x.size() << "\n";
        for (size_t i = 0; i < rule.x.size(); ++i) {
            os << hex_of(rule.x[i]) << " " << hex_of(rule.w[i]);
            if (rule.kind == RuleKind::TanhSinh) os << " " << hex_of(rule.t[i]);
            os << "\n";
        }
    }
}

void load_cache() {
    std::ifstream is(cache_path_ref());
    if (!is) return;
    int kind, size;
    long bits;
    size_t n;
    while (is >> kind >> size >> bits >> n) {
        Rule r;
        r.kind = RuleKind(kind);
        r.size = size;
        bool usable = (bits == precision_bits());
        for (size_t i = 0; i < n; ++i) {
            std::string xs, ws, ts;
            is >> xs >> ws;
            if (r.kind == RuleKind::TanhSinh) is >> ts;
            if (!usable) continue;
            r.x.push_back(real_of_hex(xs));
            r.w.push_back(real_of_hex(ws));
            if (r.kind == RuleKind::TanhSinh) r.t.push_back(real_of_hex(ts));
        }
        if (usable) rule_cache()[CacheKey{kind, size, bits}] = std::move(r);
    }
}

// Legendre polynomial value and derivative by recurrence
std::pair<Real, Real> legendre_pd(int n, const Real& x) {
    Real p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    Real dp = n * (x * p1 - p0) / (x * x - 1);
    return {p1, dp};
}

Rule make_gauss_legendre(int n) {
    Rule r;
    r.kind = RuleKind::GaussLegendre;
    r.size = n;
    Real pi = pi_value();
    Real eps = ldexp(Real(1), int(-(precision_bits() - 6)));
    for (int i = 1; i <= n; ++i) {
        Real x = cos(pi * (Real(i) - Real(Rat(1, 4))) / (Real(n) + Real(Rat(1, 2))));
        for (int it = 0; it < 200; ++it) {
            auto [p, dp] = legendre_pd(n, x);
            Real dx = p / dp;
            x -= dx;
            if (abs(dx) < eps * (abs(x) + 1)) break;
        }
        auto [p, dp] = legendre_pd(n, x);
        (void)p;
        Real w = 2 / ((1 - x * x) * dp * dp);
        r.x.push_back(x);
        r.w.push_back(w);
    }
    return r;
}

// tanh-sinh nodes for level L: t_j = j * 2^-L, x = tanh((pi/2) sinh t),
// w = (pi/2) cosh t / cosh^2((pi/2) sinh t).  Only j >= 0 stored.
Rule make_tanh_sinh(int level) {
    Rule r;
    r.kind = RuleKind::TanhSinh;
    r.size = level;
    Real pi_half = pi_value() / 2;
    Real ln2 = log2_value();
    // node range covers integrands with endpoint singularities as strong as
    // d^(-1/2): terms scale like d^(1/2) there, so reach d ~ 2^(-2 prec)
    Real tmax = asinh(2 * (Real(precision_bits()) + 30) * ln2 / pi_half);
    Real h = ldexp(Real(1), -level);
    long jmax = long(std::ceil(double(tmax / h)));
    for (long j = 0; j <= jmax; ++j) {
        Real t = j * h;
        Real u = pi_half * sinh(t);
        Real sech2 = 1 / (cosh(u) * cosh(u));
        Real w = pi_half * cosh(t) * sech2;
        r.t.push_back(t);
        r.x.push_back(tanh(u));
        r.w.push_back(w);
    }
    return r;
}

} // namespace

const Rule& get_rule(RuleKind kind, int size) {
    CacheKey key{int(kind), size, precision_bits()};
    auto& cache = rule_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rule r = (kind == RuleKind::GaussLegendre) ? make_gauss_legendre(size)
                                               : make_tanh_sinh(size);
    auto [pos, ok] = cache.emplace(key, std::move(r));
    (void)ok;
    save_cache();
    return pos->second;
}

void rule_cache_set_path(const std::string& path) {
    cache_path_ref() = path;
    if (!path.empty()) load_cache();
}

std::string rule_cache_path() { return cache_path_ref(); }

namespace {

// one tanh-sinh pass at a given level over (a,b); nodes with distance
// below `cut` from an endpoint are skipped (their weights are negligible)
Cplx ts_level_sum(const Integrand& f, const Real& a, const Real& b, int level,
                  long& evals) {
    const Rule& r = get_rule(RuleKind::TanhSinh, level);
    Real h = ldexp(Real(1), -level);
    Real half = (b - a) / 2;
    Real pi_half = pi_value() / 2;
    Real cut = ldexp(Real(1), int(-(2 * precision_bits() + 16)));
    std::vector<Cplx> terms;
    terms.reserve(2 * r.x.size());
    for (size_t j = 0; j < r.x.size(); ++j) {
        Real u = pi_half * sinh(r.t[j]);
        // stable distances to the endpoints: 1 -/+ tanh(u)
        Real em = exp(-2 * abs(u));
        Real dnear = 2 * em / (1 + em);          // 1 - |tanh(u)|
        Real dfar = 2 / (1 + em);                // 1 + |tanh(u)|
        Real w = r.w[j] * half;
        if (dnear < cut && j > 0) continue;
        {   // +t node
            Real dl = half * (r.x[j] >= 0 ? dfar : dnear);
            Real dr = half * (r.x[j] >= 0 ? dnear : dfar);
            Cplx v = f(a + dl, dl, dr);
            terms.push_back(w * v);
            ++evals;
        }
        if (j > 0) {   // -t node, mirrored
            Real dl = half * (r.x[j] >= 0 ? dnear : dfar);
            Real dr = half * (r.x[j] >= 0 ? dfar : dnear);
            Cplx v = f(a + dl, dl, dr);
            terms.push_back(w * v);
            ++evals;
        }
    }
    return h * sorted_sum(terms);
}

Cplx gl_pass(const Integrand& f, const Real& a, const Real& b, int n,
             const EndpointHint& hint, long& evals) {
    // power substitutions x = a + (b-a) s^p neutralize algebraic endpoints
    long pl = 1, pr = 1;
    if (hint.left != 0 && hint.left > -1) pl = long(denominator(hint.left));
    if (hint.right != 0 && hint.right > -1) pr = long(denominator(hint.right));
    const Rule& r = get_rule(RuleKind::GaussLegendre, n);
    Real len = b - a;
    std::vector<Cplx> terms;
    terms.reserve(r.x.size());
    for (size_t i = 0; i < r.x.size(); ++i) {
        // map (-1,1) -> (0,1)
        Real s = (r.x[i] + 1) / 2;
        Real w = r.w[i] / 2;
        Real xi, jac;
        if (pl > 1 && pr > 1) {
            // split handled by caller; apply left power only
            xi = pow_int(s, pl);
            jac = pl * pow_int(s, pl - 1);
        } else if (pl > 1) {
            xi = pow_int(s, pl);
            jac = pl * pow_int(s, pl - 1);
        } else if (pr > 1) {
            Real sm = 1 - s;
            xi = 1 - pow_int(sm, pr);
            jac = pr * pow_int(sm, pr - 1);
        } else {
            xi = s;
            jac = Real(1);
        }
        Real dl = len * xi;
        Real dr = len * (1 - xi);
        Cplx v = f(a + dl, dl, dr);
        terms.push_back((w * jac * len) * v);
        ++evals;
    }
    return sorted_sum(terms);
}

} // namespace

IntegralEstimate integrate_1d(const Integrand& f, const Real& a, const Real& b,
                              const Options& opt) {
    IntegralEstimate out;
    if (opt.kind == RuleKind::GaussLegendre) {
        Cplx coarse = gl_pass(f, a, b, opt.gl_size, opt.hint, out.evaluations);
        Cplx fine = gl_pass(f, a, b, 2 * opt.gl_size, opt.hint, out.evaluations);
        out.value = fine;
        out.error_estimate = abs(fine - coarse);
        out.rule = "gauss-legendre n=" + std::to_string(2 * opt.gl_size);
        out.converged = out.error_estimate <= opt.rel_tol * (abs(fine) + 1);
        return out;
    }
    Cplx prev, cur;
    Real est = Real(0);
    int level = opt.min_level;
    for (;; ++level) {
        cur = ts_level_sum(f, a, b, level, out.evaluations);
        if (level > opt.min_level) {
            est = abs(cur - prev);
            if (est <= opt.rel_tol * (abs(cur) + ldexp(Real(1), -int(precision_bits())))) {
                out.converged = true;
                break;
            }
        }
        prev = cur;
        if (level >= opt.max_level || out.evaluations > opt.max_evals) {
            out.converged = false;
            break;
        }
    }
    out.value = cur;
    out.error_estimate = est;
    out.rule = "tanh-sinh level=" + std::to_string(level);
    return out;
}

IntegralEstimate integrate_semi_infinite(const Integrand& f, const Real& a,
                                         const Options& opt) {
    // t = a + log(1/(1-s)) maps (0,1) -> (a,inf); dt = ds/(1-s)
    Integrand g = [&f, &a](const Real&, const Real&, const Real& dr) {
        Real tma = -log(dr);
        Cplx v = f(a + tma, tma, Real(0));
        return v / dr;
    };
    Options o = opt;
    IntegralEstimate out = integrate_1d(g, Real(0), Real(1), o);
    out.rule += " (semi-infinite exp map)";
    return out;
}

namespace {

Real ldexpr_cut() {
    return ldexp(Real(1), int(-(2 * precision_bits() + 16)));
}

struct AxisNodes {
    std::vector<Real> x, w, dl, dr;
};

AxisNodes axis_nodes(const Axis& ax, int size_bump) {
    AxisNodes out;
    int size = ax.size + size_bump;
    if (ax.kind == RuleKind::GaussLegendre) {
        const Rule& r = get_rule(RuleKind::GaussLegendre, size_bump ? 2 * ax.size : ax.size);
        Real len = (ax.b - ax.a);
        for (size_t i = 0; i < r.x.size(); ++i) {
            Real s = (r.x[i] + 1) / 2;
            out.x.push_back(ax.a + len * s);
            out.w.push_back(r.w[i] * len / 2);
            out.dl.push_back(len * s);
            out.dr.push_back(len * (1 - s));
        }
        return out;
    }
    const Rule& r = get_rule(RuleKind::TanhSinh, size);
    Real h = ldexp(Real(1), -size);
    Real half = (ax.b - ax.a) / 2;
    Real pi_half = pi_value() / 2;
    Real cut = ldexpr_cut();
    for (size_t j = 0; j < r.x.size(); ++j) {
        Real u = pi_half * sinh(r.t[j]);
        Real em = exp(-2 * abs(u));
        Real dnear = 2 * em / (1 + em);
        Real dfar = 2 / (1 + em);
        if (dnear < cut && j > 0) continue;
        Real w = r.w[j] * half * h;
        auto push = [&](bool positive) {
            Real dl = half * ((r.x[j] >= 0) == positive ? dfar : dnear);
            Real dr = half * ((r.x[j] >= 0) == positive ? dnear : dfar);
            out.x.push_back(ax.a + dl);
            out.w.push_back(w);
            out.dl.push_back(dl);
            out.dr.push_back(dr);
        };
        push(true);
        if (j > 0) push(false);
    }
    return out;
}

Cplx tensor_pass(const IntegrandNd& f, const std::vector<Axis>& axes, int bump,
                 long& evals, long max_evals, bool& budget_ok) {
    std::vector<AxisNodes> nodes;
    long total = 1;
    for (const auto& ax : axes) {
        nodes.push_back(axis_nodes(ax, bump));
        total *= long(nodes.back().x.size());
    }
    if (evals + total > max_evals) {
        budget_ok = false;
        return Cplx();
    }
    size_t dim = axes.size();
    std::vector<size_t> ix(dim, 0);
    std::vector<Real> x(dim);
    std::vector<Cplx> terms;
    terms.reserve(size_t(total));
    for (;;) {
        Real w(1);
        for (size_t d = 0; d < dim; ++d) {
            x[d] = nodes[d].x[ix[d]];
            w *= nodes[d].w[ix[d]];
        }
        terms.push_back(w * f(x));
        ++evals;
        size_t d = 0;
        while (d < dim && ++ix[d] == nodes[d].x.size()) { ix[d] = 0; ++d; }
        if (d == dim) break;
    }
    return sorted_sum(terms);
}

} // namespace

IntegralEstimate integrate_nd_tensor(const IntegrandNd& f, const std::vector<Axis>& axes,
                                     bool estimate_error, long max_evals) {
    if (axes.empty() || axes.size() > 4)
        throw MathError("tensor integration supports 1..4 axes");
    for (const auto& ax : axes)
        if (ax.semi_infinite) throw MathError("tensor mode expects finite axes");
    IntegralEstimate out;
    out.rule = "tensor";
    bool budget_ok = true;
    Cplx coarse = tensor_pass(f, axes, 0, out.evaluations, max_evals, budget_ok);
    if (!budget_ok) throw MathError("tensor integration budget exceeded at base resolution");
    out.value = coarse;
    out.error_estimate = Real(0);
    if (estimate_error) {
        Cplx fine = tensor_pass(f, axes, 1, out.evaluations, max_evals, budget_ok);
        if (budget_ok) {
            out.value = fine;
            out.error_estimate = abs(fine - coarse);
        }
        out.converged = budget_ok;
    }
    return out;
}

IntegralEstimate integrate_iterated2(
    const std::function<Cplx(const Real& x, const Real& y, const Real& ydl, const Real& ydr)>& f,
    const Real& a, const Real& b, const Options& outer_opt,
    const std::function<std::pair<Real, Real>(const Real& x)>& inner_bounds,
    const Options& inner_opt) {
    IntegralEstimate out;
    long inner_evals = 0;
    Real inner_err(0);
    bool inner_converged = true;
    Integrand outer = [&](const Real& x, const Real&, const Real&) {
        auto [ia, ib] = inner_bounds(x);
        Integrand g = [&](const Real& y, const Real& ydl, const Real& ydr) {
            return f(x, y, ydl, ydr);
        };
        IntegralEstimate inner = integrate_1d(g, ia, ib, inner_opt);
        inner_evals += inner.evaluations;
        if (inner.error_estimate > inner_err) inner_err = inner.error_estimate;
        inner_converged = inner_converged && inner.converged;
        return inner.value;
    };
    out = integrate_1d(outer, a, b, outer_opt);
    out.evaluations += inner_evals;
    out.error_estimate += inner_err * (b - a);
    out.converged = out.converged && inner_converged;
    out.rule = "iterated(" + out.rule + ")";
    return out;
}

} // namespace ell32::quad
