// Certified numerical integration: Gauss-Legendre and tanh-sinh rules with
// cached nodes, endpoint-singularity handling, a semi-infinite exponential
// map, and tensor/iterated multidimensional drivers.  Error estimates come
// from refinement differencing (levels for tanh-sinh, n vs 2n for
// Gauss-Legendre), never from a priori bounds.  Final sums are accumulated
// in sorted |weight| order so equal configurations give identical bits.
#pragma once

#include "ell32/hp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ell32::quad {

enum class RuleKind { GaussLegendre, TanhSinh };

// Integrands get the abscissa plus stable distances to both endpoints
// (exact for tanh-sinh nodes even when x rounds to the endpoint).
using Integrand = std::function<Cplx(const Real& x, const Real& dist_left, const Real& dist_right)>;

Integrand plain(std::function<Cplx(const Real&)> f);

struct IntegralEstimate {
    Cplx value;
    Real error_estimate;
    long evaluations = 0;
    bool converged = true;
    std::string rule;
};

struct EndpointHint {
    // integrand behaves like (x-a)^left and (b-x)^right near the endpoints;
    // used to pick a power substitution for Gauss-Legendre rules
    Rat left = Rat(0);
    Rat right = Rat(0);
};

struct Options {
    RuleKind kind = RuleKind::TanhSinh;
    Real rel_tol;                  // default: ~2^(-precision+40)
    int min_level = 3;
    int max_level = 8;             // tanh-sinh refinement ceiling
    int gl_size = 48;              // Gauss-Legendre base size (refined to 2n)
    long max_evals = 4000000;      // evaluation budget
    EndpointHint hint;

    Options();
};

// nodes/weights, cached per (kind, size-or-level, precision)
struct Rule {
    RuleKind kind;
    int size;                      // GL: point count; TS: level
    std::vector<Real> x, w;        // GL: abscissas on (-1,1)
    std::vector<Real> t;           // TS: positive abscissa parameters (j*h)
};

const Rule& get_rule(RuleKind kind, int size);

// persistence of the rule cache (exact hex serialization keyed by
// kind/size/precision); loading a mismatched precision entry is ignored
void rule_cache_set_path(const std::string& path);
std::string rule_cache_path();

IntegralEstimate integrate_1d(const Integrand& f, const Real& a, const Real& b,
                              const Options& opt);

// integral over (a, infinity) via t = a + log(1/(1-s))
IntegralEstimate integrate_semi_infinite(const Integrand& f, const Real& a,
                                         const Options& opt);

struct Axis {
    Real a, b;
    bool semi_infinite = false;    // integrate on (a, inf); b ignored
    RuleKind kind = RuleKind::TanhSinh;
    int size = 5;                  // GL points or TS level
    EndpointHint hint;
};

using IntegrandNd = std::function<Cplx(const std::vector<Real>& x)>;

// tensor-product rule over up to 4 axes; error from refining every axis one
// notch when `estimate_error` is set
IntegralEstimate integrate_nd_tensor(const IntegrandNd& f, const std::vector<Axis>& axes,
                                     bool estimate_error, long max_evals = 100000000);

// two-level iterated integral: inner bounds depend on the outer variable
IntegralEstimate integrate_iterated2(
    const std::function<Cplx(const Real& x, const Real& y, const Real& ydl, const Real& ydr)>& f,
    const Real& a, const Real& b, const Options& outer_opt,
    const std::function<std::pair<Real, Real>(const Real& x)>& inner_bounds,
    const Options& inner_opt);

} // namespace ell32::quad
