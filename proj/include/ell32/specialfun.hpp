// High-precision special functions: complex AGM, the hypergeometric
// F(u) = 2F1(1/2,1/2;1;u) with its analytic continuation past u = 1,
// Hurwitz zeta and digamma by Euler-Maclaurin, Jacobi elliptic functions
// for complex argument and modulus, generalized hypergeometric series, and
// the 4F3 value H(-t) on the negative axis.
#pragma once

#include "ell32/polyq.hpp"

namespace ell32::sf {

// principal-branch AGM; both arguments off the negative real axis
Cplx agm(Cplx x, Cplx y);
Real agm(Real x, Real y);

// F(u) = 2F1(1/2,1/2;1;u) = 1/agm(1, sqrt(1-u)); real u > 1 is served via
// F(u) = u^{-1/2} (F(1/u) - i F(1-1/u)), the continuation below the cut
Cplx F_hyp(const Cplx& u);
Cplx F_hyp(const Real& u);

// quadrature reference for F on real u != 1 (both integral shapes)
Cplx F_hyp_quadrature(const Real& u);

// Hurwitz zeta by Euler-Maclaurin; integer or real s (s != 1), t > 0.
// Valid on the analytic continuation through s = 0.
Real hurwitz_zeta(const Real& s, const Real& t);
Real riemann_zeta(const Real& s);
Real digamma(const Real& t);
Rat bernoulli_number(unsigned n);

struct JacobiModulus {
    Cplx m;                           // m = kappa^2
    Cplx mc() const { return Cplx(Real(1)) - m; }
};

struct JacobiTriple {
    Cplx sn, cn, dn;
};

// sn/cn/dn at complex argument and modulus, descending Landen ladder with
// reciprocal-modulus and imaginary-modulus reductions
JacobiTriple jacobi(const Cplx& u, const JacobiModulus& mod);

// quotient accessors; throw MathError near a pole of the quotient
Cplx jacobi_sd(const Cplx& u, const JacobiModulus& mod);
Cplx jacobi_nc(const Cplx& u, const JacobiModulus& mod);
Cplx jacobi_cd(const Cplx& u, const JacobiModulus& mod);
Cplx jacobi_nd(const Cplx& u, const JacobiModulus& mod);

// reusable evaluator: the modulus reduction ladder is built once, then
// many arguments can be evaluated against it
class JacobiEvaluator {
public:
    explicit JacobiEvaluator(const Cplx& m);
    JacobiTriple operator()(const Cplx& u) const;

private:
    enum class Route { Direct, Imaginary, Reciprocal, ReciprocalImaginary };
    Route route_;
    Cplx m_;                          // original modulus
    Cplx kappa_;                      // sqrt(m) when a reciprocal step is used
    Cplx m_work_;                     // modulus the ladder was built for
    Cplx m_work_final_tiny_;          // residual modulus at the ladder base
    std::vector<Cplx> ladder_;        // descending Landen moduli k_1, k_2, ...
};

// independent small-argument oracle: sums the exact Maclaurin table
JacobiTriple jacobi_maclaurin(const Cplx& u, const Cplx& m, int n_terms);

// generalized hypergeometric series sum_{n} prod (a_i)_n / prod (b_j)_n z^n/n!
// on |z| < 1
Cplx pfq(const std::vector<Rat>& a, const std::vector<Rat>& b, const Cplx& z);

// H(-t) = 4F3(1,1,1,1; 3/2,3/2,3/2; -t) for t >= 0.
// Taylor series for small t, CVZ alternating acceleration near t = 1, and
// the convergent large-t expansion sum_n t^{-n} (cubic in log t) beyond.
Real H_neg(const Real& t);

// 3-dimensional integral representation of H(-t) (one axis in closed form,
// the rest by quadrature); reference implementation for cross-checks
Real H_neg_quad3d(const Real& t);

} // namespace ell32::sf
