// Level-N weight-k Eisenstein series
//   E_{a,b}(tau) = gamma_{a,b}(tau)
//                + sum_{n,m>=1, m=a mod N} zeta_N^{bn} n^{k-1} q^{mn}
//                + (-1)^k sum_{n,m>=1, m=-a mod N} zeta_N^{-bn} n^{k-1} q^{mn}
// with constant term gamma = beta_k alpha^{N,k}_{a,b} (+ a 1/Im tau part at
// k = 2), their partial Fourier transforms, cusp expansions, the modular
// involution E_{a,b}(tau)(N tau)^k = E_{-b,a}(-1/(N^2 tau)), and the finite
// Fourier decomposition of double sums  sum n^{k-1} f(n) g(m) q^{mn}.
#pragma once

#include "ell32/qseries.hpp"

#include <map>

namespace ell32::eis {

struct EisIndex {
    unsigned N;
    int k;
    int a, b;       // stored as canonical residues 0..N-1

    EisIndex(unsigned N_, int k_, long a_, long b_);
    bool operator<(const EisIndex& o) const;
    std::string str() const;
};

// negation (N,k,-a,-b) together with the antisymmetry sign (-1)^k
std::pair<EisIndex, int> negated_index(const EisIndex& idx);

struct ConstantTerm {
    Cplx alpha;          // beta_k * alpha^{N,k}_{a,b}
    Real imtau_coeff;    // gamma = alpha + imtau_coeff / Im(tau); k=2 only

    ConstantTerm() : alpha(), imtau_coeff(0) {}
};

struct EisSeries {
    EisIndex idx;
    Puiseux fourier;     // exact, no constant term
    ConstantTerm constant;
};

// primed sum over m = b mod N of m^{-k} (k >= 2, or k = 1 via digamma limit)
Real primed_power_sum(unsigned N, int k, long b);

// k = 1 support is experimental (the source formulas are mutually
// inconsistent about a != 0); constant_term throws unless allow_k1
ConstantTerm constant_term(const EisIndex& idx, bool allow_k1 = false);

Puiseux eis_fourier(const EisIndex& idx, const Rat& order);
EisSeries eis_qexp(const EisIndex& idx, const Rat& order, bool allow_k1 = false);

// Fourier sum + constant; writes a certified tail bound if requested and
// throws (reporting the order needed) when the bound cannot meet tol
Cplx eval_eis(const EisSeries& s, const Cplx& tau, const Real& tol,
              Real* tail_bound = nullptr);

struct PartialTransform {
    Puiseux fourier;
    ConstantTerm constant;
};

// Etilde_{d,b} = sum_a zeta_N^{da} E_{a,b}
PartialTransform partial_transform(unsigned N, int k, long d, long b, const Rat& order);

struct CuspExpansion {
    int a_dash, b_dash;          // a' = -ac-b, b' = a(c^2+1)+bc
    EisIndex direct_index;       // E_{a,b,c}(tau) = E_{a,-a'}(tau) + direct_gamma_diff
    Cplx direct_gamma_diff;      //   (gamma_{a,b} - gamma_{a,-a'}; 1/Im tau parts cancel)
    EisIndex dual_index;         // E_{a,b,c}(tau)(N tau)^k = E_{a',a}(-1/(N^2 tau)) + dual_gamma_diff
    Cplx dual_gamma_diff;        //   (gamma_{a',b'} - gamma_{a',a})
};

CuspExpansion cusp_expansion(const EisIndex& idx, long c);

// Lemma-1 coefficients c_{a,b} = (1/2) fhat(b) g(a); requires the parity
// constraint f(-a) g(-b) = (-1)^k f(a) g(b)
std::map<std::pair<int, int>, Cyclo>
double_sum_decompose(const qs::PeriodicSeq& f, const qs::PeriodicSeq& g, int k);

// inverse finite Fourier transform fhat(n) = (1/N) sum_a zeta^{-an} f(a)
qs::PeriodicSeq finite_fourier_hat(const qs::PeriodicSeq& f);

// exact linear combination of Eisenstein series at one level/weight
struct EisCombo {
    unsigned N = 1;
    int k = 0;
    std::vector<std::pair<EisIndex, Cyclo>> terms;

    Puiseux fourier(const Rat& order) const;
    ConstantTerm constant() const;
};

// numeric form of a combo frozen at a given order and precision
class CompiledCombo {
public:
    CompiledCombo() = default;
    CompiledCombo(const EisCombo& combo, const Rat& order);
    Cplx eval(const Cplx& tau, const Real& tol) const;

private:
    long den_ = 1;
    long order_num_ = 0;
    int k_ = 0;
    std::vector<std::pair<long, Cplx>> terms_;
    Cplx alpha_;
    Real imtau_ = Real(0);
    Real coeff_scale_ = Real(1);   // bound on |combo coefficients|
};

// the two series driving the conductor-32 pipelines, by weight parity:
//   even k:  E1 = (i/2)(E^{4,k}_{1,-1} - E^{4,k}_{1,1}),
//            E2 = (1/4)(E^{2,k}_{1,0} - E^{2,k}_{1,1})
//   odd k:   E1 = (i/2)(E^{4,k}_{1,1} + E^{4,k}_{1,-1}),
//            E2 = (i/4) sum_a i^{-a} (E^{4,k}_{a,0} - E^{4,k}_{a,2})
// plus E1hat = (i/2)(E^{4,k}_{1,-1} - E^{4,k}_{1,1}) satisfying the checkable
// involution record E1hat(i/(32v)) = -(8iv)^k E1(2iv).
struct Level32Pair {
    int k;
    EisCombo E1, E2, E1hat;
};

Level32Pair level32_pair(int k);

} // namespace ell32::eis
