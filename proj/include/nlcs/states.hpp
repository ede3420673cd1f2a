#pragma once

#include "nlcs/nonlinearity.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace nlcs {

using cplx = std::complex<double>;

enum class Parity { Any, Even, Odd };

struct TruncationNotConverged : std::runtime_error {
    explicit TruncationNotConverged(const std::string& what) : std::runtime_error(what) {}
};

// Fock-basis amplitudes of a deformed coherent state (parity = Any) or of its
// even/odd cat projection, normalized, truncated adaptively.
struct StateCoefficients {
    cplx alpha{0.0, 0.0};
    Parity parity = Parity::Any;
    Nonlinearity nl;
    std::vector<cplx> coeffs;  // c_0 .. c_{n_trunc}, unit norm
    int n_trunc = 0;
    double tail_bound = 0.0;  // largest neglected single-term weight over the
                              // lookahead window; the series decays at least
                              // geometrically past n_trunc, so this bounds the
                              // discarded mass up to an O(1) factor
    bool degenerate = false;  // odd projection of alpha = 0 collapses to |1>
};

// Builders.  n_forced >= 0 pins the truncation index instead of the adaptive
// rule (the tail condition is still enforced; a forced index with fat tail
// throws TruncationNotConverged rather than returning a misnormalized state).
StateCoefficients build_nlcs(cplx alpha, const Nonlinearity& nl, int n_forced = -1);
StateCoefficients build_even(cplx alpha, const Nonlinearity& nl, int n_forced = -1);
StateCoefficients build_odd(cplx alpha, const Nonlinearity& nl, int n_forced = -1);

enum class Ladder { Lower, Raise };

// <s| op_word |s> with the word read as written (leftmost factor outermost) and
// applied right-to-left by exact ladder action on the retained amplitudes.
// Words up to length 8.  The truncation error inherits tail_bound amplified by
// at most (n_trunc + 8)^4 through the ladder prefactors, irrelevant at the
// 1e-14 tail policy.
cplx expect_word(const StateCoefficients& s, const std::vector<Ladder>& word);

// Normally ordered moment grid <A^dag^j A^k> for j, k = 0..jmax.
struct MomentTable {
    int jmax = 0;
    std::vector<cplx> m;  // (jmax+1)^2 entries, row-major

    cplx at(int j, int k) const;
};

MomentTable moment_table(const StateCoefficients& s, int jmax = 4);

// || (A f(N) - alpha) |s> || over components 0..n_trunc-1.  The deformed
// coherent state is an exact eigenstate of A f(N), so this is machine-level
// for parity = Any; the top component is excluded because truncation always
// leaves an O(|c_N|) artifact there.  Even/odd projections are not eigenstates
// and return O(1).
double eigenstate_residual(const StateCoefficients& s);

}  // namespace nlcs
