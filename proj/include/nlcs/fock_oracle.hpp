#pragma once

#include "nlcs/nonlinearity.hpp"
#include "nlcs/states.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace nlcs {

// Brute-force cross-check layer: everything here is dense, serial and written
// the obvious way on purpose.  It must stay dumber than the series code it
// checks.

struct DimensionTooSmall : std::runtime_error {
    explicit DimensionTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct TruncatedOperator {
    int dim = 0;
    std::vector<cplx> mat;  // row-major dim x dim

    explicit TruncatedOperator(int d) : dim(d), mat(static_cast<std::size_t>(d) * d) {}
    cplx& at(int r, int c) { return mat[static_cast<std::size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const { return mat[static_cast<std::size_t>(r) * dim + c]; }
};

TruncatedOperator identity_op(int dim);
TruncatedOperator lowering_op(int dim);                             // <n-1|A|n> = sqrt(n)
TruncatedOperator raising_op(int dim);                              // adjoint of A
TruncatedOperator f_of_number_op(const Nonlinearity& nl, int dim);  // diag f(n)

TruncatedOperator op_mul(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator op_add(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator op_sub(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator op_scale(cplx s, const TruncatedOperator& a);
TruncatedOperator op_dagger(const TruncatedOperator& a);

std::vector<cplx> op_apply(const TruncatedOperator& a, const std::vector<cplx>& psi);

// <s| word |s> via an explicit matrix product in a dim-level truncation.
// Requires dim >= n_trunc + word length + 2 so no retained amplitude can reach
// the truncation corner.
cplx oracle_expect(const StateCoefficients& s, const std::vector<Ladder>& word, int dim);

// || (A f(N) - alpha) |s> || with the matrix route, components below the
// truncation corner only.  Requires dim >= n_trunc + 2.
double oracle_B_eigencheck(const StateCoefficients& s, int dim);

}  // namespace nlcs
