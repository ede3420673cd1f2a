#include "nlcs/fock_oracle.hpp"

#include <cmath>
#include <string>

namespace nlcs {

TruncatedOperator identity_op(int dim) {
    TruncatedOperator op(dim);
    for (int n = 0; n < dim; ++n) op.at(n, n) = 1.0;
    return op;
}

TruncatedOperator lowering_op(int dim) {
    TruncatedOperator op(dim);
    for (int n = 1; n < dim; ++n) op.at(n - 1, n) = std::sqrt(static_cast<double>(n));
    return op;
}

TruncatedOperator raising_op(int dim) { return op_dagger(lowering_op(dim)); }

TruncatedOperator f_of_number_op(const Nonlinearity& nl, int dim) {
    TruncatedOperator op(dim);
    for (int n = 0; n < dim; ++n) op.at(n, n) = f_eval(nl, n);
    return op;
}

TruncatedOperator op_mul(const TruncatedOperator& a, const TruncatedOperator& b) {
    // textbook triple loop on purpose; the oracle stays naive
    TruncatedOperator c(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            cplx acc(0.0, 0.0);
            for (int k = 0; k < a.dim; ++k) acc += a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc;
        }
    return c;
}

TruncatedOperator op_add(const TruncatedOperator& a, const TruncatedOperator& b) {
    TruncatedOperator c(a.dim);
    for (std::size_t i = 0; i < c.mat.size(); ++i) c.mat[i] = a.mat[i] + b.mat[i];
    return c;
}

TruncatedOperator op_sub(const TruncatedOperator& a, const TruncatedOperator& b) {
    TruncatedOperator c(a.dim);
    for (std::size_t i = 0; i < c.mat.size(); ++i) c.mat[i] = a.mat[i] - b.mat[i];
    return c;
}

TruncatedOperator op_scale(cplx s, const TruncatedOperator& a) {
    TruncatedOperator c(a.dim);
    for (std::size_t i = 0; i < c.mat.size(); ++i) c.mat[i] = s * a.mat[i];
    return c;
}

TruncatedOperator op_dagger(const TruncatedOperator& a) {
    TruncatedOperator c(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) c.at(i, j) = std::conj(a.at(j, i));
    return c;
}

std::vector<cplx> op_apply(const TruncatedOperator& a, const std::vector<cplx>& psi) {
    std::vector<cplx> out(a.dim, cplx(0.0, 0.0));
    for (int i = 0; i < a.dim; ++i) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < a.dim; ++j) acc += a.at(i, j) * psi[j];
        out[i] = acc;
    }
    return out;
}

namespace {

std::vector<cplx> embed(const StateCoefficients& s, int dim) {
    std::vector<cplx> psi(dim, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) psi[n] = s.coeffs[n];
    return psi;
}

}  // namespace

cplx oracle_expect(const StateCoefficients& s, const std::vector<Ladder>& word, int dim) {
    const int need = s.n_trunc + static_cast<int>(word.size()) + 2;
    if (dim < need)
        throw DimensionTooSmall("oracle_expect: dim " + std::to_string(dim) + " < required " +
                                std::to_string(need));
    TruncatedOperator prod = identity_op(dim);
    for (Ladder l : word)
        prod = op_mul(prod, l == Ladder::Lower ? lowering_op(dim) : raising_op(dim));
    const std::vector<cplx> psi = embed(s, dim);
    const std::vector<cplx> phi = op_apply(prod, psi);
    cplx acc(0.0, 0.0);
    for (int n = 0; n < dim; ++n) acc += std::conj(psi[n]) * phi[n];
    return acc;
}

double oracle_B_eigencheck(const StateCoefficients& s, int dim) {
    if (dim < s.n_trunc + 2)
        throw DimensionTooSmall("oracle_B_eigencheck: dim " + std::to_string(dim) +
                                " < required " + std::to_string(s.n_trunc + 2));
    const TruncatedOperator B = op_mul(lowering_op(dim), f_of_number_op(s.nl, dim));
    const std::vector<cplx> psi = embed(s, dim);
    std::vector<cplx> phi = op_apply(B, psi);
    for (int n = 0; n < dim; ++n) phi[n] -= s.alpha * psi[n];
    // the corner component n_trunc carries the O(|c_N|) truncation artifact
    double acc = 0.0;
    for (int n = 0; n < s.n_trunc; ++n) acc += std::norm(phi[n]);
    return std::sqrt(acc);
}

}  // namespace nlcs
