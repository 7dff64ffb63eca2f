#pragma once

#include <cstddef>
#include <vector>

namespace pairint {

// Dense data-parallel kernels used by the interior-point solver and the
// particle simulator.  Each kernel has an OpenMP-parallel implementation and a
// serial reference under kernels::serial; both compute entries in the same
// order, so results agree bitwise and the reference doubles as a test oracle.
namespace kernels {

// C (m x m, row-major, lower triangle) = A diag(d) A^T for row-major A (m x n).
// Upper triangle of C is left untouched.
void syrk_weighted(const double* A, std::size_t m, std::size_t n, const double* d, double* C);

// In-place Cholesky factorization of the lower triangle of C (m x m).
// Pivots smaller than `reg` are lifted to `reg`.  Returns false when a pivot
// is non-positive even after regularization.
bool cholesky(double* C, std::size_t m, double reg);

// Solves L L^T x = b in place given the factor from cholesky().
void cholesky_solve(const double* L, std::size_t m, double* x);

// y = A x  and  y = A^T x for row-major A (m x n).
void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y);

namespace serial {
void syrk_weighted(const double* A, std::size_t m, std::size_t n, const double* d, double* C);
bool cholesky(double* C, std::size_t m, double reg);
void cholesky_solve(const double* L, std::size_t m, double* x);
void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
}  // namespace serial

}  // namespace kernels
}  // namespace pairint
