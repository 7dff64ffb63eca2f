#include "pairint/kernels.hpp"

#include <cmath>

namespace pairint {
namespace kernels {

namespace serial {

void syrk_weighted(const double* A, std::size_t m, std::size_t n, const double* d, double* C) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * n;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* aj = A + j * n;
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += ai[l] * d[l] * aj[l];
      C[i * m + j] = acc;
    }
  }
}

bool cholesky(double* C, std::size_t m, double reg) {
  for (std::size_t k = 0; k < m; ++k) {
    double piv = C[k * m + k];
    if (piv < reg) piv = reg;
    if (!(piv > 0.0)) return false;
    piv = std::sqrt(piv);
    C[k * m + k] = piv;
    const double inv = 1.0 / piv;
    for (std::size_t i = k + 1; i < m; ++i) C[i * m + k] *= inv;
    // row-major trailing update: row i touches its contiguous slice only
    for (std::size_t i = k + 1; i < m; ++i) {
      double* Ci = C + i * m;
      const double lik = Ci[k];
      if (lik == 0.0) continue;
      for (std::size_t j = k + 1; j <= i; ++j) Ci[j] -= C[j * m + k] * lik;
    }
  }
  return true;
}

void cholesky_solve(const double* L, std::size_t m, double* x) {
  for (std::size_t i = 0; i < m; ++i) {
    double acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= L[i * m + j] * x[j];
    x[i] = acc / L[i * m + i];
  }
  for (std::size_t ii = m; ii-- > 0;) {
    double acc = x[ii];
    for (std::size_t j = ii + 1; j < m; ++j) acc -= L[j * m + ii] * x[j];
    x[ii] = acc / L[ii * m + ii];
  }
}

void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * n;
    double acc = 0.0;
    for (std::size_t l = 0; l < n; ++l) acc += ai[l] * x[l];
    y[i] = acc;
  }
}

void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  for (std::size_t l = 0; l < n; ++l) y[l] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * n;
    const double xi = x[i];
    for (std::size_t l = 0; l < n; ++l) y[l] += ai[l] * xi;
  }
}

}  // namespace serial

void syrk_weighted(const double* A, std::size_t m, std::size_t n, const double* d, double* C) {
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * n;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* aj = A + j * n;
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += ai[l] * d[l] * aj[l];
      C[i * m + j] = acc;
    }
  }
}

bool cholesky(double* C, std::size_t m, double reg) {
  for (std::size_t k = 0; k < m; ++k) {
    double piv = C[k * m + k];
    if (piv < reg) piv = reg;
    if (!(piv > 0.0)) return false;
    piv = std::sqrt(piv);
    C[k * m + k] = piv;
    const double inv = 1.0 / piv;
    for (std::size_t i = k + 1; i < m; ++i) C[i * m + k] *= inv;
    // rank-1 trailing update; each row is owned by one thread and updated in
    // the same order as the serial version, so the factors agree bitwise
#pragma omp parallel for schedule(static, 32) if (m - k > 128)
    for (std::size_t i = k + 1; i < m; ++i) {
      double* Ci = C + i * m;
      const double lik = Ci[k];
      if (lik == 0.0) continue;
      for (std::size_t j = k + 1; j <= i; ++j) Ci[j] -= C[j * m + k] * lik;
    }
  }
  return true;
}

void cholesky_solve(const double* L, std::size_t m, double* x) {
  serial::cholesky_solve(L, m, x);  // sequential dependence, nothing to gain
}

void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
#pragma omp parallel for schedule(static) if (m * n > 1u << 16)
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = A + i * n;
    double acc = 0.0;
    for (std::size_t l = 0; l < n; ++l) acc += ai[l] * x[l];
    y[i] = acc;
  }
}

void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
#pragma omp parallel for schedule(static) if (m * n > 1u << 16)
  for (std::size_t l = 0; l < n; ++l) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += A[i * n + l] * x[i];
    y[l] = acc;
  }
}

}  // namespace kernels
}  // namespace pairint
