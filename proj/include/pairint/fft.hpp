#pragma once

#include <complex>
#include <vector>

#include "pairint/grid.hpp"

namespace pairint {

// Discrete Fourier transforms on the periodic grid,
// fhat(k) = sum_j f_j exp(-2*pi*i*j.k/n).
// Plans are cached per grid and safe to execute from concurrent callers.
namespace fft {

std::vector<std::complex<double>> forward(const Grid& grid, const std::vector<double>& f);
std::vector<double> inverse_real(const Grid& grid, const std::vector<std::complex<double>>& fhat);

// Direct O(n^2) reference transform, kept for testing the fast path.
std::vector<std::complex<double>> forward_direct(const Grid& grid, const std::vector<double>& f);

}  // namespace fft

}  // namespace pairint
