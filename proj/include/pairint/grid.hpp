#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairint/errors.hpp"

namespace pairint {

// Equispaced discretization of the unit periodic box [0,1]^dim.
// h is always derived from n; x_j = j*h per axis.
struct Grid {
  int dim = 1;  // 1 or 2
  int n = 0;    // points per axis

  Grid() = default;
  Grid(int dim_, int n_) : dim(dim_), n(n_) {
    if (dim != 1 && dim != 2) throw shape_error("Grid: dim must be 1 or 2");
    if (n < 2) throw shape_error("Grid: n must be >= 2");
  }

  double h() const { return 1.0 / n; }
  // h^dim, the quadrature weight of one cell
  double cell() const { return dim == 1 ? 1.0 / n : 1.0 / (static_cast<double>(n) * n); }
  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  // Row-major flat index.
  std::size_t flat(int j1, int j2 = 0) const {
    return dim == 1 ? static_cast<std::size_t>(j1)
                    : static_cast<std::size_t>(j1) * n + static_cast<std::size_t>(j2);
  }

  std::array<int, 2> unflat(std::size_t j) const {
    if (dim == 1) return {static_cast<int>(j), 0};
    return {static_cast<int>(j / n), static_cast<int>(j % n)};
  }

  // Index of -x_j on the grid: simultaneous negation of all coordinates mod n.
  std::size_t mirror(std::size_t j) const {
    auto c = unflat(j);
    int m1 = c[0] == 0 ? 0 : n - c[0];
    int m2 = c[1] == 0 ? 0 : n - c[1];
    return flat(m1, m2);
  }

  // Coordinates of grid point j.
  std::array<double, 2> point(std::size_t j) const {
    auto c = unflat(j);
    return {c[0] * h(), c[1] * h()};
  }
};

// A wavenumber with signed components in (-n/2, n/2].
using Wavenumber = std::array<int, 2>;

// Canonical representatives of the wavenumber orbits {k, -k} on the discrete
// torus, zero mode first.  In 1D this is k = 0..floor(n/2); in 2D it is the
// half-space k1 > 0 together with {k1 = 0, k2 >= 0}, with Nyquist aliasing
// folded in.  Deterministic order.
std::vector<Wavenumber> reduced_wavenumbers(const Grid& grid);

// Reduced grid-site set under the mirror identification j ~ -j (simultaneous
// negation).  sites[i] is the flat index of the representative; mult[i] is the
// orbit size (1 for self-mirrored sites, 2 otherwise).
struct ReducedSites {
  std::vector<std::size_t> sites;
  std::vector<int> mult;
  // full-grid index -> position in `sites`
  std::vector<std::size_t> site_of;
};

ReducedSites reduced_sites(const Grid& grid);

}  // namespace pairint
