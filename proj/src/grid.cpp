#include "pairint/grid.hpp"

namespace pairint {

namespace {
// signed representative of k mod n in (-n/2, n/2]
int signed_rep(int k, int n) {
  int r = ((k % n) + n) % n;
  return r > n / 2 ? r - n : r;
}
}  // namespace

std::vector<Wavenumber> reduced_wavenumbers(const Grid& grid) {
  std::vector<Wavenumber> out;
  const int n = grid.n;
  if (grid.dim == 1) {
    out.reserve(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) out.push_back({k, 0});
    return out;
  }
  // Canonical orbit representative: the lexicographically larger of (k, -k)
  // in signed coordinates, i.e. k1 > 0, or k1 == 0 (mod Nyquist) and k2 >= 0.
  out.reserve(grid.size() / 2 + 2);
  out.push_back({0, 0});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      int k1 = signed_rep(a, n), k2 = signed_rep(b, n);
      int m1 = signed_rep(-a, n), m2 = signed_rep(-b, n);
      if (std::array{k1, k2} >= std::array{m1, m2}) out.push_back({k1, k2});
    }
  }
  return out;
}

ReducedSites reduced_sites(const Grid& grid) {
  ReducedSites r;
  const std::size_t sz = grid.size();
  r.site_of.assign(sz, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < sz; ++j) {
    std::size_t m = grid.mirror(j);
    if (j <= m) {
      r.site_of[j] = r.sites.size();
      r.sites.push_back(j);
      r.mult.push_back(j == m ? 1 : 2);
    }
  }
  for (std::size_t j = 0; j < sz; ++j) {
    if (r.site_of[j] == static_cast<std::size_t>(-1)) r.site_of[j] = r.site_of[grid.mirror(j)];
  }
  return r;
}

}  // namespace pairint
