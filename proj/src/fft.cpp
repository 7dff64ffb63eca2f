#include "pairint/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace pairint {
namespace fft {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW's planner is not thread-safe; plan creation is serialized and plans are
// executed through the new-array interface on caller-owned buffers.
std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}

PlanPair get_plans(const Grid& grid) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(grid.dim, grid.n);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;

  const std::size_t sz = grid.size();
  fftw_complex* buf = fftw_alloc_complex(sz);
  PlanPair p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (grid.dim == 1) {
    p.fwd = fftw_plan_dft_1d(grid.n, buf, buf, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(grid.n, buf, buf, FFTW_BACKWARD, flags);
  } else {
    p.fwd = fftw_plan_dft_2d(grid.n, grid.n, buf, buf, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_2d(grid.n, grid.n, buf, buf, FFTW_BACKWARD, flags);
  }
  fftw_free(buf);
  plan_cache().emplace(key, p);
  return p;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::vector<std::complex<double>> forward(const Grid& grid, const std::vector<double>& f) {
  if (f.size() != grid.size()) throw shape_error("fft::forward: length mismatch");
  PlanPair plans = get_plans(grid);
  std::vector<std::complex<double>> buf(f.begin(), f.end());
  fftw_execute_dft(plans.fwd, as_fftw(buf.data()), as_fftw(buf.data()));
  return buf;
}

std::vector<double> inverse_real(const Grid& grid, const std::vector<std::complex<double>>& fhat) {
  if (fhat.size() != grid.size()) throw shape_error("fft::inverse_real: length mismatch");
  PlanPair plans = get_plans(grid);
  std::vector<std::complex<double>> buf = fhat;
  fftw_execute_dft(plans.bwd, as_fftw(buf.data()), as_fftw(buf.data()));
  std::vector<double> out(buf.size());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real() * scale;
  return out;
}

std::vector<std::complex<double>> forward_direct(const Grid& grid, const std::vector<double>& f) {
  if (f.size() != grid.size()) throw shape_error("fft::forward_direct: length mismatch");
  const std::size_t sz = grid.size();
  std::vector<std::complex<double>> out(sz);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t kf = 0; kf < sz; ++kf) {
    auto kc = grid.unflat(kf);
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < sz; ++j) {
      auto jc = grid.unflat(j);
      double phase = -two_pi *
                     (static_cast<double>(kc[0]) * jc[0] + static_cast<double>(kc[1]) * jc[1]) /
                     grid.n;
      acc += f[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[kf] = acc;
  }
  return out;
}

}  // namespace fft
}  // namespace pairint
