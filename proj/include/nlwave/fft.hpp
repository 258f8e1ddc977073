#ifndef NLWAVE_FFT_HPP
#define NLWAVE_FFT_HPP

#include "nlwave/core.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace nlwave::fft {

namespace detail {

// FFTW planning is not thread-safe but executing a plan on new arrays is,
// so plans are created once per (size, direction) under a lock.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, p);
    return p;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline std::vector<cplx> run(const std::vector<cplx>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cplx> out(in.size());
  if (n == 0) return out;
  std::vector<cplx> src = in; // FFTW may scribble on its input
  fftw_execute_dft(PlanCache::instance().get(n, sign), reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

} // namespace detail

// out[n] = sum_k in[k] exp(-2 pi i n k / N)
inline std::vector<cplx> forward(const std::vector<cplx>& in) {
  return detail::run(in, FFTW_FORWARD);
}

// Normalized inverse of forward().
inline std::vector<cplx> inverse(const std::vector<cplx>& in) {
  auto out = detail::run(in, FFTW_BACKWARD);
  const double s = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= s;
  return out;
}

} // namespace nlwave::fft

#endif
