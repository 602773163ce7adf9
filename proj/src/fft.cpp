#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace gdnls::detail {
namespace {

using Key = std::tuple<int, int, int, int, int>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }

  // FFTW planning is not thread safe; execution of an existing plan is.
  fftw_plan get(int n, int howmany, int stride, int dist, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    Key key{n, howmany, stride, dist, sign};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t span = std::size_t(n - 1) * stride + std::size_t(howmany - 1) * dist + 1;
    std::vector<std::complex<double>> scratch(span);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr,
                                     stride, dist, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_many(std::complex<double>* data, int n, int howmany, int stride, int dist, int sign) {
  fftw_plan p = cache().get(n, howmany, stride, dist, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace gdnls::detail
