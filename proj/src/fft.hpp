#pragma once

#include <complex>

namespace gdnls::detail {

// In-place unnormalized DFT of `howmany` interleaved sequences of length n.
// sign = -1 forward (e^{-2 pi i k m/n}), +1 backward.
void fft_many(std::complex<double>* data, int n, int howmany, int stride, int dist, int sign);

inline void fft(std::complex<double>* data, int n, int sign) { fft_many(data, n, 1, 1, n, sign); }

}  // namespace gdnls::detail
