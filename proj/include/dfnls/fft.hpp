#pragma once

#include <vector>

#include "dfnls/common.hpp"

namespace dfnls::fft {

// Unnormalized in-place 2-D FFT of an n x n row-major array.
// sign = -1 computes sum f e^{-2 pi i jk/n}, sign = +1 the conjugate sum.
void transform(std::vector<cplx>& data, int n, int sign);

}  // namespace dfnls::fft
