#pragma once

#include <cstddef>
#include <vector>

#include "soliton/types.hpp"

namespace soliton::fft {

/// In-place DFT, sign convention exp(-2*pi*j*k*n/N). Unnormalized.
void forward(std::vector<cplx>& data);

/// In-place inverse DFT, normalized by 1/N (inverse of forward()).
void inverse(std::vector<cplx>& data);

/// Rotate so the zero-frequency bin moves to the center (index n/2).
void shift(std::vector<cplx>& data);

std::size_t next_pow2(std::size_t n);

}  // namespace soliton::fft
