#pragma once

#include "soliton/types.hpp"

namespace soliton::darboux {

/// Exact inverse NFT for a purely discrete imaginary-axis spectrum via the
/// recursive Darboux transformation. The returned pulse reproduces
/// `spectrum` under the forward transform; its energy is 4 * sum(sigma_k).
SampledPulse synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid);

/// Same recursion, but inserts eigenvalues in the order the entries are
/// given. The result is order-independent up to rounding; `synthesize`
/// fixes ascending sigma for reproducibility.
SampledPulse synthesize_ordered(const std::vector<SpectrumEntry>& entries,
                                const TimeGrid& grid);

/// Trapezoidal integral of |q|^2 over the grid.
double numerical_energy(const SampledPulse& pulse);

}  // namespace soliton::darboux
