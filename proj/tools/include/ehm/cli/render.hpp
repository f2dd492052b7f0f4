#pragma once

// Deterministic SVG and CSV emitters for rank-2 data.

#include <span>
#include <string>

#include "ehm/morse.hpp"

namespace ehm::cli {

// Apex dots and boundary rays of every region in one chamber; strict
// boundaries are dashed. The view is the bounding box of the window.
std::string svg_regions(const MorseContext& ctx, std::size_t chamber, std::span<const LatticeVector> window);

// One dot per window weight, coloured by its strongest verdict; obstructed
// weights are ringed and labelled.
std::string svg_verdicts(const MorseContext& ctx, std::span<const LatticeVector> window);

// Header x1,...,xr,coeff; rows for the nonzero coefficients.
std::string csv_character(const FormalCharacter& ch);
// Header x1,...,xr,degree,verdict; one row per weight and degree.
std::string csv_verdicts(const MorseContext& ctx, std::span<const LatticeVector> window);

}  // namespace ehm::cli
