#pragma once

#include <array>

#include "motifsig/motif.hpp"

namespace motifsig {

/// Angular similarity of two signatures: 1 for the same direction, 0.5 for
/// orthogonal, 0 for opposite. value == 1 - angle_rad / pi.
struct SimilarityScore {
  double value = 0.0;
  double angle_rad = 0.0;
};

using MotifVector = std::array<double, kMotifCount>;

/// Treats the vectors as directions; magnitude does not matter. Two zero
/// vectors are identical (1); a zero vector against a non-zero one scores 0.
SimilarityScore similarity(const MotifVector& a, const MotifVector& b);

/// Throws ContractError if the motif orders differ.
SimilarityScore similarity(const ZSignature& a, const ZSignature& b);

}  // namespace motifsig
