#include "motifsig/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "motifsig/errors.hpp"

namespace motifsig {

namespace {

double norm(const MotifVector& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

// |a/|a| + sign * b/|b||, the chord between the unit vectors.
double unit_chord(const MotifVector& a, double na, const MotifVector& b, double nb, double sign) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] / na + sign * (b[i] / nb);
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

SimilarityScore similarity(const MotifVector& a, const MotifVector& b) {
  const double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) {
    const bool both_zero = na == 0.0 && nb == 0.0;
    return {both_zero ? 1.0 : 0.0, both_zero ? 0.0 : std::numbers::pi};
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  const double cos_phi = std::clamp(dot / (na * nb), -1.0, 1.0);

  // arccos loses precision near +-1; there the angle comes from the chord
  // between the unit vectors instead (same angle, better conditioned).
  double angle;
  if (cos_phi > 0.999)
    angle = 2.0 * std::asin(std::min(1.0, unit_chord(a, na, b, nb, -1.0) / 2.0));
  else if (cos_phi < -0.999)
    angle = std::numbers::pi - 2.0 * std::asin(std::min(1.0, unit_chord(a, na, b, nb, 1.0) / 2.0));
  else
    angle = std::acos(cos_phi);
  return {1.0 - angle / std::numbers::pi, angle};
}

SimilarityScore similarity(const ZSignature& a, const ZSignature& b) {
  if (a.motif_order != b.motif_order)
    throw ContractError("cannot compare signatures with motif orders '" + a.motif_order +
                        "' and '" + b.motif_order + "'");
  return similarity(a.z, b.z);
}

}  // namespace motifsig
