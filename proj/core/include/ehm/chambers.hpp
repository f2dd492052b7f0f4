#pragma once

// Action chambers: the open cells cut out of t by the hyperplanes orthogonal to
// every isotropy weight of every fixed point.

#include <optional>
#include <utility>
#include <vector>

#include "ehm/fan.hpp"
#include "ehm/lattice.hpp"

namespace ehm {

class Arrangement {
 public:
  Arrangement() = default;
  explicit Arrangement(const Scenario& scenario);

  std::size_t rank() const { return rank_; }
  // Primitive normals, first nonzero coordinate positive, sorted.
  const std::vector<LatticeVector>& normals() const { return normals_; }
  std::size_t size() const { return normals_.size(); }

  // Hyperplane of a weight and +1/-1 according to whether the weight points
  // along or against the stored normal. Throws PolarizationError if the
  // weight's hyperplane is not in the arrangement.
  std::pair<std::size_t, int> locate(const LatticeVector& weight) const;

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> normals_;
};

struct Chamber {
  std::size_t id = 0;
  std::vector<int> signs;  // sign of <normal_h, theta> for each hyperplane h
  LatticeVector representative;
};

std::vector<Chamber> enumerate_chambers(const Arrangement& arrangement);
std::vector<Chamber> enumerate_chambers(const Scenario& scenario);

struct Polarized {
  LatticeVector weight;
  bool flipped = false;
};

Polarized polarize(const LatticeVector& lambda, const Chamber& chamber);
std::size_t polarizing_index(const FixedPointDatum& datum, const Chamber& chamber);

// Chamber containing theta; throws InputError when theta lies on a wall.
std::size_t locate_chamber(const std::vector<Chamber>& chambers, const Arrangement& arrangement,
                           const LatticeVector& theta);
std::size_t opposite_chamber(const std::vector<Chamber>& chambers, std::size_t index);

}  // namespace ehm
