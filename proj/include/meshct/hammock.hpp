#pragma once

// Hom-dimension calculus in the mesh category of ZDelta by knitting: the
// hammock of a source vertex x assigns to each z the dimension of the hom
// space x -> z, computed by the clipped mesh recursion
//   h(z) = max(0, sum over arrows y->z of h(y)  -  h(tau z)).
// Values are cross-checked elsewhere against linear algebra over the
// Auslander category, which is the authoritative route.

#include <map>
#include <vector>

#include "meshct/translation.hpp"

namespace meshct {

struct HammockTable {
  ZVertex source;
  int level_lo = 0, level_hi = 0;  // support rows [level_lo, level_hi]
  std::vector<std::vector<long>> values;  // values[level_hi - i][v] = h(i, v)

  long at(const ZVertex& z) const {
    if (z.level > level_hi || z.level < level_lo) return 0;
    return values[static_cast<size_t>(level_hi - z.level)][static_cast<size_t>(z.v)];
  }
};

// Append-only per-diagram cache of hammocks keyed by source vertex.
class HammockCache {
 public:
  explicit HammockCache(const DynkinSpec& spec);

  const HammockTable& table(const ZVertex& x);
  long hom_dim(const ZVertex& x, const ZVertex& z);

  // Dimension vector of the Auslander-category injective at x, as a map on
  // rectangle vertices: y -> hom_dim(y, x).
  std::map<ZVertex, long> injective_dim_vector(const ZVertex& x);

  // Push-down of that dimension vector along the orbit map.
  std::vector<long> pushdown_dim_vector(const ZVertex& x);

  const DynkinSpec& spec() const { return spec_; }

 private:
  DynkinSpec spec_;
  std::vector<int> topo_;  // base vertices in topological order (sources first)
  std::map<ZVertex, HammockTable> memo_;
};

std::string hammock_text(const HammockTable& t, const DynkinSpec& spec);
std::string hammock_json(const HammockTable& t, const DynkinSpec& spec);

}  // namespace meshct
