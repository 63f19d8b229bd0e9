#pragma once

// Covering-sum oracle: the hom dimension between push-downs is the sum over
// the group of hom dimensions upstairs,
//   dim Hom(T(y), T(x)) = sum_n dim Hom_C(I(y), (sigma tau)^n_* I(x)).
// Used purely as a cross-check against the folded linear algebra route.

#include <map>

#include "meshct/mesh_algebra.hpp"

namespace meshct {

template <class F>
class CoveringOracle {
 public:
  explicit CoveringOracle(const DynkinSpec& spec)
      : spec_(spec),
        rect_(build_window(spec, 0, spec.coxeter_copies - 1)),
        big_(build_window(spec, -spec.coxeter_copies, 2 * spec.coxeter_copies)),
        bigq_(window_quiver(big_)),
        gamma_(window_quiver(rect_), window_relations(rect_),
               static_cast<int>(rect_.vertices.size()) + 1) {
    for (size_t i = 0; i < rect_.arrows.size(); ++i) {
      const WindowArrow& a = rect_.arrows[i];
      rect_arrow_[{a.base, a.prime, a.level}] = static_cast<int>(i);
    }
  }

  const PathAlgebra<F>& auslander_algebra() const { return gamma_; }

  // oracle value for dim Hom over the mesh algebra from T(y) to T(x)
  long covering_hom_dim(const ZVertex& x, const ZVertex& y) {
    const Rep<F>& iy = shifted_injective(y, 0);
    long total = 0;
    int c = spec_.coxeter_copies;
    for (int n = -c; n <= c; ++n) {
      total += hom_dim(iy, shifted_injective(x, n));
    }
    return total;
  }

 private:
  DynkinSpec spec_;
  TranslationWindow rect_, big_;
  Quiver bigq_;
  PathAlgebra<F> gamma_;
  std::map<std::tuple<int, bool, int>, int> rect_arrow_;
  std::map<std::pair<ZVertex, int>, Rep<F>> cache_;

  // (sigma tau)^n_* I(x), extended by zero to the big window
  const Rep<F>& shifted_injective(const ZVertex& x, int n) {
    auto key = std::make_pair(x, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rep<F> ix = rep_injective(gamma_, rect_.vertex_index(x));
    Rep<F> out = rep_zero<F>(bigq_);
    // vertex z of the big window carries I(x)(g^{-1} z)
    auto preimage = [&](const ZVertex& z) {
      return ZVertex{z.level - n, spec_.sigma_pow(z.v, -n)};
    };
    for (const ZVertex& z : big_.vertices) {
      ZVertex p = preimage(z);
      if (rect_.contains(p))
        out.dims[static_cast<size_t>(big_.vertex_index(z))] =
            ix.dims[static_cast<size_t>(rect_.vertex_index(p))];
    }
    for (size_t a = 0; a < big_.arrows.size(); ++a) {
      const WindowArrow& wa = big_.arrows[a];
      int rows = out.dims[static_cast<size_t>(big_.vertex_index(wa.tgt))];
      int cols = out.dims[static_cast<size_t>(big_.vertex_index(wa.src))];
      // g^{-1}(arrow) has base sigma^{-n}(base) and level shifted by -n
      int base_pre = wa.base;
      for (int k = 0; k < ((n % spec_.sigma_order) + spec_.sigma_order) % spec_.sigma_order; ++k)
        base_pre = inverse_sigma_arrow(base_pre);
      auto itar = rect_arrow_.find({base_pre, wa.prime, wa.level - n});
      if (rows == 0 || cols == 0 || itar == rect_arrow_.end()) {
        out.mats[a] = Mat<F>(rows, cols);
      } else {
        out.mats[a] = ix.mats[static_cast<size_t>(itar->second)];
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  int inverse_sigma_arrow(int arrow) const {
    for (size_t i = 0; i < spec_.arrows.size(); ++i) {
      if (spec_.sigma_arrow(static_cast<int>(i)) == arrow) return static_cast<int>(i);
    }
    throw Error("internal", "sigma is not a bijection on arrows");
  }
};

}  // namespace meshct
