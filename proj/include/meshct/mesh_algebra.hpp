#pragma once

// Builders tying the combinatorial layer to the algebra engine: the folded
// mesh algebra K(ZDelta/<sigma tau>) and the Auslander-region algebra of a
// symmetric orientation, both as PathAlgebra instances.

#include <map>

#include "meshct/quiver_algebra.hpp"
#include "meshct/rep.hpp"
#include "meshct/translation.hpp"

namespace meshct {

inline Quiver folded_quiver(const OrbitPresentation& p) {
  Quiver q;
  q.nv = p.spec.base_count;
  for (int v = 0; v < q.nv; ++v) q.vertex_names.push_back(std::to_string(v));
  for (const FoldedArrow& a : p.arrows) q.arrows.push_back({a.src, a.tgt, a.id});
  return q;
}

inline std::vector<QuadraticRelation> folded_relations(const OrbitPresentation& p) {
  std::vector<QuadraticRelation> out;
  for (const MeshRelation& r : p.relations) {
    QuadraticRelation qr;
    qr.src = r.vertex;
    qr.tgt = p.spec.sigma[r.vertex];
    for (const auto& [path, coeff] : r.terms) {
      qr.terms.push_back({{path[0], path[1]}, coeff});
    }
    out.push_back(std::move(qr));
  }
  return out;
}

inline Quiver window_quiver(const TranslationWindow& w) {
  Quiver q;
  q.nv = static_cast<int>(w.vertices.size());
  for (const ZVertex& x : w.vertices) q.vertex_names.push_back(x.name());
  for (const WindowArrow& a : w.arrows) {
    q.arrows.push_back({w.vertex_index(a.src), w.vertex_index(a.tgt), a.name()});
  }
  return q;
}

// mesh relations for every window vertex whose translate is inside the window
inline std::vector<QuadraticRelation> window_relations(const TranslationWindow& w) {
  std::map<std::tuple<int, bool, int>, int> arrow_idx;  // (base, prime, level) -> index
  for (size_t i = 0; i < w.arrows.size(); ++i) {
    const WindowArrow& a = w.arrows[i];
    arrow_idx[{a.base, a.prime, a.level}] = static_cast<int>(i);
  }
  const DynkinSpec& spec = w.spec;
  std::vector<QuadraticRelation> out;
  for (const ZVertex& z : w.vertices) {
    ZVertex tz = TranslationWindow::tau(z);
    if (!w.contains(tz)) continue;
    QuadraticRelation r;
    r.src = w.vertex_index(tz);
    r.tgt = w.vertex_index(z);
    for (size_t b = 0; b < spec.arrows.size(); ++b) {
      auto [s, t] = spec.arrows[b];
      if (t == z.v) {
        // alpha_i : (i,s) -> (i,v); partner alpha'_{i+1} : (i+1,v) -> (i,s)
        int first = arrow_idx.at({static_cast<int>(b), true, z.level + 1});
        int second = arrow_idx.at({static_cast<int>(b), false, z.level});
        r.terms.push_back({{first, second}, 1});
      }
      if (s == z.v) {
        // alpha'_{i+1} : (i+1,t) -> (i,v); partner alpha_{i+1} : (i+1,v) -> (i+1,t)
        int first = arrow_idx.at({static_cast<int>(b), false, z.level + 1});
        int second = arrow_idx.at({static_cast<int>(b), true, z.level + 1});
        r.terms.push_back({{first, second}, 1});
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

template <class F>
PathAlgebra<F> build_mesh_algebra(const OrbitPresentation& p) {
  return PathAlgebra<F>(folded_quiver(p), folded_relations(p), 6 * std::max(p.spec.coxeter_copies, 1));
}

// the Auslander region as a quiver with complete-mesh relations
template <class F>
PathAlgebra<F> build_auslander_algebra(const DynkinSpec& spec) {
  TranslationWindow w = build_window(spec, 0, spec.coxeter_copies - 1);
  return PathAlgebra<F>(window_quiver(w), window_relations(w),
                        static_cast<int>(w.vertices.size()) + 1);
}

}  // namespace meshct
