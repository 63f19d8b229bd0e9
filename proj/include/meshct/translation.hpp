#pragma once

// Finite windows of the translation quiver ZDelta, the <sigma tau> action,
// the Auslander rectangle, and the folded quiver-with-mesh-relations
// presentation of the mesh algebra ZDelta/<sigma tau>.

#include <optional>
#include <string>
#include <vector>

#include "meshct/dynkin.hpp"

namespace meshct {

struct ZVertex {
  int level = 0;  // the i of (i, v); tau shifts it by +1
  int v = 0;      // base vertex index

  friend bool operator==(const ZVertex& a, const ZVertex& b) {
    return a.level == b.level && a.v == b.v;
  }
  friend bool operator<(const ZVertex& a, const ZVertex& b) {
    return a.level != b.level ? a.level < b.level : a.v < b.v;
  }
  std::string name() const { return std::to_string(v) + "_" + std::to_string(level); }
};

ZVertex parse_zvertex(const std::string& s);

// alpha_i : (i,v) -> (i,w)    (prime = false)
// alpha'_i: (i,w) -> (i-1,v)  (prime = true)
struct WindowArrow {
  int base = 0;
  bool prime = false;
  int level = 0;
  ZVertex src, tgt;
  std::string name() const {
    return "a" + std::to_string(base) + (prime ? "-" : "+") + "@" + std::to_string(level);
  }
};

struct TranslationWindow {
  DynkinSpec spec;
  int i_min = 0, i_max = 0;
  std::vector<ZVertex> vertices;    // level-major, base-vertex order
  std::vector<WindowArrow> arrows;  // both endpoints inside the window

  bool contains(const ZVertex& x) const {
    return x.level >= i_min && x.level <= i_max && x.v >= 0 && x.v < spec.base_count;
  }
  int vertex_index(const ZVertex& x) const {
    return (x.level - i_min) * spec.base_count + x.v;
  }
  static ZVertex tau(const ZVertex& x) { return {x.level + 1, x.v}; }
};

TranslationWindow build_window(const DynkinSpec& spec, int i_min, int i_max);

// g = (sigma tau)-word: acts by (i,v) -> (i + tau_power, sigma^sigma_power(v))
struct GroupElement {
  int sigma_power = 0;
  int tau_power = 0;

  ZVertex apply(const DynkinSpec& spec, const ZVertex& x) const {
    return {x.level + tau_power, spec.sigma_pow(x.v, sigma_power)};
  }
  GroupElement compose(const GroupElement& o) const {
    return {sigma_power + o.sigma_power, tau_power + o.tau_power};
  }
  static GroupElement sigma_tau() { return {1, 1}; }
};

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<ZVertex> witness;  // a fixed vertex when not admissible
};

// True iff no nonidentity power of the generator (up to sigma_order * window
// height) fixes a window vertex.
AdmissibilityReport check_admissible(const DynkinSpec& spec, const TranslationWindow& window,
                                     const GroupElement& generator = GroupElement::sigma_tau());

// The level rectangle {(i, v) : 0 <= i < coxeter_copies}; only defined for
// the symmetric orientations carried by folding_datum.
std::vector<ZVertex> auslander_rectangle(const DynkinSpec& spec);

struct FoldedArrow {
  int base = 0;
  bool prime = false;
  int src = 0, tgt = 0;  // folded (= base) vertex indices
  std::string id;        // "a<base>+" or "a<base>-"
};

// One mesh relation per folded vertex v: a sum of length-2 paths from v to
// sigma(v), each with coefficient +1. Paths list arrow indices in application
// order (first arrow first).
struct MeshRelation {
  int vertex = 0;
  std::vector<std::pair<std::vector<int>, int>> terms;  // (path, coeff)
};

struct OrbitPresentation {
  DynkinSpec spec;
  std::vector<FoldedArrow> arrows;
  std::vector<MeshRelation> relations;
  std::vector<int> sigma_tilde_vertex;  // induced permutation of folded vertices
  std::vector<int> sigma_tilde_arrow;   // induced permutation of folded arrows

  int arrow_index(int base, bool prime) const { return 2 * base + (prime ? 1 : 0); }

  // Lift of a folded arrow starting at the fiber vertex over its source at
  // the given level: returns (src, tgt) in ZDelta.
  std::pair<ZVertex, ZVertex> lift(int arrow_idx, int level) const;

  // Orbit map pi(i, v) = sigma^{-i}(v).
  int orbit_of(const ZVertex& x) const { return spec.sigma_pow(x.v, -x.level); }
};

// Requires the <sigma tau> action to be admissible (always true for these
// data; verified anyway and reported via Error "non-admissible-action").
OrbitPresentation fold(const DynkinSpec& spec);

// DOT / JSON exports
std::string window_dot(const TranslationWindow& w);
std::string folded_dot(const OrbitPresentation& p);
std::string folded_json(const OrbitPresentation& p);

}  // namespace meshct
