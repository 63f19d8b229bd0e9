#pragma once

// Cluster tilting machinery over a mesh algebra: the start module (push-down
// of the Auslander-region injectives), gamma-orbit bookkeeping, minimal left
// approximations, exchange sequences and mutation, End(T) quiver/Cartan data
// and the folded exchange matrices.

#include <map>
#include <sstream>

#include "meshct/covering.hpp"
#include "meshct/hammock.hpp"
#include "meshct/intmatrix.hpp"

namespace meshct {

struct SummandLabel {
  int vertex = 0;
  int level = 0;
  int generation = 0;

  std::string str() const {
    std::string s = std::to_string(vertex) + "_" + std::to_string(level);
    if (generation) s += "@" + std::to_string(generation);
    return s;
  }
  friend bool operator==(const SummandLabel& a, const SummandLabel& b) {
    return a.vertex == b.vertex && a.level == b.level && a.generation == b.generation;
  }
};

template <class F>
struct CTModule {
  std::vector<SummandLabel> labels;
  std::vector<Rep<F>> summands;
  std::vector<std::vector<int>> orbits;  // positions, gamma-cycle order
  std::vector<char> projective_flag;

  int size() const { return static_cast<int>(summands.size()); }

  int orbit_of(int pos) const {
    for (size_t o = 0; o < orbits.size(); ++o) {
      for (int p : orbits[o])
        if (p == pos) return static_cast<int>(o);
    }
    return -1;
  }

  bool orbit_projective(int o) const {
    for (int p : orbits[static_cast<size_t>(o)])
      if (projective_flag[static_cast<size_t>(p)]) return true;
    return false;
  }

  std::vector<std::string> summand_names() const {
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(l.str());
    return out;
  }

  std::string orbit_name(int o) const {
    std::vector<std::string> members;
    for (int p : orbits[static_cast<size_t>(o)]) members.push_back(labels[static_cast<size_t>(p)].str());
    return make_orbit_label(members);
  }

  OrbitPartitionSpec partition() const {
    std::vector<std::vector<std::string>> orbs;
    for (size_t o = 0; o < orbits.size(); ++o) {
      std::vector<std::string> members;
      for (int p : orbits[o]) members.push_back(labels[static_cast<size_t>(p)].str());
      orbs.push_back(std::move(members));
    }
    return OrbitPartitionSpec::from_orbits(std::move(orbs));
  }

  // Resolve an orbit by name. Accepted spellings: the exact label
  // ("{1,2}_1@1"), the label with the generation suffix stripped ("{1,2}_1",
  // stable across repeated mutation), and "@" as the level separator when no
  // "_" level is present ("{1,2}@1").
  int find_orbit(const std::string& name) const {
    std::vector<std::string> variants{name};
    auto brace = name.rfind('}');
    auto tail = name.find('@', brace == std::string::npos ? 0 : brace);
    bool has_level = name.find('_', brace == std::string::npos ? 0 : brace) != std::string::npos;
    if (!has_level && tail != std::string::npos) {
      std::string alt = name;
      alt[tail] = '_';
      variants.push_back(alt);
    }
    auto strip = [](std::string s) {
      auto at = s.find('@');
      return at == std::string::npos ? s : s.substr(0, at);
    };
    for (const std::string& cand : variants) {
      for (size_t o = 0; o < orbits.size(); ++o) {
        if (orbit_name(static_cast<int>(o)) == cand) return static_cast<int>(o);
      }
    }
    for (const std::string& cand : variants) {
      for (size_t o = 0; o < orbits.size(); ++o) {
        if (strip(orbit_name(static_cast<int>(o))) == strip(cand)) return static_cast<int>(o);
      }
    }
    return -1;
  }
};

template <class F>
class TiltingContext {
 public:
  DynkinSpec spec;
  OrbitPresentation pres;
  PathAlgebra<F> lambda;
  std::vector<Rep<F>> projectives;
  uint64_t seed;

  explicit TiltingContext(const std::string& tag, uint64_t seed_ = 1)
      : spec(folding_datum(tag)),
        pres(fold(spec)),
        lambda(folded_quiver(pres), folded_relations(pres), 6 * std::max(spec.coxeter_copies, 1)),
        seed(seed_) {
    for (int v = 0; v < spec.base_count; ++v) projectives.push_back(rep_projective(lambda, v));
  }

  Rep<F> gamma_twist(const Rep<F>& m) const {
    return twist(m, pres.sigma_tilde_vertex, pres.sigma_tilde_arrow);
  }

  Rep<F> gamma_twist_pow(Rep<F> m, int k) const {
    int ord = spec.sigma_order;
    k = ((k % ord) + ord) % ord;
    for (int i = 0; i < k; ++i) m = gamma_twist(m);
    return m;
  }

  SummandLabel gamma_label(const SummandLabel& l, int k = 1) const {
    return {spec.sigma_pow(l.vertex, k), l.level, l.generation};
  }

  std::mt19937_64 fresh_rng(uint64_t salt) const { return std::mt19937_64(seed ^ (salt * 0x9e3779b97f4a7c15ull)); }
};

// ---------------------------------------------------------------------------
// start module

// Push a rectangle-supported module down along the orbit map.
template <class F>
Rep<F> push_down(const TiltingContext<F>& ctx, const TranslationWindow& rect,
                 const std::map<std::tuple<int, bool, int>, int>& rect_arrow,
                 const Rep<F>& upstairs) {
  const DynkinSpec& spec = ctx.spec;
  int c = spec.coxeter_copies;
  const Quiver& fq = ctx.lambda.quiver();
  Rep<F> out;
  out.q = &fq;
  out.dims.assign(static_cast<size_t>(fq.nv), 0);
  // fiber of folded vertex u at level i is (i, sigma^i(u)); stack by level
  std::vector<std::vector<int>> offset(static_cast<size_t>(fq.nv), std::vector<int>(static_cast<size_t>(c), 0));
  for (int u = 0; u < fq.nv; ++u) {
    int acc = 0;
    for (int i = 0; i < c; ++i) {
      offset[static_cast<size_t>(u)][static_cast<size_t>(i)] = acc;
      acc += upstairs.dims[static_cast<size_t>(rect.vertex_index({i, spec.sigma_pow(u, i)}))];
    }
    out.dims[static_cast<size_t>(u)] = acc;
  }
  for (size_t fa = 0; fa < ctx.pres.arrows.size(); ++fa) {
    const FoldedArrow& f = ctx.pres.arrows[fa];
    Mat<F> m(out.dims[static_cast<size_t>(f.tgt)], out.dims[static_cast<size_t>(f.src)]);
    for (int i = 0; i < c; ++i) {
      if (f.prime && i == 0) continue;  // the lift exits the rectangle
      // the lift at fiber level i is the window arrow of the base arrow
      // sigma^i(alpha)
      int lifted_base = f.base;
      for (int k = 0; k < i % spec.sigma_order; ++k) lifted_base = spec.sigma_arrow(lifted_base);
      auto it = rect_arrow.find({lifted_base, f.prime, i});
      if (it == rect_arrow.end()) continue;
      const Mat<F>& blk = upstairs.mats[static_cast<size_t>(it->second)];
      int src_fiber = i;
      int tgt_fiber = f.prime ? i - 1 : i;
      int ro = offset[static_cast<size_t>(f.tgt)][static_cast<size_t>(tgt_fiber)];
      int co = offset[static_cast<size_t>(f.src)][static_cast<size_t>(src_fiber)];
      for (int r = 0; r < blk.rows(); ++r)
        for (int cc = 0; cc < blk.cols(); ++cc) m.at(ro + r, co + cc) = blk.at(r, cc);
    }
    out.mats.push_back(std::move(m));
  }
  return out;
}

template <class F>
long rigidity_violations(const TiltingContext<F>& ctx, const CTModule<F>& t) {
  long bad = 0;
  for (int i = 0; i < t.size(); ++i) {
    Rep<F> om = syzygy(ctx.lambda, t.summands[static_cast<size_t>(i)], ctx.projectives).first;
    if (om.total_dim() == 0) continue;  // projective summand
    for (int j = 0; j < t.size(); ++j) {
      long d = hom_dim(om, t.summands[static_cast<size_t>(j)]) -
               projectively_trivial_dim(ctx.lambda, om, t.summands[static_cast<size_t>(j)], ctx.projectives);
      if (d != 0) ++bad;
    }
  }
  return bad;
}

template <class F>
CTModule<F> start_module(const TiltingContext<F>& ctx, bool verify_rigidity = true) {
  const DynkinSpec& spec = ctx.spec;
  TranslationWindow rect = build_window(spec, 0, spec.coxeter_copies - 1);
  PathAlgebra<F> gamma(window_quiver(rect), window_relations(rect),
                       static_cast<int>(rect.vertices.size()) + 1);
  std::map<std::tuple<int, bool, int>, int> rect_arrow;
  for (size_t i = 0; i < rect.arrows.size(); ++i) {
    const WindowArrow& a = rect.arrows[i];
    rect_arrow[{a.base, a.prime, a.level}] = static_cast<int>(i);
  }

  CTModule<F> t;
  for (int level = 0; level < spec.coxeter_copies; ++level) {
    for (int v = 0; v < spec.base_count; ++v) {
      ZVertex fiber{level, spec.sigma_pow(v, level)};
      Rep<F> up = rep_injective(gamma, rect.vertex_index(fiber));
      Rep<F> down = push_down(ctx, rect, rect_arrow, up);
      if (!satisfies_relations(ctx.lambda, down))
        throw Error("relation-violation", "push-down breaks a mesh relation at " +
                                              SummandLabel{v, level, 0}.str());
      t.labels.push_back({v, level, 0});
      t.summands.push_back(std::move(down));
      t.projective_flag.push_back(0);
    }
  }
  // orbits: per level, sigma-cycles starting at the least vertex
  for (int level = 0; level < spec.coxeter_copies; ++level) {
    std::vector<char> seen(static_cast<size_t>(spec.base_count), 0);
    for (int v = 0; v < spec.base_count; ++v) {
      if (seen[static_cast<size_t>(v)]) continue;
      std::vector<int> orbit;
      int w = v;
      do {
        seen[static_cast<size_t>(w)] = 1;
        orbit.push_back(level * spec.base_count + w);
        w = spec.sigma[static_cast<size_t>(w)];
      } while (w != v);
      t.orbits.push_back(std::move(orbit));
    }
  }
  // level-0 summands are the projective-injectives; the matching projective
  // is determined by the Nakayama permutation, so search for it
  std::mt19937_64 rng = ctx.fresh_rng(11);
  std::vector<int> matched(static_cast<size_t>(spec.base_count), 0);
  for (int v = 0; v < spec.base_count; ++v) {
    int hit = -1;
    for (int w = 0; w < spec.base_count && hit < 0; ++w) {
      if (t.summands[static_cast<size_t>(v)].dims != ctx.projectives[static_cast<size_t>(w)].dims)
        continue;
      if (iso_test(t.summands[static_cast<size_t>(v)], ctx.projectives[static_cast<size_t>(w)], rng))
        hit = w;
    }
    if (hit < 0)
      throw Error("relation-violation", "level-0 summand is not projective-injective");
    matched[static_cast<size_t>(hit)]++;
    t.projective_flag[static_cast<size_t>(v)] = 1;
  }
  for (int c2 : matched)
    if (c2 != 1) throw Error("relation-violation", "projectives do not match level 0 bijectively");
  if (verify_rigidity && rigidity_violations(ctx, t) != 0)
    throw Error("rigidity-violation", "start module is not rigid");
  return t;
}

// ---------------------------------------------------------------------------
// pairwise hom data for a list of modules

template <class F>
struct HomTable {
  std::vector<std::vector<std::vector<Morphism<F>>>> hom;  // hom[i][j]: T_i -> T_j
  std::vector<std::vector<std::vector<Morphism<F>>>> rad;  // radical spanning sets

  static F scalar_part(const Rep<F>& m, const Morphism<F>& f) {
    F tr(0);
    for (const auto& b : f.blocks)
      for (int k = 0; k < b.rows(); ++k) tr += b.at(k, k);
    return tr / F(m.total_dim());
  }

  static HomTable build(const std::vector<const Rep<F>*>& mods) {
    HomTable t;
    int n = static_cast<int>(mods.size());
    t.hom.assign(static_cast<size_t>(n), {});
    t.rad.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; ++i) {
      t.hom[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
      t.rad[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        t.hom[static_cast<size_t>(i)][static_cast<size_t>(j)] = hom_space(*mods[i], *mods[j]);
        if (i != j) {
          t.rad[static_cast<size_t>(i)][static_cast<size_t>(j)] = t.hom[static_cast<size_t>(i)][static_cast<size_t>(j)];
        } else {
          // End(T_i) is local with residue field F; phi - (tr/dim) id spans rad
          std::vector<Morphism<F>> r;
          Morphism<F> id = morphism_identity(*mods[i]);
          for (const Morphism<F>& f : t.hom[static_cast<size_t>(i)][static_cast<size_t>(i)]) {
            Morphism<F> g = add(f, scale(id, F(0) - scalar_part(*mods[i], f)));
            if (!g.is_zero()) r.push_back(std::move(g));
          }
          t.rad[static_cast<size_t>(i)][static_cast<size_t>(i)] = std::move(r);
        }
      }
    }
    return t;
  }
};

// ---------------------------------------------------------------------------
// minimal left approximations

template <class F>
struct LeftApprox {
  Rep<F> middle;
  Morphism<F> f;                // X -> middle
  std::vector<int> copies;      // per target
  std::vector<int> part_target;  // target index of each indecomposable part
};

// Minimal left add(⊕ targets)-approximation of x. The multiplicity of T_j is
// dim of Hom(x, T_j) modulo the radical compositions through all targets.
template <class F>
LeftApprox<F> minimal_left_approx(const Rep<F>& x, const std::vector<const Rep<F>*>& targets,
                                  const HomTable<F>& ht, bool require_injective,
                                  std::mt19937_64* shuffle_rng = nullptr) {
  int n = static_cast<int>(targets.size());
  std::vector<std::vector<Morphism<F>>> hx(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) hx[static_cast<size_t>(j)] = hom_space(x, *targets[j]);

  LeftApprox<F> out;
  std::vector<const Rep<F>*> parts;
  std::vector<Morphism<F>> chosen;  // maps x -> T_j, spanning top of Hom(x, -)
  out.copies.assign(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (hx[static_cast<size_t>(j)].empty()) continue;
    // radical span rows: all composites x -> T_k ->(rad) T_j
    std::vector<std::vector<F>> acc;
    for (int k = 0; k < n; ++k) {
      for (const Morphism<F>& r : ht.rad[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
        for (const Morphism<F>& g : hx[static_cast<size_t>(k)]) {
          acc.push_back(morphism_vec(compose(r, g)));
        }
      }
    }
    size_t len = morphism_vec(hx[static_cast<size_t>(j)][0]).size();
    auto rank_rows = [&](const std::vector<std::vector<F>>& rws) {
      Mat<F> mat(static_cast<int>(rws.size()), static_cast<int>(len));
      for (size_t r = 0; r < rws.size(); ++r)
        for (size_t c = 0; c < len; ++c) mat.at(static_cast<int>(r), static_cast<int>(c)) = rws[r][c];
      return rank_of(mat);
    };
    int cur_rank = rank_rows(acc);
    // greedily extend by basis homs (optionally in shuffled order); the
    // accepted maps represent a basis of Hom(x, T_j) / rad-composites
    std::vector<int> order(hx[static_cast<size_t>(j)].size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (shuffle_rng) std::shuffle(order.begin(), order.end(), *shuffle_rng);
    for (int oi : order) {
      acc.push_back(morphism_vec(hx[static_cast<size_t>(j)][static_cast<size_t>(oi)]));
      int r2 = rank_rows(acc);
      if (r2 > cur_rank) {
        cur_rank = r2;
        ++out.copies[static_cast<size_t>(j)];
        chosen.push_back(hx[static_cast<size_t>(j)][static_cast<size_t>(oi)]);
        parts.push_back(targets[j]);
        out.part_target.push_back(j);
      } else {
        acc.pop_back();
      }
    }
  }
  const Quiver& q = *x.q;
  out.middle = direct_sum(q, parts);
  out.f = morphism_zero(x, out.middle);
  for (size_t k = 0; k < parts.size(); ++k) {
    Morphism<F> inj = sum_injection(parts, k, out.middle);
    Morphism<F> piece = compose(inj, chosen[k]);
    out.f = add(out.f, piece);
  }
  if (require_injective) {
    auto [ker, incl] = kernel(x, out.middle, out.f);
    if (ker.total_dim() != 0)
      throw Error("not-injective", "left approximation has a kernel; input is not mutable here");
  }
  // approximation property: every map x -> T_j factors through f
  for (int j = 0; j < n; ++j) {
    if (hx[static_cast<size_t>(j)].empty()) continue;
    std::vector<std::vector<F>> rows;
    for (size_t k = 0; k < parts.size(); ++k) {
      Morphism<F> pr = sum_projection(parts, k, out.middle);
      for (const Morphism<F>& h : ht.hom[static_cast<size_t>(out.part_target[k])][static_cast<size_t>(j)]) {
        rows.push_back(morphism_vec(compose(h, compose(pr, out.f))));
      }
    }
    size_t len = morphism_vec(hx[static_cast<size_t>(j)][0]).size();
    Mat<F> base(static_cast<int>(rows.size()), static_cast<int>(len));
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < len; ++c) base.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    int rk = rank_of(base);
    Mat<F> full(static_cast<int>(rows.size() + hx[static_cast<size_t>(j)].size()), static_cast<int>(len));
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < len; ++c) full.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    for (size_t i = 0; i < hx[static_cast<size_t>(j)].size(); ++i) {
      std::vector<F> v = morphism_vec(hx[static_cast<size_t>(j)][i]);
      for (size_t c = 0; c < len; ++c)
        full.at(static_cast<int>(rows.size() + i), static_cast<int>(c)) = v[c];
    }
    if (rank_of(full) != rk)
      throw Error("internal", "left approximation property failed");
  }
  return out;
}

// Projective summands are not mutable; the analogous construction for a
// projective-injective X~ approximates Z = X~/soc instead, and the cokernel
// lands back in add(T). Used by the homological analysis of the simples at
// projective vertices.
template <class F>
struct ProjectiveExchange {
  Rep<F> z;  // X~ / soc
  LeftApprox<F> approx;
  Rep<F> zbar;  // cokernel of the approximation; a summand of T
  std::vector<std::pair<std::string, int>> zbar_parts;
};

template <class F>
ProjectiveExchange<F> projective_socle_exchange(const TiltingContext<F>& ctx,
                                                const CTModule<F>& t, int orbit_idx) {
  if (!t.orbit_projective(orbit_idx))
    throw Error("bad-orbit", "socle exchange applies to projective orbits");
  const std::vector<int>& orbit = t.orbits[static_cast<size_t>(orbit_idx)];
  const Rep<F>& x = t.summands[static_cast<size_t>(orbit[0])];
  std::vector<const Rep<F>*> targets;
  std::vector<int> target_pos;
  for (int p = 0; p < t.size(); ++p) {
    bool in_orbit = false;
    for (int q : orbit)
      if (q == p) in_orbit = true;
    if (!in_orbit) {
      targets.push_back(&t.summands[static_cast<size_t>(p)]);
      target_pos.push_back(p);
    }
  }
  ProjectiveExchange<F> out;
  auto [z, proj] = quotient(x, socle_bases(x));
  out.z = std::move(z);
  HomTable<F> ht = HomTable<F>::build(targets);
  out.approx = minimal_left_approx(out.z, targets, ht, true);
  auto [zbar, zproj] = cokernel(out.z, out.approx.middle, out.approx.f);
  out.zbar = std::move(zbar);
  // the cokernel is again a summand of T
  std::mt19937_64 rng = ctx.fresh_rng(53);
  std::vector<const Rep<F>*> cands;
  for (const auto& s : t.summands) cands.push_back(&s);
  auto parts = decompose(out.zbar, cands, ctx.seed ^ 0xabcdu);
  for (const auto& [rep, mult] : parts) {
    bool matched = false;
    for (int p = 0; p < t.size() && !matched; ++p) {
      if (rep.dims == t.summands[static_cast<size_t>(p)].dims &&
          iso_test(rep, t.summands[static_cast<size_t>(p)], rng)) {
        out.zbar_parts.push_back({t.labels[static_cast<size_t>(p)].str(), mult});
        matched = true;
      }
    }
    if (!matched)
      throw Error("rigidity-failure", "socle-exchange cokernel left add(T)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// End(T) quiver, Cartan matrix and exchange matrices

template <class F>
struct CTAnalysis {
  HomTable<F> homs;
  LabeledIntMatrix ctilde;       // c[M][N] = dim Hom(N, M)
  LabeledIntMatrix arrow_count;  // arrows i -> j of the End(T) quiver
  LabeledIntMatrix btilde;       // antisymmetrized arrow counts
  std::vector<std::vector<std::vector<Morphism<F>>>> arrow_lifts;  // rad/rad^2 representatives
  OrbitPartitionSpec partition;
  std::vector<std::string> summand_labels;
  std::vector<std::string> nonproj_summands;
  std::vector<std::string> orbit_labels;
  std::vector<std::string> nonproj_orbits;

  LabeledIntMatrix btilde_principal() const { return btilde.submatrix(nonproj_summands, nonproj_summands); }
  LabeledIntMatrix b_full() const { return fold_matrix(btilde, partition); }
  LabeledIntMatrix b_principal() const { return b_full().submatrix(nonproj_orbits, nonproj_orbits); }
  LabeledIntMatrix c_full() const { return fold_matrix(ctilde, partition); }
};

template <class F>
CTAnalysis<F> analyze(const TiltingContext<F>& ctx, const CTModule<F>& t) {
  (void)ctx;
  CTAnalysis<F> out;
  int n = t.size();
  std::vector<const Rep<F>*> mods;
  for (const auto& s : t.summands) mods.push_back(&s);
  out.homs = HomTable<F>::build(mods);
  out.summand_labels = t.summand_names();
  out.ctilde = LabeledIntMatrix(out.summand_labels, out.summand_labels);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.ctilde.a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          static_cast<long>(out.homs.hom[static_cast<size_t>(j)][static_cast<size_t>(i)].size());

  out.arrow_count = LabeledIntMatrix(out.summand_labels, out.summand_labels);
  out.arrow_lifts.assign(static_cast<size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    out.arrow_lifts[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const auto& radij = out.homs.rad[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (radij.empty()) continue;
      size_t len = morphism_vec(radij[0]).size();
      std::vector<std::vector<F>> acc;
      for (int k = 0; k < n; ++k) {
        for (const Morphism<F>& g : out.homs.rad[static_cast<size_t>(i)][static_cast<size_t>(k)]) {
          for (const Morphism<F>& h : out.homs.rad[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
            acc.push_back(morphism_vec(compose(h, g)));
          }
        }
      }
      auto rank_rows = [&](const std::vector<std::vector<F>>& rws) {
        Mat<F> mat(static_cast<int>(rws.size()), static_cast<int>(len));
        for (size_t r = 0; r < rws.size(); ++r)
          for (size_t c = 0; c < len; ++c) mat.at(static_cast<int>(r), static_cast<int>(c)) = rws[r][c];
        return rank_of(mat);
      };
      int cur = rank_rows(acc);
      for (const Morphism<F>& r : radij) {
        acc.push_back(morphism_vec(r));
        int r2 = rank_rows(acc);
        if (r2 > cur) {
          cur = r2;
          out.arrow_count.a[static_cast<size_t>(i)][static_cast<size_t>(j)]++;
          out.arrow_lifts[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(r);
        } else {
          acc.pop_back();
        }
      }
    }
  }
  out.btilde = LabeledIntMatrix(out.summand_labels, out.summand_labels);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.btilde.a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          out.arrow_count.a[static_cast<size_t>(j)][static_cast<size_t>(i)] -
          out.arrow_count.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  out.partition = t.partition();
  for (int i = 0; i < n; ++i)
    if (!t.projective_flag[static_cast<size_t>(i)]) out.nonproj_summands.push_back(out.summand_labels[static_cast<size_t>(i)]);
  for (size_t o = 0; o < t.orbits.size(); ++o) {
    out.orbit_labels.push_back(t.orbit_name(static_cast<int>(o)));
    if (!t.orbit_projective(static_cast<int>(o))) out.nonproj_orbits.push_back(out.orbit_labels.back());
  }
  return out;
}

template <class F>
std::string end_quiver_dot(const CTAnalysis<F>& an) {
  std::ostringstream os;
  os << "digraph end_quiver {\n";
  for (const std::string& l : an.summand_labels) os << "  \"" << l << "\";\n";
  for (size_t i = 0; i < an.summand_labels.size(); ++i) {
    for (size_t j = 0; j < an.summand_labels.size(); ++j) {
      for (long k = 0; k < an.arrow_count.a[i][j]; ++k) {
        os << "  \"" << an.summand_labels[i] << "\" -> \"" << an.summand_labels[j] << "\";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// mutation

template <class F>
struct ExchangeRecord {
  int orbit = -1;
  std::vector<SummandLabel> x_labels, y_labels;
  // representative exchange sequence 0 -> X~ -> T' -> Y~ -> 0
  Rep<F> middle;
  Morphism<F> f, g;
  std::vector<std::pair<std::string, int>> middle_parts;  // (summand label, copies)
  // backward sequence 0 -> Y~ -> M -> gamma^{-1} X~ -> 0
  Rep<F> back_middle;
  Morphism<F> back_f, back_g;
  std::vector<std::pair<std::string, int>> back_middle_parts;
  std::string back_end_label;
};

template <class F>
std::pair<CTModule<F>, ExchangeRecord<F>> mutate(const TiltingContext<F>& ctx, const CTModule<F>& t,
                                                 int orbit_idx, bool verify_rigidity = false,
                                                 std::mt19937_64* shuffle_rng = nullptr) {
  if (orbit_idx < 0 || orbit_idx >= static_cast<int>(t.orbits.size()))
    throw Error("bad-orbit", "no such orbit");
  if (t.orbit_projective(orbit_idx))
    throw Error("mutation-at-projective", "cannot mutate at a projective orbit");
  const std::vector<int>& orbit = t.orbits[static_cast<size_t>(orbit_idx)];
  int s = static_cast<int>(orbit.size());

  // targets: every summand outside the orbit, in position order
  std::vector<const Rep<F>*> targets;
  std::vector<int> target_pos;
  for (int p = 0; p < t.size(); ++p) {
    bool in_orbit = false;
    for (int q : orbit)
      if (q == p) in_orbit = true;
    if (!in_orbit) {
      targets.push_back(&t.summands[static_cast<size_t>(p)]);
      target_pos.push_back(p);
    }
  }
  HomTable<F> ht = HomTable<F>::build(targets);

  const Rep<F>& xrep = t.summands[static_cast<size_t>(orbit[0])];
  LeftApprox<F> ap = minimal_left_approx(xrep, targets, ht, true, shuffle_rng);
  auto [yrep, gproj] = cokernel(xrep, ap.middle, ap.f);

  std::mt19937_64 rng = ctx.fresh_rng(31 + static_cast<uint64_t>(orbit_idx));
  if (end_semisimple_dim(yrep) != 1)
    throw Error("rigidity-failure", "exchange cokernel is not indecomposable");
  if (iso_test(xrep, yrep, rng))
    throw Error("rigidity-failure", "exchange produced an isomorphic summand");
  if (!iso_test(ctx.gamma_twist_pow(yrep, s), yrep, rng))
    throw Error("rigidity-failure", "cokernel orbit size does not match");

  ExchangeRecord<F> rec;
  rec.orbit = orbit_idx;
  rec.middle = ap.middle;
  rec.f = ap.f;
  rec.g = gproj;
  for (size_t j = 0; j < targets.size(); ++j) {
    if (ap.copies[j])
      rec.middle_parts.push_back({t.labels[static_cast<size_t>(target_pos[j])].str(), ap.copies[j]});
  }
  for (int k = 0; k < s; ++k) {
    rec.x_labels.push_back(t.labels[static_cast<size_t>(orbit[static_cast<size_t>(k)])]);
    SummandLabel yl = t.labels[static_cast<size_t>(orbit[static_cast<size_t>(k)])];
    yl.generation++;
    rec.y_labels.push_back(yl);
  }

  // backward sequence: the minimal left approximation of Y~ has cokernel
  // gamma^{-1} X~
  LeftApprox<F> back = minimal_left_approx(yrep, targets, ht, true, shuffle_rng);
  auto [back_end, back_proj] = cokernel(yrep, back.middle, back.f);
  Rep<F> expected_end = ctx.gamma_twist_pow(xrep, ctx.spec.sigma_order - 1);
  if (!iso_test(back_end, expected_end, rng))
    throw Error("rigidity-failure", "backward exchange does not end at the twisted summand");
  rec.back_middle = back.middle;
  rec.back_f = back.f;
  rec.back_g = back_proj;
  for (size_t j = 0; j < targets.size(); ++j) {
    if (back.copies[j])
      rec.back_middle_parts.push_back({t.labels[static_cast<size_t>(target_pos[j])].str(), back.copies[j]});
  }
  rec.back_end_label =
      ctx.gamma_label(t.labels[static_cast<size_t>(orbit[0])], ctx.spec.sigma_order - 1).str();

  // assemble the mutated module: gamma-twists of Y~ fill the orbit positions
  CTModule<F> out = t;
  Rep<F> ycur = yrep;
  for (int k = 0; k < s; ++k) {
    int pos = orbit[static_cast<size_t>(k)];
    out.summands[static_cast<size_t>(pos)] = ycur;
    out.labels[static_cast<size_t>(pos)] = rec.y_labels[static_cast<size_t>(k)];
    out.projective_flag[static_cast<size_t>(pos)] = 0;
    ycur = ctx.gamma_twist(ycur);
  }
  if (verify_rigidity && rigidity_violations(ctx, out) != 0)
    throw Error("rigidity-failure", "mutated module is not rigid");
  return {std::move(out), std::move(rec)};
}

}  // namespace meshct
