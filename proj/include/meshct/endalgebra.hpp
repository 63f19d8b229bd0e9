#pragma once

// The endomorphism algebra E = End(T) of a cluster tilting module, presented
// through its Gabriel quiver (vertices = summands, arrows = rad/rad^2 lifts).
// E-modules are representations of that quiver built functorially from the
// hom data, which is enough for projective covers, syzygies, injective hulls,
// and hence gl.dim, dom.dim and the Ext tables of the simples.

#include "meshct/tilting.hpp"

namespace meshct {

template <class F>
class EndAlgebra {
 public:
  EndAlgebra(const TiltingContext<F>& ctx, const CTModule<F>& t, const CTAnalysis<F>& an)
      : ctx_(ctx), t_(t), an_(an) {
    n_ = t.size();
    eq_.nv = n_;
    for (int i = 0; i < n_; ++i) eq_.vertex_names.push_back(t.labels[static_cast<size_t>(i)].str());
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        for (size_t k = 0; k < an.arrow_lifts[static_cast<size_t>(i)][static_cast<size_t>(j)].size(); ++k) {
          eq_.arrows.push_back({i, j, "r" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                          std::to_string(k)});
          lifts_.push_back(&an.arrow_lifts[static_cast<size_t>(i)][static_cast<size_t>(j)][k]);
        }
      }
    }
    // identity coordinates per summand
    for (int v = 0; v < n_; ++v) {
      id_coords_.push_back(express(v, v, morphism_identity(t.summands[static_cast<size_t>(v)])));
    }
    for (int v = 0; v < n_; ++v) eproj_.push_back(build_proj(v));
    for (int v = 0; v < n_; ++v) einj_.push_back(build_inj(v));
  }

  const Quiver& quiver() const { return eq_; }
  int vertices() const { return n_; }

  long dim() const {
    long d = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) d += static_cast<long>(hom(i, j).size());
    return d;
  }

  const Rep<F>& proj(int v) const { return eproj_[static_cast<size_t>(v)]; }
  const Rep<F>& inj(int v) const { return einj_[static_cast<size_t>(v)]; }
  Rep<F> simple(int v) const { return rep_simple<F>(eq_, v); }

  // minimal projective resolution multiplicities of S_v; result[k][w] is the
  // multiplicity of P(w) in homological degree k
  std::vector<std::vector<int>> resolve_simple(int v, int cap) {
    std::vector<std::vector<int>> steps;
    Rep<F> cur = simple(v);
    for (int k = 0; cur.total_dim() > 0; ++k) {
      if (k > cap)
        throw Error("resolution-cap",
                    "projective resolution over End(T) exceeded degree " + std::to_string(cap));
      auto [mult, p, pi] = cover(cur);
      steps.push_back(mult);
      auto [om, incl] = kernel(p, cur, pi);
      cur = std::move(om);
    }
    return steps;
  }

  int gl_dim(int cap = 6) {
    int g = 0;
    for (int v = 0; v < n_; ++v) {
      g = std::max(g, static_cast<int>(resolve_simple(v, cap).size()) - 1);
    }
    return g;
  }

  // number of initial projective terms of a minimal injective coresolution of
  // the regular module
  int dom_dim(int cap = 6) {
    int best = cap;
    for (int v = 0; v < n_; ++v) {
      Rep<F> cur = eproj_[static_cast<size_t>(v)];
      int k = 0;
      while (k < cap) {
        auto [used, i0, emb] = hull(cur);
        bool projective = true;
        for (int w = 0; w < n_; ++w)
          if (used[static_cast<size_t>(w)] > 0 && !inj_is_proj(w)) projective = false;
        if (!projective) break;
        auto [cok, proj_map] = cokernel(cur, i0, emb);
        cur = std::move(cok);
        ++k;
        if (cur.total_dim() == 0) {
          k = cap;  // coresolution ended inside projectives
          break;
        }
      }
      best = std::min(best, k);
    }
    return best;
  }

  // Ext^k(S_a, S_b) for k = 0..deg as labeled matrices
  std::vector<LabeledIntMatrix> ext_tables(int deg, int cap = 6) {
    std::vector<std::string> labels = t_.summand_names();
    std::vector<LabeledIntMatrix> out(static_cast<size_t>(deg) + 1,
                                      LabeledIntMatrix(labels, labels));
    for (int a = 0; a < n_; ++a) {
      auto steps = resolve_simple(a, cap);
      for (int k = 0; k <= deg && k < static_cast<int>(steps.size()); ++k) {
        for (int b = 0; b < n_; ++b) {
          out[static_cast<size_t>(k)].a[static_cast<size_t>(a)][static_cast<size_t>(b)] =
              steps[static_cast<size_t>(k)][static_cast<size_t>(b)];
        }
      }
    }
    return out;
  }

 private:
  const TiltingContext<F>& ctx_;
  const CTModule<F>& t_;
  const CTAnalysis<F>& an_;
  int n_ = 0;
  Quiver eq_;
  std::vector<const Morphism<F>*> lifts_;
  std::vector<std::vector<F>> id_coords_;
  std::vector<Rep<F>> eproj_, einj_;
  std::map<int, int> inj_proj_cache_;

  const std::vector<Morphism<F>>& hom(int i, int j) const {
    return an_.homs.hom[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  std::vector<F> express(int i, int j, const Morphism<F>& f) const {
    const auto& basis = hom(i, j);
    std::vector<F> vf = morphism_vec(f);
    if (basis.empty()) {
      for (const F& x : vf)
        if (!x.is_zero()) throw Error("internal", "morphism outside the empty hom space");
      return {};
    }
    int len = static_cast<int>(vf.size());
    Mat<F> b(len, static_cast<int>(basis.size()));
    for (size_t col = 0; col < basis.size(); ++col) {
      std::vector<F> vb = morphism_vec(basis[col]);
      for (int r = 0; r < len; ++r) b.at(r, static_cast<int>(col)) = vb[static_cast<size_t>(r)];
    }
    Mat<F> rhs(len, 1);
    for (int r = 0; r < len; ++r) rhs.at(r, 0) = vf[static_cast<size_t>(r)];
    auto x = solve(b, rhs);
    if (!x) throw Error("internal", "morphism not in the hom space span");
    std::vector<F> out;
    for (int r = 0; r < x->rows(); ++r) out.push_back(x->at(r, 0));
    return out;
  }

  Rep<F> build_proj(int v) {
    Rep<F> r;
    r.q = &eq_;
    for (int w = 0; w < n_; ++w) r.dims.push_back(static_cast<int>(hom(v, w).size()));
    for (size_t a = 0; a < eq_.arrows.size(); ++a) {
      int i = eq_.arrows[a].src, j = eq_.arrows[a].tgt;
      Mat<F> m(r.dims[static_cast<size_t>(j)], r.dims[static_cast<size_t>(i)]);
      for (size_t col = 0; col < hom(v, i).size(); ++col) {
        std::vector<F> c = express(v, j, compose(*lifts_[a], hom(v, i)[col]));
        for (size_t row = 0; row < c.size(); ++row)
          m.at(static_cast<int>(row), static_cast<int>(col)) = c[row];
      }
      r.mats.push_back(std::move(m));
    }
    return r;
  }

  Rep<F> build_inj(int w) {
    Rep<F> r;
    r.q = &eq_;
    for (int u = 0; u < n_; ++u) r.dims.push_back(static_cast<int>(hom(u, w).size()));
    for (size_t a = 0; a < eq_.arrows.size(); ++a) {
      int i = eq_.arrows[a].src, j = eq_.arrows[a].tgt;
      // dual of precomposition H[j][w] -> H[i][w]
      Mat<F> m(r.dims[static_cast<size_t>(j)], r.dims[static_cast<size_t>(i)]);
      for (size_t col = 0; col < hom(j, w).size(); ++col) {
        std::vector<F> c = express(i, w, compose(hom(j, w)[col], *lifts_[a]));
        for (size_t k = 0; k < c.size(); ++k) m.at(static_cast<int>(col), static_cast<int>(k)) = c[k];
      }
      r.mats.push_back(std::move(m));
    }
    return r;
  }

  // projective cover of an E-module: (multiplicities, P, pi)
  std::tuple<std::vector<int>, Rep<F>, Morphism<F>> cover(const Rep<F>& m) {
    auto [mult, reps] = top_data(m);
    std::vector<const Rep<F>*> parts;
    std::vector<Morphism<F>> maps;
    for (int v = 0; v < n_; ++v) {
      if (!mult[static_cast<size_t>(v)]) continue;
      std::vector<Morphism<F>> hv = hom_space(eproj_[static_cast<size_t>(v)], m);
      // evaluation at the identity coordinate of P(v)_v
      int mv = m.dims[static_cast<size_t>(v)];
      Mat<F> ev(mv, static_cast<int>(hv.size()));
      for (size_t b = 0; b < hv.size(); ++b) {
        const Mat<F>& blk = hv[b].blocks[static_cast<size_t>(v)];
        for (int r = 0; r < mv; ++r) {
          F acc(0);
          for (size_t k = 0; k < id_coords_[static_cast<size_t>(v)].size(); ++k) {
            acc += blk.at(r, static_cast<int>(k)) * id_coords_[static_cast<size_t>(v)][k];
          }
          ev.at(r, static_cast<int>(b)) = acc;
        }
      }
      for (int c = 0; c < mult[static_cast<size_t>(v)]; ++c) {
        Mat<F> rhs(mv, 1);
        for (int r = 0; r < mv; ++r) rhs.at(r, 0) = reps[static_cast<size_t>(v)].at(r, c);
        auto x = solve(ev, rhs);
        if (!x) throw Error("internal", "cover generator misses its Yoneda preimage");
        Morphism<F> f = morphism_zero(eproj_[static_cast<size_t>(v)], m);
        for (size_t b = 0; b < hv.size(); ++b) {
          if (x->at(static_cast<int>(b), 0).is_zero()) continue;
          f = add(f, scale(hv[b], x->at(static_cast<int>(b), 0)));
        }
        parts.push_back(&eproj_[static_cast<size_t>(v)]);
        maps.push_back(std::move(f));
      }
    }
    Rep<F> p = direct_sum(eq_, parts);
    Morphism<F> pi = morphism_zero(p, m);
    for (size_t k = 0; k < parts.size(); ++k) {
      Morphism<F> pr = sum_projection(parts, k, p);
      pi = add(pi, compose(maps[k], pr));
    }
    return {mult, std::move(p), std::move(pi)};
  }

  // minimal injective hull embedding of an E-module: (multiplicities, I0, emb)
  std::tuple<std::vector<int>, Rep<F>, Morphism<F>> hull(const Rep<F>& m) {
    std::vector<Mat<F>> soc = socle_bases(m);
    std::vector<const Rep<F>*> parts;
    std::vector<Morphism<F>> maps;
    std::vector<int> used(static_cast<size_t>(n_), 0);
    for (int w = 0; w < n_; ++w) {
      int sw = soc[static_cast<size_t>(w)].cols();
      if (!sw) continue;
      std::vector<Morphism<F>> hw = hom_space(m, einj_[static_cast<size_t>(w)]);
      // socle pairing row per map: id_coords^T * f_w * socle_basis
      std::vector<std::vector<F>> rows;
      std::vector<size_t> keep;
      int rank = 0;
      for (size_t b = 0; b < hw.size() && rank < sw; ++b) {
        const Mat<F>& fw = hw[b].blocks[static_cast<size_t>(w)];
        std::vector<F> row(static_cast<size_t>(sw), F(0));
        for (int s = 0; s < sw; ++s) {
          F acc(0);
          for (int r = 0; r < fw.rows(); ++r) {
            F inner(0);
            for (int c2 = 0; c2 < fw.cols(); ++c2)
              inner += fw.at(r, c2) * soc[static_cast<size_t>(w)].at(c2, s);
            acc += id_coords_[static_cast<size_t>(w)][static_cast<size_t>(r)] * inner;
          }
          row[static_cast<size_t>(s)] = acc;
        }
        rows.push_back(row);
        Mat<F> mat(static_cast<int>(rows.size()), sw);
        for (size_t rr = 0; rr < rows.size(); ++rr)
          for (int cc = 0; cc < sw; ++cc) mat.at(static_cast<int>(rr), cc) = rows[rr][static_cast<size_t>(cc)];
        if (rank_of(mat) > rank) {
          ++rank;
          keep.push_back(b);
        } else {
          rows.pop_back();
        }
      }
      if (rank != sw) throw Error("internal", "socle pairing is degenerate");
      for (size_t b : keep) {
        parts.push_back(&einj_[static_cast<size_t>(w)]);
        maps.push_back(hw[b]);
        used[static_cast<size_t>(w)]++;
      }
    }
    Rep<F> i0 = direct_sum(eq_, parts);
    Morphism<F> emb = morphism_zero(m, i0);
    for (size_t k = 0; k < parts.size(); ++k) {
      Morphism<F> in = sum_injection(parts, k, i0);
      emb = add(emb, compose(in, maps[k]));
    }
    auto [ker, incl] = kernel(m, i0, emb);
    if (ker.total_dim() != 0) throw Error("internal", "hull embedding is not injective");
    return {used, std::move(i0), std::move(emb)};
  }

  bool inj_is_proj(int w) {
    auto it = inj_proj_cache_.find(w);
    if (it != inj_proj_cache_.end()) return it->second >= 0;
    std::mt19937_64 rng = ctx_.fresh_rng(97 + static_cast<uint64_t>(w));
    int hit = -1;
    for (int u = 0; u < n_ && hit < 0; ++u) {
      if (einj_[static_cast<size_t>(w)].dims != eproj_[static_cast<size_t>(u)].dims) continue;
      if (iso_test(einj_[static_cast<size_t>(w)], eproj_[static_cast<size_t>(u)], rng)) hit = u;
    }
    inj_proj_cache_[w] = hit;
    return hit >= 0;
  }
};

// gl.dim and dom.dim of End(T); both are 3 for cluster tilting modules here
template <class F>
std::pair<int, int> homological_profile(const TiltingContext<F>& ctx, const CTModule<F>& t,
                                        const CTAnalysis<F>& an) {
  EndAlgebra<F> e(ctx, t, an);
  return {e.gl_dim(), e.dom_dim()};
}

}  // namespace meshct
