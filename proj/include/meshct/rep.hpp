#pragma once

// Representations of a quiver (modules over the presented algebra when the
// relations hold), morphism spaces, kernels/cokernels, socle and radical
// filtrations, projective covers and syzygies, stable homs / Ext over the
// self-injective mesh algebras, twists, isomorphism search and Krull-Schmidt
// splitting.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "meshct/quiver_algebra.hpp"

namespace meshct {

template <class F>
struct Rep {
  const Quiver* q = nullptr;
  std::vector<int> dims;
  std::vector<Mat<F>> mats;  // per arrow: dims[tgt] x dims[src]

  long total_dim() const {
    long t = 0;
    for (int d : dims) t += d;
    return t;
  }
};

template <class F>
struct Morphism {
  std::vector<Mat<F>> blocks;  // per vertex: N.dims[v] x M.dims[v]

  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// sparse row reduction (the hom systems are large and very sparse)

template <class F>
Mat<F> sparse_nullspace(std::vector<SparseVec<F>> rows, int ncols) {
  std::vector<int> pivot_col;
  std::vector<SparseVec<F>> pivot_rows;
  std::vector<char> col_used(static_cast<size_t>(ncols), 0);
  std::vector<char> done(rows.size(), 0);
  for (;;) {
    int best = -1;
    size_t best_nnz = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (done[r] || rows[r].empty()) continue;
      if (best < 0 || rows[r].size() < best_nnz) {
        best = static_cast<int>(r);
        best_nnz = rows[r].size();
      }
    }
    if (best < 0) break;
    SparseVec<F> prow = rows[static_cast<size_t>(best)];
    done[static_cast<size_t>(best)] = 1;
    int pc = prow.front().first;
    F inv = F(1) / prow.front().second;
    for (auto& [c, v] : prow) v *= inv;
    // eliminate from every other row (full reduction)
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<size_t>(best) || rows[r].empty()) continue;
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), pc,
                                 [](const auto& p, int c) { return p.first < c; });
      if (it == rows[r].end() || it->first != pc) continue;
      F c = F(0) - it->second;
      sparse_axpy(rows[r], prow, c);
    }
    for (auto& pr : pivot_rows) {
      auto it = std::lower_bound(pr.begin(), pr.end(), pc,
                                 [](const auto& p, int c) { return p.first < c; });
      if (it == pr.end() || it->first != pc) continue;
      F c = F(0) - it->second;
      sparse_axpy(pr, prow, c);
    }
    col_used[static_cast<size_t>(pc)] = 1;
    pivot_col.push_back(pc);
    pivot_rows.push_back(std::move(prow));
  }
  int free_cols = 0;
  for (int c = 0; c < ncols; ++c)
    if (!col_used[static_cast<size_t>(c)]) ++free_cols;
  Mat<F> ns(ncols, free_cols);
  int idx = 0;
  for (int c = 0; c < ncols; ++c) {
    if (col_used[static_cast<size_t>(c)]) continue;
    ns.at(c, idx) = F(1);
    for (size_t p = 0; p < pivot_rows.size(); ++p) {
      for (const auto& [cc, v] : pivot_rows[p]) {
        if (cc == c) ns.at(pivot_col[p], idx) = F(0) - v;
      }
    }
    ++idx;
  }
  return ns;
}

// ---------------------------------------------------------------------------
// basic rep constructions

template <class F>
Rep<F> rep_zero(const Quiver& q) {
  Rep<F> r;
  r.q = &q;
  r.dims.assign(static_cast<size_t>(q.nv), 0);
  for (size_t a = 0; a < q.arrows.size(); ++a) r.mats.push_back(Mat<F>(0, 0));
  return r;
}

template <class F>
Rep<F> rep_simple(const Quiver& q, int v) {
  Rep<F> r = rep_zero<F>(q);
  r.dims[static_cast<size_t>(v)] = 1;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    r.mats[a] = Mat<F>(r.dims[static_cast<size_t>(q.arrows[a].tgt)],
                       r.dims[static_cast<size_t>(q.arrows[a].src)]);
  }
  return r;
}

template <class F>
Rep<F> rep_projective(const PathAlgebra<F>& A, int v) {
  const Quiver& q = A.quiver();
  Rep<F> r;
  r.q = &q;
  r.dims.resize(static_cast<size_t>(q.nv));
  std::vector<std::vector<int>> bases(static_cast<size_t>(q.nv));
  std::vector<int> pos(static_cast<size_t>(A.dim()), -1);
  for (int w = 0; w < q.nv; ++w) {
    bases[static_cast<size_t>(w)] = A.hom_basis(v, w);
    r.dims[static_cast<size_t>(w)] = static_cast<int>(bases[static_cast<size_t>(w)].size());
    for (size_t i = 0; i < bases[static_cast<size_t>(w)].size(); ++i)
      pos[static_cast<size_t>(bases[static_cast<size_t>(w)][i])] = static_cast<int>(i);
  }
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    Mat<F> m(r.dims[static_cast<size_t>(t)], r.dims[static_cast<size_t>(s)]);
    for (size_t j = 0; j < bases[static_cast<size_t>(s)].size(); ++j) {
      for (const auto& [idx, c] : A.left_mul(static_cast<int>(a), bases[static_cast<size_t>(s)][j])) {
        m.at(pos[static_cast<size_t>(idx)], static_cast<int>(j)) = c;
      }
    }
    r.mats.push_back(std::move(m));
  }
  return r;
}

template <class F>
Rep<F> rep_injective(const PathAlgebra<F>& A, int v) {
  const Quiver& q = A.quiver();
  Rep<F> r;
  r.q = &q;
  r.dims.resize(static_cast<size_t>(q.nv));
  std::vector<std::vector<int>> bases(static_cast<size_t>(q.nv));
  std::vector<int> pos(static_cast<size_t>(A.dim()), -1);
  for (int w = 0; w < q.nv; ++w) {
    bases[static_cast<size_t>(w)] = A.hom_basis(w, v);  // paths w -> v
    r.dims[static_cast<size_t>(w)] = static_cast<int>(bases[static_cast<size_t>(w)].size());
    for (size_t i = 0; i < bases[static_cast<size_t>(w)].size(); ++i)
      pos[static_cast<size_t>(bases[static_cast<size_t>(w)][i])] = static_cast<int>(i);
  }
  // arrow a: s -> t acts as the transpose of precomposition
  // e_v A e_t -> e_v A e_s
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    Mat<F> m(r.dims[static_cast<size_t>(t)], r.dims[static_cast<size_t>(s)]);
    for (size_t j = 0; j < bases[static_cast<size_t>(t)].size(); ++j) {
      // R_a(b) for b a path t -> v gives a path s -> v
      for (const auto& [idx, c] : A.right_mul(static_cast<int>(a), bases[static_cast<size_t>(t)][j])) {
        m.at(static_cast<int>(j), pos[static_cast<size_t>(idx)]) = c;
      }
    }
    r.mats.push_back(std::move(m));
  }
  return r;
}

template <class F>
bool satisfies_relations(const PathAlgebra<F>& A, const Rep<F>& m) {
  for (const QuadraticRelation& r : A.relations()) {
    int s = r.src, t = r.tgt;
    Mat<F> acc(m.dims[static_cast<size_t>(t)], m.dims[static_cast<size_t>(s)]);
    for (const auto& [pair, coeff] : r.terms) {
      acc = acc + m.mats[static_cast<size_t>(pair[1])] * m.mats[static_cast<size_t>(pair[0])] * F(coeff);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// morphisms

template <class F>
Morphism<F> morphism_zero(const Rep<F>& m, const Rep<F>& n) {
  Morphism<F> f;
  for (int v = 0; v < m.q->nv; ++v) {
    f.blocks.push_back(Mat<F>(n.dims[static_cast<size_t>(v)], m.dims[static_cast<size_t>(v)]));
  }
  return f;
}

template <class F>
Morphism<F> morphism_identity(const Rep<F>& m) {
  Morphism<F> f;
  for (int v = 0; v < m.q->nv; ++v) f.blocks.push_back(Mat<F>::identity(m.dims[static_cast<size_t>(v)]));
  return f;
}

template <class F>
Morphism<F> compose(const Morphism<F>& g, const Morphism<F>& f) {  // g after f
  Morphism<F> h;
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
  return h;
}

template <class F>
Morphism<F> add(const Morphism<F>& f, const Morphism<F>& g) {
  Morphism<F> h;
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(f.blocks[v] + g.blocks[v]);
  return h;
}

template <class F>
Morphism<F> scale(const Morphism<F>& f, const F& c) {
  Morphism<F> h;
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(f.blocks[v] * c);
  return h;
}

template <class F>
bool morphism_invertible(const Morphism<F>& f) {
  for (const auto& b : f.blocks) {
    if (b.rows() != b.cols()) return false;
    if (!is_invertible(b)) return false;
  }
  return true;
}

template <class F>
Morphism<F> morphism_inverse(const Morphism<F>& f) {
  Morphism<F> h;
  for (const auto& b : f.blocks) h.blocks.push_back(*inverse(b));
  return h;
}

// basis of Hom(M, N) via the commuting-square linear system
template <class F>
std::vector<Morphism<F>> hom_space(const Rep<F>& m, const Rep<F>& n) {
  const Quiver& q = *m.q;
  std::vector<int> offset(static_cast<size_t>(q.nv) + 1, 0);
  for (int v = 0; v < q.nv; ++v) {
    offset[static_cast<size_t>(v) + 1] =
        offset[static_cast<size_t>(v)] + m.dims[static_cast<size_t>(v)] * n.dims[static_cast<size_t>(v)];
  }
  int ncols = offset.back();
  // unknown f_v[i,k] (i < n_v rows, k < m_v cols) at offset(v) + k*n_v + i
  auto var = [&](int v, int i, int k) {
    return offset[static_cast<size_t>(v)] + k * n.dims[static_cast<size_t>(v)] + i;
  };
  std::vector<SparseVec<F>> rows;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int u = q.arrows[a].src, v = q.arrows[a].tgt;
    const Mat<F>& ma = m.mats[a];
    const Mat<F>& na = n.mats[a];
    for (int i = 0; i < n.dims[static_cast<size_t>(v)]; ++i) {
      for (int j = 0; j < m.dims[static_cast<size_t>(u)]; ++j) {
        SparseVec<F> row;
        for (int k = 0; k < m.dims[static_cast<size_t>(v)]; ++k) {
          if (!ma.at(k, j).is_zero()) row.push_back({var(v, i, k), ma.at(k, j)});
        }
        for (int k = 0; k < n.dims[static_cast<size_t>(u)]; ++k) {
          if (!na.at(i, k).is_zero()) {
            SparseVec<F> unit{{var(u, k, j), F(0) - na.at(i, k)}};
            sparse_axpy(row, unit, F(1));
          }
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        // merge duplicate indices
        SparseVec<F> merged;
        for (const auto& [c, val] : row) {
          if (!merged.empty() && merged.back().first == c) {
            merged.back().second += val;
            if (merged.back().second.is_zero()) merged.pop_back();
          } else if (!val.is_zero()) {
            merged.push_back({c, val});
          }
        }
        if (!merged.empty()) rows.push_back(std::move(merged));
      }
    }
  }
  Mat<F> ns = sparse_nullspace(std::move(rows), ncols);
  std::vector<Morphism<F>> out;
  for (int col = 0; col < ns.cols(); ++col) {
    Morphism<F> f = morphism_zero(m, n);
    for (int v = 0; v < q.nv; ++v) {
      for (int k = 0; k < m.dims[static_cast<size_t>(v)]; ++k) {
        for (int i = 0; i < n.dims[static_cast<size_t>(v)]; ++i) {
          f.blocks[static_cast<size_t>(v)].at(i, k) = ns.at(var(v, i, k), col);
        }
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

template <class F>
long hom_dim(const Rep<F>& m, const Rep<F>& n) {
  return static_cast<long>(hom_space(m, n).size());
}

// flatten a morphism to a coordinate vector (column-major per vertex)
template <class F>
std::vector<F> morphism_vec(const Morphism<F>& f) {
  std::vector<F> out;
  for (const auto& b : f.blocks) {
    for (int j = 0; j < b.cols(); ++j)
      for (int i = 0; i < b.rows(); ++i) out.push_back(b.at(i, j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// subobjects and quotients

// Kernel of f: M -> N with its inclusion.
template <class F>
std::pair<Rep<F>, Morphism<F>> kernel(const Rep<F>& m, const Rep<F>& n, const Morphism<F>& f) {
  const Quiver& q = *m.q;
  Rep<F> k;
  k.q = &q;
  Morphism<F> incl;
  std::vector<Mat<F>> kb;
  for (int v = 0; v < q.nv; ++v) {
    Mat<F> b = nullspace(f.blocks[static_cast<size_t>(v)]);
    k.dims.push_back(b.cols());
    kb.push_back(b);
  }
  (void)n;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    Mat<F> img = m.mats[a] * kb[static_cast<size_t>(s)];
    auto x = solve(kb[static_cast<size_t>(t)], img);
    if (!x) throw Error("internal", "kernel is not arrow-stable");
    k.mats.push_back(std::move(*x));
  }
  incl.blocks = std::move(kb);
  return {std::move(k), std::move(incl)};
}

// Image of f: M -> N as a subrepresentation of N with inclusion.
template <class F>
std::pair<Rep<F>, Morphism<F>> image(const Rep<F>& m, const Rep<F>& n, const Morphism<F>& f) {
  const Quiver& q = *n.q;
  Rep<F> im;
  im.q = &q;
  Morphism<F> incl;
  std::vector<Mat<F>> cb;
  for (int v = 0; v < q.nv; ++v) {
    const Mat<F>& b = f.blocks[static_cast<size_t>(v)];
    std::vector<int> cols = independent_columns(b);
    Mat<F> c(b.rows(), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < b.rows(); ++i) c.at(i, static_cast<int>(j)) = b.at(i, cols[j]);
    im.dims.push_back(c.cols());
    cb.push_back(std::move(c));
  }
  (void)m;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    Mat<F> img = n.mats[a] * cb[static_cast<size_t>(s)];
    auto x = solve(cb[static_cast<size_t>(t)], img);
    if (!x) throw Error("internal", "image is not arrow-stable");
    im.mats.push_back(std::move(*x));
  }
  incl.blocks = std::move(cb);
  return {std::move(im), std::move(incl)};
}

// Quotient of N by the subrepresentation spanned by the columns of sub[v];
// returns the quotient and the projection morphism.
template <class F>
std::pair<Rep<F>, Morphism<F>> quotient(const Rep<F>& n, const std::vector<Mat<F>>& sub) {
  const Quiver& q = *n.q;
  Rep<F> qt;
  qt.q = &q;
  Morphism<F> proj;
  std::vector<Mat<F>> lifts;  // complement unit vectors per vertex
  for (int v = 0; v < q.nv; ++v) {
    int nd = n.dims[static_cast<size_t>(v)];
    const Mat<F>& s = sub[static_cast<size_t>(v)];
    // choose unit vectors extending the subspace basis
    Mat<F> aug(nd, s.cols() + nd);
    for (int i = 0; i < nd; ++i) {
      for (int j = 0; j < s.cols(); ++j) aug.at(i, j) = s.at(i, j);
      aug.at(i, s.cols() + i) = F(1);
    }
    std::vector<int> piv = rref_inplace(aug);
    std::vector<int> comp;  // identity columns completing the basis
    for (int c : piv)
      if (c >= s.cols()) comp.push_back(c - s.cols());
    int k = static_cast<int>(comp.size());
    Mat<F> lift(nd, k);
    for (int j = 0; j < k; ++j) lift.at(comp[static_cast<size_t>(j)], j) = F(1);
    // projection = bottom rows of [S lift]^{-1}
    Mat<F> basis(nd, nd);
    for (int i = 0; i < nd; ++i) {
      for (int j = 0; j < s.cols(); ++j) basis.at(i, j) = s.at(i, j);
      for (int j = 0; j < k; ++j) basis.at(i, s.cols() + j) = lift.at(i, j);
    }
    auto inv = inverse(basis);
    if (!inv) throw Error("internal", "subspace basis is degenerate");
    Mat<F> p(k, nd);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < nd; ++j) p.at(i, j) = inv->at(s.cols() + i, j);
    qt.dims.push_back(k);
    proj.blocks.push_back(std::move(p));
    lifts.push_back(std::move(lift));
  }
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    qt.mats.push_back(proj.blocks[static_cast<size_t>(t)] * n.mats[a] * lifts[static_cast<size_t>(s)]);
  }
  return {std::move(qt), std::move(proj)};
}

template <class F>
std::pair<Rep<F>, Morphism<F>> cokernel(const Rep<F>& m, const Rep<F>& n, const Morphism<F>& f) {
  auto [im, incl] = image(m, n, f);
  return quotient(n, incl.blocks);
}

// radical subspaces: sum of the images of all incoming arrows
template <class F>
std::vector<Mat<F>> radical_bases(const Rep<F>& m) {
  const Quiver& q = *m.q;
  std::vector<Mat<F>> out;
  for (int v = 0; v < q.nv; ++v) {
    int nd = m.dims[static_cast<size_t>(v)];
    int total = 0;
    for (size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].tgt == v) total += m.dims[static_cast<size_t>(q.arrows[a].src)];
    Mat<F> stack(nd, total);
    int col = 0;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].tgt != v) continue;
      const Mat<F>& ma = m.mats[a];
      for (int j = 0; j < ma.cols(); ++j, ++col)
        for (int i = 0; i < nd; ++i) stack.at(i, col) = ma.at(i, j);
    }
    std::vector<int> cols = independent_columns(stack);
    Mat<F> b(nd, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < nd; ++i) b.at(i, static_cast<int>(j)) = stack.at(i, cols[j]);
    out.push_back(std::move(b));
  }
  return out;
}

// socle subspaces: joint kernel of all outgoing arrows
template <class F>
std::vector<Mat<F>> socle_bases(const Rep<F>& m) {
  const Quiver& q = *m.q;
  std::vector<Mat<F>> out;
  for (int v = 0; v < q.nv; ++v) {
    int nd = m.dims[static_cast<size_t>(v)];
    int total = 0;
    for (size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].src == v) total += m.dims[static_cast<size_t>(q.arrows[a].tgt)];
    Mat<F> stack(total, nd);
    int row = 0;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].src != v) continue;
      const Mat<F>& ma = m.mats[a];
      for (int i = 0; i < ma.rows(); ++i, ++row)
        for (int j = 0; j < nd; ++j) stack.at(row, j) = ma.at(i, j);
    }
    out.push_back(nullspace(stack));
  }
  return out;
}

// top multiplicities (dim of M_v / rad_v) and coset representatives
template <class F>
std::pair<std::vector<int>, std::vector<Mat<F>>> top_data(const Rep<F>& m) {
  const Quiver& q = *m.q;
  std::vector<Mat<F>> rad = radical_bases(m);
  std::vector<int> mult;
  std::vector<Mat<F>> reps;
  for (int v = 0; v < q.nv; ++v) {
    int nd = m.dims[static_cast<size_t>(v)];
    const Mat<F>& r = rad[static_cast<size_t>(v)];
    Mat<F> aug(nd, r.cols() + nd);
    for (int i = 0; i < nd; ++i) {
      for (int j = 0; j < r.cols(); ++j) aug.at(i, j) = r.at(i, j);
      aug.at(i, r.cols() + i) = F(1);
    }
    std::vector<int> piv = rref_inplace(aug);
    std::vector<int> comp;
    for (int c : piv)
      if (c >= r.cols()) comp.push_back(c - r.cols());
    Mat<F> rep(nd, static_cast<int>(comp.size()));
    for (size_t j = 0; j < comp.size(); ++j) rep.at(comp[j], static_cast<int>(j)) = F(1);
    mult.push_back(static_cast<int>(comp.size()));
    reps.push_back(std::move(rep));
  }
  return {std::move(mult), std::move(reps)};
}

// socle layers from the bottom up: per-layer vertex multiplicities
template <class F>
std::vector<std::vector<int>> socle_layers(const Rep<F>& m) {
  std::vector<std::vector<int>> layers;
  Rep<F> cur = m;
  while (cur.total_dim() > 0) {
    std::vector<Mat<F>> soc = socle_bases(cur);
    std::vector<int> layer;
    long soc_dim = 0;
    for (const auto& b : soc) {
      layer.push_back(b.cols());
      soc_dim += b.cols();
    }
    if (soc_dim == 0) throw Error("internal", "nonzero module with zero socle");
    layers.push_back(layer);
    auto [qt, proj] = quotient(cur, soc);
    cur = std::move(qt);
  }
  return layers;
}

// rows of the diagram, top row first
template <class F>
std::vector<std::vector<int>> loewy_rows(const Rep<F>& m) {
  std::vector<std::vector<int>> layers = socle_layers(m);
  std::vector<std::vector<int>> rows;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    std::vector<int> row;
    for (int v = 0; v < static_cast<int>(it->size()); ++v) {
      for (int c = 0; c < (*it)[static_cast<size_t>(v)]; ++c) row.push_back(v);
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// direct sums

template <class F>
Rep<F> direct_sum(const Quiver& q, const std::vector<const Rep<F>*>& parts) {
  Rep<F> r;
  r.q = &q;
  r.dims.assign(static_cast<size_t>(q.nv), 0);
  for (const Rep<F>* p : parts)
    for (int v = 0; v < q.nv; ++v) r.dims[static_cast<size_t>(v)] += p->dims[static_cast<size_t>(v)];
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int s = q.arrows[a].src, t = q.arrows[a].tgt;
    Mat<F> m(r.dims[static_cast<size_t>(t)], r.dims[static_cast<size_t>(s)]);
    int ro = 0, co = 0;
    for (const Rep<F>* p : parts) {
      const Mat<F>& pm = p->mats[a];
      for (int i = 0; i < pm.rows(); ++i)
        for (int j = 0; j < pm.cols(); ++j) m.at(ro + i, co + j) = pm.at(i, j);
      ro += p->dims[static_cast<size_t>(t)];
      co += p->dims[static_cast<size_t>(s)];
    }
    r.mats.push_back(std::move(m));
  }
  return r;
}

// injection of part k into the direct sum
template <class F>
Morphism<F> sum_injection(const std::vector<const Rep<F>*>& parts, size_t k, const Rep<F>& total) {
  const Quiver& q = *total.q;
  Morphism<F> f;
  for (int v = 0; v < q.nv; ++v) {
    Mat<F> b(total.dims[static_cast<size_t>(v)], parts[k]->dims[static_cast<size_t>(v)]);
    int off = 0;
    for (size_t i = 0; i < k; ++i) off += parts[i]->dims[static_cast<size_t>(v)];
    for (int j = 0; j < parts[k]->dims[static_cast<size_t>(v)]; ++j) b.at(off + j, j) = F(1);
    f.blocks.push_back(std::move(b));
  }
  return f;
}

template <class F>
Morphism<F> sum_projection(const std::vector<const Rep<F>*>& parts, size_t k, const Rep<F>& total) {
  const Quiver& q = *total.q;
  Morphism<F> f;
  for (int v = 0; v < q.nv; ++v) {
    Mat<F> b(parts[k]->dims[static_cast<size_t>(v)], total.dims[static_cast<size_t>(v)]);
    int off = 0;
    for (size_t i = 0; i < k; ++i) off += parts[i]->dims[static_cast<size_t>(v)];
    for (int j = 0; j < parts[k]->dims[static_cast<size_t>(v)]; ++j) b.at(j, off + j) = F(1);
    f.blocks.push_back(std::move(b));
  }
  return f;
}

// ---------------------------------------------------------------------------
// projective covers and syzygies (word action through the path algebra)

template <class F>
std::vector<F> act_word(const Rep<F>& m, const std::vector<int>& word, std::vector<F> vec) {
  for (int a : word) {
    const Mat<F>& ma = m.mats[static_cast<size_t>(a)];
    std::vector<F> next(static_cast<size_t>(ma.rows()), F(0));
    for (int i = 0; i < ma.rows(); ++i) {
      for (int j = 0; j < ma.cols(); ++j) {
        if (!ma.at(i, j).is_zero()) next[static_cast<size_t>(i)] += ma.at(i, j) * vec[static_cast<size_t>(j)];
      }
    }
    vec = std::move(next);
  }
  return vec;
}

// The unique morphism P(v) -> M sending e_v to the given element of M_v.
template <class F>
Morphism<F> yoneda_morphism(const PathAlgebra<F>& A, int v, const Rep<F>& pv, const Rep<F>& m,
                            const std::vector<F>& elem) {
  const Quiver& q = A.quiver();
  Morphism<F> f;
  // column for each basis path class b in e_w A e_v: word(b) applied to elem
  std::vector<std::vector<F>> val(static_cast<size_t>(A.dim()));
  val[static_cast<size_t>(A.idempotent(v))] = elem;
  f.blocks.resize(static_cast<size_t>(q.nv));
  for (int w = 0; w < q.nv; ++w) {
    f.blocks[static_cast<size_t>(w)] =
        Mat<F>(m.dims[static_cast<size_t>(w)], pv.dims[static_cast<size_t>(w)]);
  }
  // basis indices are created parents-first, so one pass suffices
  for (int b = 0; b < A.dim(); ++b) {
    const auto& be = A.basis()[static_cast<size_t>(b)];
    if (be.src != v) continue;
    if (be.degree > 0) {
      val[static_cast<size_t>(b)] = act_word(m, {be.via_arrow}, val[static_cast<size_t>(be.parent)]);
    }
    // locate the column of b inside P(v) at vertex tgt
    const std::vector<int>& hb = A.hom_basis(v, be.tgt);
    int col = -1;
    for (size_t i = 0; i < hb.size(); ++i)
      if (hb[i] == b) col = static_cast<int>(i);
    const std::vector<F>& x = val[static_cast<size_t>(b)];
    for (int i = 0; i < m.dims[static_cast<size_t>(be.tgt)]; ++i) {
      f.blocks[static_cast<size_t>(be.tgt)].at(i, col) = x[static_cast<size_t>(i)];
    }
  }
  return f;
}

template <class F>
struct Cover {
  Rep<F> p;           // projective cover
  Morphism<F> pi;     // epimorphism P -> M
  std::vector<int> mult;  // multiplicity of P(v) per vertex
  std::vector<int> part_vertex;  // vertex of each indecomposable part, in order
};

template <class F>
Cover<F> projective_cover(const PathAlgebra<F>& A, const Rep<F>& m,
                          const std::vector<Rep<F>>& projectives) {
  const Quiver& q = A.quiver();
  auto [mult, reps] = top_data(m);
  std::vector<const Rep<F>*> parts;
  std::vector<int> part_vertex;
  std::vector<std::vector<F>> gens;  // generator image per part
  for (int v = 0; v < q.nv; ++v) {
    for (int j = 0; j < mult[static_cast<size_t>(v)]; ++j) {
      parts.push_back(&projectives[static_cast<size_t>(v)]);
      part_vertex.push_back(v);
      std::vector<F> e(static_cast<size_t>(m.dims[static_cast<size_t>(v)]));
      for (int i = 0; i < m.dims[static_cast<size_t>(v)]; ++i)
        e[static_cast<size_t>(i)] = reps[static_cast<size_t>(v)].at(i, j);
      gens.push_back(std::move(e));
    }
  }
  Cover<F> c;
  c.p = direct_sum(q, parts);
  c.mult = mult;
  c.part_vertex = part_vertex;
  c.pi = morphism_zero(c.p, m);
  for (size_t k = 0; k < parts.size(); ++k) {
    Morphism<F> fk = yoneda_morphism(A, part_vertex[k], *parts[k], m, gens[k]);
    Morphism<F> ik = sum_projection(parts, k, c.p);  // P -> P_k
    // pi += fk ∘ proj_k
    for (int v = 0; v < q.nv; ++v) {
      c.pi.blocks[static_cast<size_t>(v)] =
          c.pi.blocks[static_cast<size_t>(v)] + fk.blocks[static_cast<size_t>(v)] * ik.blocks[static_cast<size_t>(v)];
    }
  }
  return c;
}

template <class F>
std::pair<Rep<F>, Morphism<F>> syzygy(const PathAlgebra<F>& A, const Rep<F>& m,
                                      const std::vector<Rep<F>>& projectives) {
  Cover<F> c = projective_cover(A, m, projectives);
  return kernel(c.p, m, c.pi);
}

// dimension of the subspace of Hom(M, N) of maps factoring through a
// projective (equivalently through the projective cover of N)
template <class F>
long projectively_trivial_dim(const PathAlgebra<F>& A, const Rep<F>& m, const Rep<F>& n,
                              const std::vector<Rep<F>>& projectives) {
  if (m.total_dim() == 0 || n.total_dim() == 0) return 0;
  Cover<F> c = projective_cover(A, n, projectives);
  std::vector<Morphism<F>> hmp = hom_space(m, c.p);
  if (hmp.empty()) return 0;
  Mat<F> rows(static_cast<int>(hmp.size()), static_cast<int>(morphism_vec(compose(c.pi, hmp[0])).size()));
  for (size_t i = 0; i < hmp.size(); ++i) {
    std::vector<F> v = morphism_vec(compose(c.pi, hmp[i]));
    for (size_t j = 0; j < v.size(); ++j) rows.at(static_cast<int>(i), static_cast<int>(j)) = v[j];
  }
  return rank_of(rows);
}

// Ext^k over a self-injective algebra via stable homs of syzygies. The
// representing data is the k-th syzygy together with morphisms spanning a
// complement of the projectively trivial maps inside Hom(Omega^k M, N).
template <class F>
struct ExtData {
  long dim = 0;
  Rep<F> syzygy;                      // Omega^k M
  std::vector<Morphism<F>> cocycles;  // representatives, one per dimension
};

template <class F>
ExtData<F> ext_with_reps(const PathAlgebra<F>& A, int k, const Rep<F>& m, const Rep<F>& n,
                         const std::vector<Rep<F>>& projectives) {
  if (k < 1) throw Error("bad-argument", "ext degree must be >= 1");
  ExtData<F> out;
  Rep<F> om = m;
  for (int i = 0; i < k; ++i) {
    if (om.total_dim() == 0) {
      out.syzygy = om;
      return out;
    }
    om = syzygy(A, om, projectives).first;
  }
  out.syzygy = om;
  if (om.total_dim() == 0 || n.total_dim() == 0) return out;
  std::vector<Morphism<F>> homs = hom_space(om, n);
  if (homs.empty()) return out;
  // rows spanning the projectively trivial maps
  Cover<F> c = projective_cover(A, n, projectives);
  std::vector<std::vector<F>> acc;
  for (const Morphism<F>& h : hom_space(om, c.p)) acc.push_back(morphism_vec(compose(c.pi, h)));
  size_t len = morphism_vec(homs[0]).size();
  auto rank_rows = [&](const std::vector<std::vector<F>>& rws) {
    Mat<F> mat(static_cast<int>(rws.size()), static_cast<int>(len));
    for (size_t r = 0; r < rws.size(); ++r)
      for (size_t cc = 0; cc < len; ++cc) mat.at(static_cast<int>(r), static_cast<int>(cc)) = rws[r][cc];
    return rank_of(mat);
  };
  int cur = rank_rows(acc);
  for (const Morphism<F>& h : homs) {
    acc.push_back(morphism_vec(h));
    int r2 = rank_rows(acc);
    if (r2 > cur) {
      cur = r2;
      out.cocycles.push_back(h);
      ++out.dim;
    } else {
      acc.pop_back();
    }
  }
  return out;
}

// dim Ext^k over a self-injective algebra via stable homs of syzygies
template <class F>
long ext_dim(const PathAlgebra<F>& A, int k, const Rep<F>& m, const Rep<F>& n,
             const std::vector<Rep<F>>& projectives) {
  if (k < 1) throw Error("bad-argument", "ext degree must be >= 1");
  Rep<F> om = m;
  for (int i = 0; i < k; ++i) {
    if (om.total_dim() == 0) return 0;
    om = syzygy(A, om, projectives).first;
  }
  if (om.total_dim() == 0) return 0;
  return hom_dim(om, n) - projectively_trivial_dim(A, om, n, projectives);
}

// ---------------------------------------------------------------------------
// twisting by a quiver automorphism

template <class F>
Rep<F> twist(const Rep<F>& m, const std::vector<int>& vperm, const std::vector<int>& aperm) {
  const Quiver& q = *m.q;
  std::vector<int> vinv(vperm.size()), ainv(aperm.size());
  for (size_t i = 0; i < vperm.size(); ++i) vinv[static_cast<size_t>(vperm[i])] = static_cast<int>(i);
  for (size_t i = 0; i < aperm.size(); ++i) ainv[static_cast<size_t>(aperm[i])] = static_cast<int>(i);
  Rep<F> r;
  r.q = &q;
  r.dims.resize(m.dims.size());
  r.mats.resize(m.mats.size());
  for (size_t v = 0; v < m.dims.size(); ++v) r.dims[v] = m.dims[static_cast<size_t>(vinv[v])];
  for (size_t a = 0; a < m.mats.size(); ++a) r.mats[a] = m.mats[static_cast<size_t>(ainv[a])];
  return r;
}

// ---------------------------------------------------------------------------
// isomorphism search

template <class F>
std::optional<Morphism<F>> find_iso(const Rep<F>& m, const Rep<F>& n, std::mt19937_64& rng,
                                    int tries = 80) {
  if (m.dims != n.dims) return std::nullopt;
  if (m.total_dim() == 0) return morphism_zero(m, n);
  std::vector<Morphism<F>> h = hom_space(m, n);
  if (h.empty()) return std::nullopt;
  for (const Morphism<F>& f : h) {
    if (morphism_invertible(f)) return f;
  }
  for (int t = 0; t < tries; ++t) {
    long range = 3 + t / 10;
    Morphism<F> f = morphism_zero(m, n);
    for (const Morphism<F>& b : h) {
      long c = static_cast<long>(rng() % static_cast<unsigned long>(2 * range + 1)) - range;
      if (c) f = add(f, scale(b, F(c)));
    }
    if (morphism_invertible(f)) return f;
  }
  return std::nullopt;
}

template <class F>
bool iso_test(const Rep<F>& m, const Rep<F>& n, std::mt19937_64& rng) {
  return find_iso(m, n, rng).has_value();
}

// ---------------------------------------------------------------------------
// endomorphism algebra tools and Krull-Schmidt splitting

template <class F>
long end_dim(const Rep<F>& m) {
  return hom_dim(m, m);
}

// dim End/radEnd via the trace form; valid in characteristic 0 or when the
// characteristic exceeds dim End
template <class F>
long end_semisimple_dim(const Rep<F>& m) {
  std::vector<Morphism<F>> e = hom_space(m, m);
  int d = static_cast<int>(e.size());
  if (d == 0) return 0;
  // express products in the basis: stack basis vectors as columns
  std::vector<std::vector<F>> vecs;
  for (const auto& f : e) vecs.push_back(morphism_vec(f));
  int len = static_cast<int>(vecs[0].size());
  Mat<F> basis(len, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < len; ++i) basis.at(i, j) = vecs[static_cast<size_t>(j)][static_cast<size_t>(i)];
  // structure constants: c_{ijk} with e_i e_j = sum_k c_{ijk} e_k
  std::vector<Mat<F>> left(static_cast<size_t>(d));  // L_i as d x d matrices
  Mat<F> prods(len, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::vector<F> v = morphism_vec(compose(e[static_cast<size_t>(i)], e[static_cast<size_t>(j)]));
      for (int r = 0; r < len; ++r) prods.at(r, i * d + j) = v[static_cast<size_t>(r)];
    }
  }
  auto coeff = solve(basis, prods);
  if (!coeff) throw Error("internal", "endomorphism products left the hom space");
  for (int i = 0; i < d; ++i) {
    Mat<F> li(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) li.at(k, j) = coeff->at(k, i * d + j);
    left[static_cast<size_t>(i)] = std::move(li);
  }
  // Gram matrix of (x, y) -> trace(L_x L_y)
  Mat<F> gram(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Mat<F> pij = left[static_cast<size_t>(i)] * left[static_cast<size_t>(j)];
      F tr(0);
      for (int k = 0; k < d; ++k) tr += pij.at(k, k);
      gram.at(i, j) = tr;
    }
  }
  return rank_of(gram);
}

template <class F>
bool end_is_local(const Rep<F>& m) {
  if (m.total_dim() == 0) return false;
  return end_semisimple_dim(m) == 1;
}

namespace detail {

// Fitting splitting along an endomorphism: M = ker(f^N) ⊕ im(f^N)
template <class F>
std::optional<std::pair<Rep<F>, Rep<F>>> fitting_split(const Rep<F>& m, const Morphism<F>& f) {
  Morphism<F> p = f;
  long prev = -1;
  for (long it = 0; it <= m.total_dim(); ++it) {
    long k = 0;
    for (const auto& b : p.blocks) k += b.rows() == 0 ? 0 : (b.cols() - rank_of(b));
    if (k == prev) break;
    prev = k;
    p = compose(p, f);
  }
  auto [ker, ki] = kernel(m, m, p);
  auto [im, ii] = image(m, m, p);
  if (ker.total_dim() == 0 || im.total_dim() == 0) return std::nullopt;
  return std::make_pair(std::move(ker), std::move(im));
}

}  // namespace detail

// Split off a copy of cand from m if it is a direct summand; returns the
// complement on success.
template <class F>
std::optional<Rep<F>> split_off(const Rep<F>& m, const Rep<F>& cand, std::mt19937_64& rng) {
  for (size_t v = 0; v < m.dims.size(); ++v)
    if (cand.dims[v] > m.dims[v]) return std::nullopt;
  if (cand.total_dim() == 0 || cand.total_dim() > m.total_dim()) return std::nullopt;
  std::vector<Morphism<F>> fs = hom_space(cand, m);
  std::vector<Morphism<F>> gs = hom_space(m, cand);
  if (fs.empty() || gs.empty()) return std::nullopt;
  auto try_pair = [&](const Morphism<F>& f, const Morphism<F>& g) -> std::optional<Rep<F>> {
    Morphism<F> gf = compose(g, f);
    if (!morphism_invertible(gf)) return std::nullopt;
    // e = f (gf)^{-1} g is an idempotent with image ≅ cand
    Morphism<F> e = compose(f, compose(morphism_inverse(gf), g));
    auto [ker, ki] = kernel(m, m, e);
    return ker;
  };
  for (const auto& f : fs) {
    for (const auto& g : gs) {
      auto r = try_pair(f, g);
      if (r) return r;
    }
  }
  for (int t = 0; t < 40; ++t) {
    long range = 2 + t / 8;
    Morphism<F> f = morphism_zero(cand, m);
    Morphism<F> g = morphism_zero(m, cand);
    for (const auto& b : fs) {
      long c = static_cast<long>(rng() % static_cast<unsigned long>(2 * range + 1)) - range;
      if (c) f = add(f, scale(b, F(c)));
    }
    for (const auto& b : gs) {
      long c = static_cast<long>(rng() % static_cast<unsigned long>(2 * range + 1)) - range;
      if (c) g = add(g, scale(b, F(c)));
    }
    auto r = try_pair(f, g);
    if (r) return r;
  }
  return std::nullopt;
}

// Krull-Schmidt decomposition. Candidates are tried first (every call site
// knows its cell library); leftovers are split along integer eigenvalues of
// random endomorphisms and certified indecomposable via local End.
template <class F>
std::vector<std::pair<Rep<F>, int>> decompose(const Rep<F>& m,
                                              const std::vector<const Rep<F>*>& candidates,
                                              uint64_t seed) {
  std::vector<Rep<F>> pieces;
  std::vector<Rep<F>> work{m};
  std::mt19937_64 rng(seed);
  int reseeds = 0;
  while (!work.empty()) {
    Rep<F> cur = std::move(work.back());
    work.pop_back();
    if (cur.total_dim() == 0) continue;
    std::vector<Morphism<F>> ends = hom_space(cur, cur);
    if (ends.size() == 1) {
      pieces.push_back(std::move(cur));
      continue;
    }
    bool split = false;
    for (const Rep<F>* cand : candidates) {
      auto rest = split_off(cur, *cand, rng);
      if (rest) {
        pieces.push_back(*cand);
        work.push_back(std::move(*rest));
        split = true;
        break;
      }
    }
    if (split) continue;
    // random endomorphism, integer-spectrum splitting
    for (int attempt = 0; attempt < 5 && !split; ++attempt) {
      Morphism<F> theta = morphism_zero(cur, cur);
      for (const auto& b : ends) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (c) theta = add(theta, scale(b, F(c)));
      }
      // integer eigenvalues: |lambda| bounded by the max absolute row sum of
      // an integer multiple of theta; our endomorphism entries stay small, so
      // scan a modest window and verify exactly
      for (long lam = -64; lam <= 64 && !split; ++lam) {
        Morphism<F> shifted = theta;
        for (size_t v = 0; v < shifted.blocks.size(); ++v) {
          Mat<F> id = Mat<F>::identity(cur.dims[v]);
          shifted.blocks[v] = shifted.blocks[v] - id * F(lam);
        }
        bool singular = false;
        for (const auto& b : shifted.blocks) {
          if (b.rows() > 0 && rank_of(b) < b.rows()) singular = true;
        }
        if (!singular) continue;
        auto parts = detail::fitting_split(cur, shifted);
        if (parts) {
          work.push_back(std::move(parts->first));
          work.push_back(std::move(parts->second));
          split = true;
        }
      }
    }
    if (split) continue;
    if (end_is_local(cur)) {
      pieces.push_back(std::move(cur));
      continue;
    }
    if (++reseeds > 5)
      throw Error("decomposition-unstable", "could not split a module with non-local End");
    work.push_back(std::move(cur));
    rng.seed(seed + static_cast<uint64_t>(reseeds) * 7919);
  }
  // group by isomorphism
  std::vector<std::pair<Rep<F>, int>> out;
  for (Rep<F>& p : pieces) {
    bool matched = false;
    for (auto& [rep, mult] : out) {
      if (iso_test(rep, p, rng)) {
        ++mult;
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back({std::move(p), 1});
  }
  return out;
}

}  // namespace meshct
