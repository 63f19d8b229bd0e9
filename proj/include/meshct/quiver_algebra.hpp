#pragma once

// Finite dimensional path algebra quotients K Q / I for homogeneous length-2
// relation ideals (mesh relations). The basis of path classes is computed
// degree by degree: degree-m generators are (degree-(m-1) class, arrow) pairs
// and the relation ideal contributes rows r∘b for b a degree-(m-2) class,
// reduced blockwise per (source, target) pair. Both the folded mesh algebras
// and the Auslander-region algebras are built this way.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "meshct/error.hpp"
#include "meshct/matrix.hpp"

namespace meshct {

struct QuiverArrow {
  int src = 0, tgt = 0;
  std::string id;
};

struct Quiver {
  int nv = 0;
  std::vector<QuiverArrow> arrows;
  std::vector<std::string> vertex_names;  // optional; defaults to indices

  std::string vertex_name(int v) const {
    return v < static_cast<int>(vertex_names.size()) ? vertex_names[v] : std::to_string(v);
  }
};

// sum of coeff * (second ∘ first) with common endpoints
struct QuadraticRelation {
  int src = 0, tgt = 0;
  std::vector<std::pair<std::array<int, 2>, long>> terms;  // ({first, second}, coeff)
};

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;  // sorted by index

template <class F>
void sparse_axpy(SparseVec<F>& dst, const SparseVec<F>& src, const F& c) {
  if (c.is_zero() || src.empty()) return;
  SparseVec<F> out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i >= dst.size() || src[j].first < dst[i].first) {
      F v = c * src[j].second;
      if (!v.is_zero()) out.push_back({src[j].first, v});
      ++j;
    } else {
      F v = dst[i].second + c * src[j].second;
      if (!v.is_zero()) out.push_back({dst[i].first, v});
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

template <class F>
class PathAlgebra {
 public:
  struct BasisElem {
    int src = 0, tgt = 0;
    int degree = 0;
    int parent = -1;     // basis index of the degree-(d-1) prefix class
    int via_arrow = -1;  // arrow applied last
  };

  PathAlgebra(Quiver q, std::vector<QuadraticRelation> rels, int degree_cap)
      : q_(std::move(q)), rels_(std::move(rels)) {
    build(degree_cap);
  }

  const Quiver& quiver() const { return q_; }
  const std::vector<QuadraticRelation>& relations() const { return rels_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int num_vertices() const { return q_.nv; }
  const std::vector<BasisElem>& basis() const { return basis_; }
  int idempotent(int v) const { return v; }
  int loewy_length() const { return max_degree_ + 1; }

  // basis indices of e_tgt A e_src
  const std::vector<int>& hom_basis(int src, int tgt) const {
    return hom_basis_[static_cast<size_t>(src) * q_.nv + tgt];
  }

  // normal form of arrow∘b (post-composition); zero vector if not composable
  const SparseVec<F>& left_mul(int arrow, int b) const {
    static const SparseVec<F> kZero{};
    auto it = left_nf_.find(key(b, arrow));
    return it == left_nf_.end() ? kZero : it->second;
  }

  // normal form of b∘arrow (pre-composition), memoized recursively
  const SparseVec<F>& right_mul(int arrow, int b) const {
    auto it = right_nf_.find(key(b, arrow));
    if (it != right_nf_.end()) return it->second;
    SparseVec<F> out;
    const BasisElem& be = basis_[static_cast<size_t>(b)];
    const QuiverArrow& a = q_.arrows[static_cast<size_t>(arrow)];
    if (be.degree == 0) {
      if (a.tgt == be.src) out = {{arrow_basis_[static_cast<size_t>(arrow)], F(1)}};
    } else if (a.tgt == be.src) {
      const SparseVec<F>& prefix = right_mul(arrow, be.parent);
      for (const auto& [idx, c] : prefix) {
        sparse_axpy(out, left_mul(be.via_arrow, idx), c);
      }
    }
    return right_nf_.emplace(key(b, arrow), std::move(out)).first->second;
  }

  // product of two basis classes: b2 ∘ b1 (b1 applied first)
  SparseVec<F> product(int b2, int b1) const {
    const BasisElem& e2 = basis_[static_cast<size_t>(b2)];
    if (e2.degree == 0) {
      if (basis_[static_cast<size_t>(b1)].tgt == e2.src) return {{b1, F(1)}};
      return {};
    }
    SparseVec<F> acc = product(e2.parent, b1);
    SparseVec<F> out;
    for (const auto& [idx, c] : acc) sparse_axpy(out, left_mul(e2.via_arrow, idx), c);
    return out;
  }

  // arrow word of a basis class representative, first applied first
  std::vector<int> word(int b) const {
    std::vector<int> w;
    for (const BasisElem* e = &basis_[static_cast<size_t>(b)]; e->degree > 0;
         e = &basis_[static_cast<size_t>(e->parent)]) {
      w.push_back(e->via_arrow);
    }
    return {w.rbegin(), w.rend()};
  }

 private:
  Quiver q_;
  std::vector<QuadraticRelation> rels_;
  std::vector<BasisElem> basis_;
  std::vector<int> arrow_basis_;  // degree-1 basis index per arrow
  std::vector<std::vector<int>> hom_basis_;
  std::map<int64_t, SparseVec<F>> left_nf_;
  mutable std::map<int64_t, SparseVec<F>> right_nf_;
  int max_degree_ = 0;

  int64_t key(int b, int arrow) const {
    return static_cast<int64_t>(b) * static_cast<int64_t>(q_.arrows.size()) + arrow;
  }

  void build(int degree_cap) {
    const int na = static_cast<int>(q_.arrows.size());
    for (int v = 0; v < q_.nv; ++v) basis_.push_back({v, v, 0, -1, -1});
    std::vector<int> prev;  // basis indices of the previous degree
    for (int v = 0; v < q_.nv; ++v) prev.push_back(v);
    std::vector<int> prev2;  // two degrees back

    arrow_basis_.assign(static_cast<size_t>(na), -1);

    for (int m = 1; !prev.empty(); ++m) {
      if (m > degree_cap)
        throw Error("non-terminating-growth",
                    "path classes still appear beyond degree " + std::to_string(degree_cap));
      // generators grouped by (src, tgt)
      struct Gen {
        int b, arrow;
      };
      std::map<std::pair<int, int>, std::vector<Gen>> blocks;
      std::map<int64_t, std::pair<std::pair<int, int>, int>> gen_pos;  // (b,a) -> block,col
      for (int b : prev) {
        const BasisElem& be = basis_[static_cast<size_t>(b)];
        for (int a = 0; a < na; ++a) {
          if (q_.arrows[static_cast<size_t>(a)].src != be.tgt) continue;
          auto bk = std::make_pair(be.src, q_.arrows[static_cast<size_t>(a)].tgt);
          gen_pos[key(b, a)] = {bk, static_cast<int>(blocks[bk].size())};
          blocks[bk].push_back({b, a});
        }
      }
      // relation rows r∘b2
      std::map<std::pair<int, int>, std::vector<SparseVec<F>>> rows;
      for (const QuadraticRelation& r : rels_) {
        for (int b2 : prev2) {  // at m == 2 these are the idempotents
          const BasisElem& be2 = basis_[static_cast<size_t>(b2)];
          if (be2.tgt != r.src) continue;
          auto bk = std::make_pair(be2.src, r.tgt);
          SparseVec<F> row;  // over block columns
          for (const auto& [pair, coeff] : r.terms) {
            auto [first, second] = pair;
            // NF(first ∘ b2) over degree-(m-1) basis
            SparseVec<F> pre;
            if (be2.degree == 0) {
              pre = {{arrow_basis_[static_cast<size_t>(first)], F(1)}};
            } else {
              pre = left_mul(first, b2);
            }
            for (const auto& [bi, ci] : pre) {
              auto it = gen_pos.find(key(bi, second));
              if (it == gen_pos.end()) throw Error("internal", "non-composable relation term");
              SparseVec<F> unit{{it->second.second, F(ci) * F(coeff)}};
              sparse_axpy(row, unit, F(1));
            }
          }
          if (!row.empty()) rows[bk].push_back(std::move(row));
        }
      }
      // reduce each block and extend the basis
      std::vector<int> next;
      for (auto& [bk, gens] : blocks) {
        int ncols = static_cast<int>(gens.size());
        auto rit = rows.find(bk);
        int nrows = rit == rows.end() ? 0 : static_cast<int>(rit->second.size());
        std::vector<int> pivots;
        Mat<F> mat(std::max(nrows, 1), ncols);
        if (nrows) {
          for (int i = 0; i < nrows; ++i) {
            for (const auto& [j, c] : rit->second[static_cast<size_t>(i)]) mat.at(i, j) = c;
          }
          pivots = rref_inplace(mat);
        }
        std::vector<char> is_piv(static_cast<size_t>(ncols), 0);
        for (int c : pivots) is_piv[static_cast<size_t>(c)] = 1;
        // non-pivot generators become basis elements
        std::vector<int> col_to_basis(static_cast<size_t>(ncols), -1);
        for (int c = 0; c < ncols; ++c) {
          if (is_piv[static_cast<size_t>(c)]) continue;
          int idx = static_cast<int>(basis_.size());
          const Gen& g = gens[static_cast<size_t>(c)];
          basis_.push_back({bk.first, bk.second, m, g.b, g.arrow});
          if (m == 1) arrow_basis_[static_cast<size_t>(g.arrow)] = idx;
          col_to_basis[static_cast<size_t>(c)] = idx;
          next.push_back(idx);
          left_nf_[key(g.b, g.arrow)] = {{idx, F(1)}};
        }
        // pivot generators reduce to minus the tail of their row
        for (size_t pr = 0; pr < pivots.size(); ++pr) {
          int pc = pivots[pr];
          SparseVec<F> nf;
          for (int c = pc + 1; c < ncols; ++c) {
            const F& val = mat.at(static_cast<int>(pr), c);
            if (val.is_zero() || is_piv[static_cast<size_t>(c)]) continue;
            nf.push_back({col_to_basis[static_cast<size_t>(c)], F(0) - val});
          }
          std::sort(nf.begin(), nf.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
          const Gen& g = gens[static_cast<size_t>(pc)];
          left_nf_[key(g.b, g.arrow)] = std::move(nf);
        }
      }
      max_degree_ = next.empty() ? m - 1 : m;
      prev2 = std::move(prev);
      prev = std::move(next);
    }

    hom_basis_.assign(static_cast<size_t>(q_.nv) * q_.nv, {});
    for (size_t i = 0; i < basis_.size(); ++i) {
      const BasisElem& b = basis_[i];
      hom_basis_[static_cast<size_t>(b.src) * q_.nv + b.tgt].push_back(static_cast<int>(i));
    }
  }
};

}  // namespace meshct
