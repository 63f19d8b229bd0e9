#pragma once

// Exact integer identity checks tying the Cartan data of End(T) to the folded
// exchange combinatorics: R = C^{-t} integrality, R G = I, the equality of
// principal parts, and (for admissible modules) the transport of G and B
// along a mutation.

#include "meshct/intmatrix.hpp"
#include "meshct/matrix.hpp"

namespace meshct {

struct IdentityReport {
  bool ringel_integral = false;   // C^{-t} exists and is integral
  bool rg_identity = false;       // fold(R) fold(G) = I
  bool principal_equal = false;   // B-principal = R-principal
  bool admissible = false;
  bool checked_g_update = false;
  bool g_update = false;  // G_{T*} = U G_T W
  bool checked_b_update = false;
  bool b_update = false;  // B°_{T*} = mu_k(B°_T)

  bool all_pass() const {
    bool ok = ringel_integral && rg_identity && principal_equal;
    if (checked_g_update) ok = ok && g_update;
    if (checked_b_update) ok = ok && b_update;
    return ok;
  }
};

struct MutationMatrices {
  std::string direction;  // orbit label in the unmutated module
  LabeledIntMatrix ctilde_star;
  LabeledIntMatrix btilde_star;
  OrbitPartitionSpec partition_star;
  std::vector<std::string> nonproj_orbits_star;
};

inline LabeledIntMatrix transpose_labeled(const LabeledIntMatrix& m) {
  LabeledIntMatrix r(m.col_labels, m.row_labels);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.a[j][i] = m.a[i][j];
  return r;
}

// inverse transpose of an integer matrix; nullopt when not integral
inline std::optional<LabeledIntMatrix> inverse_transpose_integral(const LabeledIntMatrix& c) {
  int n = static_cast<int>(c.rows());
  Mat<Rational> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Rational(c.a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  auto inv = inverse(m);
  if (!inv) throw Error("singular-ctilde", "Cartan matrix is singular");
  LabeledIntMatrix r(c.row_labels, c.col_labels);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& x = inv->at(j, i);  // transpose
      if (!x.is_integer()) return std::nullopt;
      r.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = x.to_int64();
    }
  }
  return r;
}

inline IdentityReport cartan_identity_suite(const LabeledIntMatrix& ctilde,
                                            const LabeledIntMatrix& btilde,
                                            const OrbitPartitionSpec& partition,
                                            const std::vector<std::string>& nonproj_orbits,
                                            const MutationMatrices* mut = nullptr) {
  IdentityReport rep;
  auto rtilde = inverse_transpose_integral(ctilde);
  if (!rtilde) return rep;
  rep.ringel_integral = is_gamma_action(*rtilde, partition);
  if (!rep.ringel_integral) return rep;

  LabeledIntMatrix gtilde = transpose_labeled(ctilde);
  LabeledIntMatrix r = fold_matrix(*rtilde, partition);
  LabeledIntMatrix g = fold_matrix(gtilde, partition);
  rep.rg_identity = (r * g == LabeledIntMatrix::identity(r.row_labels));

  LabeledIntMatrix b = fold_matrix(btilde, partition);
  LabeledIntMatrix bp = b.submatrix(nonproj_orbits, nonproj_orbits);
  LabeledIntMatrix rp = r.submatrix(nonproj_orbits, nonproj_orbits);
  rep.principal_equal = (bp == rp);

  rep.admissible = is_admissible(btilde, partition);
  if (mut && rep.admissible) {
    auto [u, w] = uw_factors(b, mut->direction);
    LabeledIntMatrix gstar = fold_matrix(transpose_labeled(mut->ctilde_star), mut->partition_star);
    LabeledIntMatrix ugw = u * g * w;
    rep.checked_g_update = true;
    rep.g_update = (gstar.a == ugw.a);  // entrywise; the mutated orbit is relabeled
    LabeledIntMatrix bstar = fold_matrix(mut->btilde_star, mut->partition_star);
    LabeledIntMatrix bpstar = bstar.submatrix(mut->nonproj_orbits_star, mut->nonproj_orbits_star);
    LabeledIntMatrix mutated = fz_mutate(bp, mut->direction);
    rep.checked_b_update = true;
    rep.b_update = (bpstar.a == mutated.a);
  }
  return rep;
}

}  // namespace meshct
