#pragma once

// Labeled integer matrices and the folded Fomin-Zelevinsky layer: gamma
// actions, quotient (folded) matrices, FZ mutation, the U/W factorization,
// admissibility and skew-symmetrizability.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meshct/error.hpp"

namespace meshct {

struct LabeledIntMatrix {
  std::vector<std::string> row_labels, col_labels;
  std::vector<std::vector<long>> a;

  LabeledIntMatrix() = default;
  LabeledIntMatrix(std::vector<std::string> rows, std::vector<std::string> cols)
      : row_labels(std::move(rows)),
        col_labels(std::move(cols)),
        a(row_labels.size(), std::vector<long>(col_labels.size(), 0)) {}

  static LabeledIntMatrix identity(const std::vector<std::string>& labels) {
    LabeledIntMatrix m(labels, labels);
    for (size_t i = 0; i < labels.size(); ++i) m.a[i][i] = 1;
    return m;
  }

  long& at(size_t i, size_t j) { return a[i][j]; }
  long at(size_t i, size_t j) const { return a[i][j]; }
  size_t rows() const { return row_labels.size(); }
  size_t cols() const { return col_labels.size(); }
  bool square_labeled() const { return row_labels == col_labels; }

  int row_index(const std::string& label) const;
  int col_index(const std::string& label) const;

  friend LabeledIntMatrix operator*(const LabeledIntMatrix& x, const LabeledIntMatrix& y);
  friend bool operator==(const LabeledIntMatrix& x, const LabeledIntMatrix& y) {
    return x.row_labels == y.row_labels && x.col_labels == y.col_labels && x.a == y.a;
  }

  LabeledIntMatrix submatrix(const std::vector<std::string>& rows,
                             const std::vector<std::string>& cols) const;

  std::string to_csv() const;
  static LabeledIntMatrix from_csv(const std::string& text);
  std::string to_json() const;
};

// Partition of the labels into ordered gamma-orbits; gamma-hat advances each
// orbit cyclically.
struct OrbitPartitionSpec {
  std::vector<std::vector<std::string>> orbits;

  static OrbitPartitionSpec from_orbits(std::vector<std::vector<std::string>> orbits);

  std::vector<std::string> all_labels() const;
  std::vector<std::string> orbit_labels() const;
  const std::string& gamma(const std::string& label) const;
  int orbit_of(const std::string& label) const;

  std::string to_json() const;
  static OrbitPartitionSpec from_json(const std::string& text);

 private:
  std::map<std::string, std::string> next_;
  std::map<std::string, int> orbit_idx_;
};

std::string make_orbit_label(const std::vector<std::string>& members);

bool is_gamma_action(const LabeledIntMatrix& m, const OrbitPartitionSpec& p);

LabeledIntMatrix fold_matrix(const LabeledIntMatrix& m, const OrbitPartitionSpec& p);

LabeledIntMatrix fz_mutate(const LabeledIntMatrix& m, const std::string& k);

std::pair<LabeledIntMatrix, LabeledIntMatrix> uw_factors(const LabeledIntMatrix& m,
                                                         const std::string& k);

// Weak sign coherence of every (row, column-orbit) block.
bool is_admissible(const LabeledIntMatrix& m, const OrbitPartitionSpec& p);

// Positive integer diagonal D with D*B skew-symmetric, canonically scaled
// (each connected component reduced to gcd 1); nullopt if none exists.
std::optional<std::vector<long>> skew_symmetrizer(const LabeledIntMatrix& b);

}  // namespace meshct
