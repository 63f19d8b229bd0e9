#include "meshct/intmatrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "meshct/rational.hpp"

namespace meshct {

namespace {

int find_label(const std::vector<std::string>& labels, const std::string& l) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<int>(i);
  return -1;
}

std::string csv_quote(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int LabeledIntMatrix::row_index(const std::string& label) const {
  return find_label(row_labels, label);
}
int LabeledIntMatrix::col_index(const std::string& label) const {
  return find_label(col_labels, label);
}

LabeledIntMatrix operator*(const LabeledIntMatrix& x, const LabeledIntMatrix& y) {
  if (x.col_labels != y.row_labels) throw Error("label-mismatch", "product labels disagree");
  LabeledIntMatrix r(x.row_labels, y.col_labels);
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t k = 0; k < x.cols(); ++k) {
      if (!x.a[i][k]) continue;
      for (size_t j = 0; j < y.cols(); ++j) r.a[i][j] += x.a[i][k] * y.a[k][j];
    }
  return r;
}

LabeledIntMatrix LabeledIntMatrix::submatrix(const std::vector<std::string>& rows,
                                             const std::vector<std::string>& cols) const {
  LabeledIntMatrix r(rows, cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    int ri = row_index(rows[i]);
    if (ri < 0) throw Error("label-mismatch", "unknown row label " + rows[i]);
    for (size_t j = 0; j < cols.size(); ++j) {
      int cj = col_index(cols[j]);
      if (cj < 0) throw Error("label-mismatch", "unknown column label " + cols[j]);
      r.a[i][j] = a[static_cast<size_t>(ri)][static_cast<size_t>(cj)];
    }
  }
  return r;
}

std::string LabeledIntMatrix::to_csv() const {
  std::ostringstream os;
  for (const std::string& c : col_labels) os << "," << csv_quote(c);
  os << "\n";
  for (size_t i = 0; i < rows(); ++i) {
    os << csv_quote(row_labels[i]);
    for (size_t j = 0; j < cols(); ++j) os << "," << a[i][j];
    os << "\n";
  }
  return os.str();
}

LabeledIntMatrix LabeledIntMatrix::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error("bad-csv", "empty matrix file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> head = csv_split(line);
  if (head.empty() || !head[0].empty()) throw Error("bad-csv", "first header cell must be empty");
  LabeledIntMatrix m;
  m.col_labels.assign(head.begin() + 1, head.end());
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = csv_split(line);
    if (cells.size() != m.col_labels.size() + 1)
      throw Error("bad-csv", "row width mismatch at " + cells.front());
    m.row_labels.push_back(cells[0]);
    std::vector<long> row;
    for (size_t j = 1; j < cells.size(); ++j) row.push_back(std::stol(cells[j]));
    m.a.push_back(std::move(row));
  }
  return m;
}

std::string LabeledIntMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["row_labels"] = row_labels;
  j["col_labels"] = col_labels;
  j["entries"] = a;
  return j.dump(2) + "\n";
}

OrbitPartitionSpec OrbitPartitionSpec::from_orbits(std::vector<std::vector<std::string>> orbits) {
  OrbitPartitionSpec p;
  p.orbits = std::move(orbits);
  for (size_t o = 0; o < p.orbits.size(); ++o) {
    const auto& orb = p.orbits[o];
    if (orb.empty()) throw Error("bad-partition", "empty orbit");
    for (size_t i = 0; i < orb.size(); ++i) {
      if (p.orbit_idx_.count(orb[i])) throw Error("bad-partition", "label repeated: " + orb[i]);
      p.orbit_idx_[orb[i]] = static_cast<int>(o);
      p.next_[orb[i]] = orb[(i + 1) % orb.size()];
    }
  }
  return p;
}

std::vector<std::string> OrbitPartitionSpec::all_labels() const {
  std::vector<std::string> out;
  for (const auto& orb : orbits) out.insert(out.end(), orb.begin(), orb.end());
  return out;
}

std::vector<std::string> OrbitPartitionSpec::orbit_labels() const {
  std::vector<std::string> out;
  for (const auto& orb : orbits) out.push_back(make_orbit_label(orb));
  return out;
}

const std::string& OrbitPartitionSpec::gamma(const std::string& label) const {
  auto it = next_.find(label);
  if (it == next_.end()) throw Error("label-mismatch", "label not in partition: " + label);
  return it->second;
}

int OrbitPartitionSpec::orbit_of(const std::string& label) const {
  auto it = orbit_idx_.find(label);
  if (it == orbit_idx_.end()) throw Error("label-mismatch", "label not in partition: " + label);
  return it->second;
}

std::string OrbitPartitionSpec::to_json() const {
  nlohmann::ordered_json j;
  j["orbits"] = orbits;
  return j.dump(2) + "\n";
}

OrbitPartitionSpec OrbitPartitionSpec::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<std::vector<std::string>> orbits;
  for (const auto& orb : j.at("orbits")) {
    orbits.push_back(orb.get<std::vector<std::string>>());
  }
  return from_orbits(std::move(orbits));
}

std::string make_orbit_label(const std::vector<std::string>& members) {
  if (members.size() == 1) return members[0];
  // factor out a common "_suffix" when all members share one
  auto split = [](const std::string& s) -> std::pair<std::string, std::string> {
    auto us = s.find('_');
    if (us == std::string::npos) return {s, ""};
    return {s.substr(0, us), s.substr(us)};
  };
  std::string suffix = split(members[0]).second;
  bool common = !suffix.empty();
  for (const auto& m : members)
    if (split(m).second != suffix) common = false;
  std::string out = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += common ? split(members[i]).first : members[i];
  }
  out += "}";
  if (common) out += suffix;
  return out;
}

bool is_gamma_action(const LabeledIntMatrix& m, const OrbitPartitionSpec& p) {
  std::vector<std::string> labels = p.all_labels();
  std::sort(labels.begin(), labels.end());
  std::vector<std::string> rows = m.row_labels;
  std::sort(rows.begin(), rows.end());
  if (!m.square_labeled() || rows != labels)
    throw Error("label-mismatch", "matrix labels do not match the partition");
  for (size_t i = 0; i < m.rows(); ++i) {
    int gi = m.row_index(p.gamma(m.row_labels[i]));
    for (size_t j = 0; j < m.cols(); ++j) {
      int gj = m.col_index(p.gamma(m.col_labels[j]));
      if (m.at(static_cast<size_t>(gi), static_cast<size_t>(gj)) != m.at(i, j)) return false;
    }
  }
  return true;
}

LabeledIntMatrix fold_matrix(const LabeledIntMatrix& m, const OrbitPartitionSpec& p) {
  if (!is_gamma_action(m, p)) throw Error("not-gamma-action", "gamma does not act on this matrix");
  std::vector<std::string> olabels = p.orbit_labels();
  LabeledIntMatrix r(olabels, olabels);
  for (size_t oi = 0; oi < p.orbits.size(); ++oi) {
    for (size_t oj = 0; oj < p.orbits.size(); ++oj) {
      // entry = sum over the row orbit at a fixed column representative;
      // gamma-invariance makes it representative-independent (checked)
      long val = 0;
      bool first = true;
      for (const std::string& rep : p.orbits[oj]) {
        long acc = 0;
        int cj = m.col_index(rep);
        for (const std::string& rl : p.orbits[oi]) {
          acc += m.at(static_cast<size_t>(m.row_index(rl)), static_cast<size_t>(cj));
        }
        if (first) {
          val = acc;
          first = false;
        } else if (acc != val) {
          throw Error("not-gamma-action", "fold entry depends on the representative");
        }
      }
      r.a[oi][oj] = val;
    }
  }
  return r;
}

LabeledIntMatrix fz_mutate(const LabeledIntMatrix& m, const std::string& k) {
  if (!m.square_labeled()) throw Error("label-mismatch", "mutation needs matching labels");
  int ki = m.row_index(k);
  if (ki < 0) throw Error("label-mismatch", "unknown direction label " + k);
  size_t n = m.rows();
  size_t ku = static_cast<size_t>(ki);
  if (m.at(ku, ku) != 0)
    throw Error("nonzero-diagonal", "mutation direction has a nonzero diagonal entry");
  LabeledIntMatrix r = m;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == ku || j == ku) {
        r.a[i][j] = -m.a[i][j];
      } else {
        long prod = std::labs(m.a[i][ku]) * m.a[ku][j] + m.a[i][ku] * std::labs(m.a[ku][j]);
        r.a[i][j] = m.a[i][j] + prod / 2;  // numerator is always even
      }
    }
  }
  return r;
}

std::pair<LabeledIntMatrix, LabeledIntMatrix> uw_factors(const LabeledIntMatrix& m,
                                                         const std::string& k) {
  if (!m.square_labeled()) throw Error("label-mismatch", "factorization needs matching labels");
  int ki = m.row_index(k);
  if (ki < 0) throw Error("label-mismatch", "unknown direction label " + k);
  size_t n = m.rows();
  size_t ku = static_cast<size_t>(ki);
  if (m.at(ku, ku) != 0)
    throw Error("nonzero-diagonal", "mutation direction has a nonzero diagonal entry");
  LabeledIntMatrix u = LabeledIntMatrix::identity(m.row_labels);
  LabeledIntMatrix w = LabeledIntMatrix::identity(m.row_labels);
  u.a[ku][ku] = -1;
  w.a[ku][ku] = -1;
  for (size_t j = 0; j < n; ++j) {
    if (j != ku && m.a[ku][j] <= 0) u.a[ku][j] += std::labs(m.a[ku][j]);
  }
  for (size_t i = 0; i < n; ++i) {
    if (i != ku && m.a[i][ku] >= 0) w.a[i][ku] += std::labs(m.a[i][ku]);
  }
  return {u, w};
}

bool is_admissible(const LabeledIntMatrix& m, const OrbitPartitionSpec& p) {
  if (!is_gamma_action(m, p)) return false;
  for (size_t i = 0; i < m.rows(); ++i) {
    for (const auto& orb : p.orbits) {
      bool pos = false, neg = false;
      for (const std::string& l : orb) {
        long v = m.at(i, static_cast<size_t>(m.col_index(l)));
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (pos && neg) return false;
    }
  }
  return true;
}

std::optional<std::vector<long>> skew_symmetrizer(const LabeledIntMatrix& b) {
  if (!b.square_labeled() && b.row_labels.size() != b.col_labels.size()) return std::nullopt;
  size_t n = b.rows();
  for (size_t i = 0; i < n; ++i)
    if (b.at(i, i) != 0) return std::nullopt;
  // propagate d_j = -d_i * b_ij / b_ji along nonzero entries
  std::vector<Rational> d(n);
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    d[s] = Rational(1);
    std::vector<size_t> stack{s};
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < n; ++j) {
        long bij = b.at(i, j), bji = b.at(j, i);
        if (bij == 0 && bji == 0) continue;
        if (bij == 0 || bji == 0) return std::nullopt;  // not sign-skew-symmetric
        if (bij * bji > 0) return std::nullopt;
        Rational dj = d[i] * Rational(-bij) / Rational(bji);
        if (comp[j] < 0) {
          comp[j] = ncomp;
          d[j] = dj;
          stack.push_back(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    ++ncomp;
  }
  // scale each component to coprime positive integers
  std::vector<long> out(n, 0);
  for (int c = 0; c < ncomp; ++c) {
    BigInt l(1);
    for (size_t i = 0; i < n; ++i)
      if (comp[i] == c) l = l / BigInt::gcd(l, d[i].den()) * d[i].den();
    BigInt g(0);
    std::vector<BigInt> scaled(n);
    for (size_t i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      scaled[i] = d[i].num() * (l / d[i].den());
      g = BigInt::gcd(g, scaled[i]);
    }
    for (size_t i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      long v = (scaled[i] / g).to_int64();
      if (v <= 0) return std::nullopt;
      out[i] = v;
    }
  }
  return out;
}

}  // namespace meshct
