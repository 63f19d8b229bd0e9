#include "meshct/dynkin.hpp"

#include <algorithm>
#include <cctype>

namespace meshct {

int DynkinSpec::sigma_arrow(int arrow_idx) const {
  auto [s, t] = arrows[arrow_idx];
  std::pair<int, int> img{sigma[s], sigma[t]};
  for (size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i] == img) return static_cast<int>(i);
  }
  throw Error("internal", "sigma does not permute the base arrows");
}

namespace {

// A_{2k-1} with both chains oriented towards the central vertex 0.
// Arrow order: left chain inside-out, then right chain inside-out.
void fill_a_odd(DynkinSpec& d, int k) {
  d.base_count = 2 * k - 1;
  for (int j = 1; j <= k - 1; ++j) {
    int src = 2 * j - 1, tgt = j == 1 ? 0 : 2 * j - 3;
    d.arrows.emplace_back(src, tgt);
  }
  for (int j = 1; j <= k - 1; ++j) {
    int src = 2 * j, tgt = j == 1 ? 0 : 2 * j - 2;
    d.arrows.emplace_back(src, tgt);
  }
}

void fill_d(DynkinSpec& d, int m) {  // D_m on vertices 0..m-1, fork at 0,1
  d.base_count = m;
  d.arrows.emplace_back(0, 2);
  d.arrows.emplace_back(1, 2);
  for (int j = 3; j < m; ++j) d.arrows.emplace_back(j, j - 1);
}

void fill_e6(DynkinSpec& d) {
  d.base_count = 6;
  d.arrows = {{1, 0}, {2, 0}, {3, 1}, {4, 2}, {0, 5}};
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

}  // namespace

DynkinSpec folding_datum(const std::string& tag) {
  if (tag.size() < 2) throw Error("unsupported-type", "type tag too short: " + tag);
  char fam = static_cast<char>(std::tolower(tag[0]));
  int rank = 0;
  for (size_t i = 1; i < tag.size(); ++i) {
    if (!std::isdigit(tag[i])) throw Error("unsupported-type", "bad type tag: " + tag);
    rank = rank * 10 + (tag[i] - '0');
  }

  DynkinSpec d;
  d.tag = std::string(1, fam) + std::to_string(rank);
  d.family = fam;
  d.rank = rank;

  switch (fam) {
    case 'a': {
      if (rank < 1 || rank % 2 == 0)
        throw Error("unsupported-type", "type a needs odd rank (symmetric orientation): " + tag);
      int k = (rank + 1) / 2;
      fill_a_odd(d, k);
      d.sigma = identity_perm(d.base_count);
      d.sigma_order = 1;
      d.coxeter_copies = k;
      break;
    }
    case 'b': {
      if (rank < 2) throw Error("unsupported-type", "type b needs rank >= 2: " + tag);
      int k = rank;
      fill_a_odd(d, k);
      d.sigma = identity_perm(d.base_count);
      for (int j = 1; j <= k - 1; ++j) {
        d.sigma[2 * j - 1] = 2 * j;
        d.sigma[2 * j] = 2 * j - 1;
      }
      d.sigma_order = 2;
      d.coxeter_copies = k;
      break;
    }
    case 'c': {
      if (rank < 3) throw Error("unsupported-type", "type c needs rank >= 3: " + tag);
      fill_d(d, rank + 1);
      d.sigma = identity_perm(d.base_count);
      d.sigma[0] = 1;
      d.sigma[1] = 0;
      d.sigma_order = 2;
      d.coxeter_copies = rank;
      break;
    }
    case 'd': {
      if (rank < 4) throw Error("unsupported-type", "type d needs rank >= 4: " + tag);
      fill_d(d, rank);
      d.sigma = identity_perm(d.base_count);
      d.sigma_order = 1;
      d.coxeter_copies = rank - 1;
      break;
    }
    case 'e': {
      if (rank != 6)
        throw Error("unsupported-type", "only e6 has a symmetric orientation here: " + tag);
      fill_e6(d);
      d.sigma = identity_perm(d.base_count);
      d.sigma_order = 1;
      d.coxeter_copies = 6;
      break;
    }
    case 'f': {
      if (rank != 4) throw Error("unsupported-type", "bad type tag: " + tag);
      fill_e6(d);
      d.sigma = identity_perm(d.base_count);
      d.sigma[1] = 2;
      d.sigma[2] = 1;
      d.sigma[3] = 4;
      d.sigma[4] = 3;
      d.sigma_order = 2;
      d.coxeter_copies = 6;
      break;
    }
    case 'g': {
      if (rank != 2) throw Error("unsupported-type", "bad type tag: " + tag);
      fill_d(d, 4);
      d.sigma = {1, 3, 2, 0};  // (0,1,3)
      d.sigma_order = 3;
      d.coxeter_copies = 3;
      break;
    }
    default:
      throw Error("unsupported-type", "unknown family: " + tag);
  }

  // sigma must permute the arrows and have the stated order
  for (size_t i = 0; i < d.arrows.size(); ++i) (void)d.sigma_arrow(static_cast<int>(i));
  for (int v = 0; v < d.base_count; ++v) {
    if (d.sigma_pow(v, d.sigma_order) != v)
      throw Error("internal", "sigma order mismatch for " + tag);
  }
  if (d.coxeter_copies * static_cast<long>(d.base_count) != base_positive_root_count(d))
    throw Error("internal", "rectangle depth inconsistent with base root count for " + tag);
  return d;
}

long positive_root_count(const std::string& tag) {
  DynkinSpec d = folding_datum(tag);  // validates the tag
  long n = d.rank;
  switch (d.family) {
    case 'a':
      return n * (n + 1) / 2;
    case 'b':
    case 'c':
      return n * n;
    case 'd':
      return n * (n - 1);
    case 'e':
      return 36;
    case 'f':
      return 24;
    case 'g':
      return 6;
  }
  throw Error("unsupported-type", tag);
}

long base_positive_root_count(const DynkinSpec& spec) {
  long n = spec.base_count;
  switch (spec.family) {
    case 'a':
    case 'b':
      return n * (n + 1) / 2;  // base A_n
    case 'c':
    case 'd':
    case 'g':
      return n * (n - 1);  // base D_n
    case 'e':
    case 'f':
      return 36;  // base E_6
  }
  throw Error("unsupported-type", spec.tag);
}

}  // namespace meshct
