#pragma once

// Static Dynkin data: the symmetric orientations of A_{2k-1}, D_{n+1}, E_6
// (and D_4 for the order-3 case), their diagram automorphisms, positive root
// counts and the depth of the level rectangle the Auslander region fills.
//
// Vertex labelling, A_{2k-1}:   2k-3 -> ... -> 3 -> 1 -> 0 <- 2 <- 4 ... <- 2k-2
//                   D_{n+1}:    0 -> 2, 1 -> 2, 2 <- 3 <- ... <- n
//                   E_6:        4 -> 2 -> 0 <- 1 <- 3, 0 -> 5

#include <string>
#include <utility>
#include <vector>

#include "meshct/error.hpp"

namespace meshct {

struct DynkinSpec {
  std::string tag;      // CLI name: a5, b3, c3, d4, e6, f4, g2
  char family = 'a';    // folded family
  int rank = 0;         // folded rank
  int base_count = 0;   // number of vertices of the base diagram
  std::vector<std::pair<int, int>> arrows;  // base arrows (src, tgt)
  std::vector<int> sigma;                   // diagram automorphism on vertices
  int sigma_order = 1;
  int coxeter_copies = 0;  // levels of the Auslander rectangle
  bool figure2 = true;

  int sigma_pow(int v, int power) const {
    power %= sigma_order;
    if (power < 0) power += sigma_order;
    while (power--) v = sigma[v];
    return v;
  }

  int sigma_inv(int v) const { return sigma_pow(v, sigma_order - 1); }

  // arrow image under sigma; arrows map bijectively to arrows
  int sigma_arrow(int arrow_idx) const;

  bool sigma_is_identity() const {
    for (int v = 0; v < base_count; ++v)
      if (sigma[v] != v) return false;
    return true;
  }
};

// Parse a type tag and return the folding datum. Throws Error
// "unsupported-type" outside the supported list.
DynkinSpec folding_datum(const std::string& tag);

// Number of positive roots of the *folded* root system (the orbit count of
// every cluster tilting module of the associated mesh algebra).
long positive_root_count(const std::string& tag);

// Positive roots of the simply-laced base diagram (consistency check:
// coxeter_copies * base_count must equal this).
long base_positive_root_count(const DynkinSpec& spec);

}  // namespace meshct
