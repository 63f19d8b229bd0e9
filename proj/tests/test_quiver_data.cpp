#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "meshct/dynkin.hpp"
#include "meshct/hammock.hpp"
#include "meshct/intmatrix.hpp"
#include "meshct/translation.hpp"

#include <random>
#include <set>

using namespace meshct;

TEST_CASE("folding data for the supported types") {
  DynkinSpec b3 = folding_datum("b3");
  CHECK(b3.base_count == 5);
  CHECK(b3.arrows == std::vector<std::pair<int, int>>{{1, 0}, {3, 1}, {2, 0}, {4, 2}});
  CHECK(b3.sigma == std::vector<int>{0, 2, 1, 4, 3});
  CHECK(b3.sigma_order == 2);
  CHECK(b3.coxeter_copies == 3);

  DynkinSpec g2 = folding_datum("g2");
  CHECK(g2.base_count == 4);
  CHECK(g2.sigma == std::vector<int>{1, 3, 2, 0});
  CHECK(g2.sigma_order == 3);
  CHECK(g2.sigma_pow(0, 3) == 0);

  DynkinSpec a5 = folding_datum("a5");
  CHECK(a5.sigma_is_identity());
  CHECK(a5.base_count == 5);

  CHECK_THROWS_AS(folding_datum("e7"), Error);
  CHECK_THROWS_AS(folding_datum("a4"), Error);
  CHECK_THROWS_AS(folding_datum("c2"), Error);
  CHECK_THROWS_AS(folding_datum("z9"), Error);
}

TEST_CASE("positive root counts") {
  CHECK(positive_root_count("b3") == 9);
  CHECK(positive_root_count("g2") == 6);
  CHECK(positive_root_count("a5") == 15);
  CHECK(positive_root_count("b2") == 4);
  CHECK(positive_root_count("c3") == 9);
  CHECK(positive_root_count("f4") == 24);
  CHECK(positive_root_count("d4") == 12);
  CHECK(positive_root_count("e6") == 36);
}

TEST_CASE("rectangle depth times base size equals base root count") {
  for (const char* tag : {"a1", "a3", "a5", "b2", "b3", "b4", "c3", "c4", "d4", "d5", "e6",
                          "f4", "g2"}) {
    DynkinSpec d = folding_datum(tag);
    CHECK(static_cast<long>(d.coxeter_copies) * d.base_count == base_positive_root_count(d));
    // sigma^order = id
    for (int v = 0; v < d.base_count; ++v) CHECK(d.sigma_pow(v, d.sigma_order) == v);
  }
}

TEST_CASE("windows of the translation quiver") {
  DynkinSpec a5 = folding_datum("a5");
  TranslationWindow w = build_window(a5, 0, 2);
  CHECK(w.vertices.size() == 15);
  // arrows fully inside: per level 4 plain everywhere, 4 primes above the floor
  CHECK(w.arrows.size() == 3 * 4 + 2 * 4);
  CHECK_THROWS_AS(build_window(a5, 2, 1), Error);

  // alpha: 1->0 at level 1 gives a prime arrow (1,0) -> (0,1)
  bool found = false;
  for (const WindowArrow& a : w.arrows) {
    if (a.prime && a.level == 1 && a.src == ZVertex{1, 0} && a.tgt == ZVertex{0, 1}) found = true;
  }
  CHECK(found);

  for (int v = 0; v < 5; ++v) {
    CHECK(TranslationWindow::tau({0, v}) == ZVertex{1, v});
  }
}

TEST_CASE("admissibility of subgroup actions") {
  DynkinSpec b3 = folding_datum("b3");
  TranslationWindow w = build_window(b3, 0, 4);
  CHECK(check_admissible(b3, w).admissible);
  // sigma alone fixes the central vertex
  AdmissibilityReport rep = check_admissible(b3, w, GroupElement{1, 0});
  CHECK_FALSE(rep.admissible);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->v == 0);
  // pure shift
  DynkinSpec a5 = folding_datum("a5");
  CHECK(check_admissible(a5, build_window(a5, 0, 4), GroupElement{0, 1}).admissible);
}

TEST_CASE("auslander rectangles") {
  CHECK(auslander_rectangle(folding_datum("b3")).size() == 15);
  CHECK(auslander_rectangle(folding_datum("f4")).size() == 36);
  CHECK(auslander_rectangle(folding_datum("g2")).size() == 12);
}

TEST_CASE("folded presentation of b3") {
  OrbitPresentation p = fold(folding_datum("b3"));
  CHECK(p.arrows.size() == 8);
  CHECK(p.relations.size() == 5);
  // base arrow 3->1 contributes a'-arrow 1 -> sigma(3) = 4
  bool found = false;
  for (const FoldedArrow& a : p.arrows) {
    if (a.prime && a.src == 1 && a.tgt == 4) found = true;
  }
  CHECK(found);
  CHECK(p.sigma_tilde_vertex == std::vector<int>{0, 2, 1, 4, 3});
  // each relation: one +1 term per arrow touching the vertex
  for (const MeshRelation& r : p.relations) {
    for (const auto& [path, coeff] : r.terms) {
      CHECK(coeff == 1);
      CHECK(path.size() == 2);
      // the path runs from v to sigma(v)
      CHECK(p.arrows[path[0]].src == r.vertex);
      CHECK(p.arrows[path[0]].tgt == p.arrows[path[1]].src);
      CHECK(p.arrows[path[1]].tgt == p.spec.sigma[r.vertex]);
    }
  }
  // sigma_tilde maps relation terms to relation terms at the image vertex
  for (const MeshRelation& r : p.relations) {
    const MeshRelation& ir = p.relations[static_cast<size_t>(p.sigma_tilde_vertex[r.vertex])];
    std::set<std::vector<int>> image, target;
    for (const auto& [path, c] : r.terms)
      image.insert({p.sigma_tilde_arrow[path[0]], p.sigma_tilde_arrow[path[1]]});
    for (const auto& [path, c] : ir.terms) target.insert(path);
    CHECK(image == target);
  }
}

TEST_CASE("folding the identity gives the double quiver") {
  // A2 with trivial sigma: preprojective presentation shape a*a / aa*
  DynkinSpec a3 = folding_datum("a3");
  OrbitPresentation p = fold(a3);
  CHECK(p.arrows.size() == 2 * a3.arrows.size());
  for (const MeshRelation& r : p.relations) {
    for (const auto& [path, coeff] : r.terms) {
      CHECK(p.arrows[path[1]].tgt == r.vertex);  // sigma = id
      CHECK(coeff == 1);
    }
  }
}

TEST_CASE("orbit map is constant on sigma-tau orbits") {
  for (const char* tag : {"b3", "c3", "g2"}) {
    DynkinSpec d = folding_datum(tag);
    OrbitPresentation p = fold(d);
    GroupElement g = GroupElement::sigma_tau();
    for (const ZVertex& x : auslander_rectangle(d)) {
      CHECK(p.orbit_of(x) == p.orbit_of(g.apply(d, x)));
    }
  }
}

TEST_CASE("knitting hammocks") {
  DynkinSpec a5 = folding_datum("a5");
  HammockCache cache(a5);
  ZVertex x{2, 3};
  CHECK(cache.hom_dim(x, x) == 1);
  CHECK(cache.hom_dim(x, {3, 3}) == 0);  // z above x in level order
  CHECK(cache.hom_dim(x, {2, 1}) == 1);

  // total hom into the sink of the rectangle
  long total = 0;
  for (const ZVertex& y : auslander_rectangle(a5)) total += cache.hom_dim(y, {0, 0});
  CHECK(total == 9);
}

TEST_CASE("pushdown dimension vectors for b3") {
  DynkinSpec b3 = folding_datum("b3");
  HammockCache cache(b3);
  // orbit-and-level names: the summand x_i comes from the fiber vertex
  // (i, sigma^i(x)) of the rectangle
  auto fiber = [&](int x, int i) { return ZVertex{i, b3.sigma_pow(x, i)}; };
  CHECK(cache.pushdown_dim_vector(fiber(0, 0)) == std::vector<long>{3, 2, 2, 1, 1});
  CHECK(cache.pushdown_dim_vector(fiber(3, 2)) == std::vector<long>{0, 0, 0, 1, 0});
  CHECK(cache.pushdown_dim_vector(fiber(1, 1)) == std::vector<long>{1, 2, 1, 2, 0});
  CHECK(cache.pushdown_dim_vector(fiber(3, 0)) == std::vector<long>{1, 0, 2, 1, 1});
  CHECK(cache.pushdown_dim_vector(fiber(1, 0)) == std::vector<long>{2, 2, 2, 2, 0});
  CHECK(cache.pushdown_dim_vector(fiber(0, 2)) == std::vector<long>{1, 1, 1, 1, 1});
  // restriction consistency
  ZVertex x{1, 2};
  auto iv = cache.injective_dim_vector(x);
  for (const auto& [y, d] : iv) CHECK(d == cache.hom_dim(y, x));
}

TEST_CASE("labeled matrix fold / mutate / factor") {
  std::vector<std::string> labels{"0_1", "1_1", "2_1"};
  LabeledIntMatrix m(labels, labels);
  // gamma swaps 1_1, 2_1; fill a gamma-acted matrix
  m.a = {{0, 1, 1}, {-1, 0, 2}, {-1, 2, 0}};
  auto p = OrbitPartitionSpec::from_orbits({{"0_1"}, {"1_1", "2_1"}});
  CHECK(is_gamma_action(m, p));
  LabeledIntMatrix f = fold_matrix(m, p);
  CHECK(f.row_labels == std::vector<std::string>{"0_1", "{1,2}_1"});
  CHECK(f.a == std::vector<std::vector<long>>{{0, 1}, {-2, 2}});

  // trivial partition folds to itself
  auto triv = OrbitPartitionSpec::from_orbits({{"0_1"}, {"1_1"}, {"2_1"}});
  CHECK(fold_matrix(m, triv).a == m.a);

  // non gamma-acted matrix detected
  m.a[1][0] = 5;
  CHECK_FALSE(is_gamma_action(m, p));
}

TEST_CASE("fz mutation involution and WAU factorization on random matrices") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    LabeledIntMatrix m(labels, labels);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) m.a[i][j] = static_cast<long>(rng() % 11) - 5;
    const std::string& k = labels[rng() % n];
    LabeledIntMatrix once = fz_mutate(m, k);
    CHECK(fz_mutate(once, k) == m);
    auto [u, w] = uw_factors(m, k);
    CHECK(w * m * u == once);
    CHECK(u * u == LabeledIntMatrix::identity(labels));
    CHECK(w * w == LabeledIntMatrix::identity(labels));
  }
  // zero matrix fixed point
  std::vector<std::string> l2{"a", "b"};
  LabeledIntMatrix z(l2, l2);
  CHECK(fz_mutate(z, "a") == z);
}

TEST_CASE("skew symmetrizable detection") {
  std::vector<std::string> l{"a", "b"};
  LabeledIntMatrix skew(l, l);
  skew.a = {{0, 2}, {-2, 0}};
  auto d = skew_symmetrizer(skew);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<long>{1, 1});

  LabeledIntMatrix bad(l, l);
  bad.a = {{0, 1}, {1, 0}};
  CHECK_FALSE(skew_symmetrizer(bad).has_value());
}

TEST_CASE("csv round trip with quoted orbit labels") {
  std::vector<std::string> l{"0_1", "{1,2}_1"};
  LabeledIntMatrix m(l, l);
  m.a = {{0, -1}, {2, 0}};
  std::string csv = m.to_csv();
  CHECK(LabeledIntMatrix::from_csv(csv) == m);
  CHECK(csv == ",0_1,\"{1,2}_1\"\n0_1,0,-1\n\"{1,2}_1\",2,0\n");
}

TEST_CASE("u and w transpose relation for skew-symmetric input") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    LabeledIntMatrix m(labels, labels);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long v = static_cast<long>(rng() % 9) - 4;
        m.a[i][j] = v;
        m.a[j][i] = -v;
      }
    auto [u, w] = uw_factors(m, labels[rng() % n]);
    // U = W^t for skew-symmetric matrices
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(u.a[i][j] == w.a[j][i]);
  }
}
