#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "meshct/covering.hpp"
#include "meshct/endalgebra.hpp"
#include "meshct/identity_suite.hpp"
#include "meshct/serialize.hpp"

using namespace meshct;

TEST_CASE("covering oracle agrees on all b3 start pairs") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  CoveringOracle<Rational> oracle(ctx.spec);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      const SummandLabel& li = t.labels[static_cast<size_t>(i)];
      const SummandLabel& lj = t.labels[static_cast<size_t>(j)];
      ZVertex x{li.level, ctx.spec.sigma_pow(li.vertex, li.level)};
      ZVertex y{lj.level, ctx.spec.sigma_pow(lj.vertex, lj.level)};
      CHECK(oracle.covering_hom_dim(x, y) ==
            hom_dim(t.summands[static_cast<size_t>(j)], t.summands[static_cast<size_t>(i)]));
    }
  }
  // End of the simple summand is one dimensional
  ZVertex s{2, ctx.spec.sigma_pow(3, 2)};
  CHECK(oracle.covering_hom_dim(s, s) == 1);
}

TEST_CASE("order-three twist: g2 mutation and backward twist") {
  TiltingContext<Rational> ctx("g2", 1);
  CTModule<Rational> t = start_module(ctx, true);
  // non-projective orbits at level 1: {0,1,3}_1 (size 3) and 2_1 (fixed)
  int o3 = t.find_orbit("{0,1,3}_1");
  REQUIRE(o3 >= 0);
  auto [t1, rec] = mutate(ctx, t, o3, true);
  CHECK(rec.y_labels.size() == 3);
  // backward sequence ends at gamma^{-1} X = gamma^2 X
  SummandLabel x0 = rec.x_labels[0];
  CHECK(rec.back_end_label == ctx.gamma_label(x0, 2).str());

  // triple mutation at the same orbit data returns to the start summand-wise
  auto [t2, rec2] = mutate(ctx, t1, t1.find_orbit("{0,1,3}_1@1"), false);
  std::mt19937_64 rng(13);
  bool back = true;
  for (int i = 0; i < t.size(); ++i) {
    bool found = false;
    for (int j = 0; j < t.size() && !found; ++j) {
      if (t2.summands[static_cast<size_t>(i)].dims == t.summands[static_cast<size_t>(j)].dims &&
          iso_test(t2.summands[static_cast<size_t>(i)], t.summands[static_cast<size_t>(j)], rng))
        found = true;
    }
    back = back && found;
  }
  CHECK(back);

  // the fixed-point orbit mutates as well
  int o1 = t.find_orbit("2_1");
  REQUIRE(o1 >= 0);
  auto [tf, recf] = mutate(ctx, t, o1, true);
  CHECK(recf.y_labels.size() == 1);

  // exchange pair pattern: dim Ext^1(Y~, gamma^i X~) is 1 exactly at i = 0
  const std::vector<int>& orbit = t.orbits[static_cast<size_t>(o3)];
  const Rep<Rational>& ytil = t1.summands[static_cast<size_t>(orbit[0])];
  for (int i = 0; i < 3; ++i) {
    const Rep<Rational>& xi = t.summands[static_cast<size_t>(orbit[static_cast<size_t>(i)])];
    CHECK(ext_dim(ctx.lambda, 1, ytil, xi, ctx.projectives) == (i == 0 ? 1 : 0));
  }
}

TEST_CASE("mutation at a projective orbit is rejected") {
  TiltingContext<Rational> ctx("b2", 1);
  CTModule<Rational> t = start_module(ctx, false);
  int o = t.find_orbit("0_0");
  REQUIRE(o >= 0);
  CHECK_THROWS_WITH_AS(mutate(ctx, t, o, false), doctest::Contains("mutation-at-projective"),
                       Error);
}

TEST_CASE("mutation result is independent of the approximation choices") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  int o = t.find_orbit("{1,2}_1");
  std::mt19937_64 s1(17), s2(9001);
  auto [ta, ra] = mutate(ctx, t, o, false, &s1);
  auto [tb, rb] = mutate(ctx, t, o, false, &s2);
  std::mt19937_64 rng(4);
  int pos = t.orbits[static_cast<size_t>(o)][0];
  CHECK(iso_test(ta.summands[static_cast<size_t>(pos)], tb.summands[static_cast<size_t>(pos)], rng));
}

TEST_CASE("orbit count is preserved along mutation") {
  TiltingContext<Rational> ctx("c3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  size_t orbits = t.orbits.size();
  std::mt19937_64 rng(77);
  CTModule<Rational> cur = t;
  for (int step = 0; step < 4; ++step) {
    std::vector<int> nonproj;
    for (size_t o = 0; o < cur.orbits.size(); ++o)
      if (!cur.orbit_projective(static_cast<int>(o))) nonproj.push_back(static_cast<int>(o));
    auto [next, rec] = mutate(ctx, cur, nonproj[rng() % nonproj.size()], false);
    cur = std::move(next);
    CHECK(cur.orbits.size() == orbits);
    CHECK(static_cast<long>(cur.orbits.size()) == positive_root_count("c3"));
  }
}

TEST_CASE("representation json round trip") {
  TiltingContext<Rational> ctx("b3", 1);
  Rep<Rational> p1 = ctx.projectives[1];
  auto j = rep_to_json(p1);
  Rep<Rational> back = rep_from_json<Rational>(ctx.lambda.quiver(), j);
  CHECK(back.dims == p1.dims);
  for (size_t a = 0; a < p1.mats.size(); ++a) CHECK(back.mats[a] == p1.mats[a]);
  // twisted module has rational-entry-free matrices too, but go through a
  // genuinely fractional one: scale a hom basis element
  std::vector<Morphism<Rational>> ends = hom_space(p1, p1);
  Rep<Rational> m = p1;
  if (!ends.empty()) {
    m.mats[0] = m.mats[0] * Rational(BigInt(1), BigInt(2));
    auto j2 = rep_to_json(m);
    Rep<Rational> b2 = rep_from_json<Rational>(ctx.lambda.quiver(), j2);
    CHECK(b2.mats[0] == m.mats[0]);
  }
}

TEST_CASE("sum of pushdown dimensions over a sigma-orbit is sigma-invariant") {
  for (const char* tag : {"b3", "g2"}) {
    DynkinSpec spec = folding_datum(tag);
    HammockCache cache(spec);
    for (int level = 0; level < spec.coxeter_copies; ++level) {
      std::vector<char> seen(static_cast<size_t>(spec.base_count), 0);
      for (int v = 0; v < spec.base_count; ++v) {
        if (seen[static_cast<size_t>(v)]) continue;
        std::vector<long> total(static_cast<size_t>(spec.base_count), 0);
        int w = v;
        do {
          seen[static_cast<size_t>(w)] = 1;
          std::vector<long> d =
              cache.pushdown_dim_vector({level, spec.sigma_pow(w, level)});
          for (int u = 0; u < spec.base_count; ++u) total[static_cast<size_t>(u)] += d[static_cast<size_t>(u)];
          w = spec.sigma[static_cast<size_t>(w)];
        } while (w != v);
        // the accumulated vector is sigma-invariant
        for (int u = 0; u < spec.base_count; ++u) {
          CHECK(total[static_cast<size_t>(u)] ==
                total[static_cast<size_t>(spec.sigma[static_cast<size_t>(u)])]);
        }
      }
    }
  }
}

TEST_CASE("error paths of the combinatorial layer") {
  DynkinSpec b3 = folding_datum("b3");
  CHECK_THROWS_WITH_AS(build_window(b3, 3, 1), doctest::Contains("empty-range"), Error);
  // fold on a handcrafted non-figure spec still works; rectangle does not
  DynkinSpec fake = b3;
  fake.figure2 = false;
  CHECK_THROWS_WITH_AS(auslander_rectangle(fake), doctest::Contains("unsupported-orientation"),
                       Error);
  // non-gamma-acted matrix cannot be folded
  std::vector<std::string> l{"a", "b"};
  LabeledIntMatrix m(l, l);
  m.a = {{1, 0}, {0, 2}};
  auto p = OrbitPartitionSpec::from_orbits({{"a", "b"}});
  CHECK_THROWS_WITH_AS(fold_matrix(m, p), doctest::Contains("not-gamma-action"), Error);
  // growth cap triggers on a quiver whose path algebra is infinite dimensional
  Quiver loop;
  loop.nv = 1;
  loop.arrows.push_back({0, 0, "a"});
  CHECK_THROWS_WITH_AS(PathAlgebra<Rational>(loop, {}, 5),
                       doctest::Contains("non-terminating-growth"), Error);
}

TEST_CASE("exchange middle multiplicities match the positive exchange column") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  CTAnalysis<Rational> an = analyze(ctx, t);
  int o = t.find_orbit("{1,2}_1");
  auto [tstar, rec] = mutate(ctx, t, o, false);
  // column of btilde at the representative X~ = 1_1: positive entries give
  // the middle term multiplicities
  int xcol = an.btilde.col_index("1_1");
  std::map<std::string, int> expect;
  for (size_t i = 0; i < an.btilde.rows(); ++i) {
    long v = an.btilde.a[i][static_cast<size_t>(xcol)];
    if (v > 0) expect[an.btilde.row_labels[i]] = static_cast<int>(v);
  }
  std::map<std::string, int> got;
  for (const auto& [label, copies] : rec.middle_parts) got[label] = copies;
  CHECK(got == expect);
}

TEST_CASE("socle exchange of a projective orbit stays in add(T)") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  for (const char* name : {"0_0", "{1,2}_0"}) {
    int o = t.find_orbit(name);
    REQUIRE(o >= 0);
    ProjectiveExchange<Rational> pe = projective_socle_exchange(ctx, t, o);
    CHECK(pe.zbar.total_dim() > 0);
    CHECK(!pe.zbar_parts.empty());
  }
  // non-projective orbits are rejected here
  CHECK_THROWS_AS(projective_socle_exchange(ctx, t, t.find_orbit("{1,2}_1")), Error);
}

TEST_CASE("folded quiver is anti-isomorphic to itself up to the twist") {
  for (const char* tag : {"b3", "c3", "g2", "a5"}) {
    OrbitPresentation p = fold(folding_datum(tag));
    // the exchange (b,+) -> (b,-), (b,-) -> (sigma b,+) reverses arrows with
    // a sigma on the source, and squares to sigma-tilde
    auto image = [&](int a) {
      const FoldedArrow& f = p.arrows[static_cast<size_t>(a)];
      return f.prime ? p.arrow_index(p.spec.sigma_arrow(f.base), false)
                     : p.arrow_index(f.base, true);
    };
    std::vector<char> hit(p.arrows.size(), 0);
    for (size_t a = 0; a < p.arrows.size(); ++a) {
      int m = image(static_cast<int>(a));
      hit[static_cast<size_t>(m)] = 1;
      CHECK(p.arrows[static_cast<size_t>(m)].src == p.arrows[a].tgt);
      CHECK(p.arrows[static_cast<size_t>(m)].tgt == p.spec.sigma[static_cast<size_t>(p.arrows[a].src)]);
      CHECK(image(m) == p.sigma_tilde_arrow[a]);
    }
    for (char h : hit) CHECK(h == 1);
  }
}

TEST_CASE("socle inclusion hom between neighbouring summands") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  auto find = [&](const std::string& l) {
    for (int i = 0; i < t.size(); ++i)
      if (t.labels[static_cast<size_t>(i)].str() == l) return i;
    return -1;
  };
  // T(3_2) = socle of T(3_1): exactly one map up to scalars
  CHECK(hom_dim(t.summands[static_cast<size_t>(find("3_2"))],
                t.summands[static_cast<size_t>(find("3_1"))]) == 1);
}

TEST_CASE("ext with representing cocycles") {
  TiltingContext<Rational> ctx("b3", 1);
  CTModule<Rational> t = start_module(ctx, false);
  int o = t.find_orbit("{1,2}_1");
  auto [tstar, rec] = mutate(ctx, t, o, false);
  const Rep<Rational>& x1 = t.summands[static_cast<size_t>(t.orbits[static_cast<size_t>(o)][0])];
  const Rep<Rational>& y1 = tstar.summands[static_cast<size_t>(t.orbits[static_cast<size_t>(o)][0])];
  ExtData<Rational> e = ext_with_reps(ctx.lambda, 1, y1, x1, ctx.projectives);
  CHECK(e.dim == 1);
  REQUIRE(e.cocycles.size() == 1);
  CHECK(!e.cocycles[0].is_zero());
  CHECK(e.dim == ext_dim(ctx.lambda, 1, y1, x1, ctx.projectives));
  // second syzygy route: Ext^2(Y, -) via the same machinery stays consistent
  ExtData<Rational> e2 = ext_with_reps(ctx.lambda, 2, y1, x1, ctx.projectives);
  CHECK(e2.dim == ext_dim(ctx.lambda, 2, y1, x1, ctx.projectives));
}

TEST_CASE("path algebra products close on the basis and respect idempotents") {
  OrbitPresentation p = fold(folding_datum("b3"));
  PathAlgebra<Rational> a = build_mesh_algebra<Rational>(p);
  // e_tgt * b = b and b * e_src = b
  for (int b = 0; b < a.dim(); ++b) {
    const auto& be = a.basis()[static_cast<size_t>(b)];
    SparseVec<Rational> left = a.product(a.idempotent(be.tgt), b);
    REQUIRE(left.size() == 1);
    CHECK(left[0].first == b);
    CHECK(left[0].second.is_one());
    SparseVec<Rational> right = a.product(b, a.idempotent(be.src));
    REQUIRE(right.size() == 1);
    CHECK(right[0].first == b);
    // orthogonality: other idempotents kill b
    for (int v = 0; v < a.num_vertices(); ++v) {
      if (v == be.tgt) continue;
      CHECK(a.product(a.idempotent(v), b).empty());
    }
  }
  // associativity on sampled triples, staying inside the basis span
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    int x = static_cast<int>(rng() % a.dim());
    int y = static_cast<int>(rng() % a.dim());
    int z = static_cast<int>(rng() % a.dim());
    // (x*y)*z vs x*(y*z), all expanded over the basis
    SparseVec<Rational> xy = a.product(x, y);
    SparseVec<Rational> lhs;
    for (const auto& [i, c] : xy) sparse_axpy(lhs, a.product(i, z), c);
    SparseVec<Rational> yz = a.product(y, z);
    SparseVec<Rational> rhs;
    for (const auto& [i, c] : yz) sparse_axpy(rhs, a.product(x, i), c);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("simply-laced start modules (trivial folding)") {
  // preprojective algebras: every orbit is a singleton
  TiltingContext<Rational> ctx("a3", 1);
  CTModule<Rational> t = start_module(ctx, true);
  CHECK(t.size() == 6);
  CHECK(static_cast<long>(t.orbits.size()) == positive_root_count("a3"));
  for (const auto& orb : t.orbits) CHECK(orb.size() == 1);
  // one mutation and back
  int o = -1;
  for (size_t i = 0; i < t.orbits.size(); ++i)
    if (!t.orbit_projective(static_cast<int>(i))) {
      o = static_cast<int>(i);
      break;
    }
  auto [t1, r1] = mutate(ctx, t, o, true);
  auto [t2, r2] = mutate(ctx, t1, o, true);
  std::mt19937_64 rng(1);
  // for a trivial twist the double mutation restores the summand on the nose
  int pos = t.orbits[static_cast<size_t>(o)][0];
  CHECK(iso_test(t2.summands[static_cast<size_t>(pos)], t.summands[static_cast<size_t>(pos)], rng));
}

TEST_CASE("larger ranks: b4 and c4 orbit counts") {
  {
    TiltingContext<Rational> ctx("b4", 1);
    CTModule<Rational> t = start_module(ctx, false);
    CHECK(t.size() == 28);
    CHECK(static_cast<long>(t.orbits.size()) == 16);
  }
  {
    TiltingContext<Rational> ctx("c4", 1);
    CTModule<Rational> t = start_module(ctx, false);
    CHECK(t.size() == 20);
    CHECK(static_cast<long>(t.orbits.size()) == 16);
  }
}

TEST_CASE("d4 and e6 start modules (simply laced, larger base)") {
  {
    TiltingContext<Rational> ctx("d4", 1);
    CTModule<Rational> t = start_module(ctx, true);
    CHECK(t.size() == 12);
    CHECK(static_cast<long>(t.orbits.size()) == 12);
  }
  {
    TiltingContext<Rational> ctx("e6", 1);
    CTModule<Rational> t = start_module(ctx, false);
    CHECK(t.size() == 36);
    CHECK(static_cast<long>(t.orbits.size()) == 36);
  }
}

TEST_CASE("b3 mutation walk logs admissibility and keeps ungated identities") {
  TiltingContext<Rational> ctx("b3", 7);
  CTModule<Rational> start = start_module(ctx, false);
  std::mt19937_64 rng(2718);
  int admissible_steps = 0, steps = 0;
  for (int s = 0; s < 5; ++s) {
    CTModule<Rational> cur = start;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) {
      std::vector<int> nonproj;
      for (size_t o = 0; o < cur.orbits.size(); ++o)
        if (!cur.orbit_projective(static_cast<int>(o))) nonproj.push_back(static_cast<int>(o));
      int dir = nonproj[rng() % nonproj.size()];
      CTAnalysis<Rational> before = analyze(ctx, cur);
      auto [next, rec] = mutate(ctx, cur, dir, false);
      CTAnalysis<Rational> after = analyze(ctx, next);
      MutationMatrices mm{before.orbit_labels[static_cast<size_t>(dir)], after.ctilde,
                          after.btilde, after.partition, after.nonproj_orbits};
      IdentityReport idr = cartan_identity_suite(before.ctilde, before.btilde, before.partition,
                                                 before.nonproj_orbits, &mm);
      // ungated identities hold at every module, admissible or not
      CHECK(idr.ringel_integral);
      CHECK(idr.rg_identity);
      CHECK(idr.principal_equal);
      // gated identities hold whenever they are checked
      if (idr.checked_g_update) CHECK(idr.g_update);
      if (idr.checked_b_update) CHECK(idr.b_update);
      ++steps;
      if (idr.admissible) ++admissible_steps;
      cur = std::move(next);
    }
  }
  CHECK(steps > 0);
  CHECK(admissible_steps > 0);  // at least the start-module steps are admissible
}
