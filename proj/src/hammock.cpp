#include "meshct/hammock.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace meshct {

namespace {

std::vector<int> topo_order(const DynkinSpec& spec) {
  int n = spec.base_count;
  std::vector<int> indeg(n, 0);
  for (auto [s, t] : spec.arrows) indeg[t]++, (void)s;
  std::vector<int> order;
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (!indeg[v]) queue.push_back(v);
  std::sort(queue.begin(), queue.end());
  while (!queue.empty()) {
    int v = queue.front();
    queue.erase(queue.begin());
    order.push_back(v);
    for (size_t a = 0; a < spec.arrows.size(); ++a) {
      auto [s, t] = spec.arrows[a];
      if (s == v && --indeg[t] == 0) queue.push_back(t);
    }
    std::sort(queue.begin(), queue.end());
  }
  if (static_cast<int>(order.size()) != n) throw Error("internal", "base quiver has a cycle");
  return order;
}

}  // namespace

HammockCache::HammockCache(const DynkinSpec& spec) : spec_(spec), topo_(topo_order(spec)) {}

const HammockTable& HammockCache::table(const ZVertex& x) {
  auto it = memo_.find(x);
  if (it != memo_.end()) return it->second;

  int cap_levels = 4 * std::max(spec_.coxeter_copies, 1);
  HammockTable t;
  t.source = x;
  t.level_hi = x.level;
  t.level_lo = x.level - cap_levels;
  int n = spec_.base_count;
  t.values.assign(static_cast<size_t>(cap_levels + 1), std::vector<long>(n, 0));

  auto val = [&](const ZVertex& z) -> long { return t.at(z); };
  auto setval = [&](const ZVertex& z, long v) {
    t.values[static_cast<size_t>(t.level_hi - z.level)][static_cast<size_t>(z.v)] = v;
  };

  for (int i = x.level; i >= t.level_lo; --i) {
    for (int v : topo_) {
      ZVertex z{i, v};
      if (z == x) {
        setval(z, 1);
        continue;
      }
      long in = 0;
      for (auto [s, tt] : spec_.arrows) {
        if (tt == v) in += val({i, s});      // alpha_i : (i,s) -> (i,v)
        if (s == v) in += val({i + 1, tt});  // alpha'_{i+1} : (i+1,tt) -> (i,v)
      }
      long h = in - val({i + 1, v});  // minus h(tau z)
      setval(z, std::max(0l, h));
    }
  }
  // the hammock must have died out before the cap
  for (int v = 0; v < n; ++v) {
    if (t.values.back()[static_cast<size_t>(v)] != 0)
      throw Error("hammock-cap", "knitting did not terminate within 4*copies levels");
  }
  return memo_.emplace(x, std::move(t)).first->second;
}

long HammockCache::hom_dim(const ZVertex& x, const ZVertex& z) { return table(x).at(z); }

std::map<ZVertex, long> HammockCache::injective_dim_vector(const ZVertex& x) {
  if (x.level < 0 || x.level >= spec_.coxeter_copies)
    throw Error("vertex-outside-rectangle", "vertex " + x.name() + " not in the Auslander region");
  std::map<ZVertex, long> out;
  for (const ZVertex& y : auslander_rectangle(spec_)) {
    long d = hom_dim(y, x);
    if (d) out[y] = d;
  }
  return out;
}

std::vector<long> HammockCache::pushdown_dim_vector(const ZVertex& x) {
  std::vector<long> dims(spec_.base_count, 0);
  for (int i = 0; i < spec_.coxeter_copies; ++i) {
    for (int v = 0; v < spec_.base_count; ++v) {
      // fiber of folded vertex v at level i is (i, sigma^i(v))
      dims[v] += hom_dim({i, spec_.sigma_pow(v, i)}, x);
    }
  }
  return dims;
}

// public naming is by orbit and level: the fiber vertex of folded vertex v
// at level i prints as v_i
static std::string orbit_level_name(const DynkinSpec& spec, const ZVertex& z) {
  return ZVertex{z.level, spec.sigma_pow(z.v, -z.level)}.name();
}

std::string hammock_text(const HammockTable& t, const DynkinSpec& spec) {
  std::ostringstream os;
  os << "hammock of " << orbit_level_name(spec, t.source) << "\n";
  os << "level";
  for (int v = 0; v < spec.base_count; ++v) os << "\tv" << v;
  os << "\n";
  for (int i = t.level_hi; i >= t.level_lo; --i) {
    bool all_zero = true;
    for (int v = 0; v < spec.base_count; ++v)
      if (t.at({i, spec.sigma_pow(v, i)})) all_zero = false;
    if (all_zero && i != t.level_hi) break;
    os << i;
    // column v reports the fiber of the folded vertex v at this level
    for (int v = 0; v < spec.base_count; ++v) os << "\t" << t.at({i, spec.sigma_pow(v, i)});
    os << "\n";
  }
  return os.str();
}

std::string hammock_json(const HammockTable& t, const DynkinSpec& spec) {
  nlohmann::ordered_json j;
  j["source"] = orbit_level_name(spec, t.source);
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (int i = t.level_hi; i >= t.level_lo; --i) {
    for (int v = 0; v < static_cast<int>(t.values[0].size()); ++v) {
      long d = t.at({i, v});
      if (d) vals[orbit_level_name(spec, {i, v})] = d;
    }
  }
  j["values"] = vals;
  return j.dump(2) + "\n";
}

}  // namespace meshct
