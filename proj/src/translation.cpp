#include "meshct/translation.hpp"

#include <sstream>

#include "json.hpp"

namespace meshct {

ZVertex parse_zvertex(const std::string& s) {
  auto us = s.rfind('_');
  if (us == std::string::npos || us == 0 || us + 1 >= s.size())
    throw Error("bad-vertex", "expected <v>_<level>, got: " + s);
  return {std::stoi(s.substr(us + 1)), std::stoi(s.substr(0, us))};
}

TranslationWindow build_window(const DynkinSpec& spec, int i_min, int i_max) {
  if (i_min > i_max) throw Error("empty-range", "window range is empty");
  TranslationWindow w;
  w.spec = spec;
  w.i_min = i_min;
  w.i_max = i_max;
  for (int i = i_min; i <= i_max; ++i) {
    for (int v = 0; v < spec.base_count; ++v) w.vertices.push_back({i, v});
  }
  for (int i = i_min; i <= i_max; ++i) {
    for (size_t a = 0; a < spec.arrows.size(); ++a) {
      auto [s, t] = spec.arrows[a];
      WindowArrow plain{static_cast<int>(a), false, i, {i, s}, {i, t}};
      w.arrows.push_back(plain);
      if (i - 1 >= i_min) {
        WindowArrow prime{static_cast<int>(a), true, i, {i, t}, {i - 1, s}};
        w.arrows.push_back(prime);
      }
    }
  }
  return w;
}

AdmissibilityReport check_admissible(const DynkinSpec& spec, const TranslationWindow& window,
                                     const GroupElement& generator) {
  if (window.vertices.empty()) throw Error("empty-range", "window is empty");
  int height = window.i_max - window.i_min + 1;
  int bound = spec.sigma_order * std::max(height, 1);
  GroupElement g{0, 0};
  for (int n = 1; n <= bound; ++n) {
    g = g.compose(generator);
    if (g.sigma_power % spec.sigma_order == 0 && g.tau_power == 0) continue;  // identity power
    for (const ZVertex& x : window.vertices) {
      if (g.apply(spec, x) == x) return {false, x};
    }
  }
  return {true, std::nullopt};
}

std::vector<ZVertex> auslander_rectangle(const DynkinSpec& spec) {
  if (!spec.figure2)
    throw Error("unsupported-orientation",
                "Auslander rectangle only defined for the symmetric orientations");
  std::vector<ZVertex> out;
  for (int i = 0; i < spec.coxeter_copies; ++i) {
    for (int v = 0; v < spec.base_count; ++v) out.push_back({i, v});
  }
  return out;
}

std::pair<ZVertex, ZVertex> OrbitPresentation::lift(int arrow_idx, int level) const {
  const FoldedArrow& f = arrows[arrow_idx];
  auto [s, t] = spec.arrows[f.base];
  int ss = spec.sigma_pow(s, level);
  int tt = spec.sigma_pow(t, level);
  if (!f.prime) return {{level, ss}, {level, tt}};
  return {{level, tt}, {level - 1, ss}};
}

OrbitPresentation fold(const DynkinSpec& spec) {
  {
    TranslationWindow probe = build_window(spec, 0, 2 * spec.sigma_order);
    AdmissibilityReport rep = check_admissible(spec, probe);
    if (!rep.admissible)
      throw Error("non-admissible-action",
                  "sigma*tau fixes vertex " + rep.witness->name());
  }
  OrbitPresentation p;
  p.spec = spec;
  for (size_t a = 0; a < spec.arrows.size(); ++a) {
    auto [s, t] = spec.arrows[a];
    p.arrows.push_back({static_cast<int>(a), false, s, t, "a" + std::to_string(a) + "+"});
    p.arrows.push_back(
        {static_cast<int>(a), true, t, spec.sigma[s], "a" + std::to_string(a) + "-"});
  }
  // mesh relation at v: sum over arrows alpha: u->v of sigma(alpha)+ after
  // alpha-, plus sum over arrows beta: v->w of beta- after beta+
  for (int v = 0; v < spec.base_count; ++v) {
    MeshRelation rel;
    rel.vertex = v;
    for (size_t a = 0; a < spec.arrows.size(); ++a) {
      auto [s, t] = spec.arrows[a];
      if (t == v) {
        int first = p.arrow_index(static_cast<int>(a), true);
        int second = p.arrow_index(spec.sigma_arrow(static_cast<int>(a)), false);
        rel.terms.push_back({{first, second}, 1});
      }
      if (s == v) {
        int first = p.arrow_index(static_cast<int>(a), false);
        int second = p.arrow_index(static_cast<int>(a), true);
        rel.terms.push_back({{first, second}, 1});
      }
    }
    p.relations.push_back(std::move(rel));
  }
  p.sigma_tilde_vertex = spec.sigma;
  p.sigma_tilde_arrow.resize(p.arrows.size());
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    const FoldedArrow& f = p.arrows[i];
    p.sigma_tilde_arrow[i] = p.arrow_index(spec.sigma_arrow(f.base), f.prime);
  }
  return p;
}

std::string window_dot(const TranslationWindow& w) {
  std::ostringstream os;
  os << "digraph window {\n  rankdir=BT;\n";
  for (const ZVertex& x : w.vertices) os << "  \"" << x.name() << "\";\n";
  for (const WindowArrow& a : w.arrows) {
    os << "  \"" << a.src.name() << "\" -> \"" << a.tgt.name() << "\" [label=\"" << a.name()
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string folded_dot(const OrbitPresentation& p) {
  std::ostringstream os;
  os << "digraph folded {\n";
  for (int v = 0; v < p.spec.base_count; ++v) os << "  \"" << v << "\";\n";
  for (const FoldedArrow& a : p.arrows) {
    os << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [label=\"" << a.id << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string folded_json(const OrbitPresentation& p) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < p.spec.base_count; ++v) j["vertices"].push_back(std::to_string(v));
  j["arrows"] = nlohmann::ordered_json::array();
  for (const FoldedArrow& a : p.arrows) {
    j["arrows"].push_back({{"id", a.id}, {"src", std::to_string(a.src)}, {"tgt", std::to_string(a.tgt)}});
  }
  j["relations"] = nlohmann::ordered_json::array();
  for (const MeshRelation& r : p.relations) {
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    for (const auto& [path, coeff] : r.terms) {
      nlohmann::ordered_json ids = nlohmann::ordered_json::array();
      for (int a : path) ids.push_back(p.arrows[a].id);
      rel.push_back({{"path", ids}, {"coeff", coeff}});
    }
    j["relations"].push_back(rel);
  }
  return j.dump(2) + "\n";
}

}  // namespace meshct
