#pragma once

// JSON (de)serialization of representations and cluster tilting modules.
// Matrix entries are written as exact strings ("p/q" over the rationals,
// residues over the prime field).

#include "json.hpp"
#include "meshct/tilting.hpp"

namespace meshct {

inline Rational field_from_string_impl(const std::string& s, Rational*) {
  return Rational::from_string(s);
}
inline Fp field_from_string_impl(const std::string& s, Fp*) {
  return Fp(static_cast<int64_t>(std::stoll(s)));
}

template <class F>
F field_from_string(const std::string& s) {
  return field_from_string_impl(s, static_cast<F*>(nullptr));
}

template <class F>
nlohmann::ordered_json rep_to_json(const Rep<F>& m) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  for (int v = 0; v < m.q->nv; ++v) dims[m.q->vertex_name(v)] = m.dims[static_cast<size_t>(v)];
  j["dims"] = dims;
  nlohmann::ordered_json arrows = nlohmann::ordered_json::object();
  for (size_t a = 0; a < m.q->arrows.size(); ++a) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const Mat<F>& mat = m.mats[a];
    for (int i = 0; i < mat.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < mat.cols(); ++c) row.push_back(mat.at(i, c).to_string());
      rows.push_back(row);
    }
    arrows[m.q->arrows[a].id] = rows;
  }
  j["arrows"] = arrows;
  return j;
}

template <class F>
Rep<F> rep_from_json(const Quiver& q, const nlohmann::json& j) {
  Rep<F> m = rep_zero<F>(q);
  for (int v = 0; v < q.nv; ++v) {
    m.dims[static_cast<size_t>(v)] = j.at("dims").value(q.vertex_name(v), 0);
  }
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    int rows = m.dims[static_cast<size_t>(q.arrows[a].tgt)];
    int cols = m.dims[static_cast<size_t>(q.arrows[a].src)];
    Mat<F> mat(rows, cols);
    if (j.at("arrows").contains(q.arrows[a].id)) {
      const auto& rj = j.at("arrows").at(q.arrows[a].id);
      for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c)
          mat.at(i, c) = field_from_string<F>(rj.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<std::string>());
    }
    m.mats[a] = std::move(mat);
  }
  return m;
}

template <class F>
std::string loewy_string(const Rep<F>& m) {
  std::string out;
  for (const auto& row : loewy_rows(m)) {
    if (!out.empty()) out += " / ";
    bool first = true;
    for (int v : row) {
      if (!first) out += " ";
      out += m.q->vertex_name(v);
      first = false;
    }
  }
  return out;
}

template <class F>
nlohmann::ordered_json ct_to_json(const TiltingContext<F>& ctx, const CTModule<F>& t,
                                  const std::string& field_name) {
  nlohmann::ordered_json j;
  j["meta"] = {{"type", ctx.spec.tag}, {"seed", ctx.seed}, {"field", field_name}};
  nlohmann::ordered_json summands = nlohmann::ordered_json::array();
  for (int i = 0; i < t.size(); ++i) {
    nlohmann::ordered_json s;
    s["label"] = t.labels[static_cast<size_t>(i)].str();
    s["projective"] = t.projective_flag[static_cast<size_t>(i)] != 0;
    s["loewy"] = loewy_string(t.summands[static_cast<size_t>(i)]);
    s["module"] = rep_to_json(t.summands[static_cast<size_t>(i)]);
    summands.push_back(s);
  }
  j["summands"] = summands;
  nlohmann::ordered_json orbits = nlohmann::ordered_json::array();
  for (size_t o = 0; o < t.orbits.size(); ++o) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (int p : t.orbits[o]) members.push_back(t.labels[static_cast<size_t>(p)].str());
    orbits.push_back({{"label", t.orbit_name(static_cast<int>(o))}, {"summands", members}});
  }
  j["orbits"] = orbits;
  return j;
}

}  // namespace meshct
