#pragma once

// JSON / CSV / text renderers for the library's result types.

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "khcover/bigint.hpp"
#include "khcover/conventions.hpp"
#include "khcover/diagram.hpp"
#include "khcover/dinv.hpp"
#include "khcover/goeritz.hpp"
#include "khcover/homalg.hpp"
#include "khcover/khovanov.hpp"
#include "khcover/quasialt.hpp"

namespace khcover::io {

using nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return to_string(v);
}

inline json big_list(const std::vector<BigInt>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(big(x));
  return a;
}

inline json matrix(const MatZ& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

inline json to_json(const LinkDiagram& d) {
  json j;
  j["name"] = d.name();
  json xs = json::array();
  for (const auto& c : d.crossings()) xs.push_back({{"arcs", c.arcs}, {"sign", c.sign}});
  j["crossings"] = std::move(xs);
  j["loops"] = d.loops();
  j["mark"] = d.mark() ? json(*d.mark()) : json(nullptr);
  // Each component as its arcs in the direction of travel.
  j["orientation"] = d.components();
  j["pd"] = to_pd(d);
  return j;
}

inline json to_json(const KhTable& t) {
  json g = json::array();
  for (auto& [mq, r] : t.ranks) g.push_back({mq.first, mq.second, r});
  return {{"gradings", std::move(g)},
          {"total_rank", t.total_rank},
          {"euler_poly", graded_euler(t).to_string()},
          {"reduced", t.reduced},
          {"conventions_version", conventions::conventions_version()}};
}

/// Rows m, columns q; blank cells are zero.
inline std::string to_text(const KhTable& t) {
  if (t.ranks.empty()) return "(zero)\n";
  int m0 = t.ranks.begin()->first.first, m1 = m0, q0 = t.ranks.begin()->first.second, q1 = q0;
  for (auto& [mq, r] : t.ranks) {
    m0 = std::min(m0, mq.first);
    m1 = std::max(m1, mq.first);
    q0 = std::min(q0, mq.second);
    q1 = std::max(q1, mq.second);
  }
  std::ostringstream os;
  os << "q\\m";
  for (int m = m0; m <= m1; ++m) os << '\t' << m;
  os << '\n';
  for (int q = q1; q >= q0; --q) {
    bool any = false;
    for (int m = m0; m <= m1; ++m) any = any || t.rank(m, q) > 0;
    if (!any) continue;
    os << q;
    for (int m = m0; m <= m1; ++m) {
      os << '\t';
      if (auto r = t.rank(m, q)) os << r;
    }
    os << '\n';
  }
  return os.str();
}

inline json to_json(const PageTable& t) {
  json pages = json::array();
  for (int r = 1; r <= t.pages(); ++r)
    pages.push_back({{"r", r}, {"ranks_by_level", t.ranks[static_cast<std::size_t>(r - 1)]}, {"total", t.total(r)}});
  return {{"pages", std::move(pages)}, {"stable_page", t.stable_page}, {"total_homology_rank", t.total_homology_rank}};
}

inline json to_json(const DTable& t) {
  json classes = json::array();
  for (auto& c : t.classes)
    classes.push_back({{"label", big_list(c.label)},
                       {"K", big_list(c.K)},
                       {"max_square", to_string(c.max_square)},
                       {"d", to_string(c.d)}});
  return {{"b", t.b},
          {"det", big(t.det)},
          {"invariant_factors", big_list(t.invariant_factors)},
          {"group", big_list(t.group)},
          {"classes", std::move(classes)},
          {"conventions_version", conventions::conventions_version()}};
}

/// One row per class: label coordinates (first two; missing ones are 0), then d.
inline std::string to_csv(const DTable& t, const std::string& name = {}) {
  std::ostringstream os;
  for (auto& c : t.classes) {
    if (!name.empty()) os << name << ',';
    os << (c.label.size() > 0 ? to_string(c.label[0]) : "0") << ',';
    os << (c.label.size() > 1 ? to_string(c.label[1]) : "0");
    for (std::size_t k = 2; k < c.label.size(); ++k) os << ';' << to_string(c.label[k]);
    os << ',' << to_string(c.d) << '\n';
  }
  return os.str();
}

/// Grid with rows indexed by the first label coordinate and columns by the second.
inline std::string to_text(const DTable& t) {
  std::ostringstream os;
  os << "b = " << t.b << ", det = " << to_string(t.det) << ", group =";
  if (t.group.empty()) os << " 0";
  for (std::size_t k = 0; k < t.group.size(); ++k) os << (k ? " + " : " ") << "Z/" << to_string(t.group[k]);
  os << '\n';
  if (t.group.size() <= 2) {
    const std::size_t cols = t.group.size() == 2 ? static_cast<std::size_t>(t.group[1]) : 1;
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      os << to_string(t.classes[i].d) << ((i + 1) % cols == 0 ? '\n' : '\t');
    }
  } else {
    os << to_csv(t);
  }
  return os.str();
}

inline json to_json(const QANode& n) {
  json j{{"pd", n.pd}, {"det", big(n.det)}};
  if (n.is_leaf()) {
    j["leaf"] = n.leaf_reason;
  } else {
    j["crossing"] = n.crossing;
    j["children"] = {to_json(*n.children[0]), to_json(*n.children[1])};
  }
  return j;
}

inline json to_json(const QAResult& r) {
  json j{{"certified", r.certified()},
         {"root_det", big(r.root_det)},
         {"nodes_explored", r.nodes_explored},
         {"budget_exhausted", r.budget_exhausted},
         {"conventions_version", conventions::conventions_version()}};
  if (r.certificate)
    j["certificate"] = to_json(*r.certificate);
  else
    j["diagnostics"] = r.diagnostics;
  return j;
}

/// Indented proof tree.
inline void render_tree(const QANode& n, std::ostringstream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  os << pad << "det " << to_string(n.det) << "  " << (n.pd.empty() ? "(empty)" : n.pd);
  if (n.is_leaf()) {
    os << "  [" << n.leaf_reason << "]\n";
    return;
  }
  os << "  resolve crossing " << n.crossing << ": " << to_string(n.children[0]->det) << " + "
     << to_string(n.children[1]->det) << '\n';
  render_tree(*n.children[0], os, depth + 1);
  render_tree(*n.children[1], os, depth + 1);
}

inline std::string to_text(const QAResult& r) {
  std::ostringstream os;
  if (!r.certificate) {
    os << "unknown (" << r.diagnostics << ")\n";
    return os.str();
  }
  os << "quasi-alternating certificate\n";
  render_tree(*r.certificate, os, 1);
  return os.str();
}

inline json to_json(const BlackGraph& g, const GoeritzLattice& lat, const BigInt& det) {
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"black_graph", {{"vertices", g.num_vertices}, {"edges", std::move(edges)}}},
          {"tree", lat.tree_edges},
          {"extra_edges", lat.extra_edges},
          {"Q", matrix(lat.Q)},
          {"det", big(det)}};
}

/// Q as comma-separated rows.
inline std::string to_csv(const MatZ& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace khcover::io
