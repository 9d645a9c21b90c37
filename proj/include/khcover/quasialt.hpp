#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "khcover/bigint.hpp"
#include "khcover/diagram.hpp"
#include "khcover/goeritz.hpp"
#include "khcover/khovanov.hpp"

namespace khcover {

// ---------------------------------------------------------------------------
// Greedy Reidemeister I / II simplification

/// A crossing with a kink: two cyclically adjacent slots carry the same arc.
inline std::optional<int> find_r1(const LinkDiagram& d) {
  for (int x = 0; x < d.size(); ++x) {
    const auto& t = d.crossings()[static_cast<std::size_t>(x)].arcs;
    for (int p = 0; p < 4; ++p)
      if (t[static_cast<std::size_t>(p)] == t[static_cast<std::size_t>((p + 1) % 4)]) return x;
  }
  return std::nullopt;
}

/// A bigon between two distinct crossings whose bounding strand passes over
/// (or under) at both ends.
inline std::optional<std::pair<int, int>> find_r2(const LinkDiagram& d) {
  for (const auto& f : faces(d)) {
    if (f.corners.size() != 2) continue;
    const int x = f.corners[0].crossing, y = f.corners[1].crossing;
    if (x == y) continue;
    const auto& e = d.ends(f.arcs[0]);
    if (e[0].crossing == e[1].crossing) continue;
    if (e[0].pos % 2 == e[1].pos % 2) return std::make_pair(x, y);
  }
  return std::nullopt;
}

/// Applies crossing-removing R1 and R2 moves until none applies.
inline LinkDiagram simplify(const LinkDiagram& d) {
  LinkDiagram cur = d;
  for (;;) {
    if (auto x = find_r1(cur)) {
      cur = rebuild(cur, {{*x, kPairThrough}});
      continue;
    }
    if (auto xy = find_r2(cur)) {
      cur = rebuild(cur, {{xy->first, kPairThrough}, {xy->second, kPairThrough}});
      continue;
    }
    return cur;
  }
}

// ---------------------------------------------------------------------------
// Certificates

struct QANode {
  std::string pd;
  /// The simplified diagram this node stands for.
  LinkDiagram diagram;
  BigInt det;
  /// Resolved crossing (index into the simplified diagram), -1 at a leaf.
  int crossing = -1;
  std::string leaf_reason;
  std::array<std::shared_ptr<const QANode>, 2> children;

  bool is_leaf() const { return crossing < 0; }
};

struct QABudget {
  std::size_t max_nodes = 200000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static QABudget seconds(double s) {
    QABudget b;
    b.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
    return b;
  }
};

struct QAResult {
  /// Null when the search was inconclusive (never a proof of non-membership).
  std::shared_ptr<const QANode> certificate;
  BigInt root_det;
  std::size_t nodes_explored = 0;
  bool budget_exhausted = false;
  std::string diagnostics;

  bool certified() const { return certificate != nullptr; }
};

namespace detail {

struct QASearch {
  QABudget budget;
  std::size_t nodes = 0;
  bool exhausted = false;
  std::map<std::string, std::shared_ptr<const QANode>> found;
  std::map<std::string, bool> failed;

  bool out_of_budget() {
    if (nodes >= budget.max_nodes) return exhausted = true;
    if (budget.deadline && std::chrono::steady_clock::now() > *budget.deadline) return exhausted = true;
    return false;
  }

  std::shared_ptr<const QANode> run(const LinkDiagram& input) {
    const LinkDiagram d = simplify(input);
    const std::string key = to_pd(d.with_mark(std::nullopt));
    if (auto it = found.find(key); it != found.end()) return it->second;
    if (failed.count(key)) return nullptr;
    if (out_of_budget()) return nullptr;
    ++nodes;

    auto node = std::make_shared<QANode>();
    node->pd = key;
    node->diagram = d;
    node->det = link_determinant(d);
    if (d.size() == 0 && d.loops().size() == 1) {
      node->leaf_reason = "unknot diagram";
      return found[key] = node;
    }
    if (node->det == 1 && is_connected(d) && is_alternating(d)) {
      node->leaf_reason = "connected alternating with determinant 1";
      return found[key] = node;
    }
    if (node->det == 0) {
      failed[key] = true;
      return nullptr;
    }

    struct Option {
      BigInt balance;
      int x;
      LinkDiagram r0, r1;
    };
    std::vector<Option> options;
    for (int x = 0; x < d.size(); ++x) {
      LinkDiagram r0 = smooth_crossing(d, x, 0), r1 = smooth_crossing(d, x, 1);
      const BigInt d0 = link_determinant(r0), d1 = link_determinant(r1);
      if (d0 == 0 || d1 == 0 || d0 + d1 != node->det) continue;
      options.push_back({abs(d0 - d1), x, std::move(r0), std::move(r1)});
    }
    std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) { return a.balance < b.balance; });
    for (auto& o : options) {
      auto c0 = run(o.r0);
      if (!c0) {
        if (exhausted) return nullptr;
        continue;
      }
      auto c1 = run(o.r1);
      if (!c1) {
        if (exhausted) return nullptr;
        continue;
      }
      node->crossing = o.x;
      node->children = {c0, c1};
      return found[key] = node;
    }
    if (!exhausted) failed[key] = true;
    return nullptr;
  }
};

}  // namespace detail

/// Searches resolutions of the given projection for a quasi-alternating
/// certificate. An inconclusive search returns no certificate.
inline QAResult qa_certify(const LinkDiagram& d, QABudget budget = {}) {
  detail::QASearch s;
  s.budget = budget;
  QAResult r;
  r.root_det = link_determinant(d);
  r.certificate = s.run(d);
  r.nodes_explored = s.nodes;
  r.budget_exhausted = s.exhausted;
  if (!r.certificate)
    r.diagnostics = s.exhausted ? "budget exhausted after " + std::to_string(s.nodes) + " nodes"
                                : "no certificate among resolutions of this projection";
  return r;
}

/// Re-checks every node with determinants recomputed from the Jones
/// polynomial at q = i (independent of the Goeritz route).
inline bool validate_certificate(const QANode& node) {
  const LinkDiagram& d = node.diagram;
  if (to_pd(d.with_mark(std::nullopt)) != node.pd) return false;
  if (d.size() > kOracleMaxCrossings) return false;
  const BigInt det = jones_determinant(d);
  if (det != node.det) return false;
  if (node.is_leaf()) {
    if (d.size() == 0 && d.loops().size() == 1) return true;
    return det == 1 && is_connected(d) && is_alternating(d);
  }
  if (!node.children[0] || !node.children[1]) return false;
  for (int bit = 0; bit < 2; ++bit) {
    const LinkDiagram child = simplify(smooth_crossing(d, node.crossing, bit));
    if (to_pd(child.with_mark(std::nullopt)) != node.children[static_cast<std::size_t>(bit)]->pd) return false;
  }
  const BigInt d0 = node.children[0]->det, d1 = node.children[1]->det;
  if (d0 == 0 || d1 == 0 || d0 + d1 != det) return false;
  return validate_certificate(*node.children[0]) && validate_certificate(*node.children[1]);
}

}  // namespace khcover
