#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "khcover/conventions.hpp"
#include "khcover/errors.hpp"

namespace khcover {

/// One end of an arc: the slot `pos` (0..3) of crossing `crossing`.
struct Dart {
  int crossing = -1;
  int pos = -1;
  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

struct Crossing {
  /// Arc labels counterclockwise from the incoming under-strand.
  std::array<int, 4> arcs{};
  /// +1 or -1, derived from the orientation.
  int sign = 0;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

class LinkDiagram;

namespace detail {
LinkDiagram build_diagram(std::vector<std::array<int, 4>> tuples, std::vector<int> loops, std::optional<int> mark,
                          std::string name, const std::map<int, Dart>& preferred_heads);
}

/// A validated, oriented planar diagram. Immutable once built.
class LinkDiagram {
 public:
  LinkDiagram() = default;

  const std::vector<Crossing>& crossings() const { return crossings_; }
  /// Number of crossings.
  int size() const { return static_cast<int>(crossings_.size()); }
  int num_arcs() const { return num_arcs_; }
  /// Labels of crossingless unknotted components.
  const std::vector<int>& loops() const { return loops_; }
  bool is_loop(int arc) const { return is_loop_[static_cast<std::size_t>(arc)]; }
  std::optional<int> mark() const { return mark_; }
  const std::string& name() const { return name_; }

  /// Arc labels of each component in traversal order; ordered by least label.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int component_of(int arc) const { return component_of_[static_cast<std::size_t>(arc)]; }

  /// Both ends of a non-loop arc, in input order.
  const std::array<Dart, 2>& ends(int arc) const { return ends_[static_cast<std::size_t>(arc)]; }
  /// The end the orientation points into / out of.
  Dart head(int arc) const { return heads_[static_cast<std::size_t>(arc)]; }
  Dart tail(int arc) const {
    const auto& e = ends(arc);
    return e[0] == head(arc) ? e[1] : e[0];
  }
  Dart other_end(Dart d) const {
    const auto& e = ends(arc_at(d));
    return e[0] == d ? e[1] : e[0];
  }
  int arc_at(Dart d) const { return crossings_[static_cast<std::size_t>(d.crossing)].arcs[static_cast<std::size_t>(d.pos)]; }

  LinkDiagram with_mark(std::optional<int> arc) const;
  LinkDiagram with_name(std::string name) const {
    LinkDiagram d = *this;
    d.name_ = std::move(name);
    return d;
  }

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.loops_ == b.loops_ && a.mark_ == b.mark_ && a.heads_ == b.heads_;
  }

 private:
  friend LinkDiagram detail::build_diagram(std::vector<std::array<int, 4>>, std::vector<int>, std::optional<int>,
                                           std::string, const std::map<int, Dart>&);

  std::vector<Crossing> crossings_;
  std::vector<int> loops_;
  int num_arcs_ = 0;
  std::optional<int> mark_;
  std::string name_;
  std::vector<char> is_loop_;
  std::vector<std::array<Dart, 2>> ends_;
  std::vector<Dart> heads_;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
};

// ---------------------------------------------------------------------------
// Construction and validation

namespace detail {

inline std::array<int, 4> rotate_tuple(const std::array<int, 4>& t, int by) {
  std::array<int, 4> r{};
  for (int p = 0; p < 4; ++p) r[static_cast<std::size_t>(p)] = t[static_cast<std::size_t>((p + by) % 4)];
  return r;
}

inline std::vector<std::vector<int>> crossing_groups(const std::vector<std::array<int, 4>>& tuples,
                                                     const std::vector<std::array<Dart, 2>>& ends) {
  std::vector<int> parent(tuples.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& e : ends)
    if (e[0].crossing >= 0) parent[static_cast<std::size_t>(find(e[0].crossing))] = find(e[1].crossing);
  std::map<int, std::vector<int>> groups;
  for (int x = 0; x < static_cast<int>(tuples.size()); ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

inline LinkDiagram build_diagram(std::vector<std::array<int, 4>> tuples, std::vector<int> loops,
                                 std::optional<int> mark, std::string name,
                                 const std::map<int, Dart>& preferred_heads) {
  // Arc labels must be exactly 1..N: twice in crossings, or once as a loop.
  int n = 0;
  for (auto& t : tuples)
    for (int a : t) {
      if (a <= 0) fail(ErrorKind::MalformedCode, "arc labels must be positive");
      n = std::max(n, a);
    }
  for (int a : loops) {
    if (a <= 0) fail(ErrorKind::MalformedCode, "loop labels must be positive");
    n = std::max(n, a);
  }
  std::vector<int> uses(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> is_loop(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::array<Dart, 2>> ends(static_cast<std::size_t>(n) + 1, {Dart{}, Dart{}});
  for (int x = 0; x < static_cast<int>(tuples.size()); ++x)
    for (int p = 0; p < 4; ++p) {
      const int a = tuples[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)];
      int& u = uses[static_cast<std::size_t>(a)];
      if (u < 2) ends[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)] = Dart{x, p};
      ++u;
    }
  for (int a : loops) {
    if (is_loop[static_cast<std::size_t>(a)] || uses[static_cast<std::size_t>(a)] != 0)
      fail(ErrorKind::BadArcCount, "loop label " + std::to_string(a) + " reused");
    is_loop[static_cast<std::size_t>(a)] = 1;
  }
  for (int a = 1; a <= n; ++a)
    if (!is_loop[static_cast<std::size_t>(a)] && uses[static_cast<std::size_t>(a)] != 2)
      fail(ErrorKind::BadArcCount, "arc " + std::to_string(a) + " used " + std::to_string(uses[static_cast<std::size_t>(a)]) + " times");
  if (mark && (*mark < 1 || *mark > n)) fail(ErrorKind::MalformedCode, "mark is not an arc label");

  auto arc_at = [&](Dart d) { return tuples[static_cast<std::size_t>(d.crossing)][static_cast<std::size_t>(d.pos)]; };
  auto other_end = [&](Dart d) {
    const auto& e = ends[static_cast<std::size_t>(arc_at(d))];
    return e[0] == d ? e[1] : e[0];
  };

  // Trace components. A walk leaves along the arc at dart `d` and continues
  // straight through each crossing it reaches.
  std::vector<Dart> heads(static_cast<std::size_t>(n) + 1);
  std::vector<int> comp_of(static_cast<std::size_t>(n) + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int a = 1; a <= n; ++a) {
    if (comp_of[static_cast<std::size_t>(a)] >= 0) continue;
    const int cid = static_cast<int>(comps.size());
    if (is_loop[static_cast<std::size_t>(a)]) {
      comps.push_back({a});
      comp_of[static_cast<std::size_t>(a)] = cid;
      continue;
    }
    // Walk starting by leaving from the first occurrence of the least arc.
    const Dart start = ends[static_cast<std::size_t>(a)][0];
    std::vector<std::pair<int, Dart>> walk;  // (arc, arrival dart)
    Dart leave = start;
    do {
      const Dart arrive = other_end(leave);
      walk.emplace_back(arc_at(leave), arrive);
      leave = Dart{arrive.crossing, (arrive.pos + 2) % 4};
    } while (leave != start);

    int forward_votes = 0, backward_votes = 0;
    for (auto& [arc, arrive] : walk) {
      if (arrive.pos == 0) ++forward_votes;
      if (arrive.pos == 2) ++backward_votes;
    }
    if (forward_votes && backward_votes)
      fail(ErrorKind::MalformedCode, "under-strand orientations disagree along a component");
    bool forward = true;
    if (backward_votes) {
      forward = false;
    } else if (!forward_votes) {
      for (auto& [arc, arrive] : walk) {
        auto it = preferred_heads.find(arc);
        if (it == preferred_heads.end()) continue;
        forward = it->second == arrive;
        break;
      }
    }
    std::vector<int> arcs;
    for (auto& [arc, arrive] : walk) {
      heads[static_cast<std::size_t>(arc)] = forward ? arrive : other_end(arrive);
      comp_of[static_cast<std::size_t>(arc)] = cid;
      arcs.push_back(arc);
    }
    if (!forward) {
      std::reverse(arcs.begin(), arcs.end());
      auto it = std::find(arcs.begin(), arcs.end(), a);
      std::rotate(arcs.begin(), it, arcs.end());
    }
    comps.push_back(std::move(arcs));
  }

  // Planarity: every connected piece of the 4-valent graph satisfies
  // V - E + F = 2 with E = 2V.
  {
    std::vector<std::array<char, 4>> seen(tuples.size(), {0, 0, 0, 0});
    std::vector<int> face_count_of_crossing(tuples.size(), 0);
    std::vector<int> group_of(tuples.size(), 0);
    auto groups = crossing_groups(tuples, ends);
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (int x : groups[g]) group_of[static_cast<std::size_t>(x)] = static_cast<int>(g);
    std::vector<int> faces_in_group(groups.size(), 0);
    for (int x = 0; x < static_cast<int>(tuples.size()); ++x)
      for (int p = 0; p < 4; ++p) {
        if (seen[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)]) continue;
        ++faces_in_group[static_cast<std::size_t>(group_of[static_cast<std::size_t>(x)])];
        Dart d{x, p};
        while (!seen[static_cast<std::size_t>(d.crossing)][static_cast<std::size_t>(d.pos)]) {
          seen[static_cast<std::size_t>(d.crossing)][static_cast<std::size_t>(d.pos)] = 1;
          const Dart e = other_end(d);
          d = Dart{e.crossing, (e.pos + 3) % 4};
        }
      }
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (faces_in_group[g] != static_cast<int>(groups[g].size()) + 2)
        fail(ErrorKind::NonPlanar, "Euler characteristic check failed");
  }

  LinkDiagram d;
  d.num_arcs_ = n;
  d.loops_ = std::move(loops);
  d.mark_ = mark;
  d.name_ = std::move(name);
  d.is_loop_ = std::move(is_loop);
  d.ends_ = std::move(ends);
  d.heads_ = std::move(heads);
  d.components_ = std::move(comps);
  d.component_of_ = std::move(comp_of);
  d.crossings_.resize(tuples.size());
  for (std::size_t x = 0; x < tuples.size(); ++x) {
    d.crossings_[x].arcs = tuples[x];
    const Dart over_in{static_cast<int>(x), conventions::positive_over_entry};
    d.crossings_[x].sign = d.head(tuples[x][static_cast<std::size_t>(conventions::positive_over_entry)]) == over_in ? 1 : -1;
  }
  return d;
}

inline std::map<int, Dart> current_heads(const LinkDiagram& d) {
  std::map<int, Dart> h;
  for (int a = 1; a <= d.num_arcs(); ++a)
    if (!d.is_loop(a)) h[a] = d.head(a);
  return h;
}

inline std::vector<std::array<int, 4>> tuples_of(const LinkDiagram& d) {
  std::vector<std::array<int, 4>> t;
  for (const auto& c : d.crossings()) t.push_back(c.arcs);
  return t;
}

}  // namespace detail

inline LinkDiagram LinkDiagram::with_mark(std::optional<int> arc) const {
  if (arc && (*arc < 1 || *arc > num_arcs_)) fail(ErrorKind::MalformedCode, "mark is not an arc label");
  LinkDiagram d = *this;
  d.mark_ = arc;
  return d;
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline int parse_int(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorKind::MalformedCode, "expected a positive integer, got '" + t + "'");
  return std::stoi(t);
}

}  // namespace detail

/// Grammar: items `X[a,b,c,d]` or `O<k>` separated by `;`, optionally followed
/// by `mark=<arc>`. The empty string is the empty link.
inline LinkDiagram parse_pd(std::string_view text, std::string name = {}) {
  std::vector<std::array<int, 4>> tuples;
  std::vector<int> loops;
  std::optional<int> mark;
  std::string s(text);
  for (char& c : s)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  bool expect_item = true;
  while (true) {
    skip_ws();
    if (i >= s.size()) break;
    if (!expect_item) {
      if (s[i] == ';') {
        ++i;
        expect_item = true;
        continue;
      }
      if (s.compare(i, 5, "mark=") != 0) fail(ErrorKind::MalformedCode, "expected ';' at offset " + std::to_string(i));
    }
    if (s.compare(i, 5, "mark=") == 0) {
      if (mark) fail(ErrorKind::MalformedCode, "duplicate mark");
      i += 5;
      std::size_t j = i;
      while (j < s.size() && s[j] != ';' && s[j] != ' ') ++j;
      mark = detail::parse_int(s.substr(i, j - i));
      i = j;
      expect_item = false;
      continue;
    }
    if (mark) fail(ErrorKind::MalformedCode, "mark must come last");
    if (s[i] == 'X') {
      ++i;
      skip_ws();
      if (i >= s.size() || s[i] != '[') fail(ErrorKind::MalformedCode, "expected '[' after X");
      const std::size_t close = s.find(']', i);
      if (close == std::string::npos) fail(ErrorKind::MalformedCode, "unterminated X[");
      const std::string body = s.substr(i + 1, close - i - 1);
      std::array<int, 4> t{};
      std::size_t k = 0, start = 0;
      for (std::size_t j = 0; j <= body.size(); ++j) {
        if (j == body.size() || body[j] == ',') {
          if (k >= 4) fail(ErrorKind::MalformedCode, "crossing with more than four arcs");
          t[k++] = detail::parse_int(body.substr(start, j - start));
          start = j + 1;
        }
      }
      if (k != 4) fail(ErrorKind::MalformedCode, "crossing with fewer than four arcs");
      tuples.push_back(t);
      i = close + 1;
    } else if (s[i] == 'O') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      loops.push_back(detail::parse_int(s.substr(i, j - i)));
      i = j;
    } else {
      fail(ErrorKind::MalformedCode, std::string("unexpected character '") + s[i] + "'");
    }
    expect_item = false;
  }
  if (expect_item && (!tuples.empty() || !loops.empty())) fail(ErrorKind::MalformedCode, "trailing ';'");
  return detail::build_diagram(std::move(tuples), std::move(loops), mark, std::move(name), {});
}

/// Serializer; parse_pd(to_pd(d)) reproduces d whenever every component's
/// orientation is carried by an under-passage or the default rule.
inline std::string to_pd(const LinkDiagram& d) {
  std::string s;
  for (const auto& c : d.crossings()) {
    if (!s.empty()) s += ";";
    s += "X[" + std::to_string(c.arcs[0]) + "," + std::to_string(c.arcs[1]) + "," + std::to_string(c.arcs[2]) + "," +
         std::to_string(c.arcs[3]) + "]";
  }
  for (int a : d.loops()) {
    if (!s.empty()) s += ";";
    s += "O" + std::to_string(a);
  }
  if (d.mark()) s += (s.empty() ? "mark=" : " mark=") + std::to_string(*d.mark());
  return s;
}

// ---------------------------------------------------------------------------
// Signs, mirror, orientation changes

struct SignCount {
  int n_plus = 0;
  int n_minus = 0;
  friend bool operator==(const SignCount&, const SignCount&) = default;
};

inline SignCount crossing_signs(const LinkDiagram& d) {
  SignCount s;
  for (const auto& c : d.crossings()) (c.sign > 0 ? s.n_plus : s.n_minus)++;
  return s;
}

inline int writhe(const LinkDiagram& d) {
  auto s = crossing_signs(d);
  return s.n_plus - s.n_minus;
}

/// Exchanges over and under at every crossing, keeping orientations.
inline LinkDiagram mirror(const LinkDiagram& d) {
  auto tuples = detail::tuples_of(d);
  std::vector<int> shift(tuples.size());
  for (std::size_t x = 0; x < tuples.size(); ++x) {
    // New tuple starts at the old incoming over-strand.
    shift[x] = d.crossings()[x].sign > 0 ? 3 : 1;
    tuples[x] = detail::rotate_tuple(tuples[x], shift[x]);
  }
  std::map<int, Dart> prefs;
  for (auto [a, h] : detail::current_heads(d))
    prefs[a] = Dart{h.crossing, (h.pos - shift[static_cast<std::size_t>(h.crossing)] + 4) % 4};
  return detail::build_diagram(std::move(tuples), d.loops(), d.mark(), d.name(), prefs);
}

/// Reverses the orientation of one component.
inline LinkDiagram reverse_component(const LinkDiagram& d, int component) {
  if (component < 0 || component >= static_cast<int>(d.components().size()))
    fail(ErrorKind::MalformedCode, "no component " + std::to_string(component));
  auto tuples = detail::tuples_of(d);
  std::vector<int> shift(tuples.size(), 0);
  for (std::size_t x = 0; x < tuples.size(); ++x)
    if (d.component_of(tuples[x][0]) == component) {
      shift[x] = 2;
      tuples[x] = detail::rotate_tuple(tuples[x], 2);
    }
  std::map<int, Dart> prefs;
  for (auto [a, h] : detail::current_heads(d)) {
    Dart head = d.component_of(a) == component ? d.tail(a) : h;
    prefs[a] = Dart{head.crossing, (head.pos - shift[static_cast<std::size_t>(head.crossing)] + 4) % 4};
  }
  return detail::build_diagram(std::move(tuples), d.loops(), d.mark(), d.name(), prefs);
}

// ---------------------------------------------------------------------------
// Structure queries

/// Connected pieces of the diagram: crossing groups plus crossingless loops.
inline int diagram_pieces(const LinkDiagram& d) {
  std::vector<std::array<Dart, 2>> ends;
  for (int a = 1; a <= d.num_arcs(); ++a)
    if (!d.is_loop(a)) ends.push_back(d.ends(a));
  return static_cast<int>(detail::crossing_groups(detail::tuples_of(d), ends).size() + d.loops().size());
}

inline bool is_connected(const LinkDiagram& d) { return diagram_pieces(d) == 1; }

/// Over- and under-passages alternate along every component.
inline bool is_alternating(const LinkDiagram& d) {
  for (const auto& comp : d.components()) {
    if (d.is_loop(comp[0])) continue;
    const std::size_t k = comp.size();
    for (std::size_t i = 0; i < k; ++i) {
      const bool under_here = d.head(comp[i]).pos % 2 == 0;
      const bool under_next = d.head(comp[(i + 1) % k]).pos % 2 == 0;
      if (under_here == under_next) return false;
    }
  }
  return true;
}

struct Face {
  /// Arc labels along the boundary.
  std::vector<int> arcs;
  /// Corners (crossing, key) with key k the corner between slots k and k+1.
  std::vector<Dart> corners;
};

struct FaceStructure {
  std::vector<Face> faces;
  /// corner_face[x][k]: face at the corner between slots k and k+1 of crossing x.
  std::vector<std::array<int, 4>> corner_face;
  /// Faces on the two sides of each arc (index by label).
  std::vector<std::array<int, 2>> arc_sides;
};

/// Rotation-system faces. Each connected piece contributes its own faces;
/// a crossingless loop contributes two.
inline FaceStructure face_structure(const LinkDiagram& d) {
  FaceStructure fs;
  const int ell = d.size();
  fs.corner_face.assign(static_cast<std::size_t>(ell), {-1, -1, -1, -1});
  fs.arc_sides.assign(static_cast<std::size_t>(d.num_arcs()) + 1, {-1, -1});
  std::vector<std::array<int, 4>> dart_face(static_cast<std::size_t>(ell), {-1, -1, -1, -1});
  for (int x = 0; x < ell; ++x)
    for (int p = 0; p < 4; ++p) {
      if (dart_face[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)] >= 0) continue;
      const int fid = static_cast<int>(fs.faces.size());
      Face f;
      Dart cur{x, p};
      while (dart_face[static_cast<std::size_t>(cur.crossing)][static_cast<std::size_t>(cur.pos)] < 0) {
        dart_face[static_cast<std::size_t>(cur.crossing)][static_cast<std::size_t>(cur.pos)] = fid;
        f.arcs.push_back(d.arc_at(cur));
        const Dart e = d.other_end(cur);
        const Dart corner{e.crossing, (e.pos + 3) % 4};
        f.corners.push_back(corner);
        fs.corner_face[static_cast<std::size_t>(corner.crossing)][static_cast<std::size_t>(corner.pos)] = fid;
        cur = corner;
      }
      fs.faces.push_back(std::move(f));
    }
  for (int a = 1; a <= d.num_arcs(); ++a) {
    if (d.is_loop(a)) continue;
    const auto& e = d.ends(a);
    fs.arc_sides[static_cast<std::size_t>(a)] = {dart_face[static_cast<std::size_t>(e[0].crossing)][static_cast<std::size_t>(e[0].pos)],
                                                 dart_face[static_cast<std::size_t>(e[1].crossing)][static_cast<std::size_t>(e[1].pos)]};
  }
  for (int a : d.loops()) {
    const int f0 = static_cast<int>(fs.faces.size());
    fs.faces.push_back(Face{{a}, {}});
    fs.faces.push_back(Face{{a}, {}});
    fs.arc_sides[static_cast<std::size_t>(a)] = {f0, f0 + 1};
  }
  return fs;
}

inline std::vector<Face> faces(const LinkDiagram& d) { return face_structure(d).faces; }

// ---------------------------------------------------------------------------
// Resolutions

/// Slot pairing of each smoothing: pairing[p] is the slot joined to p.
inline constexpr std::array<int, 4> kPairA{1, 0, 3, 2};
inline constexpr std::array<int, 4> kPairB{3, 2, 1, 0};
inline constexpr std::array<int, 4> kPairThrough{2, 3, 0, 1};

inline const std::array<int, 4>& smoothing_pairing(int bit) {
  const auto s = bit ? conventions::one_smoothing : conventions::zero_smoothing;
  return s == conventions::Smoothing::A ? kPairA : kPairB;
}

struct ResolutionState {
  std::vector<int> I;
  int weight = 0;
  int num_circles = 0;
  /// circle_of_arc[a] for a in 1..N; circles numbered by least arc label.
  std::vector<int> circle_of_arc;
  std::vector<std::vector<int>> circles;
};

/// Circle labels of the state given as a bitmask (bit x = I_x).
inline std::vector<int> state_circles(const LinkDiagram& d, std::uint64_t mask, int* count = nullptr) {
  const int n = d.num_arcs();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int x = 0; x < d.size(); ++x) {
    const auto& pr = smoothing_pairing(static_cast<int>((mask >> x) & 1u));
    const auto& t = d.crossings()[static_cast<std::size_t>(x)].arcs;
    for (int p = 0; p < 4; ++p) {
      const int q = pr[static_cast<std::size_t>(p)];
      if (q < p) continue;
      parent[static_cast<std::size_t>(find(t[static_cast<std::size_t>(p)]))] = find(t[static_cast<std::size_t>(q)]);
    }
  }
  std::vector<int> label(static_cast<std::size_t>(n) + 1, -1), out(static_cast<std::size_t>(n) + 1, -1);
  int next = 0;
  for (int a = 1; a <= n; ++a) {
    const int r = find(a);
    if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = next++;
    out[static_cast<std::size_t>(a)] = label[static_cast<std::size_t>(r)];
  }
  if (count) *count = next;
  return out;
}

inline ResolutionState resolve(const LinkDiagram& d, const std::vector<int>& I) {
  if (static_cast<int>(I.size()) != d.size())
    fail(ErrorKind::LengthMismatch, "state has length " + std::to_string(I.size()) + ", diagram has " +
                                        std::to_string(d.size()) + " crossings");
  if (d.size() > 63) fail(ErrorKind::BudgetExceeded, "too many crossings for a state bitmask");
  std::uint64_t mask = 0;
  ResolutionState r;
  r.I = I;
  for (std::size_t x = 0; x < I.size(); ++x) {
    if (I[x] != 0 && I[x] != 1) fail(ErrorKind::LengthMismatch, "state entries must be 0 or 1");
    if (I[x]) mask |= std::uint64_t{1} << x;
    r.weight += I[x];
  }
  r.circle_of_arc = state_circles(d, mask, &r.num_circles);
  r.circles.resize(static_cast<std::size_t>(r.num_circles));
  for (int a = 1; a <= d.num_arcs(); ++a) r.circles[static_cast<std::size_t>(r.circle_of_arc[static_cast<std::size_t>(a)])].push_back(a);
  return r;
}

// ---------------------------------------------------------------------------
// Surgery: remove crossings, reconnecting their slots by a pairing.

/// Removes the given crossings, joining their slots by the paired slot
/// permutations, then re-labels arcs consecutively along components.
/// Orientation of each new component follows the old orientation of its first
/// piece. The mark follows the arc containing the old marked arc.
inline LinkDiagram rebuild(const LinkDiagram& d, const std::map<int, std::array<int, 4>>& removed) {
  const int ell = d.size();
  std::vector<int> new_index(static_cast<std::size_t>(ell), -1);
  int kept = 0;
  for (int x = 0; x < ell; ++x)
    if (!removed.count(x)) new_index[static_cast<std::size_t>(x)] = kept++;

  struct Piece {
    Dart from, to;           // kept slots (old coordinates); unused for loops
    std::vector<int> old;    // old arcs traversed
    bool forward = true;     // old orientation agrees with from -> to
  };
  std::vector<Piece> pieces;
  std::vector<std::vector<int>> loop_old;  // old arcs of each new loop
  std::vector<std::array<char, 4>> seen(static_cast<std::size_t>(ell), {0, 0, 0, 0});
  auto mark_seen = [&](Dart x) { seen[static_cast<std::size_t>(x.crossing)][static_cast<std::size_t>(x.pos)] = 1; };
  auto is_seen = [&](Dart x) { return seen[static_cast<std::size_t>(x.crossing)][static_cast<std::size_t>(x.pos)] != 0; };

  for (int x = 0; x < ell; ++x) {
    if (removed.count(x)) continue;
    for (int p = 0; p < 4; ++p) {
      Dart s{x, p};
      if (is_seen(s)) continue;
      Piece pc;
      pc.from = s;
      pc.forward = d.tail(d.arc_at(s)) == s;
      Dart cur = s;
      mark_seen(cur);
      for (;;) {
        pc.old.push_back(d.arc_at(cur));
        const Dart e = d.other_end(cur);
        mark_seen(e);
        auto it = removed.find(e.crossing);
        if (it == removed.end()) {
          pc.to = e;
          break;
        }
        cur = Dart{e.crossing, it->second[static_cast<std::size_t>(e.pos)]};
        mark_seen(cur);
      }
      pieces.push_back(std::move(pc));
    }
  }
  for (int a : d.loops()) loop_old.push_back({a});
  for (auto& [x, pairing] : removed)
    for (int p = 0; p < 4; ++p) {
      Dart s{x, p};
      if (is_seen(s)) continue;
      std::vector<int> old;
      Dart cur = s;
      do {
        mark_seen(cur);
        old.push_back(d.arc_at(cur));
        const Dart e = d.other_end(cur);
        mark_seen(e);
        cur = Dart{e.crossing, removed.at(e.crossing)[static_cast<std::size_t>(e.pos)]};
      } while (cur != s);
      loop_old.push_back(std::move(old));
    }

  // Slot -> piece index for kept crossings.
  std::vector<std::array<int, 4>> piece_at(static_cast<std::size_t>(ell), {-1, -1, -1, -1});
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    piece_at[static_cast<std::size_t>(pieces[static_cast<std::size_t>(i)].from.crossing)][static_cast<std::size_t>(pieces[static_cast<std::size_t>(i)].from.pos)] = i;
    piece_at[static_cast<std::size_t>(pieces[static_cast<std::size_t>(i)].to.crossing)][static_cast<std::size_t>(pieces[static_cast<std::size_t>(i)].to.pos)] = i;
  }
  auto piece_other = [&](int i, Dart at) {
    const auto& pc = pieces[static_cast<std::size_t>(i)];
    return pc.from == at ? pc.to : pc.from;
  };

  // Orient components: walk straight through kept crossings.
  std::vector<int> dir(pieces.size(), 0);  // +1: from -> to, -1: to -> from
  std::vector<std::vector<int>> comp_pieces;
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    if (dir[static_cast<std::size_t>(i)]) continue;
    const auto& p0 = pieces[static_cast<std::size_t>(i)];
    Dart leave = p0.forward ? p0.from : p0.to;
    std::vector<int> comp;
    int cur = i;
    for (;;) {
      const auto& pc = pieces[static_cast<std::size_t>(cur)];
      dir[static_cast<std::size_t>(cur)] = pc.from == leave ? 1 : -1;
      comp.push_back(cur);
      const Dart arrive = piece_other(cur, leave);
      leave = Dart{arrive.crossing, (arrive.pos + 2) % 4};
      cur = piece_at[static_cast<std::size_t>(leave.crossing)][static_cast<std::size_t>(leave.pos)];
      if (cur == i) break;
    }
    comp_pieces.push_back(std::move(comp));
  }

  auto head_of = [&](int i) {
    const auto& pc = pieces[static_cast<std::size_t>(i)];
    return dir[static_cast<std::size_t>(i)] > 0 ? pc.to : pc.from;
  };
  auto tail_of = [&](int i) {
    const auto& pc = pieces[static_cast<std::size_t>(i)];
    return dir[static_cast<std::size_t>(i)] > 0 ? pc.from : pc.to;
  };

  // Crossings whose under-strand now enters at slot 2 get rotated by 2.
  std::vector<int> shift(static_cast<std::size_t>(ell), 0);
  for (int x = 0; x < ell; ++x) {
    if (removed.count(x)) continue;
    const int pc = piece_at[static_cast<std::size_t>(x)][2];
    if (head_of(pc) == Dart{x, 2}) shift[static_cast<std::size_t>(x)] = 2;
  }
  auto new_dart = [&](Dart old) {
    return Dart{new_index[static_cast<std::size_t>(old.crossing)], (old.pos - shift[static_cast<std::size_t>(old.crossing)] + 4) % 4};
  };

  // Label components in order of their least new tail dart.
  std::vector<std::pair<Dart, int>> order;
  for (int c = 0; c < static_cast<int>(comp_pieces.size()); ++c) {
    Dart best{1 << 30, 0};
    for (int i : comp_pieces[static_cast<std::size_t>(c)]) best = std::min(best, new_dart(tail_of(i)));
    order.emplace_back(best, c);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> label(pieces.size(), 0);
  int next = 1;
  for (auto& [start, c] : order) {
    const auto& cp = comp_pieces[static_cast<std::size_t>(c)];
    std::size_t s = 0;
    for (std::size_t k = 0; k < cp.size(); ++k)
      if (new_dart(tail_of(cp[k])) == start) s = k;
    for (std::size_t k = 0; k < cp.size(); ++k) label[static_cast<std::size_t>(cp[(s + k) % cp.size()])] = next++;
  }

  std::vector<std::array<int, 4>> tuples(static_cast<std::size_t>(kept));
  std::map<int, Dart> prefs;
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    for (Dart end : {pieces[static_cast<std::size_t>(i)].from, pieces[static_cast<std::size_t>(i)].to}) {
      const Dart nd = new_dart(end);
      tuples[static_cast<std::size_t>(nd.crossing)][static_cast<std::size_t>(nd.pos)] = label[static_cast<std::size_t>(i)];
    }
    prefs[label[static_cast<std::size_t>(i)]] = new_dart(head_of(i));
  }
  std::vector<int> loops;
  std::optional<int> mark;
  const auto old_mark = d.mark();
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
    if (old_mark && std::count(pieces[static_cast<std::size_t>(i)].old.begin(), pieces[static_cast<std::size_t>(i)].old.end(), *old_mark))
      mark = label[static_cast<std::size_t>(i)];
  for (const auto& lo : loop_old) {
    if (old_mark && std::count(lo.begin(), lo.end(), *old_mark)) mark = next;
    loops.push_back(next++);
  }
  return detail::build_diagram(std::move(tuples), std::move(loops), mark, d.name(), prefs);
}

/// Replaces crossing x by its 0- or 1-smoothing.
inline LinkDiagram smooth_crossing(const LinkDiagram& d, int x, int bit) {
  if (x < 0 || x >= d.size()) fail(ErrorKind::LengthMismatch, "no crossing " + std::to_string(x));
  return rebuild(d, {{x, smoothing_pairing(bit)}});
}

}  // namespace khcover
