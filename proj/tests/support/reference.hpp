#pragma once

// Reference values compared against by the unit tests and the acceptance runner.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "khcover/khcover.hpp"

namespace khcover::reference {

/// d-invariants of the 9_40 double branched cover; compared as a multiset.
inline const char* kNineFortyD =
    "-1/2 13/30 -23/30 -9/10 -11/30 1/30 -1/10 1/30 1/30 -1/10 -11/30 -23/30 -9/10 13/30 -11/30 7/10 -11/30 13/30 "
    "-1/10 13/30 5/6 3/10 13/30 13/30 -1/10 -11/30 -23/30 7/10 1/30 -23/30 3/10 -23/30 1/30 -9/10 -11/30 1/30 -9/10 "
    "-23/30 -23/30 3/10 1/30 -11/30 7/10 1/30 -23/30 3/10 -23/30 1/30 7/10 -23/30 -11/30 3/10 13/30 13/30 -9/10 5/6 "
    "13/30 -9/10 13/30 -11/30 7/10 -11/30 13/30 7/10 -23/30 -11/30 -1/10 1/30 1/30 3/10 1/30 -11/30 -1/10 -23/30 "
    "13/30";

inline Rational parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash))) / std::stoll(s.substr(slash + 1));
}

inline std::vector<Rational> nine_forty_sorted() {
  std::vector<Rational> v;
  std::istringstream in(kNineFortyD);
  for (std::string s; in >> s;) v.push_back(parse_fraction(s));
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<Rational> sorted_d(const DTable& t) {
  std::vector<Rational> v;
  for (auto& c : t.classes) v.push_back(c.d);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace khcover::reference
