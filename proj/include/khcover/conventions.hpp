#pragma once

// Every orientation/sign choice that is not forced by the mathematics lives
// here, so a single place pins down how outputs are to be read.

#include <string>

namespace khcover::conventions {

/// PD tuples list arcs counterclockwise, starting at the incoming
/// under-strand. A crossing is positive when the over-strand enters at
/// position 3 (runs 3 -> 1).
inline constexpr int positive_over_entry = 3;

/// Kauffman smoothings. A joins positions (0,1),(2,3); B joins (0,3),(1,2).
enum class Smoothing { A, B };

/// Which Kauffman smoothing is the "0" resolution of the cube.
inline constexpr Smoothing zero_smoothing = Smoothing::B;
inline constexpr Smoothing one_smoothing = Smoothing::A;

/// Faces touching the A-corners (between positions 1-2 and 3-0) are black.
/// The opposite choice negates every d-invariant.
inline constexpr bool black_at_a_corners = true;

/// Published homological grading m = m_sign * w + n_plus.
inline constexpr int m_sign = -1;

/// Published quantum grading q = c - 2k + q_weight_sign * w + n_minus - 2 n_plus
/// (minus one when reduced). The differential preserves q.
inline constexpr int q_weight_sign = 1;

/// Default tree for the circuit lattice: breadth-first from vertex 0.
inline constexpr int default_tree_seed = -1;

inline std::string conventions_version() {
  std::string v = "khcover-conv-1";
  v += ".pd-ccw-under";
  v += ".pos" + std::to_string(positive_over_entry);
  v += zero_smoothing == Smoothing::B ? ".zero-B" : ".zero-A";
  v += black_at_a_corners ? ".black-A" : ".black-B";
  v += ".m" + std::string(m_sign < 0 ? "-" : "+") + "w";
  v += ".q" + std::string(q_weight_sign < 0 ? "-" : "+") + "w";
  return v;
}

}  // namespace khcover::conventions
