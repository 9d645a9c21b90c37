// Walks the trefoil through every module: signs, Jones polynomial,
// Khovanov homology, determinant, d-invariants and a certificate.

#include <iostream>

#include "khcover/khcover.hpp"

int main() {
  using namespace khcover;
  const LinkDiagram d = parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2] mark=1", "trefoil");

  const auto s = crossing_signs(d);
  std::cout << "signs (+,-): " << s.n_plus << ", " << s.n_minus << '\n';
  std::cout << "jones: " << kauffman_oracle(d).to_string() << '\n';

  const KhTable red = khovanov_homology(d, true);
  std::cout << "reduced Kh rank: " << red.total_rank << ", euler " << graded_euler(red).to_string() << '\n';
  std::cout << "det: " << to_string(link_determinant(d)) << '\n';

  const GoeritzLattice lat = build_lattice(black_graph(d));
  std::cout << "Goeritz form: " << lat.Q.to_string() << '\n';
  for (const auto& c : d_table(lat.Q).classes) std::cout << "d = " << to_string(c.d) << '\n';

  const QAResult qa = qa_certify(d);
  std::cout << "quasi-alternating: " << (qa.certified() && validate_certificate(*qa.certificate) ? "yes" : "unknown") << '\n';

  const PageTable pages = spectral_pages(flatten_cube(assemble(d, true)));
  for (int r = 1; r <= pages.pages(); ++r) std::cout << "E" << r << " total " << pages.total(r) << '\n';
}
