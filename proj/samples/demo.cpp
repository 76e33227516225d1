// Walk-through of the library on the default model: closed-form spectrum,
// a residual check at truncation 40, one sector eigensolve and the
// finite-dimensional similarity on a 2x2 matrix.

#include <cstdio>

#include "pbh/finitesim.hpp"
#include "pbh/linalg.hpp"
#include "pbh/pseudoboson.hpp"
#include "pbh/sectors.hpp"

int main() {
  using namespace pbh;
  const pseudoboson::ModelParams p{0.5, 0.75};
  std::printf("rho = %.6f  alpha = %.6f  N = %.6f\n", p.rho(), p.alpha(), p.norm_N());

  std::printf("E_{m,n}:\n");
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) std::printf("  %8.4f", pseudoboson::energy(p, m, n));
    std::printf("\n");
  }

  const auto t = fock::TruncationSpec::square(40);
  const auto H = pseudoboson::build_hamiltonian(p, t);
  const auto psi = pseudoboson::eigenvector(p, 1, 2, t);
  std::printf("residual of Psi_{1,2} at trunc 40: %.3e\n",
              linalg::residual(H.h.matrix(), pseudoboson::energy(p, 1, 2), psi.coeffs()));

  const auto s = sectors::sector_spectrum({2, 60}, p, 3);
  std::printf("sector k=2, depth 60:");
  for (std::size_t i = 0; i < 3; ++i) std::printf("  %.10f (closed form %.4f)", s.report.values[i].real(), s.targets[i]);
  std::printf("\n");

  const auto rep = finitesim::verify_theorem1(RMatrix{{1, 1}, {0, 2}});
  std::printf("[[1,1],[0,2]]: S = [[%g, %g], [%g, %g]], ||S*S - 1||_F = %.6f\n", rep.S(0, 0).real(), rep.S(0, 1).real(),
              rep.S(1, 0).real(), rep.S(1, 1).real(), rep.unitarity_defect);
  return 0;
}
