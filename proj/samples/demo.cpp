// Evaluates the functional for every named parameter set on one curve and
// prints the stability distances where they apply.

#include <cstdio>
#include <string>

#include "isoperim/isoperim.hpp"

int main(int argc, char** argv) {
  using namespace isoperim;
  const SupportFourier curve = argc > 1 ? load_curve(argv[1]) : SupportFourier(1.0, {0.0, 0.1, 0.02}, {0.0, 0.0, 0.03});
  require_convex(curve);
  const QuantitySet q = full_quantities(curve);
  std::printf("L = %.12g  A = %.12g  |A~| = %.12g  rho_e - rho_i = %.12g\n", q.L, q.A, q.A_tilde_abs,
              q.rho_e - q.rho_i);

  for (Preset name : kAllPresets) {
    const ParamSet p = preset(name, 0.25);
    const auto chain = verify_chain(p, curve, q, 1e-8);
    std::printf("%-8s W = %-14.8g fourier = %-14.8g uniform = %-14.8g %s", std::string(to_string(name)).c_str(),
                chain.w.W, chain.fourier_bound, chain.uniform_bound, chain.chain_ok ? "ok" : "VIOLATED");
    if (check_conditions(p).ok_1_13) {
      const auto s = verify_stability(p, curve, 1e-8);
      std::printf("  h2^2 = %.6g <= C3 W = %.6g", s.h2_sq, s.C3 * s.W);
    }
    std::printf("\n");
  }
}
