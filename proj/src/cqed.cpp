#include "effham/cqed.hpp"

namespace effham {

SquareMatrix<cplx> duffing_two_qubit(const CqedParams& p) {
  return duffing_two_qubit(lift_params<cplx>(p), p.level(0), p.level(1));
}

SquareMatrix<cplx> qubit_resonator_qubit(const CqedParams& p) {
  return qubit_resonator_qubit(lift_params<cplx>(p), p.level(0), p.level(1),
                               p.level(2));
}

SquareMatrix<cplx> cr_driven_frame(const CqedParams& p) {
  return cr_driven_frame(lift_params<cplx>(p), p.level(0), p.level(1));
}

SquareMatrix<cplx> three_level_cz(double delta, double Delta, double g1,
                                  double g2) {
  return three_level_cz<cplx>(cplx(delta, 0), cplx(Delta, 0), cplx(g1, 0),
                              cplx(g2, 0));
}

}  // namespace effham
