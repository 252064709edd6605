#include "micropolar/galerkin.hpp"

namespace micropolar {

Evaluator galerkin_evaluator(const PhysParams& params, double cg_tol, EvalOptions options) {
  return Evaluator(params, Closure::galerkin, std::make_shared<PcgThetaSolver>(params, cg_tol), options);
}

Tangent approximate_rhs(const State& z, const PhysParams& params, double cg_tol) {
  return galerkin_evaluator(params, cg_tol).rhs(z);
}

}  // namespace micropolar
