#pragma once

#include "micropolar/fields.hpp"
#include "micropolar/params.hpp"

namespace micropolar {

/// T = mu (grad u + grad u^T) + kappa ten(curl u / 2 - omega) - p I, as a general matrix field.
SpectralField stress_tensor(const SpectralField& u, const SpectralField& p,
                            const SpectralField& omega, const PhysParams& params);
/// M = alpha (div omega) I + beta D0 omega + gamma ten(curl omega).
SpectralField couple_stress(const SpectralField& omega, const PhysParams& params);

/// D v = grad v + grad v^T.
SpectralField deformation(const SpectralField& v);
/// D v - (2/3)(div v) I.
SpectralField deviatoric_deformation(const SpectralField& v);
/// Matrix field ten(w).
SpectralField ten_field(const SpectralField& w);
/// Vector field vc(A) of a general matrix field.
SpectralField vc_field(const SpectralField& a);

}  // namespace micropolar
