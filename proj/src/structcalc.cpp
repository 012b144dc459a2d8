#include "tbiped/structcalc.hpp"

#include "tbiped/errors.hpp"

namespace tbiped::structcalc {

void SandwichPanel::validate() const {
  if (!(skin_modulus > 0.0)) throw ValidationError("panel: skin modulus > 0");
  if (!(core_modulus > 0.0)) throw ValidationError("panel: core modulus > 0");
  if (!(skin_thickness > 0.0)) throw ValidationError("panel: skin thickness > 0");
  if (!(core_thickness > 0.0)) throw ValidationError("panel: core thickness > 0");
  if (!(width > 0.0)) throw ValidationError("panel: width > 0");
}

Rigidity equivalent_rigidity(const SandwichPanel& p) {
  const double b = p.width;
  const double c = p.core_thickness;
  const double t = p.skin_thickness;
  Rigidity r;
  r.core_bending = p.core_modulus * b * c * c * c / 12.0;
  r.skin_bending = p.skin_modulus * b * t * t * t / 6.0;
  r.skin_parallel = p.skin_modulus * b * t / 2.0 * (c + t) * (c + t);
  r.total = r.core_bending + r.skin_bending + r.skin_parallel;
  return r;
}

}  // namespace tbiped::structcalc
