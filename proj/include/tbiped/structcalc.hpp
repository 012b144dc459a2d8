#pragma once

namespace tbiped::structcalc {

/// Skin-core-skin beam section.
struct SandwichPanel {
  double skin_modulus;  // E_f [Pa]
  double core_modulus;  // E_c [Pa]
  double skin_thickness;  // t [m]
  double core_thickness;  // c [m]
  double width;           // b [m]

  void validate() const;
};

struct Rigidity {
  double core_bending;   // E_c b c^3 / 12
  double skin_bending;   // E_f b t^3 / 6
  double skin_parallel;  // E_f b t (c + t)^2 / 2
  double total;          // [N m^2]
};

/// Equivalent flexural rigidity (EI)_eq of the section.
Rigidity equivalent_rigidity(const SandwichPanel& panel);

}  // namespace tbiped::structcalc
