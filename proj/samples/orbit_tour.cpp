// Walks through the E(3) orbit types: classification, normal forms, the
// adjoint/coadjoint pairing and the oriented-line picture.

#include <iostream>

#include "eorb/eorb.hpp"

int main()
{
  using namespace eorb;
  const GroupSpec e3(3, Family::E);

  Mat w   = Mat::Zero(3, 3);
  w(1, 0) = 1;
  w(0, 1) = -1;

  // screw motion about e3 with an off-axis velocity; the normal form drops the Im(omega) part
  const AlgebraElement x{w, Vec::Unit(3, 0) + 0.5 * Vec::Unit(3, 2)};
  const auto nf = normal_form_adjoint(e3, x);
  std::cout << "normal form v: " << nf.point.v.transpose() << "  mover d: " << nf.mover.d.transpose() << "\n";

  const auto c = classify(e3, x);
  std::cout << "adjoint orbit " << display(c.signature) << ", dim " << c.orbit_dim << ", components " << c.components << "\n";

  const auto rep = bijection_pair(e3, x);
  std::cout << "paired coadjoint orbit " << display(rep.coadjoint_class.signature) << ", " << to_string(rep.direction)
            << ", fibre dim " << rep.fibre_dim << "\n";
  for (const auto & e : rep.edges) std::cout << "  " << e.total.render() << " -> " << e.base.render() << "  fibre " << e.fibre << "\n";

  // a point on the orbit through (0, e1): its oriented line
  const DualElement m = coadjoint_action(e3, {Mat::Identity(3, 3), Vec::Unit(3, 1)}, DualElement{Mat::Zero(3, 3), Vec::Unit(3, 0)});
  const auto line     = line_from_coadjoint(e3, m);
  std::cout << "line direction " << line.direction.transpose() << ", base " << line.base.transpose() << "\n";

  sampling::Rng rng(7);
  const auto sp = youla_decompose(sampling::random_skew(rng, 5));
  std::cout << "random so(5) element: d0 = " << sp.d0() << ", blocks = " << sp.blocks.size() << "\n";
  return 0;
}
