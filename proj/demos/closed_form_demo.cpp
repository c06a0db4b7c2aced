// Walks through the main objects: the 2-bracket and its limits, a 3-bracket
// computed three ways, the canonical subalgebras, and an FI violation.

#include <iostream>

#include "pqvw/algebra.hpp"
#include "pqvw/identities.hpp"
#include "pqvw/oracle.hpp"
#include "pqvw/subalgebra.hpp"

using namespace pqvw;

namespace {

void show_term(const char* label, const Term& t)
{
  std::cout << label << " = (" << t.coeff.to_string() << ") L_" << t.index << "\n";
}

} // namespace

int main()
{
  std::cout << "[L_2, L_-1]\n";
  Term b2 = bracket2(2, -1);
  show_term("  closed form  ", b2);
  UniScalar u = specialize_pq(b2.coeff);
  std::cout << "  p -> q        = " << u.to_string() << "\n";
  std::cout << "  q -> 1        = " << classical_value(u).get_str() << "\n\n";

  IndexTuple t{0, 1, 2};
  std::cout << "[L_0, L_1, L_2]\n";
  show_term("  closed form  ", bracket(t));
  show_term("  determinant  ", bracket3_closed(0, 1, 2));
  show_term("  on the module", extract_structure_constant(bracketn_def(t), 3));
  std::cout << "\n";

  for (int n = 3; n <= 5; ++n)
    std::cout << "sign(" << n << ") = " << bracket_sign(n) << "\n";
  std::cout << "\n";

  for (int n = 3; n <= 5; ++n) {
    IndexSet s = canonical_basis(n);
    IsoVerdict iso = iso_canonical_check(s, n);
    std::cout << "canonical " << n << "-dimensional subalgebra " << to_string(s) << ": bracket onto L_"
              << iso.target << ", coefficient " << canonical_coeff(n).to_string() << "\n";
  }
  std::cout << "\n";

  if (auto v = find_fi_violation(3, 2)) {
    std::cout << "FI fails for n = 3 at Y = (" << v->y[0] << ", " << v->y[1] << "), X = (" << v->x[0] << ", "
              << v->x[1] << ", " << v->x[2] << ")\n";
    show_term("  residual", v->residual);
  }
  return 0;
}
