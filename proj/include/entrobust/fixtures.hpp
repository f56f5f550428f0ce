#pragma once

#include <string>
#include <vector>

#include "entrobust/disentangle.hpp"

namespace entrobust::fixtures {

// Named states from the worked examples. Amplitudes are built from exact
// radical expressions.
PureState psi_plus();           // (|000> + |111>)/sqrt2
PureState psi2();               // (|000> + |100> + |111>)/sqrt3
CVector ket_plus();             // (|0> + |1>)/sqrt2
CVector ket_b();                // (2|0> + sqrt5 |1>)/3
PureState psi3();               // sqrt2/4 |001> + sqrt5/4 |01>|+> + 3/4 |1>|b>|+>
PureState example5_state();     // (3|00> + 6|11> + 2 sqrt26 |22>)/sqrt149
SuperpositionPlan example5_plan();  // the reference two-state plan
PureState example5_target();    // (5|a1> + 8|2>)/sqrt89 (x) (sqrt5|+> - |2>)/sqrt6
PureState product_of(const std::vector<CVector>& factors);

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct FixtureResult {
  std::string name;
  std::string description;
  std::vector<Check> checks;

  bool passed() const;
};

/// Runs every fixture assertion. Fixtures: intro, example1 .. example5.
std::vector<FixtureResult> verify_all(double tol = kDefaultTol);

}  // namespace entrobust::fixtures
