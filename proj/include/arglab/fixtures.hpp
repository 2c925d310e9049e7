#pragma once

#include "arglab/semantics.hpp"
#include "arglab/table.hpp"

namespace arglab {

/// The seven-country framework used throughout the tests: arguments aA..aG
/// with attacks (aF,aG), (aE,aD), (aD,aE), (aD,aC), (aC,aB), (aB,aA), (aA,aC).
ArgumentationFramework reference_framework();

/// The five reference tables over the framework above: tbl1 admissible
/// labellings (the four with aF in), tbl2 the three strong complete
/// labellings, tbl3 the labellings accepting aB on its attacker closure,
/// tbl4/tbl5 the two agents' local semantics.
Database reference_database();

/// Exhaustive-scan oracle: checks the defining constraints over the full
/// label-tuple space instead of backtracking. Guarded to |A| <= 8.
std::vector<Labelling> brute_force_semantics(const ArgumentationFramework& af,
                                             SemanticsKind kind, Sense sense);

}  // namespace arglab
