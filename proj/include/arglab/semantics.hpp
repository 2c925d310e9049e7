#pragma once

#include <vector>

#include "arglab/labelling.hpp"

namespace arglab {

enum class Sense { Weak, Strong };

enum class SemanticsKind { Admissible, Complete, Preferred, Grounded, Stable };

SemanticsKind semantics_kind_from_name(const std::string& name);
std::string to_string(SemanticsKind kind);
Sense sense_from_name(const std::string& name);
std::string to_string(Sense sense);

/// Total {in,lc} labellings whose in-set is conflict-free and defends each of
/// its members. Results of all enumerators are deduplicated and returned in
/// canonical order (label tuple over the sorted argument set).
std::vector<Labelling> enumerate_admissible(const ArgumentationFramework& af);

/// Weak sense: admissible {in,lc} labellings whose in-set contains every
/// argument it defends. Strong sense: total {in,out,und} labellings where an
/// argument is in iff all its attackers are out, and out iff some attacker
/// is in.
std::vector<Labelling> enumerate_complete(const ArgumentationFramework& af, Sense sense);

/// Complete labellings maximal in the commitment order.
std::vector<Labelling> enumerate_preferred(const ArgumentationFramework& af, Sense sense);

/// The unique complete labelling below every complete labelling; computed as
/// a least fixed point.
Labelling compute_grounded(const ArgumentationFramework& af, Sense sense);

/// Strong sense: complete labellings without und. Weak sense: complete
/// labellings where every non-in argument has an in attacker.
std::vector<Labelling> enumerate_stable(const ArgumentationFramework& af, Sense sense);

/// Admissible labellings of the subgraph of arguments reaching `a` that
/// label `a` in.
std::vector<Labelling> explanation_semantics(const ArgumentationFramework& af,
                                             const ArgumentId& a);

/// Restriction of a base semantics of the known subgraph to the agent's own
/// arguments.
std::vector<Labelling> local_semantics(const ArgumentationFramework& af,
                                       const std::set<ArgumentId>& known,
                                       const std::set<ArgumentId>& own, SemanticsKind base,
                                       Sense sense);

/// Global labellings whose restriction to each block appears in that block's
/// local semantics. Blocks must partition the global domain.
std::vector<Labelling> multi_agent_semantics(
    const std::vector<Labelling>& global,
    const std::vector<std::pair<std::set<ArgumentId>, std::vector<Labelling>>>& locals);

/// Dispatch helper; grounded yields a one-element set.
std::vector<Labelling> enumerate_semantics(const ArgumentationFramework& af, SemanticsKind kind,
                                           Sense sense);

/// Sorts by label tuple over the sorted common domain and removes duplicates.
std::vector<Labelling> canonical_labelling_order(std::vector<Labelling> labellings,
                                                 const LabelAlphabet& alphabet = LabelAlphabet());

}  // namespace arglab
