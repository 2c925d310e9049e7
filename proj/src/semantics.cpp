#include "arglab/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace arglab {

namespace {

// Index-based view of a framework for the enumerators.
struct Graph {
    std::vector<ArgumentId> args;                 // sorted
    std::vector<std::vector<int>> attackers_of;   // per argument
    std::vector<std::vector<int>> targets_of;

    explicit Graph(const ArgumentationFramework& af)
        : args(af.arguments().begin(), af.arguments().end()),
          attackers_of(args.size()),
          targets_of(args.size()) {
        std::map<ArgumentId, int> index;
        for (std::size_t i = 0; i < args.size(); ++i) index[args[i]] = static_cast<int>(i);
        for (const auto& [from, to] : af.attacks()) {
            attackers_of[index.at(to)].push_back(index.at(from));
            targets_of[index.at(from)].push_back(index.at(to));
        }
    }

    std::size_t size() const { return args.size(); }

    Labelling to_labelling(const std::vector<Label>& labels,
                           const std::vector<int>& assignment) const {
        std::map<ArgumentId, Label> out;
        for (std::size_t i = 0; i < args.size(); ++i) out.emplace(args[i], labels[assignment[i]]);
        return Labelling(std::move(out));
    }
};

constexpr int kUnassigned = -1;

// Two-valued backtracking over {in, lc}; prunes on in-in conflicts and
// confirms the defence condition at the leaves.
void enumerate_in_sets(const Graph& g, std::vector<int>& assignment, std::size_t pos,
                       const std::function<bool(const std::vector<int>&)>& leaf_check,
                       std::vector<Labelling>& out) {
    static const std::vector<Label> kLabels = {kIn, kLc};
    if (pos == g.size()) {
        if (leaf_check(assignment)) out.push_back(g.to_labelling(kLabels, assignment));
        return;
    }
    for (int value = 0; value < 2; ++value) {
        bool conflict = false;
        if (value == 0) {
            for (int attacker : g.attackers_of[pos]) {
                if (attacker < static_cast<int>(pos) && assignment[attacker] == 0) {
                    conflict = true;
                    break;
                }
            }
            if (!conflict && std::find(g.attackers_of[pos].begin(), g.attackers_of[pos].end(),
                                       static_cast<int>(pos)) != g.attackers_of[pos].end())
                conflict = true;
            if (!conflict) {
                for (int target : g.targets_of[pos]) {
                    if (target < static_cast<int>(pos) && assignment[target] == 0) {
                        conflict = true;
                        break;
                    }
                }
            }
        }
        if (conflict) continue;
        assignment[pos] = value;
        enumerate_in_sets(g, assignment, pos + 1, leaf_check, out);
    }
    assignment[pos] = kUnassigned;
}

bool in_set_defends(const Graph& g, const std::vector<int>& assignment, int a) {
    for (int attacker : g.attackers_of[a]) {
        bool countered = false;
        for (int counter : g.attackers_of[attacker]) {
            if (assignment[counter] == 0) {
                countered = true;
                break;
            }
        }
        if (!countered) return false;
    }
    return true;
}

bool admissible_leaf(const Graph& g, const std::vector<int>& assignment) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (assignment[i] == 0 && !in_set_defends(g, assignment, static_cast<int>(i)))
            return false;
    }
    return true;
}

bool complete_weak_leaf(const Graph& g, const std::vector<int>& assignment) {
    if (!admissible_leaf(g, assignment)) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (assignment[i] != 0 && in_set_defends(g, assignment, static_cast<int>(i)))
            return false;
    }
    return true;
}

// Strong-sense labels.
constexpr int kStIn = 0, kStOut = 1, kStUnd = 2;

bool complete_strong_leaf(const Graph& g, const std::vector<int>& assignment) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool all_attackers_out = true;
        bool some_attacker_in = false;
        for (int attacker : g.attackers_of[i]) {
            if (assignment[attacker] != kStOut) all_attackers_out = false;
            if (assignment[attacker] == kStIn) some_attacker_in = true;
        }
        if ((assignment[i] == kStIn) != all_attackers_out) return false;
        if ((assignment[i] == kStOut) != some_attacker_in) return false;
    }
    return true;
}

// Partial-assignment propagation of the two iff rules; returns false when
// the prefix assignment can no longer be extended to a complete labelling.
bool strong_prefix_consistent(const Graph& g, const std::vector<int>& assignment, int pos) {
    for (int i = 0; i <= pos; ++i) {
        bool all_assigned = true;
        bool some_attacker_in = false;
        bool some_attacker_und = false;
        for (int attacker : g.attackers_of[i]) {
            if (assignment[attacker] == kUnassigned) {
                all_assigned = false;
                continue;
            }
            if (assignment[attacker] == kStIn) some_attacker_in = true;
            if (assignment[attacker] == kStUnd) some_attacker_und = true;
        }
        switch (assignment[i]) {
            case kStIn:
                if (some_attacker_in || some_attacker_und) return false;
                break;
            case kStOut:
                if (all_assigned && !some_attacker_in) return false;
                break;
            case kStUnd:
                if (some_attacker_in) return false;
                if (all_assigned && !some_attacker_und) return false;
                break;
            default:
                break;
        }
    }
    return true;
}

void enumerate_strong_complete(const Graph& g, std::vector<int>& assignment, std::size_t pos,
                               std::vector<Labelling>& out) {
    static const std::vector<Label> kLabels = {kIn, kOut, kUnd};
    if (pos == g.size()) {
        if (complete_strong_leaf(g, assignment))
            out.push_back(g.to_labelling(kLabels, assignment));
        return;
    }
    for (int value = 0; value < 3; ++value) {
        assignment[pos] = value;
        if (strong_prefix_consistent(g, assignment, static_cast<int>(pos)))
            enumerate_strong_complete(g, assignment, pos + 1, out);
    }
    assignment[pos] = kUnassigned;
}

std::vector<Labelling> maximal_under_commitment(const std::vector<Labelling>& complete) {
    std::vector<Labelling> result;
    for (const auto& candidate : complete) {
        bool dominated = false;
        for (const auto& other : complete) {
            if (other == candidate) continue;
            if (commitment_leq(candidate, other) && !commitment_leq(other, candidate)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) result.push_back(candidate);
    }
    return result;
}

}  // namespace

SemanticsKind semantics_kind_from_name(const std::string& name) {
    if (name == "admissible") return SemanticsKind::Admissible;
    if (name == "complete") return SemanticsKind::Complete;
    if (name == "preferred") return SemanticsKind::Preferred;
    if (name == "grounded") return SemanticsKind::Grounded;
    if (name == "stable") return SemanticsKind::Stable;
    throw std::invalid_argument("unknown semantics '" + name + "'");
}

std::string to_string(SemanticsKind kind) {
    switch (kind) {
        case SemanticsKind::Admissible: return "admissible";
        case SemanticsKind::Complete: return "complete";
        case SemanticsKind::Preferred: return "preferred";
        case SemanticsKind::Grounded: return "grounded";
        case SemanticsKind::Stable: return "stable";
    }
    return "";
}

Sense sense_from_name(const std::string& name) {
    if (name == "weak") return Sense::Weak;
    if (name == "strong") return Sense::Strong;
    throw std::invalid_argument("unknown sense '" + name + "'");
}

std::string to_string(Sense sense) { return sense == Sense::Weak ? "weak" : "strong"; }

std::vector<Labelling> canonical_labelling_order(std::vector<Labelling> labellings,
                                                 const LabelAlphabet& alphabet) {
    auto key = [&](const Labelling& lab) {
        std::vector<std::size_t> indices;
        indices.reserve(lab.size());
        for (const auto& [_, l] : lab.assignment()) indices.push_back(alphabet.index_of(l));
        return indices;
    };
    std::sort(labellings.begin(), labellings.end(), [&](const Labelling& x, const Labelling& y) {
        if (x.domain() != y.domain()) return x.domain() < y.domain();
        return key(x) < key(y);
    });
    labellings.erase(std::unique(labellings.begin(), labellings.end()), labellings.end());
    return labellings;
}

std::vector<Labelling> enumerate_admissible(const ArgumentationFramework& af) {
    Graph g(af);
    std::vector<int> assignment(g.size(), kUnassigned);
    std::vector<Labelling> out;
    enumerate_in_sets(
        g, assignment, 0, [&](const std::vector<int>& leaf) { return admissible_leaf(g, leaf); },
        out);
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> enumerate_complete(const ArgumentationFramework& af, Sense sense) {
    Graph g(af);
    std::vector<int> assignment(g.size(), kUnassigned);
    std::vector<Labelling> out;
    if (sense == Sense::Weak) {
        enumerate_in_sets(
            g, assignment, 0,
            [&](const std::vector<int>& leaf) { return complete_weak_leaf(g, leaf); }, out);
    } else {
        enumerate_strong_complete(g, assignment, 0, out);
    }
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> enumerate_preferred(const ArgumentationFramework& af, Sense sense) {
    return canonical_labelling_order(maximal_under_commitment(enumerate_complete(af, sense)));
}

Labelling compute_grounded(const ArgumentationFramework& af, Sense sense) {
    Graph g(af);
    std::vector<bool> accepted(g.size(), false), rejected(g.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (accepted[i] || rejected[i]) continue;
            bool all_out = true;
            for (int attacker : g.attackers_of[i]) {
                if (!rejected[attacker]) {
                    all_out = false;
                    break;
                }
            }
            if (all_out) {
                accepted[i] = true;
                changed = true;
                for (int target : g.targets_of[i]) {
                    if (!rejected[target]) rejected[target] = true;
                }
            }
        }
    }
    std::map<ArgumentId, Label> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (accepted[i]) {
            out.emplace(g.args[i], kIn);
        } else if (sense == Sense::Strong) {
            out.emplace(g.args[i], rejected[i] ? kOut : kUnd);
        } else {
            out.emplace(g.args[i], kLc);
        }
    }
    return Labelling(std::move(out));
}

std::vector<Labelling> enumerate_stable(const ArgumentationFramework& af, Sense sense) {
    auto complete = enumerate_complete(af, sense);
    std::vector<Labelling> out;
    if (sense == Sense::Strong) {
        for (const auto& lab : complete) {
            if (count_label(lab, kUnd) == 0) out.push_back(lab);
        }
    } else {
        for (const auto& lab : complete) {
            bool every_non_in_attacked = true;
            for (const auto& [a, l] : lab.assignment()) {
                if (l == kIn) continue;
                bool attacked = false;
                for (const auto& [b, lb] : lab.assignment()) {
                    if (lb == kIn && af.has_attack(b, a)) {
                        attacked = true;
                        break;
                    }
                }
                if (!attacked) {
                    every_non_in_attacked = false;
                    break;
                }
            }
            if (every_non_in_attacked) out.push_back(lab);
        }
    }
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> explanation_semantics(const ArgumentationFramework& af,
                                             const ArgumentId& a) {
    auto relevant = relevance_set(af, a);
    auto sub = subframework(af, relevant);
    std::vector<Labelling> out;
    for (const auto& lab : enumerate_admissible(sub)) {
        if (lab.at(a) == kIn) out.push_back(lab);
    }
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> local_semantics(const ArgumentationFramework& af,
                                       const std::set<ArgumentId>& known,
                                       const std::set<ArgumentId>& own, SemanticsKind base,
                                       Sense sense) {
    for (const auto& a : own) {
        if (!known.count(a))
            throw std::invalid_argument("own arguments must be contained in the known set");
    }
    for (const auto& a : known) {
        if (!af.has_argument(a)) throw std::invalid_argument("unknown argument '" + a + "'");
    }
    std::vector<Labelling> out;
    for (const auto& lab : enumerate_semantics(subframework(af, known), base, sense))
        out.push_back(restrict_labelling(lab, own));
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> multi_agent_semantics(
    const std::vector<Labelling>& global,
    const std::vector<std::pair<std::set<ArgumentId>, std::vector<Labelling>>>& locals) {
    std::set<ArgumentId> blocks_union;
    for (const auto& [block, labellings] : locals) {
        for (const auto& a : block) {
            if (!blocks_union.insert(a).second)
                throw std::invalid_argument("agent blocks overlap at '" + a + "'");
        }
        for (const auto& lab : labellings) {
            if (lab.domain() != block)
                throw std::invalid_argument("local labelling domain differs from its block");
        }
    }
    std::vector<Labelling> out;
    for (const auto& lab : global) {
        if (lab.domain() != blocks_union)
            throw std::invalid_argument("agent blocks do not partition the global domain");
        bool all_match = true;
        for (const auto& [block, labellings] : locals) {
            Labelling restricted = restrict_labelling(lab, block);
            if (std::find(labellings.begin(), labellings.end(), restricted) ==
                labellings.end()) {
                all_match = false;
                break;
            }
        }
        if (all_match) out.push_back(lab);
    }
    return canonical_labelling_order(std::move(out));
}

std::vector<Labelling> enumerate_semantics(const ArgumentationFramework& af, SemanticsKind kind,
                                           Sense sense) {
    switch (kind) {
        case SemanticsKind::Admissible: return enumerate_admissible(af);
        case SemanticsKind::Complete: return enumerate_complete(af, sense);
        case SemanticsKind::Preferred: return enumerate_preferred(af, sense);
        case SemanticsKind::Grounded: return {compute_grounded(af, sense)};
        case SemanticsKind::Stable: return enumerate_stable(af, sense);
    }
    throw std::logic_error("unreachable");
}

}  // namespace arglab
