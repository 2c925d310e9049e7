#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arglab/af.hpp"

namespace arglab {

using Label = std::string;

inline const Label kIn = "in";
inline const Label kOut = "out";
inline const Label kUnd = "und";
inline const Label kLc = "lc";

/// Ordered finite label set. "in" must be present; the declared order is the
/// one used for canonical row sorting and serialization.
class LabelAlphabet {
public:
    LabelAlphabet() : LabelAlphabet({kIn, kOut, kUnd, kLc}) {}
    explicit LabelAlphabet(std::vector<Label> labels);

    const std::vector<Label>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool contains(const Label& l) const;
    /// Position in the declared order; throws for unknown labels.
    std::size_t index_of(const Label& l) const;

    bool operator==(const LabelAlphabet&) const = default;

private:
    std::vector<Label> labels_;
};

/// A partial map from arguments to labels.
class Labelling {
public:
    Labelling() = default;
    explicit Labelling(std::map<ArgumentId, Label> assignment)
        : assignment_(std::move(assignment)) {}
    Labelling(std::initializer_list<std::pair<const ArgumentId, Label>> pairs)
        : assignment_(pairs) {}

    const std::map<ArgumentId, Label>& assignment() const { return assignment_; }
    std::set<ArgumentId> domain() const;
    bool contains(const ArgumentId& a) const { return assignment_.count(a) > 0; }
    const Label& at(const ArgumentId& a) const;
    std::size_t size() const { return assignment_.size(); }
    bool empty() const { return assignment_.empty(); }

    bool operator==(const Labelling&) const = default;
    auto operator<=>(const Labelling&) const = default;

private:
    std::map<ArgumentId, Label> assignment_;
};

std::size_t count_label(const Labelling& lab, const Label& l,
                        const LabelAlphabet& alphabet = LabelAlphabet());

Labelling restrict_labelling(const Labelling& lab, const std::set<ArgumentId>& subset);

/// No in-labelled argument attacks an in-labelled argument.
bool is_conflict_free(const ArgumentationFramework& af, const Labelling& lab);

/// Every attacker of `a` is counter-attacked by some member of `group`.
bool defends(const ArgumentationFramework& af, const std::set<ArgumentId>& group,
             const ArgumentId& a);

/// Three-clause precedence: equal domains, equal sets of used labels, and
/// lab2 agreeing with lab1 wherever lab1 is neither und nor lc. Stricter
/// than commitment_leq; kept for comparison and tests.
bool literal_preceq(const Labelling& lab1, const Labelling& lab2);

/// Commitment order on equal domains: every in/out assignment of lab1 is
/// preserved by lab2.
bool commitment_leq(const Labelling& lab1, const Labelling& lab2);

}  // namespace arglab
