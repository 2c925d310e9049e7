#include "arglab/labelling.hpp"

#include <algorithm>
#include <stdexcept>

namespace arglab {

LabelAlphabet::LabelAlphabet(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("label alphabet must not be empty");
    for (const auto& l : labels_) {
        if (l.empty()) throw std::invalid_argument("label names must not be empty");
        if (std::count(labels_.begin(), labels_.end(), l) != 1)
            throw std::invalid_argument("duplicate label '" + l + "' in alphabet");
    }
    if (!contains(kIn)) throw std::invalid_argument("label alphabet must contain 'in'");
}

bool LabelAlphabet::contains(const Label& l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

std::size_t LabelAlphabet::index_of(const Label& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw std::invalid_argument("label '" + l + "' is not in the alphabet");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::set<ArgumentId> Labelling::domain() const {
    std::set<ArgumentId> result;
    for (const auto& [a, _] : assignment_) result.insert(a);
    return result;
}

const Label& Labelling::at(const ArgumentId& a) const {
    auto it = assignment_.find(a);
    if (it == assignment_.end())
        throw std::invalid_argument("argument '" + a + "' is not in the labelling domain");
    return it->second;
}

std::size_t count_label(const Labelling& lab, const Label& l, const LabelAlphabet& alphabet) {
    if (!alphabet.contains(l))
        throw std::invalid_argument("label '" + l + "' is not in the alphabet");
    std::size_t n = 0;
    for (const auto& [_, label] : lab.assignment()) {
        if (label == l) ++n;
    }
    return n;
}

Labelling restrict_labelling(const Labelling& lab, const std::set<ArgumentId>& subset) {
    std::map<ArgumentId, Label> restricted;
    for (const auto& a : subset) {
        auto it = lab.assignment().find(a);
        if (it == lab.assignment().end())
            throw std::invalid_argument("argument '" + a + "' is not in the labelling domain");
        restricted.emplace(a, it->second);
    }
    return Labelling(std::move(restricted));
}

bool is_conflict_free(const ArgumentationFramework& af, const Labelling& lab) {
    for (const auto& [a, _] : lab.assignment()) {
        if (!af.has_argument(a))
            throw std::invalid_argument("labelling mentions unknown argument '" + a + "'");
    }
    for (const auto& [a1, l1] : lab.assignment()) {
        if (l1 != kIn) continue;
        for (const auto& [a2, l2] : lab.assignment()) {
            if (l2 == kIn && af.has_attack(a1, a2)) return false;
        }
    }
    return true;
}

bool defends(const ArgumentationFramework& af, const std::set<ArgumentId>& group,
             const ArgumentId& a) {
    if (!af.has_argument(a)) throw std::invalid_argument("unknown argument '" + a + "'");
    for (const auto& g : group) {
        if (!af.has_argument(g)) throw std::invalid_argument("unknown argument '" + g + "'");
    }
    for (const auto& attacker : attackers(af, a)) {
        bool countered = false;
        for (const auto& g : group) {
            if (af.has_attack(g, attacker)) {
                countered = true;
                break;
            }
        }
        if (!countered) return false;
    }
    return true;
}

bool literal_preceq(const Labelling& lab1, const Labelling& lab2) {
    if (lab1.domain() != lab2.domain()) return false;
    std::set<Label> used1, used2;
    for (const auto& [_, l] : lab1.assignment()) used1.insert(l);
    for (const auto& [_, l] : lab2.assignment()) used2.insert(l);
    if (used1 != used2) return false;
    for (const auto& [a, l] : lab1.assignment()) {
        if (l == kUnd || l == kLc) continue;
        if (lab2.at(a) != l) return false;
    }
    return true;
}

bool commitment_leq(const Labelling& lab1, const Labelling& lab2) {
    if (lab1.domain() != lab2.domain())
        throw std::invalid_argument("commitment_leq requires equal domains");
    for (const auto& [a, l] : lab1.assignment()) {
        if ((l == kIn || l == kOut) && lab2.at(a) != l) return false;
    }
    return true;
}

}  // namespace arglab
