#pragma once

#include <random>
#include <string>
#include <vector>

#include "arglab/fixtures.hpp"
#include "arglab/table.hpp"

namespace testsupport {

using namespace arglab;

inline Labelling lab(std::initializer_list<std::pair<const ArgumentId, Label>> pairs) {
    return Labelling(pairs);
}

// Rows of the reference complete table over aA..aG.
inline Labelling complete_grounded_row() {
    return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kUnd}, {"aD", kUnd},
                {"aC", kUnd}, {"aB", kUnd}, {"aA", kUnd}});
}
inline Labelling complete_mid_row() {
    return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kIn}, {"aD", kOut},
                {"aC", kUnd}, {"aB", kUnd}, {"aA", kUnd}});
}
inline Labelling complete_stable_row() {
    return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kOut}, {"aD", kIn},
                {"aC", kOut}, {"aB", kIn}, {"aA", kOut}});
}

// Rows of the reference admissible table (in-sets {F}, {F,E}, {F,D}, {F,D,B}).
inline Labelling admissible_f_row() {
    return lab({{"aG", kLc}, {"aF", kIn}, {"aE", kLc}, {"aD", kLc},
                {"aC", kLc}, {"aB", kLc}, {"aA", kLc}});
}
inline Labelling admissible_fe_row() {
    return lab({{"aG", kLc}, {"aF", kIn}, {"aE", kIn}, {"aD", kLc},
                {"aC", kLc}, {"aB", kLc}, {"aA", kLc}});
}
inline Labelling admissible_fd_row() {
    return lab({{"aG", kLc}, {"aF", kIn}, {"aE", kLc}, {"aD", kIn},
                {"aC", kLc}, {"aB", kLc}, {"aA", kLc}});
}
inline Labelling admissible_fdb_row() {
    return lab({{"aG", kLc}, {"aF", kIn}, {"aE", kLc}, {"aD", kIn},
                {"aC", kLc}, {"aB", kIn}, {"aA", kLc}});
}

inline Labelling explain_b_row() {
    return lab({{"aE", kLc}, {"aD", kIn}, {"aC", kLc}, {"aB", kIn}, {"aA", kLc}});
}

inline Labelling agent1_und_row() { return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kUnd}}); }
inline Labelling agent1_in_row() { return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kIn}}); }
inline Labelling agent1_out_row() { return lab({{"aG", kOut}, {"aF", kIn}, {"aE", kOut}}); }
inline Labelling agent2_row() {
    return lab({{"aD", kIn}, {"aC", kOut}, {"aB", kIn}, {"aA", kOut}});
}

inline std::set<ArgumentId> full_header() {
    return {"aA", "aB", "aC", "aD", "aE", "aF", "aG"};
}

inline ArgumentationFramework random_framework(std::mt19937& rng, int max_args,
                                               double density) {
    std::uniform_int_distribution<int> size_dist(0, max_args);
    int n = size_dist(rng);
    std::set<ArgumentId> args;
    for (int i = 0; i < n; ++i) args.insert("a" + std::to_string(i));
    std::bernoulli_distribution edge(density);
    std::set<Attack> attacks;
    for (const auto& x : args) {
        for (const auto& y : args) {
            if (edge(rng)) attacks.insert({x, y});
        }
    }
    return ArgumentationFramework(std::move(args), std::move(attacks));
}

inline bool same_labellings(const std::vector<Labelling>& a, const std::vector<Labelling>& b) {
    return canonical_labelling_order(a) == canonical_labelling_order(b);
}

}  // namespace testsupport
