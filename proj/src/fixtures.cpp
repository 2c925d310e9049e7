#include "arglab/fixtures.hpp"

#include <stdexcept>

namespace arglab {

namespace {

Labelling row(const std::vector<ArgumentId>& args, const std::vector<Label>& labels) {
    std::map<ArgumentId, Label> assignment;
    for (std::size_t i = 0; i < args.size(); ++i) assignment.emplace(args[i], labels[i]);
    return Labelling(std::move(assignment));
}

// Column order aG, aF, aE, aD, aC, aB, aA and its suffixes, matching the
// reference tables.
const std::vector<ArgumentId> kAll = {"aG", "aF", "aE", "aD", "aC", "aB", "aA"};
const std::vector<ArgumentId> kClosureB = {"aE", "aD", "aC", "aB", "aA"};
const std::vector<ArgumentId> kAgent1Own = {"aG", "aF", "aE"};
const std::vector<ArgumentId> kAgent2Own = {"aD", "aC", "aB", "aA"};

struct ScanGraph {
    std::vector<ArgumentId> args;
    std::vector<std::vector<int>> attackers_of;

    explicit ScanGraph(const ArgumentationFramework& af)
        : args(af.arguments().begin(), af.arguments().end()), attackers_of(args.size()) {
        std::map<ArgumentId, int> index;
        for (std::size_t i = 0; i < args.size(); ++i) index[args[i]] = static_cast<int>(i);
        for (const auto& [from, to] : af.attacks())
            attackers_of[index.at(to)].push_back(index.at(from));
    }
};

bool scan_conflict_free(const ScanGraph& g, const std::vector<int>& in_set) {
    for (std::size_t a = 0; a < g.args.size(); ++a) {
        if (!in_set[a]) continue;
        for (int attacker : g.attackers_of[a]) {
            if (in_set[attacker]) return false;
        }
    }
    return true;
}

bool scan_defended(const ScanGraph& g, const std::vector<int>& in_set, std::size_t a) {
    for (int attacker : g.attackers_of[a]) {
        bool countered = false;
        for (int counter : g.attackers_of[attacker]) {
            if (in_set[counter]) {
                countered = true;
                break;
            }
        }
        if (!countered) return false;
    }
    return true;
}

bool scan_admissible(const ScanGraph& g, const std::vector<int>& in_set) {
    if (!scan_conflict_free(g, in_set)) return false;
    for (std::size_t a = 0; a < g.args.size(); ++a) {
        if (in_set[a] && !scan_defended(g, in_set, a)) return false;
    }
    return true;
}

std::vector<std::vector<int>> all_in_sets(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<int> in_set(n, 0);
        for (std::size_t i = 0; i < n; ++i) in_set[i] = (mask >> i) & 1;
        out.push_back(std::move(in_set));
    }
    return out;
}

Labelling two_valued(const ScanGraph& g, const std::vector<int>& in_set) {
    std::map<ArgumentId, Label> assignment;
    for (std::size_t i = 0; i < g.args.size(); ++i)
        assignment.emplace(g.args[i], in_set[i] ? kIn : kLc);
    return Labelling(std::move(assignment));
}

std::vector<Labelling> scan_admissible_all(const ScanGraph& g) {
    std::vector<Labelling> out;
    for (const auto& in_set : all_in_sets(g.args.size())) {
        if (scan_admissible(g, in_set)) out.push_back(two_valued(g, in_set));
    }
    return out;
}

std::vector<Labelling> scan_complete_weak(const ScanGraph& g) {
    std::vector<Labelling> out;
    for (const auto& in_set : all_in_sets(g.args.size())) {
        if (!scan_admissible(g, in_set)) continue;
        bool closed = true;
        for (std::size_t a = 0; a < g.args.size(); ++a) {
            if (!in_set[a] && scan_defended(g, in_set, a)) {
                closed = false;
                break;
            }
        }
        if (closed) out.push_back(two_valued(g, in_set));
    }
    return out;
}

std::vector<Labelling> scan_complete_strong(const ScanGraph& g) {
    const std::vector<Label> kThree = {kIn, kOut, kUnd};
    std::size_t n = g.args.size();
    std::vector<Labelling> out;
    std::vector<int> labels(n, 0);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t tick = 0; tick < total; ++tick) {
        bool complete = true;
        for (std::size_t a = 0; a < n && complete; ++a) {
            bool all_out = true, some_in = false;
            for (int attacker : g.attackers_of[a]) {
                if (labels[attacker] != 1) all_out = false;
                if (labels[attacker] == 0) some_in = true;
            }
            if ((labels[a] == 0) != all_out) complete = false;
            if ((labels[a] == 1) != some_in) complete = false;
        }
        if (complete) {
            std::map<ArgumentId, Label> assignment;
            for (std::size_t i = 0; i < n; ++i) assignment.emplace(g.args[i], kThree[labels[i]]);
            out.emplace_back(std::move(assignment));
        }
        for (std::size_t i = n; i-- > 0;) {
            if (++labels[i] < 3) break;
            labels[i] = 0;
        }
    }
    return out;
}

bool scan_commitment_leq(const Labelling& x, const Labelling& y) {
    for (const auto& [a, l] : x.assignment()) {
        if ((l == kIn || l == kOut) && y.at(a) != l) return false;
    }
    return true;
}

std::vector<Labelling> scan_complete(const ScanGraph& g, Sense sense) {
    return sense == Sense::Strong ? scan_complete_strong(g) : scan_complete_weak(g);
}

std::vector<Labelling> scan_preferred(const ScanGraph& g, Sense sense) {
    auto complete = scan_complete(g, sense);
    std::vector<Labelling> out;
    for (const auto& c : complete) {
        bool dominated = false;
        for (const auto& other : complete) {
            if (!(other == c) && scan_commitment_leq(c, other) &&
                !scan_commitment_leq(other, c)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(c);
    }
    return out;
}

std::vector<Labelling> scan_grounded(const ScanGraph& g, Sense sense) {
    auto complete = scan_complete(g, sense);
    for (const auto& c : complete) {
        bool below_all = true;
        for (const auto& other : complete) {
            if (!scan_commitment_leq(c, other)) {
                below_all = false;
                break;
            }
        }
        if (below_all) return {c};
    }
    throw std::logic_error("no commitment-least complete labelling found");
}

std::vector<Labelling> scan_stable(const ScanGraph& g, const ArgumentationFramework& af,
                                   Sense sense) {
    auto complete = scan_complete(g, sense);
    std::vector<Labelling> out;
    for (const auto& c : complete) {
        bool ok = true;
        if (sense == Sense::Strong) {
            for (const auto& [_, l] : c.assignment()) {
                if (l == kUnd) {
                    ok = false;
                    break;
                }
            }
        } else {
            for (const auto& [a, l] : c.assignment()) {
                if (l == kIn) continue;
                bool attacked = false;
                for (const auto& [b, lb] : c.assignment()) {
                    if (lb == kIn && af.has_attack(b, a)) {
                        attacked = true;
                        break;
                    }
                }
                if (!attacked) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(c);
    }
    return out;
}

}  // namespace

ArgumentationFramework reference_framework() {
    std::set<ArgumentId> args = {"aA", "aB", "aC", "aD", "aE", "aF", "aG"};
    std::set<Attack> attacks = {{"aF", "aG"}, {"aE", "aD"}, {"aD", "aE"}, {"aD", "aC"},
                                {"aC", "aB"}, {"aB", "aA"}, {"aA", "aC"}};
    return ArgumentationFramework(std::move(args), std::move(attacks));
}

Database reference_database() {
    LabelAlphabet alphabet;
    std::map<std::string, ArgLabellingTable> tables;

    tables.emplace("tbl1", make_table(std::set<ArgumentId>(kAll.begin(), kAll.end()),
                                      {row(kAll, {kLc, kIn, kLc, kLc, kLc, kLc, kLc}),
                                       row(kAll, {kLc, kIn, kIn, kLc, kLc, kLc, kLc}),
                                       row(kAll, {kLc, kIn, kLc, kIn, kLc, kLc, kLc}),
                                       row(kAll, {kLc, kIn, kLc, kIn, kLc, kIn, kLc})}));
    tables.emplace("tbl2", make_table(std::set<ArgumentId>(kAll.begin(), kAll.end()),
                                      {row(kAll, {kOut, kIn, kUnd, kUnd, kUnd, kUnd, kUnd}),
                                       row(kAll, {kOut, kIn, kIn, kOut, kUnd, kUnd, kUnd}),
                                       row(kAll, {kOut, kIn, kOut, kIn, kOut, kIn, kOut})}));
    tables.emplace("tbl3", make_table(std::set<ArgumentId>(kClosureB.begin(), kClosureB.end()),
                                      {row(kClosureB, {kLc, kIn, kLc, kIn, kLc})}));
    tables.emplace("tbl4", make_table(std::set<ArgumentId>(kAgent1Own.begin(), kAgent1Own.end()),
                                      {row(kAgent1Own, {kOut, kIn, kUnd}),
                                       row(kAgent1Own, {kOut, kIn, kIn}),
                                       row(kAgent1Own, {kOut, kIn, kOut})}));
    tables.emplace("tbl5", make_table(std::set<ArgumentId>(kAgent2Own.begin(), kAgent2Own.end()),
                                      {row(kAgent2Own, {kIn, kOut, kIn, kOut})}));
    return make_database(alphabet, std::move(tables));
}

std::vector<Labelling> brute_force_semantics(const ArgumentationFramework& af,
                                             SemanticsKind kind, Sense sense) {
    if (af.arguments().size() > 8)
        throw std::invalid_argument("brute-force oracle is limited to 8 arguments");
    ScanGraph g(af);
    std::vector<Labelling> out;
    switch (kind) {
        case SemanticsKind::Admissible: out = scan_admissible_all(g); break;
        case SemanticsKind::Complete: out = scan_complete(g, sense); break;
        case SemanticsKind::Preferred: out = scan_preferred(g, sense); break;
        case SemanticsKind::Grounded: out = scan_grounded(g, sense); break;
        case SemanticsKind::Stable: out = scan_stable(g, af, sense); break;
    }
    return canonical_labelling_order(std::move(out));
}

}  // namespace arglab
