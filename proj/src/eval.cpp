#include "arglab/eval.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>

namespace arglab {

namespace {

// Candidate spaces larger than this are refused by the full-space scan.
constexpr std::uint64_t kMaxNaiveSpace = std::uint64_t(1) << 26;

using Digits = std::vector<std::uint8_t>;

// The sorted argument list a variable ranges over. Values are stored as one
// label index per argument; when |L|^n fits, a base-|L| key (first argument
// most significant) doubles as a fast membership handle, and ascending keys
// coincide with the canonical row order.
struct Frame {
    std::vector<ArgumentId> args;
    std::uint64_t radix = 1;
    bool keyed = false;
    std::uint64_t space = 1;  // |L|^n when keyed

    Frame() = default;
    Frame(const std::set<ArgumentId>& argset, std::size_t alphabet_size)
        : args(argset.begin(), argset.end()), radix(alphabet_size) {
        keyed = true;
        space = 1;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (space > (std::uint64_t(1) << 62) / std::max<std::uint64_t>(radix, 1)) {
                keyed = false;
                space = 0;
                break;
            }
            space *= std::max<std::uint64_t>(radix, 1);
        }
    }

    int position_of(const ArgumentId& a) const {
        auto it = std::lower_bound(args.begin(), args.end(), a);
        if (it == args.end() || *it != a) return -1;
        return static_cast<int>(it - args.begin());
    }
};

struct SlotValue {
    Digits digits;
    std::uint64_t key = 0;
};

std::uint64_t pack_digits(const Digits& digits, std::uint64_t radix) {
    std::uint64_t key = 0;
    for (std::uint8_t d : digits) key = key * radix + d;
    return key;
}

struct CandidateSet {
    std::vector<Digits> rows;         // sorted, unique
    std::vector<std::uint64_t> keys;  // parallel to rows when the frame is keyed
    bool keyed = false;
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    enum Kind {
        ConstBool,
        EqVarVar,
        EqVarLabel,
        Membership,
        CountLeCountK,
        CountLeNatK,
        NatLeCountK,
        NotK,
        AndK,
        OrK,
        QuantK
    } kind;

    bool value = false;                      // ConstBool
    int slot1 = -1, pos1 = -1;               // variable/argument references
    int slot2 = -1, pos2 = -1;
    std::uint8_t label1 = 0, label2 = 0;
    std::uint64_t bound = 0;
    CandidateSet membership;                 // Membership
    NodePtr lhs, rhs;                        // NotK uses lhs only
    bool is_forall = false;                  // QuantK
    int quant_slot = -1;
    const Frame* quant_frame = nullptr;
    std::optional<CandidateSet> quant_candidates;  // guarded mode
    NodePtr body;
};

NodePtr const_node(bool value) {
    auto n = std::make_unique<Node>();
    n->kind = Node::ConstBool;
    n->value = value;
    return n;
}

struct BindingEntry {
    std::string name;
    int slot;
};

class Compiler {
public:
    Compiler(const Database& db, const EvalOptions& options, bool guarded)
        : db_(db), options_(options), guarded_(guarded),
          alphabet_(db.schema().labels()) {
        if (alphabet_.size() > 250) throw EvalError("label alphabet too large for evaluation");
    }

    int add_slot(const std::set<ArgumentId>& argset) {
        frames_.push_back(std::make_unique<Frame>(argset, alphabet_.size()));
        return static_cast<int>(frames_.size()) - 1;
    }

    void bind(const std::string& name, int slot) { env_.push_back({name, slot}); }
    void unbind() { env_.pop_back(); }

    const Frame& frame(int slot) const { return *frames_[slot]; }
    std::size_t slot_count() const { return frames_.size(); }

    NodePtr compile(const FormulaPtr& f) {
        if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) return compile_atom(*atom);
        if (const auto* n = std::get_if<NotF>(&f->node)) {
            auto out = std::make_unique<Node>();
            out->kind = Node::NotK;
            out->lhs = compile(n->inner);
            return out;
        }
        if (const auto* n = std::get_if<AndF>(&f->node))
            return compile_binary(Node::AndK, n->lhs, n->rhs);
        if (const auto* n = std::get_if<OrF>(&f->node))
            return compile_binary(Node::OrK, n->lhs, n->rhs);
        if (const auto* n = std::get_if<ExistsF>(&f->node))
            return compile_quant(false, n->var, n->argset, n->body);
        const auto* n = std::get_if<ForallF>(&f->node);
        return compile_quant(true, n->var, n->argset, n->body);
    }

    // Projections of every positive (for exists and binders) or negative
    // (for forall) membership guard of `var` inside `f`.
    CandidateSet guard_candidates(const FormulaPtr& f, const std::string& var, int slot,
                                  bool want_negative) {
        std::set<std::string> tables;
        collect_guards(f, var, want_negative ? -1 : +1, tables);
        CandidateSet set;
        std::set<Digits> unique_rows;
        const Frame& fr = frame(slot);
        for (const auto& table_name : tables) {
            const auto& table = db_.table(table_name);
            for (const auto& row : table.body()) unique_rows.insert(digits_for(row, fr));
        }
        set.rows.assign(unique_rows.begin(), unique_rows.end());
        set.keyed = fr.keyed;
        if (fr.keyed) {
            set.keys.reserve(set.rows.size());
            for (const auto& d : set.rows) set.keys.push_back(pack_digits(d, fr.radix));
        }
        return set;
    }

    Digits digits_for(const Labelling& lab, const Frame& fr) const {
        Digits digits(fr.args.size(), 0);
        for (std::size_t i = 0; i < fr.args.size(); ++i)
            digits[i] = static_cast<std::uint8_t>(alphabet_.index_of(lab.at(fr.args[i])));
        return digits;
    }

private:
    const BindingEntry* lookup(const std::string& name) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
            if (it->name == name) return &*it;
        }
        return nullptr;
    }

    int slot_of(const std::string& var) const {
        const BindingEntry* e = lookup(var);
        if (!e) throw EvalError("variable '" + var + "' is not bound");
        return e->slot;
    }

    NodePtr compile_binary(Node::Kind kind, const FormulaPtr& lhs, const FormulaPtr& rhs) {
        auto out = std::make_unique<Node>();
        out->kind = kind;
        out->lhs = compile(lhs);
        out->rhs = compile(rhs);
        return out;
    }

    NodePtr compile_quant(bool is_forall, const std::string& var,
                          const std::set<ArgumentId>& argset, const FormulaPtr& body) {
        auto out = std::make_unique<Node>();
        out->kind = Node::QuantK;
        out->is_forall = is_forall;
        int slot = add_slot(argset);
        out->quant_slot = slot;
        bind(var, slot);
        out->body = compile(body);
        if (guarded_) out->quant_candidates = guard_candidates(body, var, slot, is_forall);
        unbind();
        out->quant_frame = frames_[slot].get();
        return out;
    }

    NodePtr compile_atom(const AtomicFormula& atom) {
        return std::visit([&](const auto& a) { return compile_one(a); }, atom);
    }

    NodePtr compile_one(const VarArgEqVarArg& a) {
        int s1 = slot_of(a.var1), s2 = slot_of(a.var2);
        int p1 = frame(s1).position_of(a.arg1), p2 = frame(s2).position_of(a.arg2);
        if (p1 < 0 || p2 < 0) return const_node(false);
        auto out = std::make_unique<Node>();
        out->kind = Node::EqVarVar;
        out->slot1 = s1;
        out->pos1 = p1;
        out->slot2 = s2;
        out->pos2 = p2;
        return out;
    }

    NodePtr compile_one(const VarArgEqLabel& a) {
        int slot = slot_of(a.var);
        int pos = frame(slot).position_of(a.arg);
        if (pos < 0 || !alphabet_.contains(a.label)) return const_node(false);
        auto out = std::make_unique<Node>();
        out->kind = Node::EqVarLabel;
        out->slot1 = slot;
        out->pos1 = pos;
        out->label1 = static_cast<std::uint8_t>(alphabet_.index_of(a.label));
        return out;
    }

    NodePtr compile_one(const TableMembership& a) {
        if (!db_.has_table(a.table)) throw EvalError("unknown table '" + a.table + "'");
        int slot = slot_of(a.var);
        const Frame& fr = frame(slot);
        const auto& table = db_.table(a.table);
        const auto header = table.header_set();
        bool contained = std::all_of(fr.args.begin(), fr.args.end(),
                                     [&](const ArgumentId& x) { return header.count(x) > 0; });
        bool exact = contained && fr.args.size() == header.size();
        if (options_.strict_membership ? !exact : !contained) return const_node(false);
        auto out = std::make_unique<Node>();
        out->kind = Node::Membership;
        out->slot1 = slot;
        std::set<Digits> unique_rows;
        for (const auto& row : table.body()) unique_rows.insert(digits_for(row, fr));
        out->membership.rows.assign(unique_rows.begin(), unique_rows.end());
        out->membership.keyed = fr.keyed;
        if (fr.keyed) {
            for (const auto& d : out->membership.rows)
                out->membership.keys.push_back(pack_digits(d, fr.radix));
        }
        return out;
    }

    NodePtr compile_one(const CountLeCount& a) {
        auto out = std::make_unique<Node>();
        out->kind = Node::CountLeCountK;
        out->slot1 = slot_of(a.var1);
        out->slot2 = slot_of(a.var2);
        out->label1 = label_index(a.label1);
        out->label2 = label_index(a.label2);
        return out;
    }

    NodePtr compile_one(const CountLeNat& a) {
        auto out = std::make_unique<Node>();
        out->kind = Node::CountLeNatK;
        out->slot1 = slot_of(a.var);
        out->label1 = label_index(a.label);
        out->bound = a.bound;
        return out;
    }

    NodePtr compile_one(const NatLeCount& a) {
        auto out = std::make_unique<Node>();
        out->kind = Node::NatLeCountK;
        out->slot1 = slot_of(a.var);
        out->label1 = label_index(a.label);
        out->bound = a.bound;
        return out;
    }

    // Labels outside the alphabet can never occur in a value, so they count
    // as an unmatchable sentinel.
    std::uint8_t label_index(const Label& l) {
        if (!alphabet_.contains(l)) return 255;
        return static_cast<std::uint8_t>(alphabet_.index_of(l));
    }

    // Membership atoms for `var` reachable under the wanted polarity; +1
    // collects guards that hold when the formula holds, -1 those that hold
    // when it fails. Inner bindings of the same name shadow.
    void collect_guards(const FormulaPtr& f, const std::string& var, int want,
                        std::set<std::string>& out_tables) {
        if (const auto* atom = std::get_if<AtomicFormula>(&f->node)) {
            if (want == +1) {
                if (const auto* m = std::get_if<TableMembership>(atom)) {
                    if (m->var == var) out_tables.insert(m->table);
                }
            }
            return;
        }
        if (const auto* n = std::get_if<NotF>(&f->node)) {
            collect_guards(n->inner, var, -want, out_tables);
        } else if (const auto* n = std::get_if<AndF>(&f->node)) {
            collect_guards(n->lhs, var, want, out_tables);
            collect_guards(n->rhs, var, want, out_tables);
        } else if (const auto* n = std::get_if<OrF>(&f->node)) {
            collect_guards(n->lhs, var, want, out_tables);
            collect_guards(n->rhs, var, want, out_tables);
        } else if (const auto* n = std::get_if<ExistsF>(&f->node)) {
            if (n->var != var) collect_guards(n->body, var, want, out_tables);
        } else if (const auto* n = std::get_if<ForallF>(&f->node)) {
            if (n->var != var) collect_guards(n->body, var, want, out_tables);
        }
    }

    const Database& db_;
    const EvalOptions& options_;
    bool guarded_;
    const LabelAlphabet& alphabet_;
    std::vector<std::unique_ptr<Frame>> frames_;
    std::vector<BindingEntry> env_;
};

class Engine {
public:
    explicit Engine(std::vector<SlotValue> slots) : slots_(std::move(slots)) {}

    bool eval(const Node& n) {
        switch (n.kind) {
            case Node::ConstBool:
                return n.value;
            case Node::EqVarVar:
                return slots_[n.slot1].digits[n.pos1] == slots_[n.slot2].digits[n.pos2];
            case Node::EqVarLabel:
                return slots_[n.slot1].digits[n.pos1] == n.label1;
            case Node::Membership: {
                const SlotValue& v = slots_[n.slot1];
                if (n.membership.keyed) {
                    return std::binary_search(n.membership.keys.begin(), n.membership.keys.end(),
                                              v.key);
                }
                return std::binary_search(n.membership.rows.begin(), n.membership.rows.end(),
                                          v.digits);
            }
            case Node::CountLeCountK:
                return count(n.slot1, n.label1) <= count(n.slot2, n.label2);
            case Node::CountLeNatK:
                return count(n.slot1, n.label1) <= n.bound;
            case Node::NatLeCountK:
                return n.bound <= count(n.slot1, n.label1);
            case Node::NotK:
                return !eval(*n.lhs);
            case Node::AndK:
                return eval(*n.lhs) && eval(*n.rhs);
            case Node::OrK:
                return eval(*n.lhs) || eval(*n.rhs);
            case Node::QuantK:
                return eval_quant(n);
        }
        return false;
    }

    SlotValue& slot(int i) { return slots_[i]; }

private:
    std::uint64_t count(int slot, std::uint8_t label) const {
        const Digits& digits = slots_[slot].digits;
        return static_cast<std::uint64_t>(std::count(digits.begin(), digits.end(), label));
    }

    // forall over candidates C means: no member of C falsifies the body;
    // values outside C cannot falsify it by construction of the guards.
    bool eval_quant(const Node& n) {
        SlotValue& value = slots_[n.quant_slot];
        if (n.quant_candidates) {
            const CandidateSet& c = *n.quant_candidates;
            for (std::size_t i = 0; i < c.rows.size(); ++i) {
                value.digits = c.rows[i];
                value.key = c.keys.empty() ? 0 : c.keys[i];
                bool holds = eval(*n.body);
                if (n.is_forall && !holds) return false;
                if (!n.is_forall && holds) return true;
            }
            return n.is_forall;
        }
        const Frame& fr = *n.quant_frame;
        if (!fr.keyed || fr.space > kMaxNaiveSpace)
            throw EvalError("candidate space of a quantifier over " +
                            std::to_string(fr.args.size()) +
                            " arguments is too large; use the guarded evaluator");
        value.digits.assign(fr.args.size(), 0);
        value.key = 0;
        for (std::uint64_t key = 0; key < fr.space; ++key) {
            value.key = key;
            bool holds = eval(*n.body);
            if (n.is_forall && !holds) return false;
            if (!n.is_forall && holds) return true;
            increment(value.digits, fr.radix);
        }
        return n.is_forall;
    }

    static void increment(Digits& digits, std::uint64_t radix) {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < radix) return;
            digits[i] = 0;
        }
    }

    std::vector<SlotValue> slots_;
};

Labelling labelling_from_digits(const Frame& fr, const Digits& digits,
                                const LabelAlphabet& alphabet) {
    std::map<ArgumentId, Label> assignment;
    for (std::size_t i = 0; i < fr.args.size(); ++i)
        assignment.emplace(fr.args[i], alphabet.labels()[digits[i]]);
    return Labelling(std::move(assignment));
}

void require_wellformed(const QueryExpr& query, const Database& db) {
    auto report = check_wellformed(query, db.schema());
    if (!report.ok) {
        std::string message = "query is not well-formed:";
        for (const auto& e : report.errors) message += " " + e + ";";
        throw EvalError(message);
    }
}

}  // namespace

bool models(const Database& db, const Interpretation& env, const FormulaPtr& formula,
            const EvalOptions& options) {
    Compiler compiler(db, options, /*guarded=*/false);
    std::vector<SlotValue> values;
    for (const auto& [name, labelling] : env) {
        int slot = compiler.add_slot(labelling.domain());
        compiler.bind(name, slot);
        SlotValue value;
        value.digits = compiler.digits_for(labelling, compiler.frame(slot));
        if (compiler.frame(slot).keyed)
            value.key = pack_digits(value.digits, compiler.frame(slot).radix);
        values.push_back(std::move(value));
    }
    NodePtr root = compiler.compile(formula);
    values.resize(compiler.slot_count());
    Engine engine(std::move(values));
    return engine.eval(*root);
}

ArgLabellingTable evaluate(const QueryExpr& query, const Database& db,
                           const EvalOptions& options) {
    require_wellformed(query, db);
    Compiler compiler(db, options, /*guarded=*/false);
    int binder = compiler.add_slot(query.argset);
    compiler.bind(query.var, binder);
    NodePtr root = compiler.compile(query.formula);
    const Frame& fr = compiler.frame(binder);
    if (!fr.keyed || fr.space > kMaxNaiveSpace)
        throw EvalError("candidate space of the query binder is too large; use evaluate_guarded");

    std::vector<SlotValue> values(compiler.slot_count());
    Engine engine(std::move(values));
    std::vector<Labelling> rows;
    SlotValue& value = engine.slot(binder);
    value.digits.assign(fr.args.size(), 0);
    for (std::uint64_t key = 0; key < fr.space; ++key) {
        value.key = key;
        if (engine.eval(*root))
            rows.push_back(labelling_from_digits(fr, value.digits, db.schema().labels()));
        for (std::size_t i = value.digits.size(); i-- > 0;) {
            if (++value.digits[i] < fr.radix) break;
            value.digits[i] = 0;
        }
    }
    return ArgLabellingTable(query.argset, std::move(rows), db.schema().labels());
}

ArgLabellingTable evaluate_guarded(const QueryExpr& query, const Database& db,
                                   const EvalOptions& options) {
    auto report = check_wellformed(query, db.schema());
    if (!report.ok) {
        std::string message = "query is not well-formed:";
        for (const auto& e : report.errors) message += " " + e + ";";
        throw EvalError(message);
    }
    if (!report.range_restricted) {
        std::string names;
        for (const auto& v : report.unguarded) names += (names.empty() ? "" : ", ") + v;
        throw EvalError("query is not range-restricted: variable(s) " + names +
                        " lack a positive membership guard");
    }
    Compiler compiler(db, options, /*guarded=*/true);
    int binder = compiler.add_slot(query.argset);
    compiler.bind(query.var, binder);
    NodePtr root = compiler.compile(query.formula);
    CandidateSet candidates =
        compiler.guard_candidates(query.formula, query.var, binder, /*want_negative=*/false);
    const Frame& fr = compiler.frame(binder);

    std::vector<SlotValue> values(compiler.slot_count());
    Engine engine(std::move(values));
    std::vector<Labelling> rows;
    SlotValue& value = engine.slot(binder);
    for (std::size_t i = 0; i < candidates.rows.size(); ++i) {
        value.digits = candidates.rows[i];
        value.key = candidates.keys.empty() ? 0 : candidates.keys[i];
        if (engine.eval(*root))
            rows.push_back(labelling_from_digits(fr, value.digits, db.schema().labels()));
    }
    return ArgLabellingTable(query.argset, std::move(rows), db.schema().labels());
}

}  // namespace arglab
