#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace arglab {

using ArgumentId = std::string;
using Attack = std::pair<ArgumentId, ArgumentId>;

/// Thrown by the text-format parsers; line/column are 1-based (column 0 when
/// only the line is known).
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, int line, int column = 0)
        : std::runtime_error(message), line(line), column(column) {}
    int line;
    int column;
};

/// Valid ids are non-empty and contain no whitespace and none of . , { } |
bool is_valid_argument_id(const ArgumentId& id);

/// A finite directed attack graph. Immutable after construction; every
/// attack endpoint must be a declared argument.
class ArgumentationFramework {
public:
    ArgumentationFramework() = default;
    ArgumentationFramework(std::set<ArgumentId> arguments, std::set<Attack> attacks);

    const std::set<ArgumentId>& arguments() const { return arguments_; }
    const std::set<Attack>& attacks() const { return attacks_; }

    bool has_argument(const ArgumentId& a) const { return arguments_.count(a) > 0; }
    bool has_attack(const ArgumentId& from, const ArgumentId& to) const {
        return attacks_.count({from, to}) > 0;
    }

    bool operator==(const ArgumentationFramework&) const = default;

private:
    std::set<ArgumentId> arguments_;
    std::set<Attack> attacks_;
};

/// All x with (x, a) in the attack relation.
std::set<ArgumentId> attackers(const ArgumentationFramework& af, const ArgumentId& a);

/// The induced subgraph (subset, R ∩ subset×subset).
ArgumentationFramework subframework(const ArgumentationFramework& af,
                                    const std::set<ArgumentId>& subset);

/// Arguments that reach `a` via attack edges, including `a` itself.
std::set<ArgumentId> relevance_set(const ArgumentationFramework& af, const ArgumentId& a);

enum class AfFormat { Tgf, Apx };

ArgumentationFramework parse_af(const std::string& text, AfFormat format);

/// Emits sorted declarations so output is stable for equal frameworks.
std::string serialize_af(const ArgumentationFramework& af, AfFormat format);

}  // namespace arglab
