#include "arglab/af.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace arglab {

namespace {

bool is_forbidden_id_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == ',' || c == '{' ||
           c == '}' || c == '|';
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

void check_id(const ArgumentId& id, int line) {
    if (!is_valid_argument_id(id)) {
        throw ParseError("invalid argument id '" + id + "'", line);
    }
}

ArgumentationFramework parse_tgf(const std::string& text) {
    auto lines = split_lines(text);
    std::set<ArgumentId> args;
    std::set<Attack> attacks;
    bool in_edges = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        int lineno = static_cast<int>(i) + 1;
        std::string line = strip(lines[i]);
        if (line.empty()) continue;
        if (line == "#") {
            if (in_edges) throw ParseError("duplicate '#' separator", lineno);
            in_edges = true;
            continue;
        }
        std::istringstream iss(line);
        std::string first, second, rest;
        iss >> first;
        if (!in_edges) {
            if (iss >> rest) throw ParseError("expected a single node id", lineno);
            check_id(first, lineno);
            args.insert(first);
        } else {
            if (!(iss >> second)) throw ParseError("expected an edge 'source target'", lineno);
            if (iss >> rest) throw ParseError("trailing tokens after edge", lineno);
            check_id(first, lineno);
            check_id(second, lineno);
            if (!args.count(first))
                throw ParseError("attack endpoint '" + first + "' is not a declared argument",
                                 lineno);
            if (!args.count(second))
                throw ParseError("attack endpoint '" + second + "' is not a declared argument",
                                 lineno);
            attacks.insert({first, second});
        }
    }
    return ArgumentationFramework(std::move(args), std::move(attacks));
}

// One declaration per line: `arg(x).` or `att(x,y).`
ArgumentationFramework parse_apx(const std::string& text) {
    auto lines = split_lines(text);
    std::set<ArgumentId> args;
    std::vector<std::pair<Attack, int>> pending_attacks;
    for (size_t i = 0; i < lines.size(); ++i) {
        int lineno = static_cast<int>(i) + 1;
        std::string line = strip(lines[i]);
        if (line.empty()) continue;
        if (line.back() != '.')
            throw ParseError("declaration must end with '.'", lineno);
        line = strip(line.substr(0, line.size() - 1));
        auto open = line.find('(');
        if (open == std::string::npos || line.back() != ')')
            throw ParseError("expected arg(x). or att(x,y).", lineno);
        std::string head = strip(line.substr(0, open));
        std::string inner = line.substr(open + 1, line.size() - open - 2);
        if (head == "arg") {
            std::string id = strip(inner);
            check_id(id, lineno);
            args.insert(id);
        } else if (head == "att") {
            auto comma = inner.find(',');
            if (comma == std::string::npos)
                throw ParseError("att needs two arguments", lineno);
            std::string from = strip(inner.substr(0, comma));
            std::string to = strip(inner.substr(comma + 1));
            check_id(from, lineno);
            check_id(to, lineno);
            pending_attacks.push_back({{from, to}, lineno});
        } else {
            throw ParseError("unknown declaration '" + head + "'", lineno);
        }
    }
    std::set<Attack> attacks;
    for (const auto& [attack, lineno] : pending_attacks) {
        if (!args.count(attack.first))
            throw ParseError("attack endpoint '" + attack.first + "' is not a declared argument",
                             lineno);
        if (!args.count(attack.second))
            throw ParseError("attack endpoint '" + attack.second + "' is not a declared argument",
                             lineno);
        attacks.insert(attack);
    }
    return ArgumentationFramework(std::move(args), std::move(attacks));
}

}  // namespace

bool is_valid_argument_id(const ArgumentId& id) {
    if (id.empty()) return false;
    return std::none_of(id.begin(), id.end(), is_forbidden_id_char);
}

ArgumentationFramework::ArgumentationFramework(std::set<ArgumentId> arguments,
                                               std::set<Attack> attacks)
    : arguments_(std::move(arguments)), attacks_(std::move(attacks)) {
    for (const auto& id : arguments_) {
        if (!is_valid_argument_id(id))
            throw std::invalid_argument("invalid argument id '" + id + "'");
    }
    for (const auto& [from, to] : attacks_) {
        if (!arguments_.count(from) || !arguments_.count(to))
            throw std::invalid_argument("attack (" + from + "," + to +
                                        ") has an undeclared endpoint");
    }
}

std::set<ArgumentId> attackers(const ArgumentationFramework& af, const ArgumentId& a) {
    if (!af.has_argument(a)) throw std::invalid_argument("unknown argument '" + a + "'");
    std::set<ArgumentId> result;
    for (const auto& [from, to] : af.attacks()) {
        if (to == a) result.insert(from);
    }
    return result;
}

ArgumentationFramework subframework(const ArgumentationFramework& af,
                                    const std::set<ArgumentId>& subset) {
    for (const auto& a : subset) {
        if (!af.has_argument(a)) throw std::invalid_argument("unknown argument '" + a + "'");
    }
    std::set<Attack> attacks;
    for (const auto& attack : af.attacks()) {
        if (subset.count(attack.first) && subset.count(attack.second)) attacks.insert(attack);
    }
    return ArgumentationFramework(subset, std::move(attacks));
}

std::set<ArgumentId> relevance_set(const ArgumentationFramework& af, const ArgumentId& a) {
    if (!af.has_argument(a)) throw std::invalid_argument("unknown argument '" + a + "'");
    std::set<ArgumentId> reached{a};
    std::vector<ArgumentId> frontier{a};
    while (!frontier.empty()) {
        ArgumentId current = frontier.back();
        frontier.pop_back();
        for (const auto& [from, to] : af.attacks()) {
            if (to == current && reached.insert(from).second) frontier.push_back(from);
        }
    }
    return reached;
}

ArgumentationFramework parse_af(const std::string& text, AfFormat format) {
    return format == AfFormat::Tgf ? parse_tgf(text) : parse_apx(text);
}

std::string serialize_af(const ArgumentationFramework& af, AfFormat format) {
    std::ostringstream out;
    if (format == AfFormat::Tgf) {
        for (const auto& a : af.arguments()) out << a << "\n";
        out << "#\n";
        for (const auto& [from, to] : af.attacks()) out << from << " " << to << "\n";
    } else {
        for (const auto& a : af.arguments()) {
            if (a.find('(') != std::string::npos || a.find(')') != std::string::npos)
                throw std::invalid_argument("argument id '" + a + "' is not representable in apx");
            out << "arg(" << a << ").\n";
        }
        for (const auto& [from, to] : af.attacks())
            out << "att(" << from << "," << to << ").\n";
    }
    return out.str();
}

}  // namespace arglab
