#include "arglab/table_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace arglab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

std::string table_to_json(const ArgLabellingTable& table, const std::string& name) {
    ordered_json doc;
    doc["name"] = name;
    doc["labels"] = table.alphabet().labels();
    doc["header"] = table.header();
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.body()) {
        ordered_json tuple = ordered_json::array();
        for (const auto& a : table.header()) tuple.push_back(row.at(a));
        rows.push_back(std::move(tuple));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::pair<std::string, ArgLabellingTable> table_from_json(const std::string& text) {
    ordered_json doc = ordered_json::parse(text);
    std::string name = doc.at("name").get<std::string>();
    LabelAlphabet alphabet(doc.at("labels").get<std::vector<std::string>>());
    auto header_list = doc.at("header").get<std::vector<std::string>>();
    std::set<ArgumentId> header(header_list.begin(), header_list.end());
    if (header.size() != header_list.size())
        throw std::runtime_error("duplicate argument in table header");
    std::vector<Labelling> rows;
    for (const auto& tuple : doc.at("rows")) {
        auto labels = tuple.get<std::vector<std::string>>();
        if (labels.size() != header_list.size())
            throw std::runtime_error("row width does not match the header");
        std::map<ArgumentId, Label> assignment;
        for (std::size_t i = 0; i < header_list.size(); ++i)
            assignment.emplace(header_list[i], labels[i]);
        rows.emplace_back(std::move(assignment));
    }
    return {name, ArgLabellingTable(header, std::move(rows), alphabet)};
}

std::string table_to_csv(const ArgLabellingTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header().size(); ++i) {
        if (i > 0) out << ",";
        out << table.header()[i];
    }
    out << "\n";
    for (const auto& row : table.body()) {
        for (std::size_t i = 0; i < table.header().size(); ++i) {
            if (i > 0) out << ",";
            out << row.at(table.header()[i]);
        }
        out << "\n";
    }
    return out.str();
}

ArgLabellingTable table_from_csv(const std::string& text, const LabelAlphabet& alphabet) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv table is missing its header line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header_list;
    if (!line.empty()) header_list = split_csv_line(line);
    std::set<ArgumentId> header(header_list.begin(), header_list.end());
    if (header.size() != header_list.size())
        throw std::runtime_error("duplicate argument in csv header");
    std::vector<Labelling> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && header_list.empty()) {
            rows.emplace_back();
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != header_list.size())
            throw std::runtime_error("csv row width does not match the header");
        std::map<ArgumentId, Label> assignment;
        for (std::size_t i = 0; i < header_list.size(); ++i)
            assignment.emplace(header_list[i], fields[i]);
        rows.emplace_back(std::move(assignment));
    }
    return ArgLabellingTable(header, std::move(rows), alphabet);
}

std::string table_to_text(const ArgLabellingTable& table) {
    const auto& header = table.header();
    std::vector<std::size_t> widths;
    widths.reserve(header.size());
    for (const auto& a : header) widths.push_back(a.size());
    for (const auto& row : table.body()) {
        for (std::size_t i = 0; i < header.size(); ++i)
            widths[i] = std::max(widths[i], row.at(header[i]).size());
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << cells[i];
            if (i + 1 < cells.size())
                out << std::string(widths[i] - cells[i].size() + 2, ' ');
        }
        out << "\n";
    };
    emit({header.begin(), header.end()});
    for (const auto& row : table.body()) {
        std::vector<std::string> cells;
        cells.reserve(header.size());
        for (const auto& a : header) cells.push_back(row.at(a));
        emit(cells);
    }
    return out.str();
}

Database load_manifest(const std::string& manifest_path) {
    ordered_json doc = ordered_json::parse(read_file(manifest_path));
    LabelAlphabet alphabet(doc.at("labels").get<std::vector<std::string>>());
    auto base = std::filesystem::path(manifest_path).parent_path();
    std::map<std::string, ArgLabellingTable> tables;
    for (const auto& entry : doc.at("tables")) {
        std::string name = entry.at("name").get<std::string>();
        std::string rel = entry.at("path").get<std::string>();
        auto path = (base / rel).string();
        std::string text = read_file(path);
        ArgLabellingTable table;
        if (std::filesystem::path(rel).extension() == ".csv") {
            table = table_from_csv(text, alphabet);
        } else {
            auto [_, parsed] = table_from_json(text);
            table = std::move(parsed);
        }
        if (!(table.alphabet() == alphabet))
            throw std::runtime_error("table '" + name + "' alphabet differs from the manifest");
        if (!tables.emplace(name, std::move(table)).second)
            throw std::runtime_error("duplicate table name '" + name + "' in manifest");
    }
    return make_database(alphabet, std::move(tables));
}

void save_manifest(const Database& db, const std::string& directory,
                   const std::string& manifest_name) {
    std::filesystem::create_directories(directory);
    ordered_json doc;
    doc["labels"] = db.schema().labels().labels();
    ordered_json entries = ordered_json::array();
    for (const auto& [name, table] : db.tables()) {
        std::string filename = name + ".json";
        write_file((std::filesystem::path(directory) / filename).string(),
                   table_to_json(table, name));
        entries.push_back(ordered_json{{"name", name}, {"path", filename}});
    }
    doc["tables"] = std::move(entries);
    write_file((std::filesystem::path(directory) / manifest_name).string(), doc.dump(2) + "\n");
}

}  // namespace arglab
