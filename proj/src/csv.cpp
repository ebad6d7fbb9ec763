#include "papertrail/csv.hpp"

#include "papertrail/text.hpp"

namespace papertrail::csv {

std::optional<Row> Reader::next() {
    if (!started_) {
        started_ = true;
        if (in_.peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
        }
    }
    for (;;) {
        if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

        Row row;
        row.line = line_;
        std::string field;
        bool in_quotes = false;
        bool after_quote = false;
        bool any_content = false;

        for (;;) {
            const int ci = in_.get();
            if (ci == std::char_traits<char>::eof()) {
                if (in_quotes) row.error = "unterminated quoted field";
                break;
            }
            const char c = static_cast<char>(ci);
            if (in_quotes) {
                if (c == '"') {
                    if (in_.peek() == '"') {
                        in_.get();
                        field += '"';
                    } else {
                        in_quotes = false;
                        after_quote = true;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field += c;
                }
                continue;
            }
            if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
                any_content = true;
                continue;
            }
            if (c == '\r' && in_.peek() == '\n') continue;
            if (c == '\n') {
                ++line_;
                break;
            }
            if (c == '"' && field.empty() && !after_quote) {
                in_quotes = true;
                any_content = true;
                continue;
            }
            if (after_quote && !row.error) row.error = "characters after closing quote";
            field += c;
            any_content = true;
        }
        if (!any_content && field.empty()) {
            if (in_.eof() && row.fields.empty()) return std::nullopt;
            continue;  // blank line
        }
        row.fields.push_back(std::move(field));
        return row;
    }
}

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << quote(fields[i]);
    }
    out << "\r\n";
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (text::iequals(header[i], name)) return i;
    }
    return std::nullopt;
}

Table read_table(std::istream& in) {
    Reader reader(in);
    Table table;
    if (auto head = reader.next()) {
        for (auto& h : head->fields) table.header.push_back(text::to_lower(text::trim(h)));
    }
    while (auto row = reader.next()) table.rows.push_back(std::move(*row));
    return table;
}

}  // namespace papertrail::csv
