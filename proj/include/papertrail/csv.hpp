#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// RFC 4180 reader/writer. Accepts LF or CRLF line endings and a leading
// UTF-8 BOM; always writes CRLF.
namespace papertrail::csv {

struct Row {
    std::size_t line = 0;  // physical line where the record starts (1-based)
    std::vector<std::string> fields;
    std::optional<std::string> error;  // structural problem, fields may be partial
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Blank lines are skipped.
    std::optional<Row> next();

private:
    std::istream& in_;
    std::size_t line_ = 1;
    bool started_ = false;
};

std::string quote(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads a whole file; the first row is the header. Header names are
/// lowercased and trimmed.
struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

Table read_table(std::istream& in);

}  // namespace papertrail::csv
