#include "idpm/io/csv.hpp"

#include <charconv>
#include <sstream>

#include "idpm/errors.hpp"
#include "idpm/io/binary.hpp"

namespace idpm::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw FormatError("csv", "'" + std::string(text) + "' is not a number");
    }
    return v;
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    const auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ShapeError("csv: row has " + std::to_string(row.size()) + " cells, header has " +
                             std::to_string(table.header.size()));
        }
        std::vector<std::string> cells;
        for (const auto& cell : row) {
            if (const auto* d = std::get_if<double>(&cell)) cells.push_back(format_double(*d));
            else if (const auto* i = std::get_if<std::int64_t>(&cell)) cells.push_back(std::to_string(*i));
            else cells.push_back(std::get<std::string>(cell));
        }
        line(cells);
    }
    return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    write_file_atomic(path, format_csv(table));
}

std::size_t CsvText::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw FormatError("csv", "missing column '" + std::string(name) + "'");
}

CsvText parse_csv(std::string_view text) {
    CsvText out;
    std::istringstream in{std::string(text)};
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (first) {
            out.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != out.header.size()) throw FormatError("csv", "row width differs from header");
            out.rows.push_back(std::move(cells));
        }
    }
    if (first) throw FormatError("csv", "missing header");
    return out;
}

CsvText read_csv(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

CsvTable samples_table(const nn::Matrix& samples, const Vector& identity_distances) {
    if (identity_distances.size() != samples.rows()) throw ShapeError("samples_table: one distance per sample required");
    CsvTable t;
    t.header.push_back("sample_id");
    for (std::size_t i = 0; i < samples.cols(); ++i) t.header.push_back("x_" + std::to_string(i));
    t.header.push_back("identity_distance");
    for (std::size_t r = 0; r < samples.rows(); ++r) {
        std::vector<CsvCell> row{static_cast<std::int64_t>(r)};
        for (double v : samples.row(r)) row.emplace_back(v);
        row.emplace_back(identity_distances[r]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

nn::Matrix samples_from_csv(const CsvText& csv) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0;; ++i) {
        const std::string name = "x_" + std::to_string(i);
        bool found = false;
        for (std::size_t c = 0; c < csv.header.size(); ++c) {
            if (csv.header[c] == name) {
                cols.push_back(c);
                found = true;
            }
        }
        if (!found) break;
    }
    if (cols.empty()) throw FormatError("csv", "no x_0.. columns");
    nn::Matrix m(csv.rows.size(), cols.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = parse_double(csv.rows[r][cols[c]]);
    }
    return m;
}

CsvTable sweep_table(const std::vector<eval::SweepRow>& rows) {
    CsvTable t{{"s", "identity_error", "diversity", "n"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.guidance, r.identity_error, r.diversity, static_cast<std::int64_t>(r.samples)});
    }
    return t;
}

CsvTable verification_table(const std::vector<eval::VerificationResult>& rows) {
    CsvTable t{{"threshold", "accuracy", "n_pairs"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.threshold, r.accuracy, static_cast<std::int64_t>(r.pair_count)});
    }
    return t;
}

} // namespace idpm::io
