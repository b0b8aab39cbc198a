#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idpm/eval/sweep.hpp"
#include "idpm/eval/verification.hpp"
#include "idpm/nn/matrix.hpp"

namespace idpm::io {

using CsvCell = std::variant<double, std::int64_t, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

// Shortest decimal text that parses back to the same double ('.' decimal point).
std::string format_double(double v);
double parse_double(std::string_view text);

// Header line plus one line per row. Every row must have header.size() cells.
std::string format_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::filesystem::path& path);

// Parsed as text; use parse_double on numeric cells.
struct CsvText {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;
};
CsvText parse_csv(std::string_view text);
CsvText read_csv(const std::filesystem::path& path);

// samples(sample_id, x_0..x_{d-1}, identity_distance)
CsvTable samples_table(const nn::Matrix& samples, const Vector& identity_distances);
nn::Matrix samples_from_csv(const CsvText& csv);

// sweep(s, identity_error, diversity, n)
CsvTable sweep_table(const std::vector<eval::SweepRow>& rows);

// verification(threshold, accuracy, n_pairs)
CsvTable verification_table(const std::vector<eval::VerificationResult>& rows);

} // namespace idpm::io
