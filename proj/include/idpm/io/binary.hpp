#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idpm::io {

// Little-endian encoder for fixed-width fields.
class ByteWriter {
public:
    void bytes(std::string_view raw);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    void f64s(std::span<const double> vs);

    const std::vector<std::uint8_t>& buffer() const noexcept { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

// Little-endian decoder; every read names the field so truncation errors are specific.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::string bytes(std::size_t n, const std::string& field);
    std::uint32_t u32(const std::string& field);
    std::uint64_t u64(const std::string& field);
    double f64(const std::string& field);
    std::vector<double> f64s(std::size_t n, const std::string& field);

    std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    void need(std::size_t n, const std::string& field) const;

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

} // namespace idpm::io
