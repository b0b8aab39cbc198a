#include "idpm/io/binary.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "idpm/errors.hpp"

namespace idpm::io {

void ByteWriter::bytes(std::string_view raw) {
    buf_.insert(buf_.end(), raw.begin(), raw.end());
}

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) {
    u64(std::bit_cast<std::uint64_t>(v));
}

void ByteWriter::f64s(std::span<const double> vs) {
    buf_.reserve(buf_.size() + 8 * vs.size());
    for (double v : vs) f64(v);
}

void ByteReader::need(std::size_t n, const std::string& field) const {
    if (remaining() < n) {
        throw FormatError(field, "truncated (needs " + std::to_string(n) + " bytes, " + std::to_string(remaining()) +
                                     " left)");
    }
}

std::string ByteReader::bytes(std::size_t n, const std::string& field) {
    need(n, field);
    std::string out(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return out;
}

std::uint32_t ByteReader::u32(const std::string& field) {
    need(4, field);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64(const std::string& field) {
    need(8, field);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
}

double ByteReader::f64(const std::string& field) {
    return std::bit_cast<double>(u64(field));
}

std::vector<double> ByteReader::f64s(std::size_t n, const std::string& field) {
    if (n > remaining() / 8) {
        throw FormatError(field, "truncated (needs " + std::to_string(n) + " doubles, " +
                                     std::to_string(remaining()) + " bytes left)");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f64(field);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
    write_file_atomic(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

} // namespace idpm::io
