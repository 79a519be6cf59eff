#include "tidt/tensor_file.hpp"

#include "tidt/error.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

namespace tidt {

static_assert(std::endian::native == std::endian::little, "tensor files assume a little-endian host");

namespace {

constexpr char kMagic[4] = {'T', 'I', 'D', 'T'};

template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T take(std::string_view bytes, std::size_t& pos, const std::string& what, const char* field) {
    if (bytes.size() - pos < sizeof(T))
        throw FormatError(what + ": truncated header while reading " + field);
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool is_missing_token(std::string_view s) {
    if (s == "NA") return true;
    if (s.size() != 3) return false;
    return (s[0] == 'n' || s[0] == 'N') && (s[1] == 'a' || s[1] == 'A') && (s[2] == 'n' || s[2] == 'N');
}

} // namespace

std::string encode_tensor(const Tensor& x) {
    if (x.order() > std::numeric_limits<std::uint16_t>::max()) throw ShapeError("tensor order too large to store");
    std::string out(kMagic, sizeof(kMagic));
    put<std::uint16_t>(out, kTensorFileVersion);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(x.order()));
    for (std::size_t e : x.shape()) put<std::uint64_t>(out, e);
    const auto payload = x.data();
    out.append(reinterpret_cast<const char*>(payload.data()), payload.size() * sizeof(double));
    return out;
}

Tensor decode_tensor(std::string_view bytes, const std::string& what) {
    if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
        throw FormatError(what + ": not a TIDT tensor file (bad magic)");
    std::size_t pos = sizeof(kMagic);
    const auto version = take<std::uint16_t>(bytes, pos, what, "version");
    if (version != kTensorFileVersion)
        throw FormatError(what + ": unsupported format version " + std::to_string(version));
    const auto order = take<std::uint16_t>(bytes, pos, what, "order");
    Shape shape(order);
    std::uint64_t count = 1;
    for (auto& e : shape) {
        const auto v = take<std::uint64_t>(bytes, pos, what, "extents");
        if (v != 0 && count > std::numeric_limits<std::uint64_t>::max() / 8 / v)
            throw FormatError(what + ": extents overflow");
        e = static_cast<std::size_t>(v);
        count *= v;
    }
    const std::size_t expected = static_cast<std::size_t>(count) * sizeof(double);
    const std::size_t have = bytes.size() - pos;
    if (have < expected)
        throw FormatError(what + ": truncated payload (" + std::to_string(have) + " of " +
                          std::to_string(expected) + " bytes)");
    if (have > expected)
        throw FormatError(what + ": " + std::to_string(have - expected) + " trailing bytes after payload");
    std::vector<double> data(static_cast<std::size_t>(count));
    if (expected > 0) std::memcpy(data.data(), bytes.data() + pos, expected);
    return Tensor(std::move(shape), std::move(data));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw FormatError("error reading '" + path + "'");
    return std::move(ss).str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write '" + path + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw FormatError("error writing '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw FormatError("cannot move output into place at '" + path + "'");
    }
}

Tensor read_tensor(const std::string& path) { return decode_tensor(read_file(path), path); }

void write_tensor(const std::string& path, const Tensor& x) { write_file_atomic(path, encode_tensor(x)); }

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

CsvTensor parse_csv(std::string_view text, bool time_major, const Shape& shape) {
    std::vector<double> values;
    std::vector<double> observed;
    std::size_t rows = 0, cols = 0, missing = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (trim(line).empty()) continue;
        std::size_t count = 0;
        while (true) {
            const std::size_t comma = line.find(',');
            const std::string_view cell = trim(line.substr(0, comma));
            ++count;
            if (is_missing_token(cell)) {
                values.push_back(0.0);
                observed.push_back(0.0);
                ++missing;
            } else {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
                    throw FormatError("line " + std::to_string(line_no) + ", column " + std::to_string(count) +
                                      ": non-numeric cell '" + std::string(cell) + "'");
                values.push_back(v);
                observed.push_back(1.0);
            }
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (rows == 0) cols = count;
        else if (count != cols)
            throw FormatError("line " + std::to_string(line_no) + " has " + std::to_string(count) +
                              " cells, expected " + std::to_string(cols));
        ++rows;
    }
    if (rows == 0) throw FormatError("CSV input has no data rows");

    Tensor data({rows, cols}, std::move(values));
    Tensor mask({rows, cols}, std::move(observed));
    if (!time_major) {
        Tensor dt({cols, rows}), mt({cols, rows});
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                dt[j * rows + i] = data[i * cols + j];
                mt[j * rows + i] = mask[i * cols + j];
            }
        data = std::move(dt);
        mask = std::move(mt);
    }
    if (!shape.empty()) {
        if (shape[0] != data.extent(0))
            throw ShapeError("reshape " + shape_to_string(shape) + " must keep the temporal extent " +
                             std::to_string(data.extent(0)));
        data = data.reshaped(shape);
        mask = mask.reshaped(shape);
    }
    return {std::move(data), std::move(mask), missing};
}

std::string to_csv(const Tensor& x, bool time_major) {
    if (x.order() < 1) throw ShapeError("to_csv needs a tensor with a temporal mode");
    const std::size_t t = x.extent(0);
    const std::size_t m = x.size() / t;
    const std::size_t rows = time_major ? t : m;
    const std::size_t cols = time_major ? m : t;
    std::string out;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (j) out += ',';
            out += format_double(time_major ? x[i * m + j] : x[j * m + i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace tidt
