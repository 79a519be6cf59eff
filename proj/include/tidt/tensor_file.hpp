#pragma once

#include "tidt/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tidt {

// Binary layout: "TIDT", u16 version, u16 order, order x u64 extents, then
// the row-major payload as float64. Everything is little-endian.
inline constexpr std::uint16_t kTensorFileVersion = 1;

std::string encode_tensor(const Tensor& x);

/// Throws FormatError on a bad magic, unknown version, truncated payload or
/// trailing bytes. `what` names the source in diagnostics.
Tensor decode_tensor(std::string_view bytes, const std::string& what = "tensor data");

Tensor read_tensor(const std::string& path);
void write_tensor(const std::string& path, const Tensor& x);

/// Reads a whole file; throws FormatError naming the path if it cannot be opened.
std::string read_file(const std::string& path);

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// 17 significant digits (round-trip exact), with ".0" appended to integral
/// values so they still read as floating point.
std::string format_double(double v);

struct CsvTensor {
    Tensor data;
    Tensor mask;          ///< 0 where the cell was NaN / NA
    std::size_t missing = 0;
};

/// Parses a rectangular numeric CSV. With `time_major` each row is one time
/// point; otherwise each row is one series and the result is transposed so
/// time is mode 0. A nonempty `shape` reshapes the t x m result (shape[0]
/// must equal t). Throws FormatError on ragged rows or non-numeric cells.
CsvTensor parse_csv(std::string_view text, bool time_major, const Shape& shape = {});

/// Inverse of parse_csv for finite data: t rows (time_major) or t columns.
std::string to_csv(const Tensor& x, bool time_major);

} // namespace tidt
