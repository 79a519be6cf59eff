#include "oracles.hpp"

#include "tidt/error.hpp"
#include "tidt/tensor_file.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

using namespace tidt;

namespace fs = std::filesystem;

TEST(TensorFile, HeaderLayout) {
    const std::string b = encode_tensor(Tensor({2, 3}, {1, 2, 3, 4, 5, 6}));
    ASSERT_EQ(b.size(), 4u + 2 + 2 + 2 * 8 + 6 * 8);
    EXPECT_EQ(b.substr(0, 4), "TIDT");
    EXPECT_EQ(static_cast<unsigned char>(b[4]), 1);
    EXPECT_EQ(static_cast<unsigned char>(b[5]), 0);
    EXPECT_EQ(static_cast<unsigned char>(b[6]), 2);
    EXPECT_EQ(static_cast<unsigned char>(b[8]), 2);
    EXPECT_EQ(static_cast<unsigned char>(b[16]), 3);
    double first = 0.0;
    std::memcpy(&first, b.data() + 24, 8);
    EXPECT_EQ(first, 1.0);
}

TEST(TensorFile, RoundTripIsBitExact) {
    std::mt19937_64 rng(1);
    Tensor x = oracle::random_tensor({3, 4, 2, 2}, rng);
    x[0] = -0.0;
    x[1] = std::numeric_limits<double>::denorm_min();
    x[2] = 1e308;
    const Tensor y = decode_tensor(encode_tensor(x));
    ASSERT_EQ(y.shape(), x.shape());
    EXPECT_EQ(std::memcmp(y.data().data(), x.data().data(), x.size() * sizeof(double)), 0);
}

TEST(TensorFile, RejectsMalformedInput) {
    const std::string good = encode_tensor(Tensor({2, 2}, 1.0));
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(decode_tensor(bad_magic), FormatError);
    std::string bad_version = good;
    bad_version[4] = 9;
    EXPECT_THROW(decode_tensor(bad_version), FormatError);
    EXPECT_THROW(decode_tensor(good.substr(0, good.size() - 1)), FormatError);
    EXPECT_THROW(decode_tensor(good.substr(0, 6)), FormatError);
    EXPECT_THROW(decode_tensor(good + "x"), FormatError);
    std::string zero_extent = good;
    zero_extent[8] = 0;
    EXPECT_THROW(decode_tensor(zero_extent), FormatError);
}

TEST(TensorFile, AtomicWriteAndMissingFile) {
    const fs::path dir = fs::temp_directory_path() / "tidt_file_test";
    fs::create_directories(dir);
    const std::string p = (dir / "x.tidt").string();
    write_tensor(p, Tensor({3}, {1, 2, 3}));
    EXPECT_EQ(read_tensor(p), Tensor({3}, {1, 2, 3}));
    for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "x.tidt");
    EXPECT_THROW(read_tensor((dir / "absent.tidt").string()), FormatError);
    fs::remove_all(dir);
}

TEST(Hash, KnownFnvValues) {
    EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(FloatText, RoundTripsAndMarksIntegers) {
    EXPECT_EQ(format_double(0.0), "0.0");
    EXPECT_EQ(format_double(3.0), "3.0");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 100; ++i) {
        const double v = u(rng);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Csv, SeriesPerRowIsTransposed) {
    const CsvTensor c = parse_csv("1,2,3\n4,5,6\n", false);
    EXPECT_EQ(c.data, Tensor({3, 2}, {1, 4, 2, 5, 3, 6}));
    EXPECT_EQ(c.missing, 0u);
}

TEST(Csv, TimeMajorKeepsRows) {
    const CsvTensor c = parse_csv("1,2\n3,4\n5,6\n", true);
    EXPECT_EQ(c.data.shape(), (Shape{3, 2}));
    EXPECT_EQ(c.data.at({2, 1}), 6.0);
}

TEST(Csv, NanCellsBecomeMaskedZeros) {
    const CsvTensor c = parse_csv("1,NaN\nNA,4\n", true);
    EXPECT_EQ(c.missing, 2u);
    EXPECT_EQ(c.data, Tensor({2, 2}, {1, 0, 0, 4}));
    EXPECT_EQ(c.mask, Tensor({2, 2}, {1, 0, 0, 1}));
}

TEST(Csv, ReshapeKeepsTime) {
    const CsvTensor c = parse_csv("1,2,3,4\n5,6,7,8\n", true, {2, 2, 2});
    EXPECT_EQ(c.data.shape(), (Shape{2, 2, 2}));
    EXPECT_EQ(c.data.at({1, 1, 0}), 7.0);
    EXPECT_THROW(parse_csv("1,2,3,4\n5,6,7,8\n", true, {4, 2}), ShapeError);
}

TEST(Csv, RejectsRaggedAndNonNumeric) {
    EXPECT_THROW(parse_csv("1,2\n3\n", true), FormatError);
    EXPECT_THROW(parse_csv("1,abc\n", true), FormatError);
    EXPECT_THROW(parse_csv("", true), FormatError);
}

TEST(Csv, ExportImportIsLossless) {
    std::mt19937_64 rng(3);
    const Tensor x = oracle::random_tensor({5, 3}, rng);
    for (bool tm : {true, false}) EXPECT_EQ(parse_csv(to_csv(x, tm), tm).data, x);
}
