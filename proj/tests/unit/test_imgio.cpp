#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sl0mca/errors.hpp"
#include "sl0mca/imgio.hpp"
#include "sl0mca/report.hpp"

namespace sl0mca {
namespace {

std::string pgm(std::size_t w, std::size_t h, std::initializer_list<int> values) {
  std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  for (const int v : values) s.push_back(static_cast<char>(v));
  return s;
}

TEST(Pgm, DecodesScaledPixels) {
  const ImageGrid img = decode_pgm(pgm(2, 2, {0, 255, 128, 64}));
  ASSERT_EQ(img.height(), 2u);
  ASSERT_EQ(img.width(), 2u);
  EXPECT_EQ(img(0, 0), 0.0);
  EXPECT_EQ(img(0, 1), 1.0);
  EXPECT_EQ(img(1, 0), 128.0 / 255.0);
  EXPECT_EQ(img(1, 1), 64.0 / 255.0);
}

TEST(Pgm, RoundtripIsByteIdentical) {
  std::string bytes = "P5\n17 3\n255\n";
  for (int i = 0; i < 51; ++i) bytes.push_back(static_cast<char>((i * 37) % 256));
  EXPECT_EQ(encode_pgm(decode_pgm(bytes)), bytes);
  const ImageGrid again = decode_pgm(encode_pgm(decode_pgm(bytes)));
  EXPECT_EQ(again.vector(), decode_pgm(bytes).vector());
}

TEST(Pgm, AllGrayLevelsSurvive) {
  std::string bytes = "P5\n16 16\n255\n";
  for (int i = 0; i < 256; ++i) bytes.push_back(static_cast<char>(i));
  EXPECT_EQ(encode_pgm(decode_pgm(bytes)), bytes);
}

TEST(Pgm, HeaderCommentsAccepted) {
  const ImageGrid img = decode_pgm("P5\n# made by hand\n1 1\n255\n\x80");
  EXPECT_EQ(img(0, 0), 128.0 / 255.0);
}

TEST(Pgm, FileRoundtrip) {
  const auto path = std::filesystem::temp_directory_path() / "sl0mca_imgio_roundtrip.pgm";
  const std::string bytes = pgm(3, 1, {1, 2, 250});
  { std::ofstream(path, std::ios::binary) << bytes; }
  write_image(read_image(path), path);
  std::ifstream in(path, std::ios::binary);
  const std::string back((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(back, bytes);
  std::filesystem::remove(path);
}

TEST(Pgm, BadMagicReportsOffsetZero) {
  try {
    decode_pgm("Q5\n1 1\n255\n\x00");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
}

TEST(Pgm, OtherNetpbmVariantsUnsupported) {
  EXPECT_THROW(decode_pgm("P2\n1 1\n255\n0\n"), UnsupportedFormatError);
  EXPECT_THROW(decode_pgm("P6\n1 1\n255\nabc"), UnsupportedFormatError);
}

TEST(Pgm, MalformedInputs) {
  EXPECT_THROW(decode_pgm("P5\n2 2\n255\n\x01\x02\x03"), ParseError);
  EXPECT_THROW(decode_pgm("P5\n1 1\n255\n\x01\x02"), ParseError);
  EXPECT_THROW(decode_pgm("P5\n1 1\n65535\n\x01\x02"), UnsupportedFormatError);
  EXPECT_THROW(decode_pgm("P5\nx 1\n255\n\x01"), ParseError);
  EXPECT_THROW(read_image("/nonexistent/dir/none.pgm"), IoError);
}

TEST(Pgm, QuantizationClampsAndRounds) {
  EXPECT_EQ(quantize_pixel(-0.3), 0);
  EXPECT_EQ(quantize_pixel(1.7), 255);
  EXPECT_EQ(quantize_pixel(0.5), 128);  // 127.5 rounds away from zero
  EXPECT_EQ(quantize_pixel(std::nan("")), 0);
}

TEST(Mask, BimodalValues) {
  const MaskGrid all_known = decode_mask(pgm(2, 1, {255, 255}));
  EXPECT_EQ(all_known.known_count(), 2u);
  const MaskGrid none = decode_mask(pgm(2, 1, {0, 0}));
  EXPECT_EQ(none.known_count(), 0u);
  const MaskGrid mixed = decode_mask(pgm(2, 1, {0, 255}));
  EXPECT_FALSE(mixed.known(0, 0));
  EXPECT_TRUE(mixed.known(0, 1));
}

TEST(Mask, RejectsEveryIntermediateGray) {
  for (int v = 1; v < 255; ++v) {
    EXPECT_THROW(decode_mask(pgm(2, 1, {255, v})), ValidationError) << v;
  }
}

TEST(Psnr, IdenticalIsInfinite) {
  const ImageGrid a(3, 3, 0.2);
  EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
}

TEST(Psnr, ConstantImages) {
  EXPECT_NEAR(psnr(ImageGrid(4, 4, 0.0), ImageGrid(4, 4, 0.5)), 6.0206, 5e-5);
}

TEST(Psnr, MatchesTwoPassOracleAndIsSymmetric) {
  auto rng = testing::make_rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const ImageGrid a(8, 8, testing::gaussian_vector(64, rng));
    const ImageGrid b(8, 8, testing::gaussian_vector(64, rng));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < 64; ++i) {
      const double d = a.vector()[i] - b.vector()[i];
      sum += d * d;
    }
    const double want = -10.0 * std::log10(sum / 64.0);
    EXPECT_NEAR(psnr(a, b), want, 1e-10);
    EXPECT_EQ(psnr(a, b), psnr(b, a));
  }
}

TEST(Psnr, RestrictedToMissingPixels) {
  ImageGrid a(1, 4, 0.0);
  ImageGrid b(1, 4, 0.0);
  b(0, 0) = 0.5;  // known pixel: ignored
  b(0, 3) = 0.1;
  MaskGrid mask(1, 4);
  mask.set(0, 3, false);
  EXPECT_NEAR(psnr(a, b, mask), 20.0, 1e-12);
  EXPECT_THROW(psnr(a, b, MaskGrid(1, 4)), DimensionError);
  EXPECT_THROW(psnr(a, ImageGrid(2, 2)), DimensionError);
}

TEST(Report, FormatParseRoundtrip) {
  RunReport rep;
  IterationRecord r;
  r.n = 1;
  r.sigma = 0.1;
  r.lambda = 2.0;
  r.residual = 1.0 / 3.0;
  r.l0_texture = 12.5;
  r.l0_cartoon = 3e-300;
  r.tv_cartoon = 7.0;
  rep.rows.push_back(r);
  r.n = 2;
  rep.rows.push_back(r);
  rep.params = {{"command", "inpaint"}, {"outer", "5"}};
  rep.psnr_missing = 23.25;
  const std::string text = format_report(rep);
  EXPECT_EQ(text.substr(0, text.find('\n')), kReportHeader);
  const RunReport back = parse_report(text);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.rows[0].residual, 1.0 / 3.0);
  EXPECT_EQ(back.rows[1].n, 2);
  EXPECT_EQ(back.rows[1].l0_cartoon, 3e-300);
  ASSERT_NE(back.param("outer"), nullptr);
  EXPECT_EQ(*back.param("outer"), "5");
  EXPECT_EQ(back.param("missing"), nullptr);
  EXPECT_EQ(back.psnr_missing, 23.25);
  EXPECT_EQ(format_report(back), text);
}

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.4), "0.4");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Report, MalformedThrows) {
  EXPECT_THROW(parse_report("bogus\n"), ParseError);
  EXPECT_THROW(parse_report(std::string(kReportHeader) + "\n1,2,3\n"), ParseError);
}

}  // namespace
}  // namespace sl0mca
