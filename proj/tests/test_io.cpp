#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "wavecurve/groundtruth.hpp"
#include "wavecurve/io.hpp"

namespace {

using wavecurve::GroundTruthRecord;
using wavecurve::PipelineConfig;
using wavecurve::PolyContour;

PolyContour make_circle(double cx, double cy, double r, int n = 512) {
  PolyContour poly;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    poly.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
  }
  return poly;
}

bool records_equal(const GroundTruthRecord& a, const GroundTruthRecord& b) {
  if (a.id != b.id || a.wavelet != b.wavelet || a.j0 != b.j0 || a.j1 != b.j1 ||
      a.j2 != b.j2 || a.presence != b.presence || a.arc_length != b.arc_length ||
      a.center_shift.x != b.center_shift.x || a.center_shift.y != b.center_shift.y)
    return false;
  for (int s = 0; s < 2; ++s) {
    if (a.approx[s].size() != b.approx[s].size() || a.detail[s].size() != b.detail[s].size())
      return false;
    for (std::size_t i = 0; i < a.approx[s].size(); ++i)
      if (a.approx[s][i].values() != b.approx[s][i].values()) return false;
    for (std::size_t i = 0; i < a.detail[s].size(); ++i)
      if (a.detail[s][i].values() != b.detail[s][i].values()) return false;
  }
  return true;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

}  // namespace

TEST(Format, SeventeenDigitsRoundTripExactly) {
  for (double v : {1.0 / 3.0, 0.1, 1e-300, -0.0, 12345.678901234567, std::sqrt(2.0),
                   -2.2250738585072014e-308, 1.7976931348623157e308}) {
    const std::string s = wavecurve::format_g17(v);
    const double back = std::strtod(s.c_str(), nullptr);
    EXPECT_EQ(std::memcmp(&back, &v, sizeof v), 0) << s;
  }
}

TEST(ContourJson, RoundTripIsExact) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  PolyContour poly;
  for (int i = 0; i < 57; ++i) poly.push_back({u(rng), u(rng) / 3.0});
  const auto back = wavecurve::parse_contour(wavecurve::contour_to_json(poly));
  ASSERT_EQ(back.size(), poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    EXPECT_EQ(back[i].x, poly[i].x);
    EXPECT_EQ(back[i].y, poly[i].y);
  }
  EXPECT_THROW(wavecurve::parse_contour("{\"nope\":1}"), wavecurve::io_error);
}

TEST(FourierJson, RoundTripIsExact) {
  const auto fc = wavecurve::fourier_coefficients(make_circle(3.0, -5.0, 20.0), 16);
  const auto back = wavecurve::parse_fourier(wavecurve::fourier_to_json(fc));
  EXPECT_EQ(back.period, fc.period);
  for (int s = 0; s < 2; ++s) {
    ASSERT_EQ(back.coeffs[s].size(), fc.coeffs[s].size());
    for (std::size_t m = 0; m < fc.coeffs[s].size(); ++m) EXPECT_EQ(back.coeffs[s][m], fc.coeffs[s][m]);
  }
}

TEST(PyramidJson, RoundTripIsExact) {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  std::vector<double> vx(64), vy(64);
  for (auto& v : vx) v = g(rng);
  for (auto& v : vy) v = g(rng);
  const auto bank = wavecurve::bank_from_name("db2");
  wavecurve::PyramidFile p;
  p.wavelet = "db2";
  p.top = 6;
  p.bottom = 3;
  p.components[0] = wavecurve::decompose(wavecurve::PeriodicSignal(vx), bank, 6, 3);
  p.components[1] = wavecurve::decompose(wavecurve::PeriodicSignal(vy), bank, 6, 3);
  const auto back = wavecurve::pyramid_from_json(nlohmann::json::parse(wavecurve::pyramid_to_json(p)));
  EXPECT_EQ(back.wavelet, "db2");
  EXPECT_EQ(back.top, 6);
  EXPECT_EQ(back.bottom, 3);
  for (int s = 0; s < 2; ++s) {
    EXPECT_EQ(back.components[s].coarsest.values(), p.components[s].coarsest.values());
    ASSERT_EQ(back.components[s].details.size(), p.components[s].details.size());
    for (std::size_t i = 0; i < p.components[s].details.size(); ++i)
      EXPECT_EQ(back.components[s].details[i].values(), p.components[s].details[i].values());
  }
}

TEST(RecordJson, PresentAndAbsentRecordsRoundTrip) {
  const auto rec = wavecurve::build_record("r7", make_circle(160.0, 160.0, 30.0),
                                           PipelineConfig{}, {160.0, 160.0});
  const auto back = wavecurve::record_from_json(
      nlohmann::json::parse(wavecurve::record_to_json_line(rec)));
  EXPECT_TRUE(records_equal(rec, back));

  const auto absent = wavecurve::build_record("r8", wavecurve::BinaryMask(8, 8),
                                              PipelineConfig{}, {4.0, 4.0});
  const auto back2 = wavecurve::record_from_json(
      nlohmann::json::parse(wavecurve::record_to_json_line(absent)));
  EXPECT_TRUE(records_equal(absent, back2));
}

TEST(RecordJson, RejectsWrongVectorLengths) {
  auto rec = wavecurve::build_record("bad", make_circle(160.0, 160.0, 30.0),
                                     PipelineConfig{}, {160.0, 160.0});
  auto j = nlohmann::json::parse(wavecurve::record_to_json_line(rec));
  j["detail"]["s1"][0].erase(0);  // detail vector length off by one
  try {
    wavecurve::record_from_json(j);
    FAIL() << "length violation must be rejected";
  } catch (const wavecurve::io_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
}

TEST(DatasetFile, RoundTripAndLineNumbers) {
  wavecurve::Dataset ds;
  ds.header.config = PipelineConfig{};
  ds.header.center = {160.0, 160.0};
  ds.records.push_back(wavecurve::build_record("a", make_circle(160.0, 160.0, 30.0),
                                               ds.header.config, ds.header.center));
  ds.records.push_back(wavecurve::build_record("b", wavecurve::BinaryMask(8, 8),
                                               ds.header.config, ds.header.center));
  ds.header.count = ds.records.size();
  const std::string path = temp_path("ds_roundtrip.jsonl");
  wavecurve::write_dataset(ds, path);
  const auto back = wavecurve::read_dataset(path);
  EXPECT_EQ(back.header.count, 2u);
  EXPECT_EQ(back.header.config.wavelet, "db8");
  EXPECT_EQ(back.header.center.x, 160.0);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_TRUE(records_equal(back.records[0], ds.records[0]));
  EXPECT_TRUE(records_equal(back.records[1], ds.records[1]));

  // byte-identical rewrite
  const std::string again = temp_path("ds_roundtrip2.jsonl");
  wavecurve::write_dataset(back, again);
  EXPECT_EQ(wavecurve::read_text_file(path), wavecurve::read_text_file(again));

  auto text = wavecurve::read_text_file(path);
  text += "{\"id\":\"broken\"\n";  // malformed third record line
  const std::string bad = temp_path("ds_bad.jsonl");
  wavecurve::write_text_file(bad, text);
  try {
    wavecurve::read_dataset(bad);
    FAIL() << "malformed line must be rejected";
  } catch (const wavecurve::io_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Pgm, RoundTripAndHeaderBytes) {
  wavecurve::BinaryMask mask(37, 21);
  std::mt19937 rng(5);
  for (auto& p : mask.pixels) p = (rng() & 4u) ? 1 : 0;
  const std::string path = temp_path("mask.pgm");
  wavecurve::write_pgm(mask, path);
  const auto text = wavecurve::read_text_file(path);
  EXPECT_EQ(text.substr(0, 13), "P5\n37 21\n255\n");
  EXPECT_EQ(text.size(), 13u + 37u * 21u);
  const auto back = wavecurve::read_pgm(path);
  EXPECT_EQ(back.width, mask.width);
  EXPECT_EQ(back.height, mask.height);
  EXPECT_EQ(back.pixels, mask.pixels);
}

TEST(Pgm, RejectsBadFiles) {
  const std::string p6 = temp_path("bad.ppm");
  wavecurve::write_text_file(p6, "P6\n2 2\n255\n............");
  EXPECT_THROW(wavecurve::read_pgm(p6), wavecurve::io_error);
  const std::string trunc = temp_path("trunc.pgm");
  wavecurve::write_text_file(trunc, "P5\n4 4\n255\nabc");
  EXPECT_THROW(wavecurve::read_pgm(trunc), wavecurve::io_error);
  EXPECT_THROW(wavecurve::read_pgm(temp_path("missing.pgm")), wavecurve::io_error);
}
