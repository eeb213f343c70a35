#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "sdr/errors.hpp"
#include "sdr/io/matrix_csv.hpp"
#include "sdr/io/pgm.hpp"
#include "sdr/rng.hpp"
#include "sdr/serialize.hpp"

using namespace sdr;
using Eigen::MatrixXd;

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix CSV round trip is bit exact") {
  Philox rng(3);
  MatrixXd m(7, 5);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = std::exp(40.0 * (rng.uniform01() - 0.5)) *
                                          (rng.bernoulli(0.5) ? 1.0 : -1.0);
  m(0, 0) = 0.0;
  m(1, 1) = -0.0;
  m(2, 2) = 1.0 / 3.0;
  m(3, 3) = 1e-308;

  TempFile f("roundtrip_test.csv");
  io::write_matrix_csv(m, f.path);
  const MatrixXd back = io::read_matrix_csv(f.path);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 5);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(std::memcmp(&m(i, j), &back(i, j), sizeof(double)) == 0);
    }
}

TEST_CASE("matrix CSV gzip round trip") {
  Philox rng(5);
  MatrixXd m(20, 9);
  for (int i = 0; i < m.size(); ++i) m(i / 9, i % 9) = rng.normal();
  TempFile f("roundtrip_test.csv.gz");
  io::write_matrix_csv(m, f.path);
  const MatrixXd back = io::read_matrix_csv(f.path);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  // The file on disk is actually gzip (magic bytes 1f 8b).
  std::ifstream in(f.path, std::ios::binary);
  char magic[2];
  in.read(magic, 2);
  CHECK(static_cast<unsigned char>(magic[0]) == 0x1f);
  CHECK(static_cast<unsigned char>(magic[1]) == 0x8b);
}

TEST_CASE("matrix CSV rejects malformed input") {
  TempFile f("broken_test.csv");
  write_file(f.path, "3,2\n1.0,2.0\n3.0\n");
  CHECK_THROWS_AS(io::read_matrix_csv(f.path), ParameterError);
  write_file(f.path, "nonsense\n");
  CHECK_THROWS_AS(io::read_matrix_csv(f.path), ParameterError);
  CHECK_THROWS_AS(io::read_matrix_csv("does_not_exist.csv"), ParameterError);
}

TEST_CASE("pgm P2 parsing with comments") {
  TempFile f("mini_test.pgm");
  write_file(f.path, "P2\n# a comment\n2 2\n255\n0 255\n128 64\n");
  const io::GrayImage img = io::read_pgm(f.path);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.maxval == 255);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(0, 1) == 255);
  CHECK(img.at(1, 0) == 128);
  CHECK(img.at(1, 1) == 64);
}

TEST_CASE("pgm P5 twin parses to identical pixels") {
  TempFile ascii("twin_test_p2.pgm"), binary("twin_test_p5.pgm");
  write_file(ascii.path, "P2\n2 2\n255\n0 255\n128 64\n");
  std::string p5 = "P5\n2 2\n255\n";
  const unsigned char payload[4] = {0, 255, 128, 64};
  p5.append(reinterpret_cast<const char*>(payload), 4);
  write_file(binary.path, p5);
  const io::GrayImage a = io::read_pgm(ascii.path);
  const io::GrayImage b = io::read_pgm(binary.path);
  CHECK(a.pixels == b.pixels);
}

TEST_CASE("pgm 16-bit big-endian payload") {
  TempFile f("deep_test.pgm");
  std::string p5 = "P5\n2 1\n65535\n";
  const unsigned char payload[4] = {0x01, 0x00, 0xFF, 0xFE};
  p5.append(reinterpret_cast<const char*>(payload), 4);
  write_file(f.path, p5);
  const io::GrayImage img = io::read_pgm(f.path);
  CHECK(img.at(0, 0) == 256);
  CHECK(img.at(0, 1) == 0xFFFE);
}

TEST_CASE("pgm truncation and malformed headers raise parse errors with offsets") {
  TempFile f("broken_test.pgm");
  write_file(f.path, "P5\n2 2\n255\n\x01\x02");  // two bytes short
  try {
    (void)io::read_pgm(f.path);
    FAIL("expected a parse error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }
  write_file(f.path, "P6\n2 2\n255\n....");
  CHECK_THROWS_AS(io::read_pgm(f.path), ParameterError);
  write_file(f.path, "P2\n2 2\n70000\n0 0 0 0\n");
  CHECK_THROWS_AS(io::read_pgm(f.path), ParameterError);
  write_file(f.path, "P2\n2 2\n255\n0 0 300 0\n");
  CHECK_THROWS_AS(io::read_pgm(f.path), ParameterError);
}

TEST_CASE("extract_patches geometry") {
  io::GrayImage img;
  img.width = 16;
  img.height = 8;
  img.maxval = 255;
  img.pixels.resize(16 * 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 16; ++c) img.pixels[r * 16 + c] = r * 16 + c;

  const MatrixXd patches = io::extract_patches(img, 8);
  REQUIRE(patches.rows() == 64);
  REQUIRE(patches.cols() == 2);
  // Column-major within the patch: entry (pc*8 + pr) holds pixel (pr, pc).
  CHECK(patches(0, 0) == 0.0);
  CHECK(patches(1, 0) == 16.0);   // row 1, col 0
  CHECK(patches(8, 0) == 1.0);    // row 0, col 1
  CHECK(patches(0, 1) == 8.0);    // second patch starts at column 8
  CHECK(patches(63, 1) == doctest::Approx(7 * 16 + 15));

  // Single-patch image vectorizes to one column.
  io::GrayImage tiny;
  tiny.width = tiny.height = 8;
  tiny.maxval = 9;
  tiny.pixels.assign(64, 5);
  const MatrixXd one = io::extract_patches(tiny, 8);
  CHECK(one.cols() == 1);
  CHECK(one.minCoeff() == 5.0);
  CHECK(one.maxCoeff() == 5.0);

  // Constant image gives identical columns.
  io::GrayImage flat;
  flat.width = 24;
  flat.height = 24;
  flat.maxval = 255;
  flat.pixels.assign(24 * 24, 77);
  const MatrixXd cols = io::extract_patches(flat, 8);
  CHECK(cols.cols() == 9);
  CHECK((cols.array() == 77.0).all());

  // Remainders are discarded with a warning.
  io::GrayImage ragged;
  ragged.width = 17;
  ragged.height = 9;
  ragged.maxval = 255;
  ragged.pixels.assign(17 * 9, 1);
  std::ostringstream warn;
  const MatrixXd trimmed = io::extract_patches(ragged, 8, &warn);
  CHECK(trimmed.cols() == 2);
  CHECK(warn.str().find("discarding") != std::string::npos);

  io::GrayImage small;
  small.width = 4;
  small.height = 4;
  small.maxval = 255;
  small.pixels.assign(16, 0);
  CHECK_THROWS_AS(io::extract_patches(small, 8), ParameterError);
}

TEST_CASE("matrix json round trip") {
  Philox rng(7);
  MatrixXd m(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
  const nlohmann::json j = io::matrix_to_json(m);
  const MatrixXd back = io::matrix_from_json(j);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}
