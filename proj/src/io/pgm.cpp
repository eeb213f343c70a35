#include "sdr/io/pgm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "sdr/errors.hpp"

namespace sdr::io {

namespace {

class Cursor {
public:
  Cursor(std::string data, std::string path)
      : data_(std::move(data)), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParameterError("PGM parse error in " + path_ + " at byte offset " +
                         std::to_string(pos_) + ": " + what);
  }

  bool eof() const { return pos_ >= data_.size(); }
  std::size_t pos() const { return pos_; }
  unsigned char byte() {
    if (eof()) fail("unexpected end of file");
    return static_cast<unsigned char>(data_[pos_++]);
  }

  // Skips whitespace and # comments (header tokens only).
  void skip_separators() {
    while (!eof()) {
      const unsigned char c = static_cast<unsigned char>(data_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!eof() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long read_int(const std::string& what) {
    skip_separators();
    if (eof()) fail("missing " + what);
    if (!std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      fail("expected digit for " + what);
    }
    long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + (data_[pos_] - '0');
      if (v > 1 << 30) fail(what + " out of range");
      ++pos_;
    }
    return v;
  }

  std::size_t remaining() const { return data_.size() - pos_; }

private:
  std::string data_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Cursor cur(ss.str(), path);

  const unsigned char m0 = cur.byte();
  const unsigned char m1 = cur.byte();
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) cur.fail("magic is not P2 or P5");
  const bool binary = m1 == '5';

  GrayImage img;
  img.width = static_cast<int>(cur.read_int("width"));
  img.height = static_cast<int>(cur.read_int("height"));
  img.maxval = static_cast<int>(cur.read_int("maxval"));
  if (img.width < 1 || img.height < 1) cur.fail("non-positive dimensions");
  if (img.maxval < 1 || img.maxval > 65535) cur.fail("maxval outside [1, 65535]");

  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    const unsigned char sep = cur.byte();
    if (!std::isspace(sep)) cur.fail("missing whitespace before binary payload");
    const int bytes_per = img.maxval > 255 ? 2 : 1;
    if (cur.remaining() < count * static_cast<std::size_t>(bytes_per)) {
      cur.fail("payload shorter than width*height samples");
    }
    for (std::size_t i = 0; i < count; ++i) {
      int v = cur.byte();
      if (bytes_per == 2) v = (v << 8) | cur.byte();  // big-endian
      if (v > img.maxval) cur.fail("sample exceeds maxval");
      img.pixels[i] = v;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = cur.read_int("pixel value");
      if (v > img.maxval) cur.fail("sample exceeds maxval");
      img.pixels[i] = static_cast<int>(v);
    }
  }
  return img;
}

Eigen::MatrixXd extract_patches(const GrayImage& img, int patch, std::ostream* warnings) {
  if (patch < 1) throw ParameterError("patch size must be positive");
  if (img.width < patch || img.height < patch) {
    throw ParameterError("image is smaller than one patch");
  }
  const int bw = img.width / patch;
  const int bh = img.height / patch;
  if ((img.width % patch || img.height % patch) && warnings) {
    *warnings << "extract_patches: discarding trailing " << img.width % patch
              << " column(s) and " << img.height % patch << " row(s)\n";
  }

  Eigen::MatrixXd out(patch * patch, static_cast<Eigen::Index>(bw) * bh);
  Eigen::Index k = 0;
  for (int br = 0; br < bh; ++br) {
    for (int bc = 0; bc < bw; ++bc, ++k) {
      for (int pc = 0; pc < patch; ++pc) {
        for (int pr = 0; pr < patch; ++pr) {
          out(pc * patch + pr, k) =
              static_cast<double>(img.at(br * patch + pr, bc * patch + pc));
        }
      }
    }
  }
  return out;
}

}  // namespace sdr::io
