#ifndef SDR_IO_PGM_HPP
#define SDR_IO_PGM_HPP

#include <Eigen/Core>
#include <ostream>
#include <string>
#include <vector>

namespace sdr::io {

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<int> pixels;  // row-major

  int at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

/// Parses P2 (ASCII) and P5 (binary) PGM, honoring # comments and 16-bit
/// big-endian P5 payloads when maxval > 255. Malformed input raises a parse
/// error naming the byte offset.
GrayImage read_pgm(const std::string& path);

/// Non-overlapping patch x patch blocks scanned left-to-right, top-to-bottom,
/// each vectorized column-major, stacked as matrix columns. Pixel values are
/// cast to double without normalization. Trailing rows/columns that do not
/// fill a whole patch are discarded with a note to warnings when provided.
Eigen::MatrixXd extract_patches(const GrayImage& img, int patch = 8,
                                std::ostream* warnings = nullptr);

}  // namespace sdr::io

#endif  // SDR_IO_PGM_HPP
