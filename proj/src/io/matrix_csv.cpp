#include "sdr/io/matrix_csv.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr::io {

namespace {

bool has_gz_suffix(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

void write_all(const std::string& path, const std::string& data) {
  if (has_gz_suffix(path)) {
    gzFile gz = gzopen(path.c_str(), "wb");
    if (!gz) throw ParameterError("cannot open for writing: " + path);
    const int written = gzwrite(gz, data.data(), static_cast<unsigned>(data.size()));
    const int rc = gzclose(gz);
    if (written != static_cast<int>(data.size()) || rc != Z_OK) {
      throw NumericalFailure("gzip write failed: " + path);
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw NumericalFailure("write failed: " + path);
}

std::string read_all(const std::string& path) {
  if (has_gz_suffix(path)) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw ParameterError("cannot open for reading: " + path);
    std::string data;
    char buf[1 << 16];
    int got = 0;
    while ((got = gzread(gz, buf, sizeof(buf))) > 0) {
      data.append(buf, static_cast<std::size_t>(got));
    }
    const bool bad = got < 0;
    gzclose(gz);
    if (bad) throw ParameterError("gzip read failed: " + path);
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::string data;
  data.reserve(static_cast<std::size_t>(m.size()) * 26 + 32);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%lld,%lld\n", static_cast<long long>(m.rows()),
                static_cast<long long>(m.cols()));
  data += buf;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      data += buf;
      data += j + 1 < m.cols() ? ',' : '\n';
    }
  }
  write_all(path, data);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  const std::string data = read_all(path);
  const char* p = data.c_str();
  char* end = nullptr;

  errno = 0;
  const long long rows = std::strtoll(p, &end, 10);
  if (end == p || *end != ',') throw ParameterError("malformed CSV header in " + path);
  p = end + 1;
  const long long cols = std::strtoll(p, &end, 10);
  if (end == p || rows < 0 || cols < 0) {
    throw ParameterError("malformed CSV header in " + path);
  }
  p = end;

  Eigen::MatrixXd m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      while (*p == ',' || *p == '\n' || *p == '\r' || *p == ' ' || *p == '\t') ++p;
      errno = 0;
      const double v = std::strtod(p, &end);
      if (end == p) {
        throw ParameterError("matrix CSV " + path + " truncated at entry (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
      }
      m(i, j) = v;
      p = end;
    }
  }
  return m;
}

}  // namespace sdr::io
