#ifndef SDR_IO_MATRIX_CSV_HPP
#define SDR_IO_MATRIX_CSV_HPP

#include <Eigen/Core>
#include <string>

namespace sdr::io {

/// Dense CSV layout: header line `rows,cols`, then one line per row of
/// comma-separated values at 17 significant digits, which round-trips every
/// finite double exactly. Paths ending in .gz are transparently gzipped.
void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);

Eigen::MatrixXd read_matrix_csv(const std::string& path);

}  // namespace sdr::io

#endif  // SDR_IO_MATRIX_CSV_HPP
