#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace logsum::io {

/// Malformed matrix file. line() is 1-based; 0 when not line-specific.
class MatrixFormatError : public std::runtime_error {
public:
    MatrixFormatError(const std::string &what, std::size_t line = 0);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class MatrixFormat { Csv, Binary };

/// Picks Binary for ".bin", Csv otherwise.
MatrixFormat format_from_extension(const std::filesystem::path &path);

// CSV: one matrix row per line, comma separated, row-major. Blank lines are
// skipped; every row must have the same number of fields.
Eigen::MatrixXd read_csv(std::istream &in);
void write_csv(std::ostream &out, const Eigen::MatrixXd &m);

// Binary: u64 rows, u64 cols (little endian), then rows*cols f64 little-endian
// values in row-major order.
Eigen::MatrixXd read_binary(std::istream &in);
void write_binary(std::ostream &out, const Eigen::MatrixXd &m);

Eigen::MatrixXd read_matrix(const std::filesystem::path &path, MatrixFormat fmt);
void write_matrix(const std::filesystem::path &path, const Eigen::MatrixXd &m, MatrixFormat fmt);

} // namespace logsum::io
