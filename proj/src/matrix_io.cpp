#include "logsum/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

#include <fmt/format.h>

namespace logsum::io {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    } else {
        return v;
    }
}

template <class T>
void put(std::ostream &out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <class T>
T get(std::istream &in, const char *what) {
    T v;
    if (!in.read(reinterpret_cast<char *>(&v), sizeof(T)))
        throw MatrixFormatError(std::string("binary matrix: truncated ") + what);
    return to_little(v);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

MatrixFormatError::MatrixFormatError(const std::string &what, std::size_t line)
    : std::runtime_error(line ? fmt::format("line {}: {}", line, what) : what), line_(line) {}

MatrixFormat format_from_extension(const std::filesystem::path &path) {
    return path.extension() == ".bin" ? MatrixFormat::Binary : MatrixFormat::Csv;
}

Eigen::MatrixXd read_csv(std::istream &in) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = trim(line);
        if (rest.empty())
            continue;
        std::size_t count = 0;
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view field = trim(rest.substr(0, comma));
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
                throw MatrixFormatError(fmt::format("cannot parse field {} ('{}')", count + 1, field), line_no);
            if (!std::isfinite(v))
                throw MatrixFormatError(fmt::format("non-finite value in field {}", count + 1), line_no);
            values.push_back(v);
            ++count;
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }
        if (rows == 0)
            cols = count;
        else if (count != cols)
            throw MatrixFormatError(fmt::format("expected {} fields, found {}", cols, count), line_no);
        ++rows;
    }
    if (rows == 0)
        throw MatrixFormatError("empty matrix file");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
    return m;
}

void write_csv(std::ostream &out, const Eigen::MatrixXd &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c)
                out << ',';
            out << fmt::format("{:.17g}", m(r, c));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_binary(std::istream &in) {
    const auto rows = get<std::uint64_t>(in, "header");
    const auto cols = get<std::uint64_t>(in, "header");
    constexpr std::uint64_t limit = std::numeric_limits<std::uint32_t>::max();
    if (rows > limit || cols > limit || (rows && cols > (std::uint64_t{1} << 40) / rows))
        throw MatrixFormatError(fmt::format("binary matrix: implausible dimensions {}x{}", rows, cols));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = get<double>(in, "payload");
    if (in.peek() != std::char_traits<char>::eof())
        throw MatrixFormatError("binary matrix: trailing bytes after payload");
    return m;
}

void write_binary(std::ostream &out, const Eigen::MatrixXd &m) {
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            put<double>(out, m(r, c));
}

Eigen::MatrixXd read_matrix(const std::filesystem::path &path, MatrixFormat fmt) {
    std::ifstream in(path, fmt == MatrixFormat::Binary ? std::ios::binary : std::ios::in);
    if (!in)
        throw MatrixFormatError("cannot open " + path.string());
    return fmt == MatrixFormat::Binary ? read_binary(in) : read_csv(in);
}

void write_matrix(const std::filesystem::path &path, const Eigen::MatrixXd &m, MatrixFormat fmt) {
    std::ofstream out(path, fmt == MatrixFormat::Binary ? std::ios::binary : std::ios::out);
    if (!out)
        throw MatrixFormatError("cannot open " + path.string() + " for writing");
    if (fmt == MatrixFormat::Binary)
        write_binary(out, m);
    else
        write_csv(out, m);
    if (!out)
        throw MatrixFormatError("write failed: " + path.string());
}

} // namespace logsum::io
