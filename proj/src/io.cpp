#include "graphlearn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace graphlearn::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& token, const std::string& where) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorCode::ParseError, where + ": bad number '" + token + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "cannot rename " + tmp.string() + " to " + path.string());
}

Matrix parse_matrix(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream ls(t);
    std::vector<double> row;
    std::string token;
    const std::string where = origin + ":" + std::to_string(line_no);
    while (ls >> token) row.push_back(parse_double(token, where));
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorCode::ParseError,
                  where + ": expected " + std::to_string(rows.front().size()) +
                      " values, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, origin + ": no data rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_text(path), path.string());
}

std::string format_matrix(const Matrix& m,
                          const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& comments) {
  write_text_atomic(path, format_matrix(m, comments));
}

SparseCodeMatrix read_codes(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  int line_no = 0;
  bool have_header = false;
  Matrix codes;
  int t0 = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::istringstream hs(t.substr(1));
      std::string tag;
      long long rows = 0, cols = 0;
      if (hs >> tag && tag == "codes") {
        if (!(hs >> rows >> cols >> t0) || rows < 1 || cols < 0 || t0 < 1)
          throw Error(ErrorCode::ParseError, where + ": malformed codes header");
        codes = Matrix::Zero(rows, cols);
        have_header = true;
      }
      continue;
    }
    if (!have_header)
      throw Error(ErrorCode::ParseError, where + ": triplet before codes header");
    std::istringstream ls(t);
    long long atom = -1, signal = -1;
    std::string value;
    std::string extra;
    if (!(ls >> atom >> signal >> value) || (ls >> extra))
      throw Error(ErrorCode::ParseError, where + ": expected 'atom signal value'");
    if (atom < 0 || atom >= codes.rows() || signal < 0 || signal >= codes.cols())
      throw Error(ErrorCode::ParseError, where + ": index out of range");
    codes(atom, signal) = parse_double(value, where);
  }
  if (!have_header)
    throw Error(ErrorCode::ParseError, path.string() + ": missing codes header");
  return SparseCodeMatrix(std::move(codes), t0);
}

void write_codes(const std::filesystem::path& path, const SparseCodeMatrix& x,
                 const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "# codes " + std::to_string(x.atom_count()) + " " +
         std::to_string(x.signal_count()) + " " + std::to_string(x.t0()) + "\n";
  const Matrix& c = x.codes();
  for (Eigen::Index m = 0; m < c.cols(); ++m)
    for (Eigen::Index a = 0; a < c.rows(); ++a)
      if (c(a, m) != 0.0)
        out += std::to_string(a) + " " + std::to_string(m) + " " +
               format_double(c(a, m)) + "\n";
  write_text_atomic(path, out);
}

std::map<std::string, std::string> read_key_values(
    const std::filesystem::path& path) {
  std::map<std::string, std::string> kv;
  std::istringstream in(read_text(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string key, value;
    if (const auto eq = t.find('='); eq != std::string::npos) {
      key = trim(t.substr(0, eq));
      value = trim(t.substr(eq + 1));
    } else {
      const auto sp = t.find_first_of(" \t");
      if (sp == std::string::npos)
        throw Error(ErrorCode::ParseError, path.string() + ":" +
                                               std::to_string(line_no) +
                                               ": key without value");
      key = t.substr(0, sp);
      value = trim(t.substr(sp));
    }
    kv[key] = value;
  }
  return kv;
}

void write_trace(const std::filesystem::path& path,
                 const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i + 1) + " " + format_double(values[i]) + "\n";
  write_text_atomic(path, out);
}

}  // namespace graphlearn::io
