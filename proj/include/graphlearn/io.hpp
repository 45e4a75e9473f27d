#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "graphlearn/codes.hpp"
#include "graphlearn/graph.hpp"

namespace graphlearn::io {

// Dense matrices: one row per line, whitespace-delimited values, lines
// starting with '#' ignored. Values are written in shortest round-trip
// form, so write -> read is exact and output bytes are reproducible.
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& comments = {});
Matrix parse_matrix(const std::string& text, const std::string& origin);
std::string format_matrix(const Matrix& m,
                          const std::vector<std::string>& comments = {});

// Sparse codes: a "# codes <atoms> <signals> <t0>" header, then one
// "atom_index signal_index value" line per nonzero, column-major order.
SparseCodeMatrix read_codes(const std::filesystem::path& path);
void write_codes(const std::filesystem::path& path, const SparseCodeMatrix& x,
                 const std::vector<std::string>& comments = {});

/// "key = value" or "key value" per line; '#' comments and blank lines skipped.
std::map<std::string, std::string> read_key_values(
    const std::filesystem::path& path);

/// Two columns "iteration value", iterations starting at 1.
void write_trace(const std::filesystem::path& path,
                 const std::vector<double>& values);

std::string format_double(double v);

/// Writes to a sibling temporary file, then renames over `path`.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace graphlearn::io
