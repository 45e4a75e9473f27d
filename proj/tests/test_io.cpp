#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "graphlearn/io.hpp"
#include "graphlearn/random.hpp"

using namespace graphlearn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "graphlearn_test_io";
  fs::create_directories(dir);
  return dir / name;
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("matrix round trip is exact") {
  Rng rng(1);
  Matrix m(4, 3);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = rng.normal() * 1e-7;
  m(0, 0) = 0.1;
  m(1, 1) = -0.0;
  const fs::path p = scratch("m.txt");
  io::write_matrix(p, m, {"hello"});
  CHECK(io::read_matrix(p) == m);
  CHECK(io::read_text(p).rfind("# hello\n", 0) == 0);
}

TEST_CASE("parse_matrix") {
  CHECK(io::parse_matrix("# c\n1 2\n\n3   4\n", "x") == Matrix{{1, 2}, {3, 4}});
  CHECK(code_of([] { io::parse_matrix("1 2\n3\n", "x"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse_matrix("1 a\n", "x"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse_matrix("", "x"); }) == ErrorCode::ParseError);
  try {
    io::parse_matrix("1 2\n3 oops\n", "file.txt");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("file.txt:2") != std::string::npos);
  }
}

TEST_CASE("codes round trip") {
  const SparseCodeMatrix x(Matrix{{0, 1.5}, {-2, 0}, {0, 0.25}}, 2);
  const fs::path p = scratch("c.txt");
  io::write_codes(p, x);
  CHECK(io::read_codes(p) == x);
  CHECK(io::read_text(p).rfind("# codes 3 2 2\n", 0) == 0);
}

TEST_CASE("malformed codes files") {
  const fs::path p = scratch("bad.txt");
  put(p, "0 0 1\n");
  CHECK(code_of([&] { io::read_codes(p); }) == ErrorCode::ParseError);
  put(p, "# codes 2 2 1\n5 0 1\n");
  CHECK(code_of([&] { io::read_codes(p); }) == ErrorCode::ParseError);
  put(p, "# codes 2 2 1\n0 0 1\n1 0 1\n");
  CHECK(code_of([&] { io::read_codes(p); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("missing files") {
  CHECK(code_of([] { io::read_matrix("/nonexistent/graphlearn.txt"); }) == ErrorCode::IoError);
}

TEST_CASE("key values") {
  const fs::path p = scratch("kv.txt");
  put(p, "# comment\nbeta_w = 0.01\n\nstep 0.5\n");
  const auto kv = io::read_key_values(p);
  CHECK(kv.at("beta_w") == "0.01");
  CHECK(kv.at("step") == "0.5");
  CHECK(kv.size() == 2);
}

TEST_CASE("trace and atomic writes") {
  const fs::path p = scratch("t.txt");
  io::write_trace(p, {3.5, 1.0});
  CHECK(io::read_text(p) == "1 3.5\n2 1\n");
  io::write_text_atomic(p, "abc");
  CHECK(io::read_text(p) == "abc");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  CHECK(io::format_double(0.1) == "0.1");
}
