#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"
#include "ldg/vtkout.hpp"

using namespace ldg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Counts occurrences of a token in a string.
int count_occurrences(const std::string& hay, const std::string& needle) {
  int count = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Minimal well-formedness check: every opened XML tag is closed in order.
bool tags_balanced(const std::string& xml) {
  std::vector<std::string> stack;
  size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    size_t end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?') continue;
    bool closing = tag[0] == '/';
    bool self_closing = tag.back() == '/';
    std::string name = tag.substr(closing ? 1 : 0);
    name = name.substr(0, name.find_first_of(" \t/"));
    if (self_closing) continue;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("linear snapshot file layout") {
  Mesh tri = generate_grid_data({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  Eigen::MatrixXd data(1, 3);
  data << 1.0, 2.0, 3.0;
  std::string path = write_vtu({&tri, data, "c", "test_lin", 0});
  CHECK(path == "test_lin.0.vtu");
  std::string xml = slurp(path);
  CHECK(tags_balanced(xml));
  CHECK(xml.find("<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" "
                 "byte_order=\"LittleEndian\" compressor=\"vtkZLibDataCompressor\">") !=
        std::string::npos);
  CHECK(xml.find("NumberOfPoints=\"3\"") != std::string::npos);
  CHECK(xml.find("NumberOfCells=\"1\"") != std::string::npos);
  CHECK(xml.find("1.000e+00 2.000e+00 3.000e+00") != std::string::npos);
  // Cell type 5, offsets end at 3.
  CHECK(xml.find("Name=\"types\"") != std::string::npos);
  CHECK(count_occurrences(xml, ">\n          5 \n") == 1);
  std::remove(path.c_str());
}

TEST_CASE("constant data is replicated to the vertices") {
  Mesh tri = generate_grid_data({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  DofMatrix c0(1, 1);
  c0(0, 0) = std::sqrt(2.0);  // field value 2 everywhere
  std::string path = write_vtu({&tri, to_lagrange(c0), "c", "test_p0", 3});
  CHECK(path == "test_p0.3.vtu");
  std::string xml = slurp(path);
  CHECK(count_occurrences(xml, "2.000e+00 2.000e+00 2.000e+00") == 1);
  std::remove(path.c_str());
}

TEST_CASE("quadratic snapshot uses cell type 22") {
  Mesh sq = domain_square(1.0);
  Eigen::MatrixXd data(2, 6);
  data << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
  std::string path = write_vtu({&sq, data, "c", "test_quad", 7});
  std::string xml = slurp(path);
  CHECK(tags_balanced(xml));
  CHECK(xml.find("NumberOfPoints=\"12\"") != std::string::npos);
  CHECK(xml.find("22 22") != std::string::npos);
  // Offsets 6 and 12.
  CHECK(xml.find("6 12") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("shape validation") {
  Mesh tri = generate_grid_data({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  Eigen::MatrixXd bad(1, 4);
  bad.setZero();
  CHECK_THROWS_AS(write_vtu({&tri, bad, "c", "x", 0}), std::invalid_argument);
  CHECK_THROWS_AS(write_vtu({nullptr, bad, "c", "x", 0}), std::invalid_argument);
}

TEST_CASE("mesh report") {
  std::vector<Point2> coords = {
      {0.0, -1.0}, {std::sqrt(3.0), 0.0}, {0.0, 1.0}, {-std::sqrt(3.0), 0.0}};
  Mesh m = generate_grid_data(coords, {{3, 0, 2}, {0, 1, 2}});
  std::string report = dump_mesh_report(m);
  CHECK(report.find("numT=2") != std::string::npos);
  CHECK(report.find("numE=5") != std::string::npos);
  CHECK(report.find("numV=4") != std::string::npos);
  CHECK(report == dump_mesh_report(m));

  Mesh tri = generate_grid_data({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  CHECK(count_occurrences(dump_mesh_report(tri), "[boundary]") == 3);
}
