#include "hyperpos/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hyperpos/errors.hpp"

namespace hyperpos {

namespace {

cplx entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) return {e[0].get<double>(), e[1].get<double>()};
  throw Error(ErrorKind::Parse, "matrix entries must be numbers or [re, im] pairs");
}

Json entry_to_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

int dim_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 0)
    throw Error(ErrorKind::Parse, std::string("missing or invalid dimension '") + key + "'");
  return j[key].get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j[key];
}

}  // namespace

Matrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be an array of rows");
  Matrix m(rows, cols);
  if (rows == 0 || cols == 0) {
    for (const auto& row : j)
      if (!row.is_array() || !row.empty()) throw Error(ErrorKind::Parse, "empty matrix must have no entries");
    return m;
  }
  if (static_cast<int>(j.size()) != rows) throw Error(ErrorKind::Parse, "matrix has the wrong number of rows");
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) throw Error(ErrorKind::Parse, "matrix row has the wrong length");
    for (int k = 0; k < cols; ++k) m(i, k) = entry_from_json(row[k]);
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  if (m.cols() == 0) return rows;
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Realization realization_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "realization must be a JSON object");
  int n = dim_field(j, "n"), m = dim_field(j, "m");
  int p = j.contains("p") ? dim_field(j, "p") : m;
  return Realization(matrix_from_json(field(j, "A"), n, n), matrix_from_json(field(j, "B"), n, m),
                     matrix_from_json(field(j, "C"), p, n), matrix_from_json(field(j, "D"), p, m));
}

Json realization_to_json(const Realization& r) {
  return Json{{"n", r.n()},
              {"m", r.m()},
              {"p", r.p()},
              {"A", matrix_to_json(r.A)},
              {"B", matrix_to_json(r.B)},
              {"C", matrix_to_json(r.C)},
              {"D", matrix_to_json(r.D)}};
}

RealizationPolytope polytope_from_json(const Json& j) {
  RealizationPolytope p;
  const Json& verts = field(j, "vertices");
  if (!verts.is_array()) throw Error(ErrorKind::Parse, "vertices must be an array");
  for (const auto& v : verts) p.vertices.push_back(realization_from_json(v));
  if (j.contains("weights")) {
    for (const auto& w : j["weights"]) {
      if (!w.is_number()) throw Error(ErrorKind::Parse, "weights must be numbers");
      p.weights.push_back(w.get<double>());
    }
  } else {
    p.weights.assign(p.vertices.size(), p.vertices.empty() ? 0.0 : 1.0 / p.vertices.size());
  }
  p.validate();
  return p;
}

Json polytope_to_json(const RealizationPolytope& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices) verts.push_back(realization_to_json(v));
  return Json{{"vertices", verts}, {"weights", p.weights}};
}

Certificate certificate_from_json(const Json& j) {
  const Json& h = field(j, "H");
  const Json& t = field(j, "T");
  int n = static_cast<int>(h.size());
  int m = static_cast<int>(t.size());
  Certificate c;
  c.H = HermitianMatrix(matrix_from_json(h, n, n));
  c.T = HermitianMatrix(matrix_from_json(t, m, m));
  c.slack = field(j, "slack").get<double>();
  c.method = j.contains("method") ? certificate_method_from_string(j["method"].get<std::string>()) : CertificateMethod::UserSupplied;
  return c;
}

Json certificate_to_json(const Certificate& c) {
  return Json{{"H", matrix_to_json(c.H.matrix())},
              {"T", matrix_to_json(c.T.matrix())},
              {"slack", c.slack},
              {"method", to_string(c.method)}};
}

ImpedanceTree tree_from_json(const Json& j) {
  std::string type = field(j, "type").get<std::string>();
  auto value = [&]() {
    const Json& v = field(j, "value");
    if (!v.is_number()) throw Error(ErrorKind::Parse, "element value must be a number");
    return v.get<double>();
  };
  auto kids = [&]() {
    std::vector<ImpedanceTree> out;
    for (const auto& c : field(j, "children")) out.push_back(tree_from_json(c));
    return out;
  };
  ImpedanceTree t;
  if (type == "R")
    t = ImpedanceTree::resistor(value());
  else if (type == "L")
    t = ImpedanceTree::inductor(value());
  else if (type == "C")
    t = ImpedanceTree::capacitor(value());
  else if (type == "series")
    t = ImpedanceTree::series(kids());
  else if (type == "parallel")
    t = ImpedanceTree::parallel(kids());
  else
    throw Error(ErrorKind::Parse, "unknown tree node type '" + type + "'");
  t.validate();
  return t;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string nyquist_csv(const Realization& r, const FrequencyGrid& grid) {
  // negative frequencies are allowed here; the plot covers the whole axis
  for (size_t i = 0; i < grid.omegas.size(); ++i) {
    if (!std::isfinite(grid.omegas[i])) throw Error(ErrorKind::Range, "grid frequencies must be finite");
    if (i > 0 && grid.omegas[i] < grid.omegas[i - 1]) throw Error(ErrorKind::Range, "grid frequencies must be sorted");
  }
  std::string out = "omega";
  for (int i = 1; i <= r.p(); ++i)
    for (int k = 1; k <= r.m(); ++k) {
      auto tag = std::to_string(i) + "_" + std::to_string(k);
      out += ",re_" + tag + ",im_" + tag;
    }
  out += "\n";
  for (double w : grid.omegas) {
    Matrix f = evaluate(r, cplx(0.0, w));
    out += format_double(w);
    for (int i = 0; i < r.p(); ++i)
      for (int k = 0; k < r.m(); ++k) out += "," + format_double(f(i, k).real()) + "," + format_double(f(i, k).imag());
    out += "\n";
  }
  return out;
}

void nyquist_emit(const Realization& r, const FrequencyGrid& grid, const std::string& path) {
  write_text_file(path, nyquist_csv(r, grid));
}

}  // namespace hyperpos
