#include "qmatrix/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qmatrix {

namespace {

using nlohmann::json;

json index_array(const std::vector<int>& idx) {
  json a = json::array();
  for (int i : idx) a.push_back(i + 1);
  return a;
}

std::vector<int> read_index(const json& j, int n, int legs, const char* what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(legs)) {
    throw Error(ErrorKind::Parse, std::string(what) + " must be an array of " + std::to_string(legs) + " indices");
  }
  std::vector<int> idx;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(ErrorKind::Parse, std::string(what) + " index is not an integer");
    const int i = v.get<int>();
    if (i < 1 || i > n) throw Error(ErrorKind::Parse, std::string(what) + " index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    idx.push_back(i - 1);
  }
  return idx;
}

}  // namespace

std::string to_json(const TensorOperator& op) {
  json doc;
  doc["n"] = op.n();
  doc["legs"] = op.legs();
  json entries = json::array();
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (const auto& [c, v] : op.row(r)) {
      entries.push_back({{"row", index_array(op.unflatten(r))}, {"col", index_array(op.unflatten(c))}, {"value", v.to_string()}});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

TensorOperator from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("matrix file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("legs") || !doc.contains("entries")) {
    throw Error(ErrorKind::Parse, "matrix file needs the keys n, legs and entries");
  }
  if (!doc["n"].is_number_integer() || !doc["legs"].is_number_integer() || !doc["entries"].is_array()) {
    throw Error(ErrorKind::Parse, "matrix file: n and legs must be integers, entries an array");
  }
  const int n = doc["n"].get<int>();
  const int legs = doc["legs"].get<int>();
  if (n < 1 || legs < 0 || legs > 8) throw Error(ErrorKind::Parse, "matrix file: unsupported n or legs");
  TensorOperator op(n, legs);
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("row") || !e.contains("col") || !e.contains("value")) {
      throw Error(ErrorKind::Parse, "matrix entry needs row, col and value");
    }
    const auto r = read_index(e["row"], n, legs, "row");
    const auto c = read_index(e["col"], n, legs, "col");
    Scalar v;
    if (e["value"].is_string()) {
      v = parse_scalar(e["value"].get<std::string>());
    } else if (e["value"].is_number_integer()) {
      v = Scalar(e["value"].get<long>());
    } else {
      throw Error(ErrorKind::Parse, "matrix entry value must be a string or an integer");
    }
    op.add_to(op.flatten(r), op.flatten(c), v);
  }
  return op;
}

TensorOperator read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const TensorOperator& op) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  out << to_json(op);
}

std::string render(const TensorOperator& op) {
  std::ostringstream os;
  os << "n=" << op.n() << " legs=" << op.legs() << " nonzeros=" << op.nonzeros() << "\n";
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (const auto& [c, v] : op.row(r)) {
      os << "  [";
      const auto rd = op.unflatten(r);
      const auto cd = op.unflatten(c);
      for (std::size_t i = 0; i < rd.size(); ++i) os << (i ? "," : "") << rd[i] + 1;
      os << "; ";
      for (std::size_t i = 0; i < cd.size(); ++i) os << (i ? "," : "") << cd[i] + 1;
      os << "] " << v.to_string() << "\n";
    }
  }
  return os.str();
}

}  // namespace qmatrix
