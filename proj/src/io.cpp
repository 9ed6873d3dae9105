#include "cohlab/io.hpp"

#include "cohlab/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cohlab {

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw Error(ErrorCode::kParseError, std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

std::size_t size_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorCode::kParseError, std::string("field '") + name + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::kParseError, std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return Json{{"dim_rows", m.rows()}, {"dim_cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& doc) {
  const std::size_t rows = size_field(doc, "dim_rows");
  const std::size_t cols = size_field(doc, "dim_cols");
  const Json& entries = field(doc, "entries");
  if (!entries.is_array()) throw Error(ErrorCode::kParseError, "entries must be an array");
  if (entries.size() != rows * cols) {
    throw Error(ErrorCode::kParseError, "entries has " + std::to_string(entries.size()) + " items, expected " +
                                            std::to_string(rows * cols));
  }
  check_dimension(std::max(rows, cols), "matrix document");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Json& e = entries[k];
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kParseError, "entry must be a [re, im] pair");
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
        Complex(number(e[0], "re"), number(e[1], "im"));
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho) {
  Json doc{{"dim", rho.dim()}};
  doc.update(matrix_to_json(rho.matrix()));
  return doc;
}

DensityMatrix state_from_json(const Json& doc) {
  const std::size_t dim = size_field(doc, "dim");
  ComplexMatrix m = matrix_from_json(doc);
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw Error(ErrorCode::kParseError, "state dim does not match its matrix");
  }
  return DensityMatrix(std::move(m));
}

Json ensemble_to_json(const UnitaryEnsemble& e) {
  Json members = Json::array();
  for (const auto& m : e.members()) members.push_back({{"p", m.p}, {"unitary", matrix_to_json(m.unitary)}});
  return Json{{"dim", e.dim()}, {"members", std::move(members)}};
}

UnitaryEnsemble ensemble_from_json(const Json& doc) {
  const std::size_t dim = size_field(doc, "dim");
  const Json& list = field(doc, "members");
  if (!list.is_array()) throw Error(ErrorCode::kParseError, "members must be an array");
  std::vector<EnsembleMember> members;
  members.reserve(list.size());
  for (const Json& item : list) {
    members.push_back({number(field(item, "p"), "p"), matrix_from_json(field(item, "unitary"))});
  }
  return UnitaryEnsemble(dim, std::move(members));
}

Json typical_set_to_json(const TypicalSet& set) {
  return Json{{"n", set.n},
              {"delta", set.delta},
              {"H", set.entropy},
              {"member_count", set.members.size()},
              {"mass", set.mass}};
}

const std::vector<std::string>& erasure_columns() {
  static const std::vector<std::string> columns{
      "n", "eps", "N", "seed", "achieved_eps_witness", "achieved_eps_tau",
      "entropy_exchange", "lemma1_bound", "rate", "c_r"};
  return columns;
}

std::vector<std::string> erasure_row(const ErasureReport& r) {
  return {std::to_string(r.n),
          format_double(r.eps),
          std::to_string(r.size),
          std::to_string(r.seed),
          format_double(r.achieved_eps_witness),
          format_double(r.achieved_eps_tau),
          format_double(r.entropy_exchange),
          format_double(r.lemma1_bound),
          format_double(r.rate),
          format_double(r.c_r)};
}

Json erasure_report_to_json(const ErasureReport& r) {
  return Json{{"n", r.n},
              {"eps", r.eps},
              {"N", r.size},
              {"seed", r.seed},
              {"achieved_eps_witness", r.achieved_eps_witness},
              {"achieved_eps_tau", r.achieved_eps_tau},
              {"entropy_exchange", r.entropy_exchange},
              {"lemma1_bound", r.lemma1_bound},
              {"rate", r.rate},
              {"c_r", r.c_r}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s = buf;
  if (s == "-0.000000000") s = "0.000000000";
  return s;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + path.string());
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_text_file(path)); }

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace cohlab
