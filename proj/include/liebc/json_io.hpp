#pragma once

// JSON encodings: field elements, forms, model files, diamonds, metrics and
// flow states. Frame and generator indices are 1-based in every file format.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liebc/builtins.hpp"
#include "liebc/cohomology.hpp"
#include "liebc/flow.hpp"

namespace liebc {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string rational_text(const Rational& r) {
  std::string s = r.to_string();
  return s.find('/') == std::string::npos ? s + "/1" : s;
}

inline Rational rational_of(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw Error(ErrorCode::parse, "expected a rational as \"p/q\", got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int index_of(const Json& j, int bound, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::parse, std::string(what) + " must be an integer");
  int k = j.get<int>();
  if (k < 1 || k > bound)
    throw Error(ErrorCode::parse, std::string(what) + " " + std::to_string(k) + " outside 1.." + std::to_string(bound));
  return k - 1;
}

}  // namespace detail

// [1, sqrt3, i, i sqrt3] components as "p/q" strings.
inline Json to_json(const FieldElement& x) {
  return Json::array({detail::rational_text(x.a()), detail::rational_text(x.b()), detail::rational_text(x.c()),
                      detail::rational_text(x.d())});
}

inline FieldElement field_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return FieldElement(detail::rational_of(j));
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::parse, "field element must be an array of four rationals");
  return FieldElement(detail::rational_of(j[0]), detail::rational_of(j[1]), detail::rational_of(j[2]),
                      detail::rational_of(j[3]));
}

inline Json to_json(const Form& x) {
  Json out = Json::array();
  for (const auto& [m, c] : x.terms()) {
    Json holo = Json::array(), anti = Json::array();
    for (int k = 0; k < x.n(); ++k) {
      if (m.holo >> k & 1u) holo.push_back(k + 1);
      if (m.anti >> k & 1u) anti.push_back(k + 1);
    }
    out.push_back({{"holo", holo}, {"anti", anti}, {"coeff", to_json(c)}});
  }
  return out;
}

// Terms are wedged in the listed order, so unsorted index lists carry their sign.
inline Form form_from_json(const Json& j, int n) {
  const Json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) throw Error(ErrorCode::parse, "form must be a list of terms");
  Form out(n);
  for (const auto& t : terms) {
    Form term = Form::constant(n, field_from_json(detail::field(t, "coeff")));
    for (const auto& k : t.value("holo", Json::array())) term = wedge(term, Form::phi(n, detail::index_of(k, n, "index")));
    for (const auto& k : t.value("anti", Json::array()))
      term = wedge(term, Form::phibar(n, detail::index_of(k, n, "index")));
    out += term;
  }
  return out;
}

inline Json to_json(const DenseMatrix<FieldElement>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

inline DenseMatrix<FieldElement> matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw Error(ErrorCode::parse, "matrix has the wrong number of rows");
  DenseMatrix<FieldElement> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::parse, "matrix has the wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field_from_json(j[r][c]);
  }
  return m;
}

// Complex matrix as rows of [re, im] pairs.
inline Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

inline Json to_json(const LieAlgebraModel& m) {
  Json brackets = Json::array();
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j) {
      Json terms = Json::array();
      for (int k = 0; k < m.dim; ++k)
        if (!m.c(i, j, k).is_zero()) terms.push_back({{"k", k + 1}, {"coeff", to_json(m.c(i, j, k))}});
      if (!terms.empty()) brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"terms", terms}});
    }
  Json torus = Json::array();
  for (int t : m.torus) torus.push_back(t + 1);
  Json chamber = Json::array();
  for (const auto& w : m.chamber) chamber.push_back(detail::rational_text(w));
  return {{"name", m.name},       {"dim", m.dim},         {"torus", torus},
          {"brackets", brackets}, {"pairing", to_json(m.pairing)}, {"conjugation", to_json(m.conjugation)},
          {"chamber", chamber},   {"labels", m.labels}};
}

// "conjugation" defaults to the identity (a real frame) and "chamber" to the
// first torus coordinate. Validity (Jacobi, invariance) is left to the caller.
inline std::shared_ptr<LieAlgebraModel> model_from_json(const Json& j) {
  auto m = std::make_shared<LieAlgebraModel>(detail::field(j, "name").get<std::string>(),
                                             detail::field(j, "dim").get<int>());
  if (m->dim <= 0 || m->dim > 32) throw Error(ErrorCode::parse, "dim must lie in 1..32");
  for (const auto& t : detail::field(j, "torus")) m->torus.push_back(detail::index_of(t, m->dim, "torus index"));
  for (const auto& b : detail::field(j, "brackets")) {
    int i = detail::index_of(detail::field(b, "i"), m->dim, "bracket index i");
    int k = detail::index_of(detail::field(b, "j"), m->dim, "bracket index j");
    std::vector<std::pair<int, FieldElement>> terms;
    for (const auto& t : detail::field(b, "terms"))
      terms.emplace_back(detail::index_of(detail::field(t, "k"), m->dim, "bracket target"),
                         field_from_json(detail::field(t, "coeff")));
    if (i == k) throw Error(ErrorCode::parse, "bracket of a generator with itself");
    m->set_bracket(i, k, terms);
  }
  m->pairing = matrix_from_json(detail::field(j, "pairing"), m->dim, m->dim);
  if (j.contains("conjugation")) m->conjugation = matrix_from_json(j.at("conjugation"), m->dim, m->dim);
  if (j.contains("chamber"))
    for (const auto& w : j.at("chamber")) m->chamber.push_back(detail::rational_of(w));
  if (j.contains("labels")) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() == static_cast<std::size_t>(m->dim)) m->labels = std::move(labels);
  }
  return m;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
}

// A builtin name, or "file:<path>" for a model file.
inline std::shared_ptr<const LieAlgebraModel> load_model(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return model_from_json(read_json_file(spec.substr(5)));
  return builtin_model(spec);
}

inline Json to_json(const Diamond& d) {
  Json table = Json::array();
  for (const auto& row : d.table) table.push_back(row);
  return {{"model", d.model}, {"kind", kind_name(d.kind)}, {"n", d.n}, {"table", table}};
}

inline Diamond diamond_from_json(const Json& j) {
  Diamond d;
  d.model = detail::field(j, "model").get<std::string>();
  auto kind = parse_kind(detail::field(j, "kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::parse, "unknown cohomology kind " + j.at("kind").dump());
  d.kind = *kind;
  d.n = detail::field(j, "n").get<int>();
  d.table = detail::field(j, "table").get<std::vector<std::vector<std::size_t>>>();
  return d;
}

// Table given as rows of constant p+q, each listed with p decreasing, the way
// diamonds are usually printed.
inline Diamond diamond_from_rows(CohomologyKind kind, const std::string& model, int n,
                                 const std::vector<std::vector<std::size_t>>& rows) {
  if (rows.size() != static_cast<std::size_t>(2 * n + 1))
    throw Error(ErrorCode::parse, "diamond needs " + std::to_string(2 * n + 1) + " rows");
  Diamond d;
  d.kind = kind;
  d.model = model;
  d.n = n;
  d.table.assign(n + 1, std::vector<std::size_t>(n + 1));
  for (int r = 0; r <= 2 * n; ++r) {
    const int top = std::min(r, n), bottom = std::max(0, r - n);
    if (rows[r].size() != static_cast<std::size_t>(top - bottom + 1))
      throw Error(ErrorCode::parse, "diamond row " + std::to_string(r) + " has the wrong length");
    for (int p = top, k = 0; p >= bottom; --p, ++k) d.table[p][r - p] = rows[r][k];
  }
  return d;
}

struct Golden {
  Diamond diamond;
  std::vector<std::string> structures;
};

inline Golden golden_from_json(const Json& j) {
  auto kind = parse_kind(detail::field(j, "kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::parse, "unknown cohomology kind in golden");
  Golden g;
  g.diamond = diamond_from_rows(*kind, detail::field(j, "model").get<std::string>(), detail::field(j, "n").get<int>(),
                                detail::field(j, "rows").get<std::vector<std::vector<std::size_t>>>());
  g.structures = j.value("structures", std::vector<std::string>{});
  return g;
}

// data_dir/<model>_<kind>.json, or nothing if there is no such golden.
inline std::optional<Golden> load_golden(const std::string& data_dir, const std::string& model, CohomologyKind kind) {
  std::string path = data_dir + "/golden/" + model + "_" + kind_name(kind) + ".json";
  if (!std::ifstream(path)) return std::nullopt;
  return golden_from_json(read_json_file(path));
}

inline Json to_json(const FlowState& s) {
  return {{"t", s.time}, {"H", to_json(s.metric)}, {"ricci_norm", s.ricci_norm}, {"lambda", s.lambda},
          {"residual", s.pluriclosed_residual}};
}

}  // namespace liebc
