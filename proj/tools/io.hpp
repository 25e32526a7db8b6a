#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tres/matrix.hpp"
#include "tres/multigraded.hpp"
#include "tres/scalar.hpp"
#include "tres/tcomplex.hpp"

namespace tres::cli {

using Json = nlohmann::ordered_json;

// A parsed input document, field elements still in string form so the scalar
// type can be chosen after reading the "field" key.
struct InputDoc {
  std::string field = "qq";  // "qq" or "fp:<prime>", lower-case
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> entries;  // row-major matrix entries
  int rows = 0;
  int cols = 0;
  bool graded = false;
  int ring_vars = 0;
  std::vector<Multidegree> source_degrees;
  std::vector<Multidegree> target_degrees;
};

inline std::string lower(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return s;
}

inline std::string entry_to_string(const Json& e, const char* where) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw std::runtime_error(std::string(where) +
                           ": entries must be strings like \"2/3\" or integers"
                           " (floats would lose exactness)");
}

inline Multidegree degree_from(const Json& d, int vars, const char* where) {
  if (!d.is_array() || static_cast<int>(d.size()) != vars)
    throw std::runtime_error(std::string(where) + ": each degree must be an array of " +
                             std::to_string(vars) + " integers");
  Multidegree out;
  for (const auto& c : d) {
    if (!c.is_number_integer())
      throw std::runtime_error(std::string(where) + ": degree components must be integers");
    out.push_back(c.get<long>());
  }
  return out;
}

inline InputDoc read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("input must be a JSON object");

  InputDoc doc;
  if (j.contains("field")) {
    if (!j["field"].is_string()) throw std::runtime_error("\"field\" must be a string");
    doc.field = lower(j["field"].get<std::string>());
  }

  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
    throw std::runtime_error("\"matrix\" must be a non-empty array of rows");
  for (const auto& row : j["matrix"]) {
    if (!row.is_array()) throw std::runtime_error("\"matrix\" rows must be arrays");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(entry_to_string(e, "\"matrix\""));
    if (!doc.entries.empty() && r.size() != doc.entries.front().size())
      throw std::runtime_error("\"matrix\" rows have unequal lengths");
    doc.entries.push_back(std::move(r));
  }
  doc.rows = static_cast<int>(doc.entries.size());
  doc.cols = static_cast<int>(doc.entries.front().size());

  if (j.contains("labels")) {
    if (!j["labels"].is_array() || static_cast<int>(j["labels"].size()) != doc.cols)
      throw std::runtime_error("\"labels\" must list one string per matrix column");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw std::runtime_error("\"labels\" must be strings");
      doc.labels.push_back(l.get<std::string>());
    }
  }

  const bool any = j.contains("ring_vars") || j.contains("source_degrees") ||
                   j.contains("target_degrees");
  if (any) {
    if (!j.contains("ring_vars") || !j.contains("source_degrees") ||
        !j.contains("target_degrees"))
      throw std::runtime_error(
          "a graded input needs all of \"ring_vars\", \"source_degrees\","
          " \"target_degrees\"");
    if (!j["ring_vars"].is_number_integer() || j["ring_vars"].get<int>() < 0)
      throw std::runtime_error("\"ring_vars\" must be a nonnegative integer");
    doc.graded = true;
    doc.ring_vars = j["ring_vars"].get<int>();
    if (static_cast<int>(j["source_degrees"].size()) != doc.cols)
      throw std::runtime_error("\"source_degrees\" must list one degree per column");
    if (static_cast<int>(j["target_degrees"].size()) != doc.rows)
      throw std::runtime_error("\"target_degrees\" must list one degree per row");
    for (const auto& d : j["source_degrees"])
      doc.source_degrees.push_back(degree_from(d, doc.ring_vars, "\"source_degrees\""));
    for (const auto& d : j["target_degrees"])
      doc.target_degrees.push_back(degree_from(d, doc.ring_vars, "\"target_degrees\""));
  }
  return doc;
}

template <class K>
Matrix<K> parse_matrix(const InputDoc& doc) {
  Matrix<K> m(doc.rows, doc.cols);
  for (int i = 0; i < doc.rows; ++i)
    for (int j = 0; j < doc.cols; ++j) {
      try {
        m.at(i, j) = FieldTraits<K>::parse(doc.entries[i][j]);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("matrix entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + "): " + e.what());
      }
    }
  return m;
}

template <class K>
MultigradedPresentation<K> parse_presentation(const InputDoc& doc) {
  MultigradedPresentation<K> p;
  p.vars = doc.ring_vars;
  p.scalar = parse_matrix<K>(doc);
  p.source_degrees = doc.source_degrees;
  p.target_degrees = doc.target_degrees;
  return p;
}

// --- emission -------------------------------------------------------------

inline Json degree_json(const Multidegree& d) {
  Json a = Json::array();
  for (long c : d) a.push_back(c);
  return a;
}

inline Json set_json(const GroundSubset& s) {
  Json a = Json::array();
  for (int e : s) a.push_back(e);
  return a;
}

template <class K>
Json matrix_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols; ++j) r.push_back(to_string(m.at(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <class K>
Json term_matrix_json(const TermMatrix<K>& t) {
  Json out;
  out["rows"] = t.rows;
  out["cols"] = t.cols;
  Json entries = Json::array();
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) {
      const auto& e = t.at(i, j);
      if (is_zero(e.coeff)) continue;
      Json cell;
      cell["row"] = i;
      cell["col"] = j;
      cell["coeff"] = to_string(e.coeff);
      cell["exp"] = degree_json(e.exp);
      entries.push_back(std::move(cell));
    }
  out["entries"] = std::move(entries);
  return out;
}

// Echo of the input document, so every emitted file is itself a valid input
// and re-verifying it reproduces the same report.
inline Json echo_input(const InputDoc& doc, const std::string& field_name) {
  Json out;
  out["field"] = field_name;
  if (!doc.labels.empty()) {
    Json l = Json::array();
    for (const auto& s : doc.labels) l.push_back(s);
    out["labels"] = std::move(l);
  }
  Json m = Json::array();
  for (const auto& row : doc.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e);
    m.push_back(std::move(r));
  }
  out["matrix"] = std::move(m);
  if (doc.graded) {
    out["ring_vars"] = doc.ring_vars;
    Json sd = Json::array(), td = Json::array();
    for (const auto& d : doc.source_degrees) sd.push_back(degree_json(d));
    for (const auto& d : doc.target_degrees) td.push_back(degree_json(d));
    out["source_degrees"] = std::move(sd);
    out["target_degrees"] = std::move(td);
  }
  return out;
}

// --- human-readable fragments ----------------------------------------------

inline std::string set_str(const GroundSubset& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += labels[s[i]];
  }
  return out + "}";
}

inline std::string var_str(int v, int vars) {
  if (vars <= 3) return std::string(1, "xyz"[v]);
  return "x" + std::to_string(v + 1);
}

template <class K>
std::string term_str(const Term<K>& t) {
  if (is_zero(t.coeff)) return "0";
  bool trivial = true;
  for (long e : t.exp)
    if (e != 0) trivial = false;
  std::string c = to_string(t.coeff);
  std::string out;
  if (trivial) return c;
  if (c == "-1")
    out = "-";
  else if (c != "1")
    out = c + "*";
  bool first = true;
  for (std::size_t v = 0; v < t.exp.size(); ++v) {
    if (t.exp[v] == 0) continue;
    if (!first) out += "*";
    first = false;
    out += var_str(static_cast<int>(v), static_cast<int>(t.exp.size()));
    if (t.exp[v] != 1) out += "^" + std::to_string(t.exp[v]);
  }
  return out;
}

template <class K>
void print_matrix(std::ostream& os, const Matrix<K>& m, const std::string& indent) {
  std::vector<std::string> cell(static_cast<std::size_t>(m.rows) * m.cols);
  std::size_t width = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      auto& c = cell[static_cast<std::size_t>(i) * m.cols + j];
      c = to_string(m.at(i, j));
      width = std::max(width, c.size());
    }
  for (int i = 0; i < m.rows; ++i) {
    os << indent << "[";
    for (int j = 0; j < m.cols; ++j) {
      const auto& c = cell[static_cast<std::size_t>(i) * m.cols + j];
      os << std::string(width - c.size() + (j ? 2 : 0), ' ') << c;
    }
    os << "]\n";
  }
}

template <class K>
void print_term_matrix(std::ostream& os, const TermMatrix<K>& m, const std::string& indent) {
  std::vector<std::string> cell(static_cast<std::size_t>(m.rows) * m.cols);
  std::size_t width = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      auto& c = cell[static_cast<std::size_t>(i) * m.cols + j];
      c = term_str(m.at(i, j));
      width = std::max(width, c.size());
    }
  for (int i = 0; i < m.rows; ++i) {
    os << indent << "[";
    for (int j = 0; j < m.cols; ++j) {
      const auto& c = cell[static_cast<std::size_t>(i) * m.cols + j];
      os << std::string(width - c.size() + (j ? 2 : 0), ' ') << c;
    }
    os << "]\n";
  }
}

}  // namespace tres::cli
