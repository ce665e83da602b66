#include "conelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conelab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using nlohmann::json;

void append_matrix(std::string& out, const Matrix& m) {
  out += "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += "[";
      out += format_double(m(r, c).real());
      out += ",";
      out += format_double(m(r, c).imag());
      out += "]";
    }
    out += "]";
  }
  out += "]";
}

void append_element_body(std::string& out, const Element& e) {
  out += "{\"blocks\":[";
  for (size_t i = 0; i < e.blocks.size(); ++i) {
    if (i) out += ",";
    append_matrix(out, e.blocks[i]);
  }
  out += "],\"shape\":[";
  for (int i = 0; i < e.shape.block_count(); ++i) {
    if (i) out += ",";
    out += std::to_string(e.shape.dim(i));
  }
  out += "]}";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_json(const Element& e) {
  std::string out;
  append_element_body(out, e);
  return out;
}

std::string to_json(const JordanIso& j) {
  std::string out = "{\"perm\":[";
  for (size_t i = 0; i < j.perm.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(j.perm[i]);
  }
  out += "],\"transpose\":[";
  for (size_t i = 0; i < j.transpose.size(); ++i) {
    if (i) out += ",";
    out += j.transpose[i] ? "true" : "false";
  }
  out += "],\"unitaries\":[";
  for (size_t i = 0; i < j.unitaries.size(); ++i) {
    if (i) out += ",";
    append_matrix(out, j.unitaries[i]);
  }
  out += "]}";
  return out;
}

std::string to_json(const Witness& w) {
  std::string out = "{\"elements\":{";
  for (size_t i = 0; i < w.elements.size(); ++i) {
    if (i) out += ",";
    out += "\"" + escape(w.elements[i].first) + "\":";
    append_element_body(out, w.elements[i].second);
  }
  out += "},\"label\":\"" + escape(w.label) + "\"";
  out += ",\"margin\":" + format_double(w.margin);
  out += ",\"quantity_lhs\":" + format_double(w.quantity_lhs);
  out += ",\"quantity_rhs\":" + format_double(w.quantity_rhs);
  out += "}";
  return out;
}

std::string to_json(const SuiteReport& r) {
  std::string out = "{\"checks\":{";
  bool first = true;
  for (const auto& [name, check] : r.checks) {
    if (!first) out += ",";
    first = false;
    out += "\"" + escape(name) + "\":{\"tol_multiplier\":" +
           format_double(check.tol_multiplier) +
           ",\"violation\":" + format_double(check.violation) +
           ",\"worst_trial\":" + std::to_string(check.worst_trial) + "}";
  }
  out += "}";
  if (!r.inconclusive_reason.empty()) {
    out += ",\"inconclusive_reason\":\"" + escape(r.inconclusive_reason) + "\"";
  }
  out += ",\"max_violation\":" + format_double(r.max_violation);
  out += ",\"paper_ref\":\"" + escape(r.suite.statement()) + "\"";
  out += ",\"params\":{\"dims\":[";
  for (int i = 0; i < r.shape.block_count(); ++i) {
    if (i) out += ",";
    out += std::to_string(r.shape.dim(i));
  }
  out += "]";
  if (r.suite.p) {
    out += ",\"p\":" + format_double(*r.suite.p);
  }
  out += ",\"tol\":" + format_double(r.tol);
  out += ",\"trials\":" + std::to_string(r.trials);
  out += "}";
  out += ",\"seed\":" + std::to_string(r.seed);
  out += ",\"suite\":\"" + escape(r.suite.name()) + "\"";
  out += ",\"verdict\":\"" + to_string(r.verdict) + "\"";
  out += ",\"witnesses\":[";
  for (size_t i = 0; i < r.witnesses.size(); ++i) {
    for (size_t k = 0; k < r.witnesses[i].elements.size(); ++k) {
      if (i || k) out += ",";
      append_element_body(out, r.witnesses[i].elements[k].second);
    }
  }
  out += "]}";
  return out;
}

namespace {

ParseError parse_error(const std::string& what) {
  return ParseError("element/jordan JSON: " + what);
}

Matrix matrix_from_json(const json& rows, int expected_dim,
                        const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != expected_dim) {
    throw parse_error(where + " must be an array of " +
                      std::to_string(expected_dim) + " rows");
  }
  Matrix m(expected_dim, expected_dim);
  for (int r = 0; r < expected_dim; ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != expected_dim) {
      throw parse_error(where + " row " + std::to_string(r) + " must have " +
                        std::to_string(expected_dim) + " entries");
    }
    for (int c = 0; c < expected_dim; ++c) {
      const json& entry = row[static_cast<size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw parse_error(where + " entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") must be a [re,im] pair");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw parse_error("malformed JSON");
  return j;
}

}  // namespace

Element element_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks")) {
    throw parse_error("expected an object with 'shape' and 'blocks'");
  }
  const json& shape_json = j["shape"];
  if (!shape_json.is_array() || shape_json.empty()) {
    throw parse_error("'shape' must be a non-empty array of block sizes");
  }
  std::vector<int> dims;
  for (const json& d : shape_json) {
    if (!d.is_number_integer() || d.get<int>() < 1) {
      throw parse_error("'shape' entries must be integers >= 1");
    }
    dims.push_back(d.get<int>());
  }
  const AlgebraShape shape(dims);

  const json& blocks_json = j["blocks"];
  if (!blocks_json.is_array() ||
      static_cast<int>(blocks_json.size()) != shape.block_count()) {
    throw parse_error("'blocks' must list exactly " +
                      std::to_string(shape.block_count()) + " matrices");
  }
  std::vector<Matrix> blocks;
  for (int i = 0; i < shape.block_count(); ++i) {
    blocks.push_back(matrix_from_json(blocks_json[static_cast<size_t>(i)],
                                      shape.dim(i),
                                      "block " + std::to_string(i)));
  }
  try {
    return Element(shape, std::move(blocks));
  } catch (const ShapeMismatch& e) {
    throw parse_error(e.what());
  }
}

JordanIso jordan_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("perm") || !j.contains("unitaries") ||
      !j.contains("transpose")) {
    throw parse_error(
        "expected an object with 'perm', 'unitaries' and 'transpose'");
  }
  const json& perm_json = j["perm"];
  const json& uni_json = j["unitaries"];
  const json& tr_json = j["transpose"];
  if (!perm_json.is_array() || !uni_json.is_array() || !tr_json.is_array() ||
      perm_json.size() != uni_json.size() ||
      perm_json.size() != tr_json.size() || perm_json.empty()) {
    throw parse_error("'perm', 'unitaries' and 'transpose' must be equally "
                      "sized non-empty arrays");
  }

  const int k = static_cast<int>(perm_json.size());
  JordanIso iso;
  std::vector<int> source_dims;
  for (int i = 0; i < k; ++i) {
    const json& u = uni_json[static_cast<size_t>(i)];
    if (!u.is_array() || u.empty()) {
      throw parse_error("unitary " + std::to_string(i) + " must be a matrix");
    }
    const int n = static_cast<int>(u.size());
    source_dims.push_back(n);
    iso.unitaries.push_back(
        matrix_from_json(u, n, "unitary " + std::to_string(i)));
    if (!perm_json[static_cast<size_t>(i)].is_number_integer()) {
      throw parse_error("'perm' entries must be integers");
    }
    iso.perm.push_back(perm_json[static_cast<size_t>(i)].get<int>());
    if (!tr_json[static_cast<size_t>(i)].is_boolean()) {
      throw parse_error("'transpose' entries must be booleans");
    }
    iso.transpose.push_back(tr_json[static_cast<size_t>(i)].get<bool>());
  }
  iso.source = AlgebraShape(source_dims);

  std::vector<int> target_dims(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    const int t = iso.perm[static_cast<size_t>(i)];
    if (t < 0 || t >= k || target_dims[static_cast<size_t>(t)] != 0) {
      throw parse_error("'perm' must be a bijection on block indices");
    }
    target_dims[static_cast<size_t>(t)] = source_dims[static_cast<size_t>(i)];
  }
  iso.target = AlgebraShape(target_dims);
  try {
    iso.validate();
  } catch (const ShapeMismatch& e) {
    throw parse_error(e.what());
  }
  return iso;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failure on '" + path + "'");
}

Element load_element(const std::string& path) {
  return element_from_json(read_file(path));
}

void save_element(const std::string& path, const Element& e) {
  write_file(path, to_json(e) + "\n");
}

JordanIso load_jordan(const std::string& path) {
  return jordan_from_json(read_file(path));
}

void save_jordan(const std::string& path, const JordanIso& j) {
  write_file(path, to_json(j) + "\n");
}

std::string format_report_text(const SuiteReport& r) {
  std::ostringstream os;
  os << r.suite.name() << " on " << r.shape.to_string() << "  ["
     << to_string(r.verdict) << "]\n";
  os << "  trials=" << r.trials << " seed=" << r.seed << " tol="
     << format_double(r.tol) << "\n";
  os << "  max_violation=" << format_double(r.max_violation) << "\n";
  for (const auto& [name, check] : r.checks) {
    os << "  " << name << ": " << format_double(check.violation);
    if (check.tol_multiplier != 1.0) {
      os << " (tol x" << format_double(check.tol_multiplier) << ")";
    }
    os << "\n";
  }
  if (!r.inconclusive_reason.empty()) {
    os << "  inconclusive: " << r.inconclusive_reason << "\n";
  }
  if (!r.witnesses.empty()) {
    os << "  witnesses: " << r.witnesses.size() << "\n";
    for (const Witness& w : r.witnesses) {
      os << "    " << w.label << ": lhs=" << format_double(w.quantity_lhs)
         << " rhs=" << format_double(w.quantity_rhs)
         << " margin=" << format_double(w.margin) << "\n";
    }
  }
  return os.str();
}

}  // namespace conelab
