#include "mpent/state_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpent/qcore.hpp"

namespace mpent {

using nlohmann::json;

namespace {

int line_at(std::string_view text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

struct DataLayout {
  int data_line = 0;
  std::vector<int> element_lines;  // line of each top-level element of data
};

// Bracket-depth scan of the data array; strings are skipped.
DataLayout scan_data(std::string_view text) {
  DataLayout out;
  std::size_t pos = 0;
  while ((pos = text.find("\"data\"", pos)) != std::string_view::npos) {
    std::size_t p = pos + 6;
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (p < text.size() && text[p] == ':') {
      pos = p + 1;
      break;
    }
    pos = p;
  }
  if (pos == std::string_view::npos) return out;
  out.data_line = line_at(text, pos);
  int depth = 0;
  int line = out.data_line;
  bool in_string = false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[') {
      ++depth;
      if (depth == 2) out.element_lines.push_back(line);
    } else if (c == ']') {
      if (--depth == 0) break;
    }
  }
  return out;
}

cplx read_pair(const json& j, int line) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw StateFileError("expected a [re, im] pair", line);
  return {j[0].get<double>(), j[1].get<double>()};
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_pair(std::string& out, cplx z) {
  out += '[';
  append_number(out, z.real());
  out += ", ";
  append_number(out, z.imag());
  out += ']';
}

}  // namespace

const Dims& StateFile::dims() const {
  return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
}

DensityOperator StateFile::density() const {
  if (const Ket* k = std::get_if<Ket>(&state)) return DensityOperator::from_ket(*k);
  return std::get<DensityOperator>(state);
}

StateFile parse_state_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw StateFileError(std::string("malformed JSON: ") + e.what(),
                         line_at(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw StateFileError("top level must be an object", 1);
  const DataLayout layout = scan_data(text);
  auto element_line = [&](std::size_t i) {
    return i < layout.element_lines.size() ? layout.element_lines[i] : layout.data_line;
  };

  for (const char* key : {"dims", "kind", "data"})
    if (!doc.contains(key)) throw StateFileError(std::string("missing key \"") + key + "\"", 0);
  Dims dims;
  try {
    dims = doc["dims"].get<Dims>();
    check_dims(dims);
  } catch (const json::exception&) {
    throw StateFileError("dims must be a list of positive integers", 0);
  } catch (const UsageError& e) {
    throw StateFileError(e.what(), 0);
  }
  const int d = total_dim(dims);
  const json& data = doc["data"];
  if (!data.is_array()) throw StateFileError("data must be an array", layout.data_line);
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";

  StateFile out{Ket::basis(dims, std::vector<int>(dims.size(), 0)), ""};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw StateFileError("label must be a string", 0);
    out.label = doc["label"].get<std::string>();
  }

  if (kind == "pure") {
    if (static_cast<int>(data.size()) != d)
      throw StateFileError("pure data needs " + std::to_string(d) + " amplitudes",
                           layout.data_line);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = read_pair(data[i], element_line(i));
    if (std::abs(v.norm() - 1.0) > tol::kNorm)
      throw StateFileError("ket is not normalized (norm " + std::to_string(v.norm()) + ")",
                           layout.data_line);
    out.state = Ket(std::move(v), dims);
    return out;
  }
  if (kind != "mixed") throw StateFileError("kind must be \"pure\" or \"mixed\"", 0);

  if (static_cast<int>(data.size()) != d)
    throw StateFileError("mixed data needs " + std::to_string(d) + " rows", layout.data_line);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = data[i];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw StateFileError("row " + std::to_string(i) + " needs " + std::to_string(d) + " entries",
                           element_line(i));
    for (int j = 0; j < d; ++j) m(i, j) = read_pair(row[j], element_line(i));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol::kHermitian)
        throw StateFileError("matrix is not Hermitian at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             element_line(i));
  if (std::abs(m.trace().real() - 1.0) > tol::kTrace)
    throw StateFileError("trace is " + std::to_string(m.trace().real()) + ", expected 1",
                         layout.data_line);
  try {
    out.state = DensityOperator(std::move(m), dims);
  } catch (const Error& e) {
    throw StateFileError(e.what(), layout.data_line);
  }
  return out;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateFileError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state_file(ss.str());
}

std::string format_state_file(const StateFile& file) {
  std::string out = "{\n  \"dims\": [";
  const Dims& dims = file.dims();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(dims[i]);
  }
  out += "],\n  \"kind\": ";
  out += file.is_pure() ? "\"pure\"" : "\"mixed\"";
  out += ",\n";
  if (!file.label.empty()) out += "  \"label\": " + json(file.label).dump() + ",\n";
  out += "  \"data\": [\n";
  if (const Ket* k = std::get_if<Ket>(&file.state)) {
    const Vector& a = k->amplitudes();
    for (int i = 0; i < a.size(); ++i) {
      out += "    ";
      append_pair(out, a(i));
      out += i + 1 < a.size() ? ",\n" : "\n";
    }
  } else {
    const Matrix& m = std::get<DensityOperator>(file.state).matrix();
    for (int i = 0; i < m.rows(); ++i) {
      out += "    [";
      for (int j = 0; j < m.cols(); ++j) {
        if (j) out += ", ";
        append_pair(out, m(i, j));
      }
      out += i + 1 < m.rows() ? "],\n" : "]\n";
    }
  }
  out += "  ]\n}\n";
  return out;
}

void write_state_file(const std::string& path, const StateFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << format_state_file(file);
}

double parse_number(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto real = [](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
      throw UsageError("not a number: '" + std::string(s) + "'");
    return v;
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return real(text);
  const double p = real(trim(text.substr(0, slash)));
  const double q = real(trim(text.substr(slash + 1)));
  if (q == 0.0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return p / q;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mpent
