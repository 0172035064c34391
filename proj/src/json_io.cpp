#include "matlog/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "matlog/errors.hpp"

namespace matlog {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.16e%+.16ei", z.real(), z.imag());
  return buf;
}

namespace {

double parse_decimal(std::string_view text, std::size_t& pos) {
  double out = 0.0;
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr == begin)
    throw ConfigError("invalid complex literal: \"" + std::string(text) + "\"");
  pos += static_cast<std::size_t>(ptr - begin);
  return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty())
    throw ConfigError("invalid complex literal: empty string");
  std::size_t pos = 0;
  double re = parse_decimal(text, pos);
  if (pos == text.size()) return {re, 0.0};
  if (text[pos] != '+' && text[pos] != '-')
    throw ConfigError("invalid complex literal: \"" + std::string(text) + "\"");
  double im = parse_decimal(text, pos);
  if (pos != text.size() - 1 || text[pos] != 'i')
    throw ConfigError("invalid complex literal: \"" + std::string(text) + "\"");
  return {re, im};
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (!first_.back()) out_ += ',';
  first_.back() = false;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  separator();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  separator();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(long x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(unsigned long long x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separator();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  separator();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(Complex z) { return value(format_complex(z)); }

JsonWriter& JsonWriter::value_raw(std::string_view json) {
  separator();
  out_ += json;
  return *this;
}

void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
  w.begin_object();
  w.key("n").value(static_cast<long>(m.rows()));
  w.key("data").begin_array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      w.begin_array();
      w.value(m(i, j).real());
      w.value(m(i, j).imag());
      w.end_array();
    }
  w.end_array();
  w.end_object();
}

std::string matrix_to_json(const ComplexMatrix& m) {
  JsonWriter w;
  write_matrix(w, m);
  return w.str();
}

ComplexMatrix parse_matrix(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("matrix JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("data") ||
      !j["n"].is_number_integer() || !j["data"].is_array())
    throw ConfigError("matrix JSON must be {\"n\": int, \"data\": [[re,im],...]}");
  long n = j["n"].get<long>();
  if (n < 1) throw ConfigError("matrix JSON: n must be a positive integer");
  const auto& data = j["data"];
  if (static_cast<long>(data.size()) != n * n)
    throw ConfigError("matrix JSON: data length " + std::to_string(data.size()) +
                      " != n*n = " + std::to_string(n * n));
  ComplexMatrix m(n, n);
  for (long k = 0; k < n * n; ++k) {
    const auto& cell = data[static_cast<std::size_t>(k)];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number())
      throw ConfigError("matrix JSON: each entry must be [re, im]");
    double re = cell[0].get<double>();
    double im = cell[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ConfigError("matrix JSON: non-finite entry");
    m(k / n, k % n) = Complex{re, im};
  }
  return m;
}

ComplexMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

void write_rectangle(JsonWriter& w, const Rectangle& r) {
  w.begin_object();
  w.key("re").begin_array().value(r.re_min).value(r.re_max).end_array();
  w.key("im").begin_array().value(r.im_min).value(r.im_max).end_array();
  w.end_object();
}

void write_config(JsonWriter& w, const Config& cfg) {
  w.begin_object();
  for (const auto& [name, value] : cfg.named()) w.key(name).value(value);
  w.end_object();
}

}  // namespace matlog
