#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "matlog/config.hpp"
#include "matlog/types.hpp"

namespace matlog {

// All emitted numbers use 17 significant digits (%.16e) so files and reports
// are lossless and byte-identical across runs.
std::string format_double(double x);
std::string format_complex(Complex z);  // "a+bi"

// Strict "a+bi" literal: optional sign, decimal real, optional signed
// imaginary part suffixed with 'i'; no whitespace.
Complex parse_complex(std::string_view text);

// Minimal streaming JSON writer with caller-controlled key order.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double x);
  JsonWriter& value(long x);
  JsonWriter& value(unsigned long long x);
  JsonWriter& value(bool b);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(Complex z);  // rendered as the "a+bi" string
  JsonWriter& value_raw(std::string_view json);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_;
  bool pending_key_ = false;
};

// ComplexMatrix schema: {"n": <int>, "data": [[re, im], ...]} row-major.
void write_matrix(JsonWriter& w, const ComplexMatrix& m);
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix parse_matrix_file(const std::string& path);

void write_rectangle(JsonWriter& w, const Rectangle& r);

void write_config(JsonWriter& w, const Config& cfg);

}  // namespace matlog
