#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subgauss/exit_trace.hpp"
#include "subgauss/heat_kernel.hpp"
#include "subgauss/inequalities.hpp"

namespace subgauss {

// 12 significant digits, "-0" normalized to "0", non-finite to "null".
std::string format_number(double x);

// Compact JSON with insertion-ordered keys; identical inputs give identical
// bytes. Nesting mistakes throw std::logic_error.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}
  ~JsonWriter() = default;

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(std::string_view k);
  void value(double x);
  void value(int x);
  void value(long long x);
  void value(bool x);
  void value(std::string_view s);
  void value(const char* s) { value(std::string_view(s)); }
  void null_value();

  void kv(std::string_view k, double x) { key(k), value(x); }
  void kv(std::string_view k, int x) { key(k), value(x); }
  void kv(std::string_view k, long long x) { key(k), value(x); }
  void kv(std::string_view k, bool x) { key(k), value(x); }
  void kv(std::string_view k, std::string_view s) { key(k), value(s); }
  void kv(std::string_view k, const char* s) { key(k), value(std::string_view(s)); }

 private:
  struct Frame {
    bool is_array = false;
    int count = 0;
  };
  void comma_slot();

  std::ostream& out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

// Serializers append one JSON value (no trailing newline) to the writer.
void write_json(JsonWriter& w, const ExponentFit& fit);
void write_json(JsonWriter& w, const ConditionReport& report);
void write_json(JsonWriter& w, const ExitTrace& trace);

// Whole-document helpers: {"schema":1,...} plus newline.
void write_document(std::ostream& out, const ExponentFit& fit);
void write_document(std::ostream& out, const ConditionReport& report);
void write_document(std::ostream& out, const ExitTrace& trace);

// CSV, ',' separator, '.' decimal, header row first.
void write_rows_csv(std::ostream& out, std::span<const HeatKernelRow> rows);
void write_band_csv(std::ostream& out, const BandData& data);

}  // namespace subgauss
