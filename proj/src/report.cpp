#include "subgauss/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace subgauss {

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void JsonWriter::comma_slot() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (!stack_.back().is_array) throw std::logic_error("json: value in object needs a key");
    if (stack_.back().count++ > 0) out_ << ',';
  }
}

void JsonWriter::begin_object() {
  comma_slot();
  stack_.push_back({false, 0});
  out_ << '{';
}

void JsonWriter::end_object() {
  if (stack_.empty() || stack_.back().is_array) throw std::logic_error("json: not in object");
  stack_.pop_back();
  out_ << '}';
}

void JsonWriter::begin_array() {
  comma_slot();
  stack_.push_back({true, 0});
  out_ << '[';
}

void JsonWriter::end_array() {
  if (stack_.empty() || !stack_.back().is_array) throw std::logic_error("json: not in array");
  stack_.pop_back();
  out_ << ']';
}

void JsonWriter::key(std::string_view k) {
  if (stack_.empty() || stack_.back().is_array || after_key_) {
    throw std::logic_error("json: key outside object");
  }
  if (stack_.back().count++ > 0) out_ << ',';
  out_ << '"';
  for (char c : k) out_ << c;  // keys are plain identifiers
  out_ << '"' << ':';
  after_key_ = true;
}

void JsonWriter::value(double x) {
  comma_slot();
  out_ << format_number(x);
}

void JsonWriter::value(int x) {
  comma_slot();
  out_ << x;
}

void JsonWriter::value(long long x) {
  comma_slot();
  out_ << x;
}

void JsonWriter::value(bool x) {
  comma_slot();
  out_ << (x ? "true" : "false");
}

void JsonWriter::value(std::string_view s) {
  comma_slot();
  out_ << '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ << "\\\""; break;
      case '\\': out_ << "\\\\"; break;
      case '\n': out_ << "\\n"; break;
      case '\t': out_ << "\\t"; break;
      case '\r': out_ << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ << buf;
        } else {
          out_ << c;
        }
    }
  }
  out_ << '"';
}

void JsonWriter::null_value() {
  comma_slot();
  out_ << "null";
}

void write_json(JsonWriter& w, const ExponentFit& fit) {
  w.begin_object();
  w.kv("exponent", fit.exponent);
  w.kv("log_prefactor", fit.log_prefactor);
  w.kv("r_squared", fit.r_squared);
  w.key("radii");
  w.begin_array();
  for (int r : fit.radii) w.value(r);
  w.end_array();
  w.key("values");
  w.begin_array();
  for (double v : fit.values) w.value(v);
  w.end_array();
  w.end_object();
}

void write_json(JsonWriter& w, const ConditionReport& report) {
  w.begin_object();
  w.kv("condition", report.condition);
  w.key("scales");
  w.begin_array();
  for (const ScaleEntry& e : report.scales) {
    w.begin_object();
    w.kv("r", e.scale);
    w.kv("constant", e.constant);
    if (!e.label.empty()) w.kv("label", e.label);
    w.end_object();
  }
  w.end_array();
  w.kv("verdict", report.pass ? "pass" : "fail");
  w.kv("threshold", report.threshold);
  w.kv("mode", report.mode);
  w.key("stats");
  w.begin_object();
  for (const auto& [k, v] : report.stats) w.kv(k, v);
  w.end_object();
  w.key("notes");
  w.begin_array();
  for (const std::string& n : report.notes) w.value(n);
  w.end_array();
  w.end_object();
}

void write_json(JsonWriter& w, const ExitTrace& t) {
  w.begin_object();
  w.kv("center", t.center);
  w.kv("radius", t.radius);
  w.kv("d_w", t.d_w);
  w.kv("d_f", t.d_f);
  w.kv("c1", t.c1);
  w.kv("e_mass", t.e_mass);
  w.kv("inner_ball_mass", t.inner_ball_mass);
  w.kv("k0", t.k0);
  w.kv("k_used", t.k_used);
  w.kv("v_energy", t.v_energy);
  w.kv("log_caccioppoli", t.log_caccioppoli);
  w.kv("budget", t.budget);
  w.kv("floor_ratio", t.floor_ratio);
  w.kv("f_connected", t.f_connected);
  w.key("e_content");
  w.begin_object();
  w.kv("lower", t.e_content.lower);
  w.kv("upper", t.e_content.upper);
  w.end_object();
  w.key("f_content");
  w.begin_object();
  w.kv("lower", t.f_content.lower);
  w.kv("upper", t.f_content.upper);
  w.end_object();
  w.kv("e_size", static_cast<int>(t.e_set.ids.size()));
  w.kv("f_size", static_cast<int>(t.f_set.ids.size()));
  w.key("level_set_sizes");
  w.begin_array();
  for (int s : t.level_set_sizes) w.value(s);
  w.end_array();
  w.end_object();
}

namespace {

template <class T>
void document(std::ostream& out, const T& payload) {
  JsonWriter w(out);
  w.begin_object();
  w.kv("schema", 1);
  w.key("result");
  write_json(w, payload);
  w.end_object();
  out << '\n';
}

}  // namespace

void write_document(std::ostream& out, const ExponentFit& fit) { document(out, fit); }
void write_document(std::ostream& out, const ConditionReport& report) { document(out, report); }
void write_document(std::ostream& out, const ExitTrace& trace) { document(out, trace); }

void write_rows_csv(std::ostream& out, std::span<const HeatKernelRow> rows) {
  out << "n,y,h\n";
  for (const HeatKernelRow& row : rows) {
    for (std::size_t y = 0; y < row.values.size(); ++y) {
      out << row.steps << ',' << y << ',' << format_number(row.values[y]) << '\n';
    }
  }
}

void write_band_csv(std::ostream& out, const BandData& data) {
  out << "n,y,d,xi,s\n";
  for (const BandPoint& p : data.points) {
    out << p.n << ',' << p.y << ',' << p.dist << ',' << format_number(p.xi) << ','
        << format_number(p.s) << '\n';
  }
}

}  // namespace subgauss
