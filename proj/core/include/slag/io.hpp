#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "slag/curve.hpp"
#include "slag/geometry.hpp"

namespace slag {

// Deterministic JSON emitter: insertion-ordered fields, doubles formatted
// with 17 significant digits ("%.17g") so identical runs produce
// byte-identical output.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;  // per nesting level
  bool pending_key_ = false;
};

std::string format_double(double v);  // %.17g

// JSON schemas:
//   geometry  {"basis": [[a,b],[c,d]], "alpha": a}
//   class     {"p": int, "q": int, "phase_lift": real}
//   curve     {"vertices": [[x,y],...], "closure": [p,q],
//              "holonomy": h (optional), "geometry": {...}}
// Curve input also accepts an (N+1)-vertex list whose final vertex equals
// the first plus the closure translation within 1e-12.
std::string geometry_to_json(const TorusCY& geometry);
TorusCY geometry_from_json(const std::string& text);

std::string graded_class_to_json(const GradedClass& c);
GradedClass graded_class_from_json(const std::string& text,
                                   const TorusCY& geometry);

std::string curve_to_json(const DiscreteCurve& curve);
DiscreteCurve curve_from_json(const std::string& text);

// CSV with header time,length,phase_mean,phase_spread,moment_norm,
// cumulative_flux.
std::string diagnostics_to_csv(const FlowDiagnostics& diagnostics);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace slag
