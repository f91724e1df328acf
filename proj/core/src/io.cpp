#include "slag/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slag {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  separate();
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
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  separate();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  out_ += '"';
  for (char c : v) {
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

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

void JsonWriter::separate() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (first_.back()) {
    first_.back() = false;
  } else {
    out_ += ',';
  }
}

std::string geometry_to_json(const TorusCY& geometry) {
  JsonWriter w;
  w.begin_object();
  w.key("basis").begin_array();
  w.begin_array().value(geometry.basis1().x).value(geometry.basis1().y).end_array();
  w.begin_array().value(geometry.basis2().x).value(geometry.basis2().y).end_array();
  w.end_array();
  w.key("alpha").value(geometry.alpha());
  w.end_object();
  return w.str();
}

namespace {

TorusCY geometry_from(const json& j) {
  const auto& basis = j.at("basis");
  if (!basis.is_array() || basis.size() != 2) {
    throw std::invalid_argument("geometry: basis must be two 2-vectors");
  }
  const Vec2 b1{basis[0].at(0).get<double>(), basis[0].at(1).get<double>()};
  const Vec2 b2{basis[1].at(0).get<double>(), basis[1].at(1).get<double>()};
  return TorusCY(b1, b2, j.at("alpha").get<double>());
}

}  // namespace

TorusCY geometry_from_json(const std::string& text) {
  return geometry_from(json::parse(text));
}

std::string graded_class_to_json(const GradedClass& c) {
  JsonWriter w;
  w.begin_object();
  w.key("p").value(c.p());
  w.key("q").value(c.q());
  w.key("phase_lift").value(c.phase_lift());
  w.end_object();
  return w.str();
}

GradedClass graded_class_from_json(const std::string& text,
                                   const TorusCY& geometry) {
  const json j = json::parse(text);
  return GradedClass(j.at("p").get<int>(), j.at("q").get<int>(),
                     j.at("phase_lift").get<double>(), geometry);
}

std::string curve_to_json(const DiscreteCurve& curve) {
  JsonWriter w;
  w.begin_object();
  w.key("vertices").begin_array();
  for (const Vec2& v : curve.vertices()) {
    w.begin_array().value(v.x).value(v.y).end_array();
  }
  w.end_array();
  w.key("closure").begin_array().value(curve.closure()[0]).value(curve.closure()[1]).end_array();
  if (curve.holonomy()) w.key("holonomy").value(*curve.holonomy());
  w.key("geometry");
  w.begin_object();
  w.key("basis").begin_array();
  w.begin_array().value(curve.geometry().basis1().x).value(curve.geometry().basis1().y).end_array();
  w.begin_array().value(curve.geometry().basis2().x).value(curve.geometry().basis2().y).end_array();
  w.end_array();
  w.key("alpha").value(curve.geometry().alpha());
  w.end_object();
  w.end_object();
  return w.str();
}

DiscreteCurve curve_from_json(const std::string& text) {
  const json j = json::parse(text);
  const TorusCY geometry = geometry_from(j.at("geometry"));
  const auto& closure = j.at("closure");
  const std::array<int, 2> pq{closure.at(0).get<int>(),
                              closure.at(1).get<int>()};
  std::vector<Vec2> vertices;
  for (const auto& v : j.at("vertices")) {
    vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  }
  // Accept the redundant closed form: final vertex = first + closure
  // translation, within 1e-12.
  if (vertices.size() >= 4) {
    const Vec2 expected =
        vertices.front() + geometry.lattice_vector(pq[0], pq[1]);
    if ((vertices.back() - expected).norm() <= 1e-12) {
      vertices.pop_back();
    }
  }
  std::optional<double> holonomy;
  if (j.contains("holonomy") && !j.at("holonomy").is_null()) {
    holonomy = j.at("holonomy").get<double>();
  }
  return DiscreteCurve::build(std::move(vertices), pq, geometry, holonomy);
}

std::string diagnostics_to_csv(const FlowDiagnostics& diagnostics) {
  std::string out =
      "time,length,phase_mean,phase_spread,moment_norm,cumulative_flux\n";
  for (const DiagnosticsSample& s : diagnostics.samples) {
    out += format_double(s.time);
    out += ',';
    out += format_double(s.length);
    out += ',';
    out += format_double(s.phase_mean);
    out += ',';
    out += format_double(s.phase_spread);
    out += ',';
    out += format_double(s.moment_norm);
    out += ',';
    out += format_double(s.cumulative_flux);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << contents;
}

}  // namespace slag
