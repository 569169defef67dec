#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace solvgeo::cli {

namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings.
  out += Json(s).dump();
}

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  out += buf;
}

bool is_flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

void write(std::string& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += ": ";
        write(out, it.value(), indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(v)) {
        out += "[";
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          write(out, e, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write(out, e, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, v.get<double>());
      return;
    case Json::value_t::string:
      write_string(out, v.get<std::string>());
      return;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  write(out, value, 0);
  out += "\n";
  return out;
}

namespace detail {

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json to_json(const CanonicalMetric& c) {
  Json out;
  out["n"] = c.n;
  out["p"] = c.p;
  out["x"] = to_json(c.x);
  out["sigma"] = to_json(c.sigma);
  out["beta"] = c.beta;
  out["z"] = c.z();
  return out;
}

Json to_json(const Automorphism& F) {
  Json out;
  out["lambda"] = F.lambda();
  out["M"] = to_json(F.M());
  out["v"] = to_json(F.v());
  out["a"] = F.a();
  out["matrix"] = to_json(F.matrix());
  return out;
}

}  // namespace detail

}  // namespace solvgeo::cli
