#include "hadamard/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hadamard::io {

json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + "@byte " + std::to_string(e.byte), "malformed JSON");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "/" + key, "missing field");
  return *it;
}

const json& require_array(const json& j, const char* key, const std::string& where) {
  const auto& a = require(j, key, where);
  if (!a.is_array()) throw ParseError(where + "/" + key, "expected an array");
  return a;
}

SpaceSpec parse_space(const json& j, const std::string& where) {
  const auto& model = require(j, "model", where);
  if (!model.is_string()) throw ParseError(where + "/model", "expected a string");
  SpaceSpec s;
  const auto name = model.get<std::string>();
  if (name == "spider") {
    s.model = SpaceSpec::Model::Spider;
    return s;
  }
  if (name != "euclidean") throw ParseError(where + "/model", "unknown model '" + name + "'");
  s.model = SpaceSpec::Model::Euclidean;
  const auto& dim = require(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw ParseError(where + "/dim", "expected a positive integer");
  }
  s.dim = dim.get<std::size_t>();
  if (j.contains("tol")) {
    s.tol = parse_real(j.at("tol"), where + "/tol");
    if (s.tol < 0.0) throw ParseError(where + "/tol", "tolerance must be >= 0");
  }
  return s;
}

json to_json(const SpaceSpec& s) {
  if (s.model == SpaceSpec::Model::Spider) return json{{"model", "spider"}};
  return json{{"model", "euclidean"}, {"dim", s.dim}, {"tol", s.tol}};
}

std::string model_name(const SpaceSpec& s) {
  return s.model == SpaceSpec::Model::Spider ? "spider" : "euclidean";
}

Rational parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const DomainError& e) {
      throw ParseError(where, e.what());
    }
  }
  if (j.is_number_float()) {
    throw ParseError(where, "exact value expected: write it as a \"p/q\" string");
  }
  throw ParseError(where, "expected a rational (\"p/q\" string or integer)");
}

double parse_real(const json& j, const std::string& where) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text.find('/') != std::string::npos) {
      v = parse_rational(j, where).to_double();
    } else {
      std::size_t used = 0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        throw ParseError(where, "malformed number '" + text + "'");
      }
      if (used != text.size()) throw ParseError(where, "malformed number '" + text + "'");
    }
  } else {
    throw ParseError(where, "expected a number");
  }
  if (!std::isfinite(v)) throw ParseError(where, "number must be finite");
  return v;
}

json scalar_json(const Rational& x) { return x.str(); }
json scalar_json(double x) { return x; }

SpiderPoint parse_point(const SpiderSpace&, const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "spider point must be {\"branch\": n, \"radius\": \"p/q\"}");
  const auto& b = require(j, "branch", where);
  if (!b.is_number_integer() || b.get<long long>() < 1) {
    throw ParseError(where + "/branch", "expected an integer >= 1");
  }
  const Rational r = parse_rational(require(j, "radius", where), where + "/radius");
  try {
    return SpiderPoint(b.get<std::uint64_t>(), r);
  } catch (const DomainError& e) {
    throw ParseError(where, e.what());
  }
}

EuclideanPoint parse_point(const EuclideanSpace& space, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "euclidean point must be an array of numbers");
  if (j.size() != space.dim()) {
    throw ParseError(where, "expected " + std::to_string(space.dim()) + " coordinates, got " +
                                std::to_string(j.size()));
  }
  EuclideanPoint p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    p.coords.push_back(parse_real(j[i], where + "/" + std::to_string(i)));
  }
  return p;
}

json point_json(const SpiderSpace&, const SpiderPoint& p) {
  return json{{"branch", p.branch()}, {"radius", p.radius().str()}};
}

json point_json(const EuclideanSpace&, const EuclideanPoint& p) { return json(p.coords); }

std::string point_text(const SpiderSpace&, const SpiderPoint& p) {
  return "[(" + std::to_string(p.branch()) + "," + p.radius().str() + ")]";
}

std::string point_text(const EuclideanSpace&, const EuclideanPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(p.coords[i]);
  }
  return out + ")";
}

}  // namespace hadamard::io
