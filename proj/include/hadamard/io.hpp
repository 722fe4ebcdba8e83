#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard/errors.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/extension.hpp"
#include "hadamard/spider.hpp"

namespace hadamard::io {

using json = nlohmann::ordered_json;

// Reads and parses a JSON file; failures become ParseError tagged with path (and byte offset).
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& where);

struct SpaceSpec {
  enum class Model { Euclidean, Spider };
  Model model = Model::Spider;
  std::size_t dim = 0;
  double tol = EuclideanSpace::kDefaultTolerance;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

SpaceSpec parse_space(const json& j, const std::string& where);
json to_json(const SpaceSpec& s);
std::string model_name(const SpaceSpec& s);

Rational parse_rational(const json& j, const std::string& where);
double parse_real(const json& j, const std::string& where);

template <Scalar T>
T parse_scalar(const json& j, const std::string& where) {
  if constexpr (kIsExact<T>) {
    return parse_rational(j, where);
  } else {
    return parse_real(j, where);
  }
}

json scalar_json(const Rational& x);
json scalar_json(double x);

SpiderPoint parse_point(const SpiderSpace& space, const json& j, const std::string& where);
EuclideanPoint parse_point(const EuclideanSpace& space, const json& j, const std::string& where);
json point_json(const SpiderSpace& space, const SpiderPoint& p);
json point_json(const EuclideanSpace& space, const EuclideanPoint& p);
std::string point_text(const SpiderSpace& space, const SpiderPoint& p);
std::string point_text(const EuclideanSpace& space, const EuclideanPoint& p);

const json& require(const json& j, const char* key, const std::string& where);
const json& require_array(const json& j, const char* key, const std::string& where);

template <class S>
DualElement<S> parse_dual(const S& space, const json& j, const std::string& where) {
  const auto& terms = require_array(j, "terms", where);
  DualElement<S> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = where + "/terms/" + std::to_string(i);
    const auto& t = terms[i];
    if (!t.is_object()) throw ParseError(at, "expected an object");
    out.terms.push_back({parse_scalar<ScalarOf<S>>(require(t, "weight", at), at + "/weight"),
                         parse_point(space, require(t, "tail", at), at + "/tail"),
                         parse_point(space, require(t, "head", at), at + "/head")});
  }
  return out;
}

template <class S>
json dual_json(const S& space, const DualElement<S>& f) {
  json terms = json::array();
  for (const auto& t : f.terms) {
    terms.push_back({{"weight", scalar_json(t.weight)},
                     {"tail", point_json(space, t.tail)},
                     {"head", point_json(space, t.head)}});
  }
  return json{{"terms", std::move(terms)}};
}

template <class S>
std::string dual_text(const S& space, const DualElement<S>& f) {
  if (f.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i > 0) out += " + ";
    out += to_string(f.terms[i].weight) + " [->" + point_text(space, f.terms[i].tail) + " " +
           point_text(space, f.terms[i].head) + "]";
  }
  return out;
}

template <class S>
Relation<S> parse_relation(const S& space, const json& j, const std::string& where) {
  const auto& pairs = require_array(j, "pairs", where);
  Relation<S> m;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string at = where + "/pairs/" + std::to_string(i);
    if (!pairs[i].is_object()) throw ParseError(at, "expected an object");
    m.pairs.push_back({parse_point(space, require(pairs[i], "point", at), at + "/point"),
                       parse_dual(space, require(pairs[i], "dual", at), at + "/dual")});
  }
  return m;
}

template <class S>
json relation_json(const S& space, const Relation<S>& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) {
    pairs.push_back({{"point", point_json(space, p.point)}, {"dual", dual_json(space, p.dual)}});
  }
  return json{{"pairs", std::move(pairs)}};
}

// Accepts {"generators": [...]} or the same object under "hull".
template <class S>
ConvexHullSet<S> parse_hull(const S& space, const json& j, const std::string& where) {
  if (j.is_object() && j.contains("hull")) return parse_hull(space, j.at("hull"), where + "/hull");
  const auto& gens = require_array(j, "generators", where);
  ConvexHullSet<S> hull;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    hull.generators.push_back(parse_dual(space, gens[i], where + "/generators/" + std::to_string(i)));
  }
  if (hull.generators.empty()) throw ParseError(where + "/generators", "at least one generator required");
  return hull;
}

// {"kind": "constant" | "affine" | "table", ...}, optionally under "phi".
template <class S>
PhiMap<S> parse_phi(const S& space, const json& j, const std::string& where) {
  if (j.is_object() && j.contains("phi")) return parse_phi(space, j.at("phi"), where + "/phi");
  const auto& kind = require(j, "kind", where);
  if (!kind.is_string()) throw ParseError(where + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  auto points = [&](const char* key) {
    const auto& arr = require_array(j, key, where);
    std::vector<PointOf<S>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(parse_point(space, arr[i], where + "/" + key + "/" + std::to_string(i)));
    }
    return out;
  };
  if (k == "constant") return PhiMap<S>::constant(parse_point(space, require(j, "point", where), where + "/point"));
  if (k == "affine") return PhiMap<S>::affine(points("anchors"));
  if (k == "table") {
    const auto& r = require(j, "resolution", where);
    if (!r.is_number_integer() || r.get<long>() < 1) {
      throw ParseError(where + "/resolution", "expected a positive integer");
    }
    return PhiMap<S>{typename PhiMap<S>::Table{r.get<long>(), points("values")}};
  }
  throw ParseError(where + "/kind", "unknown phi kind '" + k + "'");
}

}  // namespace hadamard::io
