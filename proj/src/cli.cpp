#include "hadamard/cli.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>
#include <random>

#include "hadamard/extension.hpp"
#include "hadamard/flatness.hpp"
#include "hadamard/io.hpp"
#include "hadamard/reproduce.hpp"

namespace hadamard::cli {

namespace {

using io::json;

constexpr struct {
  Command command;
  const char* name;
} kCommands[] = {
    {Command::ReproducePaper, "reproduce-paper"}, {Command::CheckMonotone, "check-monotone"},
    {Command::CheckW, "check-w"},                 {Command::ClassifyFlat, "classify-flat"},
    {Command::Theta, "theta"},                    {Command::Extend, "extend"},
    {Command::Norm, "norm"},                      {Command::Identities, "identities"},
};

struct Outcome {
  json report;
  int code = kOk;
};

// Points are objects/arrays in JSON output and compact strings in text output.
template <class S>
struct Emitter {
  const S& space;
  bool text;

  json point(const PointOf<S>& p) const {
    return text ? json(io::point_text(space, p)) : io::point_json(space, p);
  }
  json dual(const DualElement<S>& f) const {
    return text ? json(io::dual_text(space, f)) : io::dual_json(space, f);
  }
  json scalar(const ScalarOf<S>& x) const { return io::scalar_json(x); }
  json margin(const std::optional<ScalarOf<S>>& x) const { return x ? scalar(*x) : json("+inf"); }
  json coordinates(const std::vector<ScalarOf<S>>& mu) const {
    json out = json::array();
    for (const auto& m : mu) out.push_back(scalar(m));
    return out;
  }
};

// ---- text rendering -------------------------------------------------------------------------

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return to_string(j.get<double>());
  return j.dump();
}

void render(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (is_scalar(v)) {
      out += pad + it.key() + ": " + scalar_text(v) + "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
      std::string line;
      for (std::size_t i = 0; i < v.size(); ++i) line += (i ? ", " : "") + scalar_text(v[i]);
      out += pad + it.key() + ": [" + line + "]\n";
    } else if (v.is_array()) {
      out += pad + it.key() + ":\n";
      for (const auto& item : v) {
        if (is_scalar(item)) {
          out += pad + "  - " + scalar_text(item) + "\n";
        } else {
          std::string block;
          render(item, indent + 4, block);
          block.replace(0, static_cast<std::size_t>(indent) + 4, pad + "  - ");
          out += block;
        }
      }
    } else {
      out += pad + it.key() + ":\n";
      render(v, indent + 2, out);
    }
  }
}

// ---- inputs ---------------------------------------------------------------------------------

struct Documents {
  std::optional<json> space;
  std::optional<json> relation;
  std::optional<json> hull;
  std::optional<json> phi;
  std::optional<json> dual;
};

const std::string& required_path(const std::optional<std::string>& p, const char* flag) {
  if (!p) throw ParseError(std::string("--") + flag, "required for this command");
  return *p;
}

// The space comes from --space, or from the "space" member of the first other document.
io::SpaceSpec resolve_space(const RunConfig& cfg, const Documents& docs) {
  std::optional<io::SpaceSpec> spec;
  std::string origin;
  auto consider = [&](const std::optional<json>& doc, const std::optional<std::string>& path,
                      bool whole) {
    if (!doc) return;
    const json* node = nullptr;
    std::string where = *path;
    if (doc->is_object() && doc->contains("space")) {
      node = &doc->at("space");
      where += ":/space";
    } else if (whole && doc->is_object() && doc->contains("model")) {
      node = &*doc;
      where += ":";
    }
    if (!node) return;
    const auto s = io::parse_space(*node, where);
    if (!spec) {
      spec = s;
      origin = *path;
    } else if (!(s.model == spec->model && s.dim == spec->dim)) {
      throw ParseError(where, "space differs from the one in " + origin);
    }
  };
  consider(docs.space, cfg.space_path, true);
  consider(docs.relation, cfg.relation_path, false);
  consider(docs.hull, cfg.hull_path, false);
  consider(docs.phi, cfg.phi_path, false);
  consider(docs.dual, cfg.dual_path, false);
  if (!spec) throw ParseError("--space", "no space description found in the inputs");
  if (cfg.tol) {
    if (!(*cfg.tol >= 0.0)) throw ParseError("--tol", "tolerance must be >= 0");
    spec->tol = *cfg.tol;
  }
  return *spec;
}

template <class F>
Outcome with_space(const io::SpaceSpec& spec, F&& body) {
  if (spec.model == io::SpaceSpec::Model::Spider) return body(SpiderSpace{});
  return body(EuclideanSpace(spec.dim, spec.tol));
}

template <class S>
auto make_sampler(const S& space, std::uint64_t seed) {
  if constexpr (std::is_same_v<S, SpiderSpace>) {
    return SpiderSampler(space, seed);
  } else {
    return EuclideanSampler(space, seed);
  }
}

template <class S>
PointOf<S> base_point(const S& space, const RunConfig& cfg, const Relation<S>& m) {
  if (cfg.base) return io::parse_point(space, io::parse_json_text(*cfg.base, "--base"), "--base");
  if (m.empty()) throw ParseError("--base", "relation is empty; a base point is required");
  return m.pairs.front().point;
}

template <class S>
ScalarOf<S> resolve_eps(const RunConfig& cfg) {
  using T = ScalarOf<S>;
  if (!cfg.eps) return kIsExact<T> ? T(0) : T(1e-6);
  return io::parse_scalar<T>(json(*cfg.eps), "--eps");
}

// ---- commands -------------------------------------------------------------------------------

Outcome reproduce(const RunConfig& cfg) {
  if (cfg.table_size < 1 || cfg.table_size > 1000) throw ParseError("--table-size", "must lie in [1,1000]");
  const auto rep = reproduce_spider(SpiderSpace{}, cfg.table_size);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"provenance", c.provenance}, {"expected", c.expected},
                      {"actual", c.actual}, {"ok", c.ok}});
  }
  json report{{"command", "reproduce-paper"}, {"passed", rep.passed()}, {"checks", std::move(checks)}};
  return {std::move(report), rep.passed() ? kOk : kViolation};
}

template <class S>
Outcome check_monotone_cmd(const S& space, const Relation<S>& m, const Emitter<S>& e) {
  const auto r = is_monotone(space, m);
  json report{{"command", "check-monotone"},
              {"monotone", r.monotone},
              {"pairs", m.size()},
              {"pairs_checked", r.pairs_checked},
              {"min_margin", r.min_margin ? e.scalar(*r.min_margin) : json(nullptr)}};
  if (r.witness) {
    report["witness"] = {{"first", r.witness->first},
                         {"second", r.witness->second},
                         {"margin", e.scalar(r.witness->margin)}};
  }
  return {std::move(report), r.monotone ? kOk : kViolation};
}

template <class S>
Outcome check_w_cmd(const S& space, const Relation<S>& m, const RunConfig& cfg, const Emitter<S>& e) {
  using T = ScalarOf<S>;
  if (cfg.lambda_den < 1) throw ParseError("--lambda-den", "must be >= 1");
  const auto p = base_point(space, cfg, m);
  const std::size_t cap = cfg.max_witnesses == 0 ? std::numeric_limits<std::size_t>::max()
                                                 : static_cast<std::size_t>(cfg.max_witnesses);
  const auto r = check_w_property(space, m, {p}, farey_grid<T>(cfg.lambda_den), cap);
  const auto dom = domain_of(m);
  const auto range = range_of(m);
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"base", e.point(w.base)},
                         {"dual_index", w.dual_index},
                         {"dual", e.dual(range[w.dual_index])},
                         {"x1_index", w.x1_index},
                         {"x1", e.point(dom[w.x1_index])},
                         {"x2_index", w.x2_index},
                         {"x2", e.point(dom[w.x2_index])},
                         {"lambda", e.scalar(w.lambda)},
                         {"lhs", e.scalar(w.lhs)},
                         {"rhs", e.scalar(w.rhs)}});
  }
  json report{{"command", "check-w"},
              {"passed", r.passed()},
              {"base", e.point(p)},
              {"checked", r.checked},
              {"violations", r.violation_count},
              {"witnesses", std::move(witnesses)}};
  return {std::move(report), r.passed() ? kOk : kViolation};
}

template <class S>
Outcome classify_flat_cmd(const S& space, const RunConfig& cfg, const Emitter<S>& e) {
  auto sampler = make_sampler(space, cfg.seed);
  const auto v = classify_flat(space, sampler, cfg.samples);
  json report{{"command", "classify-flat"},
              {"verdict", name(v.verdict)},
              {"samples", v.samples},
              {"max_abs_residual",
               {{"cn", e.scalar(v.max_abs_residual[0])},
                {"projection", e.scalar(v.max_abs_residual[1])},
                {"phi", e.scalar(v.max_abs_residual[2])}}}};
  if (v.witness) {
    const auto& s = v.witness->sample;
    json w{{"criterion", name(v.witness->criterion)},
           {"x", e.point(s.x)},
           {"y", e.point(s.y)},
           {"z", e.point(s.z)},
           {"p", e.point(s.p)},
           {"lambda", e.scalar(s.lambda)},
           {"residual", e.scalar(v.witness->residual)}};
    if constexpr (std::is_same_v<S, SpiderSpace>) {
      w["family_points"] = is_family_point(s.x) && is_family_point(s.y) && is_family_point(s.z) &&
                           is_family_point(s.p);
    }
    report["witness"] = std::move(w);
  }
  return {std::move(report), kOk};
}

template <class S>
json support_json(const SupportFunction<S>& eta, const Emitter<S>& e) {
  json out = json::array();
  for (const auto& en : eta.entries) out.push_back({{"index", en.index}, {"weight", e.scalar(en.weight)}});
  return out;
}

template <class S>
Outcome theta_cmd(const S& space, const Relation<S>& m, const RunConfig& cfg, const Emitter<S>& e) {
  const auto p = base_point(space, cfg, m);
  std::mt19937_64 rng(cfg.seed);
  const auto r = check_monotone_characterization(space, m, rng, cfg.samples, p);
  json report{{"command", "theta"},
              {"status", name(r.status)},
              {"base", e.point(p)},
              {"monotone", r.monotone},
              {"w_violations", r.w_violations},
              {"samples", r.samples},
              {"members", r.members},
              {"non_members", r.non_members}};
  if (!r.detail.empty()) report["detail"] = r.detail;
  if (r.first_non_member) {
    report["first_non_member"] = {{"support", support_json(*r.first_non_member, e)},
                                  {"theta", e.scalar(r.first_non_member_report->theta)},
                                  {"rhs", e.scalar(r.first_non_member_report->rhs)}};
  }
  return {std::move(report), r.status == TheoremStatus::Violated ? kViolation : kOk};
}

template <class S>
Outcome extend_cmd(const S& space, const Relation<S>& m, const Documents& docs, const RunConfig& cfg,
                   const Emitter<S>& e) {
  const auto hull = io::parse_hull(space, *docs.hull, *cfg.hull_path + ":");
  const auto phi = io::parse_phi(space, *docs.phi, *cfg.phi_path + ":");
  const auto eps = resolve_eps<S>(cfg);
  ExtensionOptions opts;
  opts.grid_depth = cfg.depth;
  opts.refine_steps = cfg.refine_steps;
  const auto r = find_extension_point(space, m, hull, phi, eps, opts);
  const bool verified = r.success() && verify_extension(space, m, r, phi, eps);
  json report{{"command", "extend"},
              {"status", name(r.status)},
              {"coordinates", e.coordinates(r.coordinates)},
              {"z_dual", e.dual(r.z_dual)},
              {"point", e.point(r.point)},
              {"margin", e.margin(r.margin)},
              {"eps", e.scalar(eps)},
              {"iterations", r.iterations},
              {"grid_best", {{"coordinates", e.coordinates(r.grid_best_coordinates)},
                             {"margin", e.margin(r.grid_best_margin)}}},
              {"preconditions", {{"monotone", r.m_monotone}, {"w_property", r.m_w_property}}},
              {"augmented_w_property",
               r.augmented_w_property ? json(*r.augmented_w_property) : json(nullptr)},
              {"verified", verified}};
  return {std::move(report), r.success() && verified ? kOk : kViolation};
}

template <class S>
json norm_entry(const S& space, const DualElement<S>& f, const RunConfig& cfg, const Emitter<S>& e) {
  auto sampler = make_sampler(space, cfg.seed);
  const auto b = norm_bounds(space, f, sampler, cfg.samples);
  json out{{"dual", e.dual(f)},
           {"lower", e.scalar(b.lower)},
           {"upper", e.scalar(b.upper)},
           {"quadruples", b.quadruples}};
  if (f.terms.size() == 1) {
    const auto& t = f.terms.front();
    out["single_term_norm"] = e.scalar(norm_single(space, t.weight, t.tail, t.head));
  }
  return out;
}

template <class S>
Outcome norm_cmd(const S& space, const Documents& docs, const RunConfig& cfg, const Emitter<S>& e) {
  json entries = json::array();
  if (docs.dual) {
    const json& d = docs.dual->contains("dual") ? docs.dual->at("dual") : *docs.dual;
    const std::string where = *cfg.dual_path + (docs.dual->contains("dual") ? ":/dual" : ":");
    entries.push_back(norm_entry(space, io::parse_dual(space, d, where), cfg, e));
  } else {
    const auto m = io::parse_relation(space, *docs.relation, *cfg.relation_path + ":");
    for (const auto& f : range_of(m)) entries.push_back(norm_entry(space, f, cfg, e));
  }
  return {json{{"command", "norm"}, {"samples", cfg.samples}, {"elements", std::move(entries)}}, kOk};
}

template <class S>
Outcome identities_cmd(const S& space, const RunConfig& cfg, const Emitter<S>& e) {
  auto sampler = make_sampler(space, cfg.seed);
  const auto r = check_qlin_identities(space, sampler, cfg.samples);
  json failures = json::object();
  for (auto id : {QlinIdentity::PhiDecomposition, QlinIdentity::Antisymmetry,
                  QlinIdentity::Telescoping, QlinIdentity::CauchySchwarz}) {
    failures[name(id)] = r.failure_count(id);
  }
  json report{{"command", "identities"},
              {"passed", r.passed()},
              {"samples", r.samples},
              {"failures", std::move(failures)}};
  if (r.first_failure) {
    json pts = json::array();
    for (const auto& p : r.first_failure->points) pts.push_back(e.point(p));
    report["first_failure"] = {{"identity", name(r.first_failure->identity)},
                               {"points", std::move(pts)},
                               {"lhs", e.scalar(r.first_failure->lhs)},
                               {"rhs", e.scalar(r.first_failure->rhs)}};
  }
  return {std::move(report), r.passed() ? kOk : kViolation};
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == Command::ReproducePaper) return reproduce(cfg);
  if (cfg.samples < 1) throw ParseError("--samples", "must be >= 1");

  Documents docs;
  auto load = [](const std::optional<std::string>& path, std::optional<json>& slot) {
    if (path) slot = io::load_json_file(*path);
  };
  switch (cfg.command) {
    case Command::CheckMonotone:
    case Command::CheckW:
    case Command::Theta:
      required_path(cfg.relation_path, "relation");
      break;
    case Command::Extend:
      required_path(cfg.relation_path, "relation");
      required_path(cfg.hull_path, "hull");
      required_path(cfg.phi_path, "phi");
      break;
    case Command::Norm:
      if (!cfg.dual_path && !cfg.relation_path) throw ParseError("--dual", "--dual or --relation required");
      break;
    case Command::ClassifyFlat:
    case Command::Identities:
      required_path(cfg.space_path, "space");
      break;
    case Command::ReproducePaper:
      break;
  }
  load(cfg.space_path, docs.space);
  load(cfg.relation_path, docs.relation);
  load(cfg.hull_path, docs.hull);
  load(cfg.phi_path, docs.phi);
  load(cfg.dual_path, docs.dual);
  const auto spec = resolve_space(cfg, docs);
  const bool text = cfg.format == Format::Text;

  return with_space(spec, [&](const auto& space) -> Outcome {
    using S = std::decay_t<decltype(space)>;
    const Emitter<S> e{space, text};
    auto relation = [&] {
      return io::parse_relation(space, *docs.relation, *cfg.relation_path + ":");
    };
    Outcome o;
    switch (cfg.command) {
      case Command::CheckMonotone: o = check_monotone_cmd(space, relation(), e); break;
      case Command::CheckW: o = check_w_cmd(space, relation(), cfg, e); break;
      case Command::ClassifyFlat: o = classify_flat_cmd(space, cfg, e); break;
      case Command::Theta: o = theta_cmd(space, relation(), cfg, e); break;
      case Command::Extend: o = extend_cmd(space, relation(), docs, cfg, e); break;
      case Command::Norm: o = norm_cmd(space, docs, cfg, e); break;
      case Command::Identities: o = identities_cmd(space, cfg, e); break;
      case Command::ReproducePaper: break;
    }
    json tagged{{"command", o.report["command"]}, {"space", io::to_json(spec)}};
    for (auto it = o.report.begin(); it != o.report.end(); ++it) {
      if (it.key() != "command") tagged[it.key()] = it.value();
    }
    o.report = std::move(tagged);
    return o;
  });
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

const char* command_name(Command c) {
  for (const auto& k : kCommands) {
    if (k.command == c) return k.name;
  }
  return "?";
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env) {
  if (flag) return *flag;
  if (env == nullptr || *env == '\0') return 1;
  const std::string text(env);
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("HADAMARD_KIT_SEED", "expected an unsigned integer, got '" + text + "'");
  }
  return value;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    if (config.seed == 0) throw ParseError("--seed", "must be positive");
    o = dispatch(config);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SpaceMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  std::string buffer;
  if (config.format == Format::Json) {
    buffer = o.report.dump(2) + "\n";
  } else {
    render(o.report, 0, buffer);
  }
  out << buffer;
  out.flush();
  return o.code;
}

}  // namespace hadamard::cli
