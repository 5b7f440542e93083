#include "lsr/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "lsr/error.hpp"

namespace lsr {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(Errc::ConfigError, what); }

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) config_error("unknown key '" + key + "' in " + where);
}

double get_num(const Json& obj, const char* key, double def) {
  if (!obj.contains(key)) return def;
  const Json& v = obj.at(key);
  if (!v.is_number()) config_error(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_int(const Json& obj, const char* key, std::int64_t def) {
  if (!obj.contains(key)) return def;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) config_error(std::string("'") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string get_str(const Json& obj, const char* key, const std::string& def) {
  if (!obj.contains(key)) return def;
  const Json& v = obj.at(key);
  if (!v.is_string()) config_error(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

void dump_rec(const Json& j, int indent, int level, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<size_t>(indent * (level + 1)), ' ') : "";
  const std::string pad_end = indent > 0 ? std::string(static_cast<size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(k).dump();
        out += indent > 0 ? ": " : ":";
        dump_rec(v, indent, level + 1, out);
      }
      out += nl;
      out += pad_end;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += indent > 0 ? ", " : ",";
        first = false;
        dump_rec(v, indent, level + 1, out);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += "\n";
  return out;
}

RunConfig parse_run_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "config", {"params", "quad", "mc", "norm", "k_list", "output"});
  RunConfig c;
  if (j.contains("params")) {
    const Json& p = j.at("params");
    check_keys(p, "params", {"N", "m", "n", "c0", "d0", "r0", "Dfrak", "theta", "delta", "theta_bar", "sigma"});
    ProblemParams& q = c.params;
    q.N = static_cast<int>(get_int(p, "N", q.N));
    q.m = get_num(p, "m", q.m);
    q.n = get_num(p, "n", q.n);
    q.c0 = get_num(p, "c0", q.c0);
    q.d0 = get_num(p, "d0", q.d0);
    q.r0 = get_num(p, "r0", q.r0);
    q.Dfrak = get_num(p, "Dfrak", q.Dfrak);
    q.theta = get_num(p, "theta", q.theta);
    q.delta = get_num(p, "delta", q.delta);
    q.theta_bar = get_num(p, "theta_bar", q.theta_bar);
    q.sigma = get_num(p, "sigma", q.sigma);
  }
  if (j.contains("quad")) {
    const Json& p = j.at("quad");
    check_keys(p, "quad", {"rel_tol", "abs_tol", "max_evals", "truncation_radius", "tail_mode"});
    QuadratureSpec& q = c.quad;
    q.rel_tol = get_num(p, "rel_tol", q.rel_tol);
    q.abs_tol = get_num(p, "abs_tol", q.abs_tol);
    q.max_evals = get_int(p, "max_evals", q.max_evals);
    q.truncation_radius = get_num(p, "truncation_radius", q.truncation_radius);
    const std::string tm = get_str(p, "tail_mode", "mapped");
    if (tm == "mapped")
      q.tail_mode = TailMode::mapped;
    else if (tm == "truncated")
      q.tail_mode = TailMode::truncated;
    else
      config_error("tail_mode must be 'mapped' or 'truncated'");
  }
  if (j.contains("mc")) {
    const Json& p = j.at("mc");
    check_keys(p, "mc", {"samples", "seed"});
    c.mc.samples = get_int(p, "samples", c.mc.samples);
    const std::int64_t seed = get_int(p, "seed", static_cast<std::int64_t>(c.mc.seed));
    if (seed < 0) config_error("seed must be non-negative");
    c.mc.seed = static_cast<std::uint64_t>(seed);
    if (c.mc.samples < 1) config_error("mc.samples must be >= 1");
  }
  if (j.contains("norm")) {
    const Json& p = j.at("norm");
    check_keys(p, "norm", {"tau", "cutoff_radius", "n_radial", "n_directions"});
    c.norm.tau = get_num(p, "tau", c.norm.tau);
    c.norm.cutoff_radius = get_num(p, "cutoff_radius", c.norm.cutoff_radius);
    c.norm.n_radial = static_cast<int>(get_int(p, "n_radial", c.norm.n_radial));
    c.norm.n_directions = static_cast<int>(get_int(p, "n_directions", c.norm.n_directions));
  }
  if (j.contains("k_list")) {
    const Json& a = j.at("k_list");
    if (!a.is_array()) config_error("k_list must be an array");
    for (const Json& v : a) {
      if (!v.is_number_integer() || v.get<int>() < 1) config_error("k_list entries must be integers >= 1");
      c.k_list.push_back(v.get<int>());
    }
  }
  if (j.contains("output")) {
    const Json& p = j.at("output");
    check_keys(p, "output", {"path", "format"});
    c.output.path = get_str(p, "path", "");
    c.output.format = get_str(p, "format", "json");
    if (c.output.format != "json" && c.output.format != "csv") config_error("output.format must be json or csv");
  }
  validate(c.params);
  try {
    check_spec(c.quad);
    check_norm_spec(c.norm, c.params.N);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

Json to_json(const ProblemParams& p) {
  return Json{{"N", p.N},         {"m", p.m},         {"n", p.n},         {"c0", p.c0},
              {"d0", p.d0},       {"r0", p.r0},       {"Dfrak", p.Dfrak}, {"theta", p.theta},
              {"delta", p.delta}, {"theta_bar", p.theta_bar}, {"sigma", p.sigma}};
}

Json to_json(const RunConfig& c) {
  Json j;
  j["params"] = to_json(c.params);
  j["quad"] = Json{{"rel_tol", c.quad.rel_tol},
                   {"abs_tol", c.quad.abs_tol},
                   {"max_evals", c.quad.max_evals},
                   {"truncation_radius", c.quad.truncation_radius},
                   {"tail_mode", c.quad.tail_mode == TailMode::mapped ? "mapped" : "truncated"}};
  j["mc"] = Json{{"samples", c.mc.samples}, {"seed", c.mc.seed}};
  j["norm"] = Json{{"tau", c.norm.tau},
                   {"cutoff_radius", c.norm.cutoff_radius},
                   {"n_radial", c.norm.n_radial},
                   {"n_directions", c.norm.n_directions}};
  j["k_list"] = c.k_list;
  j["output"] = Json{{"path", c.output.path}, {"format", c.output.format}};
  return j;
}

Json to_json(const ExpansionConstants& c) {
  Json j;
  j["params"] = to_json(c.params);
  j["regime"] = Json{{"tag", std::string(to_string(c.regime.tag))},
                     {"frak_m", c.regime.frak_m},
                     {"admissible", c.regime.admissible}};
  Json arr = Json::array();
  for (const auto& e : c.entries)
    arr.push_back(Json{{"name", e.name},
                       {"value", e.value},
                       {"provenance", std::string(to_string(e.provenance))},
                       {"error", e.error}});
  j["constants"] = arr;
  return j;
}

Json to_json(const BoxDj& b) {
  return Json{{"r_lo", b.r_lo},         {"r_hi", b.r_hi},         {"L_lo", b.L_lo}, {"L_hi", b.L_hi},
              {"r_center", b.r_center}, {"L_center", b.L_center}, {"j", b.j}};
}

Json to_json(const ExpansionCheck& e) {
  return Json{{"k", e.k},
              {"mu", e.mu},
              {"r", e.r},
              {"Lambda", e.Lambda},
              {"J_full", e.J_full_value},
              {"J_err", e.J_full_error},
              {"leading", e.leading_value},
              {"residual", e.residual},
              {"residual_bound_prediction", e.residual_bound_prediction},
              {"tolerance_bound", e.tolerance_bound},
              {"pass", e.pass}};
}

Json to_json(const DecayFit& d) {
  return Json{{"k", d.ks},
              {"mu", d.mus},
              {"norm", d.norms},
              {"slope", d.fit.slope},
              {"intercept", d.fit.intercept},
              {"r2", d.fit.r2}};
}

Json to_json(const ExistenceReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["regime"] = Json{{"tag", std::string(to_string(r.regime.tag))},
                     {"frak_m", r.regime.frak_m},
                     {"admissible", r.regime.admissible}};
  Json cs;
  for (const char* name : {"A", "B", "B0", "B1", "A1", "A2"}) cs[name] = r.constants.entry(name).value;
  cs["Lambda0"] = r.Lambda0;
  j["constants"] = cs;
  j["k"] = r.k;
  j["mu"] = r.mu;
  j["solved"] = r.solved;
  if (r.solved) {
    j["box"] = to_json(r.box);
    j["critical_point"] = Json{{"r", r.r_star}, {"Lambda", r.Lambda_star}};
    j["grad_norm"] = r.grad_norm;
    j["hessian"] = Json{{"rr", r.hessian.rr}, {"rL", r.hessian.rL}, {"LL", r.hessian.LL}};
    j["signature"] = r.signature;
    j["iterations"] = r.iterations;
    j["used_grid_fallback"] = r.used_grid_fallback;
  }
  j["converged"] = r.converged;
  j["notes"] = r.notes;
  if (r.expansion) j["expansion_check"] = to_json(*r.expansion);
  if (r.decay_in) j["decay_in"] = to_json(*r.decay_in);
  if (r.decay_bd) j["decay_bd"] = to_json(*r.decay_bd);
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = dump_json(to_json(cfg), 0);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (const auto& m : t.meta) out += "# " + m + "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  for (const auto& f : t.footer) out += "# " + f + "\n";
  return out;
}

}  // namespace lsr
