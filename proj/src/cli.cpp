#include "lsr/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lsr/error.hpp"
#include "lsr/io.hpp"

namespace lsr {

namespace {

struct Flags {
  std::string config;
  std::vector<int> k;
  std::int64_t seed = -1;
  std::string out;
  std::string format;
  bool no_timestamp = false;
  bool full = false;
  int n = 0;
  std::string source = "quadrature";
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::ConfigError:
    case Errc::InvalidParameter:
    case Errc::DimensionTooSmall:
    case Errc::ExponentOutOfRange:
    case Errc::NonPhysicalD:
    case Errc::ProfileNotPositive:
      return 1;
    case Errc::NotAdmissible:
    case Errc::InadmissibleRegime:
      return 3;
    default:
      return 2;
  }
}

class Context {
 public:
  Context(const std::string& command, const Flags& f, std::ostream& out) : cmd_(command), flags_(f), out_(out) {
    cfg_ = f.config.empty() ? RunConfig{} : load_run_config(f.config);
    if (f.seed >= 0) cfg_.mc.seed = static_cast<std::uint64_t>(f.seed);
    if (!f.out.empty()) cfg_.output.path = f.out;
    if (!f.format.empty()) {
      if (f.format != "json" && f.format != "csv") throw Error(Errc::ConfigError, "--format must be json or csv");
      cfg_.output.format = f.format;
    }
    if (!f.k.empty()) cfg_.k_list = f.k;
    for (int k : cfg_.k_list)
      if (k < 1) throw Error(Errc::ConfigError, "k must be >= 1");
  }

  const RunConfig& cfg() const { return cfg_; }
  std::vector<int> ks(std::vector<int> def) const { return cfg_.k_list.empty() ? def : cfg_.k_list; }
  bool csv() const { return cfg_.output.format == "csv"; }

  std::vector<std::string> meta() const {
    std::vector<std::string> m = {"lsr " + cmd_, "config_hash " + config_hash(cfg_),
                                  "seed " + std::to_string(cfg_.mc.seed)};
    if (!flags_.no_timestamp) m.push_back("timestamp " + utc_timestamp());
    const ProblemParams& p = cfg_.params;
    m.push_back("N " + std::to_string(p.N) + ", m " + format_double(p.m) + ", n " + format_double(p.n) + ", c0 " +
                format_double(p.c0) + ", d0 " + format_double(p.d0) + ", Dfrak " + format_double(p.Dfrak));
    m.push_back("mu = k^{(N-2)/(N-2-frakm)}, frakm = min(m, n)");
    return m;
  }

  Json meta_json() const {
    Json j;
    j["command"] = cmd_;
    j["config_hash"] = config_hash(cfg_);
    j["seed"] = cfg_.mc.seed;
    if (!flags_.no_timestamp) j["timestamp"] = utc_timestamp();
    j["config"] = to_json(cfg_);
    return j;
  }

  void emit(const std::string& text) const {
    if (cfg_.output.path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.output.path, std::ios::binary);
    if (!f) throw Error(Errc::ConfigError, "cannot write " + cfg_.output.path);
    f << text;
  }

  void emit_json(const Json& result) const {
    Json j;
    j["meta"] = meta_json();
    j["result"] = result;
    emit(dump_json(j));
  }

 private:
  std::string cmd_;
  Flags flags_;
  std::ostream& out_;
  RunConfig cfg_;
};

std::string cmd_constants(const Context& cx, const Flags& f) {
  const ValidatedParams vp = validate(cx.cfg().params);
  if (f.source != "quadrature" && f.source != "closed-form")
    throw Error(Errc::ConfigError, "--source must be quadrature or closed-form");
  const ExpansionConstants c =
      f.source == "quadrature" ? compute_constants(vp, cx.cfg().quad) : closed_form_constants(vp);
  if (cx.csv()) {
    std::string s;
    for (const auto& m : cx.meta()) s += "# " + m + "\n";
    s += "name,value,provenance,error\n";
    for (const auto& e : c.entries)
      s += e.name + "," + format_double(e.value) + "," + std::string(to_string(e.provenance)) + "," +
           format_double(e.error) + "\n";
    cx.emit(s);
  } else {
    cx.emit_json(to_json(c));
  }
  return "constants: A = " + format_double(c.A) + ", B = " + format_double(c.B);
}

std::string cmd_check_bubble(const Context& cx, const Flags& f) {
  const ProblemParams& p = cx.cfg().params;
  validate(p);
  const int N = p.N;
  const int n = f.n > 0 ? f.n : 200;
  const BubbleParams b = standard_bubble(N, p.Dfrak);
  const Profiles prof = Profiles::constant(N, p.Dfrak);
  const Field U = [&](const Point& y) { return bubble_jet(y, b); };
  std::mt19937_64 g(cx.cfg().mc.seed);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  Table t;
  t.meta = cx.meta();
  for (int i = 0; i < N; ++i) t.columns.push_back("y" + std::to_string(i + 1));
  t.columns.push_back("interior_rel");
  t.columns.push_back("boundary_rel");
  double worst_in = 0, worst_bd = 0;
  for (int i = 0; i < n; ++i) {
    Point y(N);
    for (int d = 0; d < N; ++d) y[d] = uni(g);
    y[N - 1] = std::abs(y[N - 1]);
    Point yb = y;
    yb[N - 1] = 0.0;
    const double ri = residual(y, U, ResidualKind::interior, prof, N, p.Dfrak).relative();
    const double rb = residual(yb, U, ResidualKind::boundary, prof, N, p.Dfrak).relative();
    worst_in = std::max(worst_in, ri);
    worst_bd = std::max(worst_bd, rb);
    std::vector<double> row(y.coords().begin(), y.coords().end());
    row.push_back(ri);
    row.push_back(rb);
    t.rows.push_back(row);
  }
  t.footer.push_back("max interior_rel " + format_double(worst_in) + ", max boundary_rel " + format_double(worst_bd));
  if (cx.csv())
    cx.emit(to_csv(t));
  else
    cx.emit_json(Json{{"points", n}, {"max_interior_rel", worst_in}, {"max_boundary_rel", worst_bd}});
  return "check-bubble: max relative residual " + format_double(std::max(worst_in, worst_bd));
}

std::string cmd_energy_scan(const Context& cx, const Flags& f) {
  const ValidatedParams vp = validate(cx.cfg().params);
  const ExpansionConstants c = closed_form_constants(vp);
  if (!c.regime.admissible) throw Error(Errc::NotAdmissible, "energy-scan needs an admissible regime");
  const int k = cx.ks({8}).front();
  const int n = f.n > 0 ? f.n : 21;
  const BoxDj box = make_box(k, c);
  Table t;
  t.meta = cx.meta();
  t.meta.push_back("F_j over D_j, j = " + format_double(box.j));
  t.columns = {"r", "Lambda", "F", "dF_dr", "dF_dLambda"};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double r = box.r_lo + (box.r_hi - box.r_lo) * a / (n - 1);
      const double L = box.L_lo + (box.L_hi - box.L_lo) * b / (n - 1);
      const Grad2 g = F_reduced_grad(r, L, k, c, c.regime);
      t.rows.push_back({r, L, F_reduced(r, L, k, c, c.regime), g.dr, g.dL});
    }
  if (cx.csv()) {
    cx.emit(to_csv(t));
  } else {
    Json rows = Json::array();
    for (const auto& r : t.rows)
      rows.push_back(Json{{"r", r[0]}, {"Lambda", r[1]}, {"F", r[2]}, {"dF_dr", r[3]}, {"dF_dLambda", r[4]}});
    cx.emit_json(Json{{"k", k}, {"box", to_json(box)}, {"grid", rows}});
  }
  return "energy-scan: k = " + std::to_string(k) + ", " + std::to_string(n * n) + " points";
}

std::string cmd_expansion_check(const Context& cx, const Flags&) {
  const ValidatedParams vp = validate(cx.cfg().params);
  const ExpansionConstants c = closed_form_constants(vp);
  ExpansionSpec es;
  es.quad = cx.cfg().quad;
  es.mc = cx.cfg().mc;
  Table t;
  t.meta = cx.meta();
  t.meta.push_back("leading = k [A - B ring_sum/Lambda^{N-2} - c0 d3/(2* (Lambda mu)^m) + (N-2) d0 d5/(Lambda mu)^n]");
  t.meta.push_back("bound = k mu^{-(frakm + sigma)}");
  t.columns = {"k", "mu", "J_full", "J_err", "leading", "residual", "bound", "pass"};
  Json arr = Json::array();
  int passed = 0;
  const auto ks = cx.ks({6, 8, 10});
  for (int k : ks) {
    const ExpansionCheck e = expansion_check(k, c, es);
    passed += e.pass;
    t.rows.push_back({double(k), e.mu, e.J_full_value, e.J_full_error, e.leading_value, e.residual,
                      e.residual_bound_prediction, e.pass ? 1.0 : 0.0});
    arr.push_back(to_json(e));
  }
  if (cx.csv())
    cx.emit(to_csv(t));
  else
    cx.emit_json(arr);
  return "expansion-check: " + std::to_string(passed) + "/" + std::to_string(ks.size()) + " within tolerance";
}

std::string cmd_error_decay(const Context& cx, const Flags&) {
  const ValidatedParams vp = validate(cx.cfg().params);
  const ExpansionConstants c = closed_form_constants(vp);
  const double L0 = lambda0(c.regime, c, *vp);
  const auto ks = cx.ks({6, 8, 12, 16});
  const DecayFit din = decay_fit(ks, *vp, DecayField::in, L0, cx.cfg().norm);
  const DecayFit dbd = decay_fit(ks, *vp, DecayField::bd, L0, cx.cfg().norm);
  Table t;
  t.meta = cx.meta();
  t.meta.push_back("norm_in = grid sup |E_in| / sum_j (1+|y-x_j|)^{-((N+2)/2+tau)}, tau = " +
                   format_double(cx.cfg().norm.tau));
  t.meta.push_back("norm_bd = grid sup |E_bd| / sum_j (1+|y-x_j|)^{-(N/2+tau)}; r = mu r0, Lambda = Lambda0");
  t.columns = {"k", "mu", "norm_in", "norm_bd"};
  for (size_t i = 0; i < ks.size(); ++i) t.rows.push_back({double(ks[i]), din.mus[i], din.norms[i], dbd.norms[i]});
  t.footer.push_back("slope_in " + format_double(din.fit.slope) + " r2 " + format_double(din.fit.r2));
  t.footer.push_back("slope_bd " + format_double(dbd.fit.slope) + " r2 " + format_double(dbd.fit.r2));
  if (cx.csv())
    cx.emit(to_csv(t));
  else
    cx.emit_json(Json{{"in", to_json(din)}, {"bd", to_json(dbd)}});
  return "error-decay: slope_in " + format_double(din.fit.slope) + ", slope_bd " + format_double(dbd.fit.slope);
}

std::string cmd_critical_point(const Context& cx, const Flags& f) {
  ReportOptions ro;
  ro.quad = cx.cfg().quad;
  ro.expansion.quad = cx.cfg().quad;
  ro.expansion.mc = cx.cfg().mc;
  ro.norm = cx.cfg().norm;
  const int k = cx.ks({8}).front();
  const ExistenceReport r = construct_report(k, cx.cfg().params, f.full, ro);
  cx.emit_json(to_json(r));
  if (!r.solved) return "critical-point: k below k0, no solve";
  return "critical-point: (r, Lambda) = (" + format_double(r.r_star) + ", " + format_double(r.Lambda_star) +
         "), " + r.signature;
}

std::string cmd_export_profile(const Context& cx, const Flags& f) {
  const ProblemParams& p = cx.cfg().params;
  const ValidatedParams vp = validate(p);
  const ExpansionConstants c = closed_form_constants(vp);
  const int k = cx.ks({8}).front();
  const int n = f.n > 0 ? f.n : 201;
  const double m = mu(k, p);
  const double L = c.regime.admissible ? lambda0(c.regime, c, p) : 1.0;
  const RingConfig ring{k, m * p.r0, L, p};
  const ErrorField ef(ring);
  Table t;
  t.meta = cx.meta();
  t.meta.push_back("profiles along the boundary ray through x_1: y = mu t e_1, Lambda = " + format_double(L));
  t.columns = {"t", "K", "H", "W", "E_in", "E_bd"};
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * p.r0 * i / (n - 1);
    Point y(p.N);
    y[0] = m * s;
    t.rows.push_back({s, curvature_K(s, p), curvature_H(s, p), ef.ansatz().value(y), ef(y, ErrorKind::in),
                      ef(y, ErrorKind::bd)});
  }
  if (cx.csv()) {
    cx.emit(to_csv(t));
  } else {
    Json rows = Json::array();
    for (const auto& r : t.rows)
      rows.push_back(Json{{"t", r[0]}, {"K", r[1]}, {"H", r[2]}, {"W", r[3]}, {"E_in", r[4]}, {"E_bd", r[5]}});
    cx.emit_json(Json{{"k", k}, {"profile", rows}});
  }
  return "export-profile: " + std::to_string(n) + " rows";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ring-bubble Lyapunov-Schmidt reduction toolkit"};
  app.name("lsr");
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "run configuration (JSON)");
  app.add_option("--k", f.k, "k values, comma separated")->delimiter(',');
  app.add_option("--seed", f.seed, "Monte Carlo seed");
  app.add_option("--out", f.out, "output file (default: stdout)");
  app.add_option("--format", f.format, "json or csv");
  app.add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp header");
  app.fallthrough();

  std::string command;
  auto add = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };
  add("constants", "expansion constants with provenance")
      ->add_option("--source", f.source, "quadrature or closed-form");
  add("check-bubble", "bubble residuals at random points")->add_option("--n", f.n, "number of points");
  add("energy-scan", "reduced functional over the box D_j")->add_option("--n", f.n, "grid points per axis");
  add("expansion-check", "full energy against the reduced expansion");
  add("error-decay", "weighted norms of the error terms against mu");
  add("critical-point", "critical point of the reduced functional")
      ->add_flag("--full", f.full, "attach the expansion check and decay fits");
  add("export-profile", "curvature profiles and ansatz along a ray")->add_option("--n", f.n, "number of rows");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const Context cx(command, f, out);
    std::string summary;
    if (command == "constants") summary = cmd_constants(cx, f);
    else if (command == "check-bubble") summary = cmd_check_bubble(cx, f);
    else if (command == "energy-scan") summary = cmd_energy_scan(cx, f);
    else if (command == "expansion-check") summary = cmd_expansion_check(cx, f);
    else if (command == "error-decay") summary = cmd_error_decay(cx, f);
    else if (command == "critical-point") summary = cmd_critical_point(cx, f);
    else if (command == "export-profile") summary = cmd_export_profile(cx, f);
    err << summary << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lsr
