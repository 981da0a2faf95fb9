#include "heightlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>

#include <CLI11.hpp>

#include "heightlab/bifurcation.hpp"
#include "heightlab/degeneration.hpp"
#include "heightlab/dynamics.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/output.hpp"
#include "heightlab/parser.hpp"

namespace heightlab {

namespace {

/// One "key = value" per line, '#' comments, values kept whole (no list
/// splitting, so expressions and comma lists survive).
class KeyValueConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items;
    std::string line;
    while (std::getline(input, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      std::string key = CLI::detail::trim_copy(line.substr(0, eq));
      if (key.empty()) continue;
      CLI::ConfigItem item;
      item.name = key;
      item.parents = {};
      std::string value = eq == std::string::npos ? "true" : CLI::detail::trim_copy(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      item.inputs = {value};
      items.push_back(std::move(item));
    }
    return items;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw DomainError(std::string("invalid number for ") + what + ": '" + s + "'");
  }
}

int to_int(const std::string& s, const char* what) {
  double v = to_double(s, what);
  if (v != static_cast<int>(v)) throw DomainError(std::string("expected an integer for ") + what + ": '" + s + "'");
  return static_cast<int>(v);
}

ParamGrid parse_grid(const std::string& text) {
  ParamGrid g;
  if (text.empty()) return g;
  auto parts = split(text, ',');
  if (parts.size() != 6) throw DomainError("--grid expects x0,y0,x1,y1,W,H");
  g.x0 = to_double(parts[0], "grid x0");
  g.y0 = to_double(parts[1], "grid y0");
  g.x1 = to_double(parts[2], "grid x1");
  g.y1 = to_double(parts[3], "grid y1");
  g.width = to_int(parts[4], "grid width");
  g.height = to_int(parts[5], "grid height");
  g.validate();
  return g;
}

AnnulusSpec parse_annulus(const std::string& text) {
  AnnulusSpec a;
  if (text.empty()) return a;
  auto parts = split(text, ',');
  if (parts.size() != 4) throw DomainError("--annulus expects r_in,r_out,angular,radial");
  a.r_in = to_double(parts[0], "annulus r_in");
  a.r_out = to_double(parts[1], "annulus r_out");
  a.angular = to_int(parts[2], "annulus angular resolution");
  a.radial = to_int(parts[3], "annulus radial resolution");
  return a;
}

Poly parse_poly(const std::string& text) {
  ProjPointK p = parse_point(text);
  if (!p.a2().is_constant() || p.a2().is_zero()) throw DomainError("expected a polynomial in t: '" + text + "'");
  return p.a1() * (Rational(1) / p.a2().coeff(0));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read family file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Context {
  const RunConfig& cfg;
  RationalMapFamily family;
  ExecPolicy exec;
};

RationalMapFamily load_family(const RunConfig& cfg) {
  if (!cfg.family.empty() && !cfg.family_file.empty()) throw DomainError("give either --family or --family-file, not both");
  if (!cfg.family_file.empty()) return parse_family(read_file(cfg.family_file));
  if (cfg.family.empty()) throw DomainError("missing --family or --family-file");
  return parse_family(cfg.family);
}

ProjPointK require_point(const RunConfig& cfg) {
  if (cfg.point.empty()) throw DomainError("command '" + cfg.command + "' needs --point");
  return parse_point(cfg.point);
}

int iters_or(const RunConfig& cfg, int fallback) {
  int n = cfg.iters.value_or(fallback);
  if (n < 1) throw DomainError("--iters must be positive");
  return n;
}

/// The family and lift moved so the place of interest sits at t = 0.
std::pair<RationalMapFamily, MarkedLift> local_setup(const Context& ctx) {
  Rational t0 = ctx.cfg.at.empty() ? Rational(0) : parse_rational(ctx.cfg.at);
  RationalMapFamily f = t0 == 0 ? ctx.family : shift(ctx.family, t0);
  Poly a1, a2;
  if (!ctx.cfg.lift.empty()) {
    auto parts = split(ctx.cfg.lift, ':');
    if (parts.size() != 2) throw DomainError("--lift expects A1:A2");
    a1 = parse_poly(parts[0]);
    a2 = parse_poly(parts[1]);
  } else {
    ProjPointK p = require_point(ctx.cfg);
    a1 = p.a1();
    a2 = p.a2();
  }
  if (t0 != 0) {
    a1 = a1.taylor_shift(t0);
    a2 = a2.taylor_shift(t0);
  }
  return {f, MarkedLift(a1, a2)};
}

Json header(const Context& ctx) {
  return Json{{"command", ctx.cfg.command}, {"family", to_json(ctx.family)}};
}

void expect_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw DomainError("format '" + cfg.format + "' is not available for command '" + cfg.command + "'");
}

template <class Writer>
void emit(const RunConfig& cfg, std::ostream& out, Writer&& write) {
  if (cfg.out.empty()) {
    write(out);
    out.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw DomainError("cannot open output file '" + cfg.out + "'");
  write(file);
  if (!file) throw ResourceError("failed writing '" + cfg.out + "'");
}

void emit_json(const RunConfig& cfg, std::ostream& out, const Json& doc) {
  expect_format(cfg, {"text"});
  emit(cfg, out, [&doc](std::ostream& os) { write_text(os, doc); });
}

OrbitLimits limits_for(const RunConfig&) { return OrbitLimits{}; }

void cmd_height(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  HeightEnclosure h = canonical_height(ctx.family, a, iters_or(ctx.cfg, 12), limits_for(ctx.cfg));
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["height"] = to_json(h);
  emit_json(ctx.cfg, out, doc);
}

void cmd_orbit(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  if (ctx.cfg.nmax < 1) throw DomainError("--nmax must be positive");
  Orbit o = orbit(ctx.family, a, ctx.cfg.nmax, limits_for(ctx.cfg));
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["orbit"] = to_json(o);
  auto cert = constant_tail_certificate(o, ctx.family.degree());
  if (cert) {
    Json pts = Json::array();
    for (const auto& p : cert->points) pts.push_back(p.to_string());
    doc["isotriviality_certificate"] = Json{{"points", pts}, {"start", cert->start}};
  } else {
    doc["isotriviality_certificate"] = nullptr;
  }
  emit_json(ctx.cfg, out, doc);
}

void cmd_classify(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  if (ctx.cfg.nmax < 1) throw DomainError("--nmax must be positive");
  Classification c = classify(ctx.family, a, ctx.cfg.nmax, limits_for(ctx.cfg));
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["classification"] = to_json(c);
  emit_json(ctx.cfg, out, doc);
}

void cmd_resultant(const Context& ctx, std::ostream& out) {
  Json doc = header(ctx);
  doc["resultant"] = ctx.family.resultant().to_string();
  doc["places"] = to_json(degenerate_places(ctx.family));
  emit_json(ctx.cfg, out, doc);
}

void cmd_degenerate(const Context& ctx, std::ostream& out) {
  auto [f, lift] = local_setup(ctx);
  OrderOptions opt;
  opt.lenient = ctx.cfg.lenient;
  OrderSequence seq = order_sequence(f, lift, iters_or(ctx.cfg, 6), opt);
  Json doc = header(ctx);
  doc["at"] = ctx.cfg.at.empty() ? "0" : parse_rational(ctx.cfg.at).get_str();
  doc["lift"] = Json::array({lift.a1().to_string(), lift.a2().to_string()});
  doc["orders"] = to_json(seq);
  emit_json(ctx.cfg, out, doc);
}

void cmd_escape(const Context& ctx, std::ostream& out) {
  auto [f, lift] = local_setup(ctx);
  const int n = iters_or(ctx.cfg, 8);
  AnnulusSpec spec = parse_annulus(ctx.cfg.annulus);
  EscapeGrid g = escape_grid(f, lift, spec, n, ctx.exec);
  if (ctx.cfg.format == "csv") {
    emit(ctx.cfg, out, [&g](std::ostream& os) { write_escape_csv(os, g); });
    return;
  }
  if (ctx.cfg.format == "pgm") {
    emit(ctx.cfg, out, [&g](std::ostream& os) { write_escape_pgm(os, g); });
    return;
  }
  Json doc = header(ctx);
  doc["annulus"] = Json{{"angular", spec.angular}, {"r_in", spec.r_in}, {"r_out", spec.r_out}, {"radial", spec.radial}};
  std::vector<double> sups = g.sup_differences();
  Json sj = Json::array(), rj = Json::array();
  for (std::size_t i = 0; i < sups.size(); ++i) {
    sj.push_back(sups[i]);
    if (i > 0) rj.push_back(sups[i - 1] > 0 ? Json(sups[i] / sups[i - 1]) : Json(nullptr));
  }
  doc["sup_differences"] = sj;
  doc["sup_ratios"] = rj;
  doc["nan_cells"] = g.nan_cells;
  doc["iterations"] = n;
  if (!ctx.cfg.radii.empty()) {
    std::vector<double> radii;
    for (const auto& r : split(ctx.cfg.radii, ',')) radii.push_back(to_double(r, "radius"));
    SlowGrowthReport sg = slow_growth_diagnostic(f, lift, radii, n, 256, ctx.exec);
    doc["slow_growth"] = Json{{"m", sg.m}, {"nonincreasing", sg.nonincreasing}, {"radii", sg.radii}, {"slack", sg.slack}};
  }
  emit_json(ctx.cfg, out, doc);
}

ActivityMetric metric_of(const RunConfig& cfg) {
  if (cfg.metric == "affine") return ActivityMetric::Affine;
  if (cfg.metric == "spherical") return ActivityMetric::Spherical;
  throw DomainError("unknown metric '" + cfg.metric + "'");
}

void cmd_activity(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  ParamGrid grid = parse_grid(ctx.cfg.grid);
  ActivityMap map = activity_map(ctx.family, a, grid, iters_or(ctx.cfg, 256), ctx.cfg.threshold, metric_of(ctx.cfg), ctx.exec);
  if (ctx.cfg.format == "csv") {
    emit(ctx.cfg, out, [&map](std::ostream& os) { write_activity_csv(os, map); });
    return;
  }
  if (ctx.cfg.format == "pgm") {
    emit(ctx.cfg, out, [&map](std::ostream& os) { write_activity_pgm(os, map); });
    return;
  }
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["grid"] = Json{{"height", grid.height}, {"width", grid.width}, {"x0", grid.x0}, {"x1", grid.x1}, {"y0", grid.y0}, {"y1", grid.y1}};
  doc["cap"] = map.cap;
  doc["threshold"] = map.threshold;
  doc["metric"] = ctx.cfg.metric;
  doc["active_pixels"] = map.active_count();
  doc["nan_pixels"] = map.nan_count();
  emit_json(ctx.cfg, out, doc);
}

RootOptions root_options(const Context& ctx) {
  RootOptions opt;
  opt.exec = ctx.exec;
  return opt;
}

void cmd_preperiodic(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  auto pairs = parse_pairs(ctx.cfg.pairs);
  Json results = Json::array();
  for (const auto& [n, m] : pairs) {
    PreperiodicEquation eq = preperiodic_equation(ctx.family, a, n, m, limits_for(ctx.cfg));
    if (eq.identically_zero) {
      results.push_back(Json{{"identically_zero", true}, {"m", m}, {"n", n}});
      continue;
    }
    Json r = to_json(preperiodic_parameters(ctx.family, a, n, m, root_options(ctx), limits_for(ctx.cfg)));
    r["identically_zero"] = false;
    if (eq.E.degree() <= 64) r["equation"] = eq.E.to_string();
    results.push_back(r);
  }
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["pairs"] = results;
  emit_json(ctx.cfg, out, doc);
}

void cmd_density(const Context& ctx, std::ostream& out) {
  ProjPointK a = require_point(ctx.cfg);
  ParamGrid grid = parse_grid(ctx.cfg.grid);
  auto pairs = parse_pairs(ctx.cfg.pairs);
  ActivityMap map = activity_map(ctx.family, a, grid, iters_or(ctx.cfg, 256), ctx.cfg.threshold, metric_of(ctx.cfg), ctx.exec);
  DensityReport rep = density_experiment(ctx.family, a, map, pairs, root_options(ctx), limits_for(ctx.cfg));
  Json doc = header(ctx);
  doc["point"] = to_json(a);
  doc["density"] = to_json(rep);
  emit_json(ctx.cfg, out, doc);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"height", "orbit", "classify", "resultant", "degenerate",
                                                 "escape", "activity", "preperiodic-params", "density"};
  return names;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  if (text.empty()) throw DomainError("missing --pairs (n:m,...)");
  std::vector<std::pair<int, int>> out;
  for (const auto& item : split(text, ',')) {
    auto nm = split(item, ':');
    if (nm.size() != 2) throw DomainError("pair '" + item + "' is not of the form n:m");
    int n = to_int(nm[0], "pair n");
    int m = to_int(nm[1], "pair m");
    if (!(n > m && m >= 0)) throw DomainError("pair '" + item + "' needs n > m >= 0");
    out.emplace_back(n, m);
  }
  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.workers < 1) throw DomainError("--workers must be positive");
    Context ctx{cfg, load_family(cfg), ExecPolicy{cfg.workers > 1, cfg.workers}};
    const std::string& c = cfg.command;
    if (c == "height") cmd_height(ctx, out);
    else if (c == "orbit") cmd_orbit(ctx, out);
    else if (c == "classify") cmd_classify(ctx, out);
    else if (c == "resultant") cmd_resultant(ctx, out);
    else if (c == "degenerate") cmd_degenerate(ctx, out);
    else if (c == "escape") cmd_escape(ctx, out);
    else if (c == "activity") cmd_activity(ctx, out);
    else if (c == "preperiodic-params") cmd_preperiodic(ctx, out);
    else if (c == "density") cmd_density(ctx, out);
    else throw DomainError("unknown command '" + c + "'");
    return kExitOk;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    if (!e.witness().empty()) err << "witness: " << e.witness() << "\n";
    return kExitInternal;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return kExitResource;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Canonical heights, degenerations and bifurcations of families of rational maps"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.config_formatter(std::make_shared<KeyValueConfig>());
  app.add_option("command", cfg.command, "height | orbit | classify | resultant | degenerate | escape | activity | preperiodic-params | density")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--family", cfg.family, "rational map in z with coefficients in t, e.g. \"z^2 + t\"");
  app.add_option("--family-file", cfg.family_file, "file holding the family expression");
  app.add_option("--point", cfg.point, "marked point: expression in t, or inf");
  app.add_option("--nmax", cfg.nmax, "orbit cap for orbit and classify")->check(CLI::PositiveNumber);
  app.add_option("--iters", cfg.iters, "iterate count (height 12, degenerate 6, escape 8, activity/density cap 256)");
  app.add_option("--grid", cfg.grid, "parameter grid x0,y0,x1,y1,W,H");
  app.add_option("--threshold", cfg.threshold, "activity threshold");
  app.add_option("--pairs", cfg.pairs, "preperiodic pairs n:m,...");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "text, csv or pgm")->check(CLI::IsMember({"text", "csv", "pgm"}));
  auto* workers = app.add_option("--workers", cfg.workers, "worker threads (default $HEIGHTLAB_WORKERS, else 1)")
                      ->check(CLI::PositiveNumber);
  app.add_flag("--lenient", cfg.lenient, "allow degenerate-order runs at a nondegenerate parameter");
  app.add_option("--lift", cfg.lift, "holomorphic lift A1:A2 (polynomials in t)");
  app.add_option("--at", cfg.at, "rational parameter moved to t = 0 for degenerate and escape");
  app.add_option("--annulus", cfg.annulus, "r_in,r_out,angular,radial for escape");
  app.add_option("--radii", cfg.radii, "decreasing radii for the slow-growth diagnostic");
  app.add_option("--metric", cfg.metric, "activity metric: affine or spherical")->check(CLI::IsMember({"affine", "spherical"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  if (workers->count() == 0) {
    if (const char* env = std::getenv("HEIGHTLAB_WORKERS")) {
      try {
        cfg.workers = to_int(env, "HEIGHTLAB_WORKERS");
      } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
      }
      if (cfg.workers < 1) {
        err << "error: HEIGHTLAB_WORKERS must be a positive integer\n";
        return kExitDomain;
      }
    }
  }
  return run(cfg, out, err);
}

}  // namespace heightlab
