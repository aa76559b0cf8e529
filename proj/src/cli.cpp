#include "subgauss/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "subgauss/exit_trace.hpp"
#include "subgauss/generators.hpp"
#include "subgauss/graph.hpp"
#include "subgauss/heat_kernel.hpp"
#include "subgauss/inequalities.hpp"
#include "subgauss/potential.hpp"
#include "subgauss/report.hpp"

namespace subgauss {

namespace {

void error_json(std::ostream& err, const std::string& message) {
  JsonWriter w(err);
  w.begin_object();
  w.kv("schema", 1);
  w.kv("error", message);
  w.end_object();
  err << '\n';
}

// Shared graph-source flags: either a positional edge-list file or a named
// family, optionally subdivided and weight-perturbed.
struct GraphSource {
  std::string file;
  std::string family;
  int dim = 2;
  int side = 65;
  int level = 5;
  int subdivide_k = 1;
  std::string perturb;  // "LO:HI"
  std::uint64_t seed = 1;
};

void add_source_flags(CLI::App* cmd, GraphSource& src, bool family_positional) {
  if (family_positional) {
    cmd->add_option("family", src.family, "graph family: lattice | sierpinski | vicsek")
        ->required();
  } else {
    cmd->add_option("graph", src.file, "edge-list file");
    cmd->add_option("--family", src.family, "graph family: lattice | sierpinski | vicsek");
  }
  cmd->add_option("--d", src.dim, "lattice dimension (1..3)");
  cmd->add_option("--side", src.side, "lattice side length");
  cmd->add_option("--level", src.level, "recursion level for sierpinski / vicsek");
  cmd->add_option("--subdivide", src.subdivide_k, "replace every edge by a k-path");
  cmd->add_option("--perturb", src.perturb, "uniform weight perturbation range LO:HI");
  cmd->add_option("--seed", src.seed, "perturbation seed");
}

std::pair<double, double> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("perturb range must be LO:HI");
  std::size_t lo_end = 0, hi_end = 0;
  double lo = std::stod(text.substr(0, colon), &lo_end);
  double hi = std::stod(text.substr(colon + 1), &hi_end);
  if (lo_end != colon || hi_end != text.size() - colon - 1) {
    throw std::invalid_argument("perturb range must be LO:HI");
  }
  return {lo, hi};
}

WeightedGraph build_graph(const GraphSource& src) {
  WeightedGraph g;
  if (!src.file.empty()) {
    if (!src.family.empty()) {
      throw std::invalid_argument("give either an edge-list file or --family, not both");
    }
    g = load_edge_list_file(src.file);
  } else if (src.family == "lattice") {
    g = lattice(src.dim, src.side);
  } else if (src.family == "sierpinski") {
    g = sierpinski_gasket(src.level);
  } else if (src.family == "vicsek") {
    g = vicsek_tree(src.level);
  } else if (src.family.empty()) {
    throw std::invalid_argument("no graph given: pass an edge-list file or --family");
  } else {
    throw std::invalid_argument("unknown family: " + src.family);
  }
  if (src.subdivide_k > 1) g = subdivide(g, src.subdivide_k);
  if (!src.perturb.empty()) {
    auto [lo, hi] = parse_range(src.perturb);
    g = perturb_weights(g, lo, hi, src.seed);
  }
  return g;
}

std::string describe_source(const GraphSource& src) {
  std::string text;
  if (!src.file.empty()) {
    text = "file " + src.file;
  } else if (src.family == "lattice") {
    text = "lattice d=" + std::to_string(src.dim) + " side=" + std::to_string(src.side);
  } else {
    text = src.family + " level=" + std::to_string(src.level);
  }
  if (src.subdivide_k > 1) text += " subdivided k=" + std::to_string(src.subdivide_k);
  if (!src.perturb.empty()) {
    text += " perturbed " + src.perturb + " seed=" + std::to_string(src.seed);
  }
  return text;
}

int parse_center(const std::string& text, const WeightedGraph& g) {
  if (text == "auto") return approximate_center(g);
  std::size_t used = 0;
  int v = std::stoi(text, &used);
  if (used != text.size()) throw std::invalid_argument("center must be 'auto' or a vertex id");
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("center out of range");
  return v;
}

std::vector<int> dyadic_up_to(int limit, int start) {
  std::vector<int> out;
  for (int r = start; r <= limit; r *= 2) out.push_back(r);
  return out;
}

// Smallest vertex ids at the requested distances from x; silently skips
// distances the graph cannot realize.
std::vector<int> representatives_at(const WeightedGraph& g, int x, std::span<const int> wanted) {
  std::vector<int> dist = bfs_distances(g, x);
  std::vector<int> reps;
  for (int d : wanted) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dist[v] == d) {
        reps.push_back(v);
        break;
      }
    }
  }
  return reps;
}

int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(out);
  std::ofstream file(path);
  if (!file) {
    error_json(err, "cannot open output file: " + path);
    return 2;
  }
  return fn(file);
}

struct AuditArgs {
  GraphSource src;
  std::string center = "auto";
  double d_w = 0.0;
  double d_f = 0.0;
  std::vector<int> radii;
  std::string out_path;
};

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
  WeightedGraph g = build_graph(a.src);
  const int center = parse_center(a.center, g);
  const int ecc = eccentricity(g, center);
  const int window = audit_window_radius(g, center);

  std::vector<std::string> notes;
  std::vector<int> radii = a.radii.empty() ? dyadic_up_to(window, 4) : a.radii;
  std::vector<int> in_window;
  for (int r : radii) {
    if (r >= 1 && r <= window) {
      in_window.push_back(r);
    } else {
      notes.push_back("r=" + std::to_string(r) + " dropped: outside audit window");
    }
  }

  // The floor audit needs the larger trace scales; fall back to the stock
  // pair when the requested radii provide none.
  std::vector<int> floor_radii;
  for (int r : radii) {
    if (r >= 36 && r < ecc) floor_radii.push_back(r);
  }
  if (floor_radii.empty()) {
    floor_radii = {36, 72};
    notes.push_back("exit-floor: no requested radius admits a trace, using fallback 36,72");
  }

  std::optional<ExponentFit> vol_fit;
  if (in_window.size() >= 3) {
    vol_fit = volume_fit(g, center, in_window);
  } else {
    notes.push_back("volume fit skipped: fewer than 3 radii inside the window");
  }

  std::vector<ConditionReport> reports;
  reports.push_back(volume_condition(g, center, in_window, a.d_f));
  reports.push_back(p0_condition(g));
  reports.push_back(capacity_scaling_audit(g, center, in_window, a.d_w));
  reports.push_back(poincare_scaling_audit(g, center, in_window, a.d_w));
  reports.push_back(exit_time_bounds_audit(g, center, in_window, a.d_w));
  reports.push_back(exit_floor_audit(g, center, floor_radii, a.d_w));
  reports.push_back(hypothesis_gate_report(a.d_f, a.d_w));

  bool verdict = true;
  for (const ConditionReport& r : reports) verdict = verdict && r.pass;

  int code = with_output(a.out_path, out, err, [&](std::ostream& o) {
    JsonWriter w(o);
    w.begin_object();
    w.kv("schema", 1);
    w.kv("command", "audit");
    w.kv("graph", describe_source(a.src));
    w.kv("vertices", g.vertex_count());
    w.kv("edges", static_cast<long long>(g.edge_count()));
    w.kv("center", center);
    w.kv("eccentricity", ecc);
    w.kv("window", window);
    w.kv("d_w", a.d_w);
    w.kv("d_f", a.d_f);
    w.key("radii");
    w.begin_array();
    for (int r : in_window) w.value(r);
    w.end_array();
    w.key("notes");
    w.begin_array();
    for (const std::string& n : notes) w.value(n);
    w.end_array();
    w.key("volume_fit");
    if (vol_fit) {
      write_json(w, *vol_fit);
    } else {
      w.null_value();
    }
    w.key("reports");
    w.begin_array();
    for (const ConditionReport& r : reports) write_json(w, r);
    w.end_array();
    w.kv("verdict", verdict ? "pass" : "fail");
    w.end_object();
    o << '\n';
    return 0;
  });
  if (code != 0) return code;
  return verdict ? 0 : 1;
}

struct HeatArgs {
  GraphSource src;
  int source = 0;
  std::vector<int> n_list;
  std::vector<int> y_list;
  bool band = false;
  double d_w = 0.0;
  double d_f = 0.0;
  std::string out_path;
};

int cmd_heatkernel(const HeatArgs& a, std::ostream& out, std::ostream& err) {
  WeightedGraph g = build_graph(a.src);
  if (a.source < 0 || a.source >= g.vertex_count()) {
    throw std::invalid_argument("source out of range");
  }
  if (a.band) {
    std::vector<int> y_list = a.y_list;
    if (y_list.empty()) {
      const int stock[] = {0, 1, 2, 3, 4, 6, 8, 12, 16, 24};
      y_list = representatives_at(g, a.source, stock);
    }
    BandData data = band_statistics(g, a.source, a.d_w, a.n_list, y_list);
    return with_output(a.out_path, out, err, [&](std::ostream& o) {
      write_band_csv(o, data);
      return 0;
    });
  }
  std::vector<HeatKernelRow> rows;
  rows.reserve(a.n_list.size());
  for (int n : a.n_list) rows.push_back(heat_kernel_row(g, a.source, n));
  return with_output(a.out_path, out, err, [&](std::ostream& o) {
    write_rows_csv(o, rows);
    return 0;
  });
}

struct TraceArgs {
  GraphSource src;
  std::string center = "auto";
  int radius = 0;
  double d_w = 0.0;
  double d_f = 0.0;
  std::string out_path;
};

int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err) {
  WeightedGraph g = build_graph(a.src);
  ExitTrace trace = exit_level_trace(g, parse_center(a.center, g), a.radius, a.d_w, a.d_f);
  return with_output(a.out_path, out, err, [&](std::ostream& o) {
    write_document(o, trace);
    return 0;
  });
}

struct FitArgs {
  GraphSource src;
  std::string what;
  std::string center = "auto";
  std::vector<int> radii;
  std::vector<int> n_list;
  std::string out_path;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  WeightedGraph g = build_graph(a.src);
  const int center = parse_center(a.center, g);
  const int window = audit_window_radius(g, center);

  ExponentFit fit;
  if (a.what == "volume") {
    fit = volume_fit(g, center, a.radii.empty() ? dyadic_up_to(window, 4) : a.radii);
  } else if (a.what == "exit") {
    fit = walk_dimension_fit(g, center, a.radii.empty() ? dyadic_up_to(window, 4) : a.radii);
  } else if (a.what == "ondiag") {
    std::vector<int> n_list = a.n_list;
    if (n_list.empty()) {
      // Pick steps inside the mixing window for the empirically fitted d_w.
      ExponentFit walk = walk_dimension_fit(g, center, dyadic_up_to(window, 4));
      int max_n = mixing_window_max_n(g, center, std::max(walk.exponent, 1.5));
      n_list = dyadic_up_to(max_n, 16);
      if (n_list.size() < 3) n_list = dyadic_up_to(max_n, 4);
    }
    fit = on_diagonal_fit(g, center, n_list);
  } else {
    throw std::invalid_argument("--what must be volume, exit or ondiag");
  }
  return with_output(a.out_path, out, err, [&](std::ostream& o) {
    write_document(o, fit);
    return 0;
  });
}

int cmd_gen(const GraphSource& src, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  WeightedGraph g = build_graph(src);
  return with_output(out_path, out, err, [&](std::ostream& o) {
    save_edge_list(g, o, describe_source(src));
    return 0;
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"scaling audits for random walks on weighted graphs"};
  app.name("subgauss");
  app.require_subcommand(1);

  GraphSource gen_src;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a graph edge list");
  add_source_flags(gen, gen_src, true);
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  AuditArgs audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "run the full scaling audit");
  add_source_flags(audit_cmd, audit.src, false);
  audit_cmd->add_option("--center", audit.center, "'auto' or a vertex id");
  audit_cmd->add_option("--dw", audit.d_w, "walk dimension to audit against")->required();
  audit_cmd->add_option("--df", audit.d_f, "volume growth exponent to audit against")->required();
  audit_cmd->add_option("--radii", audit.radii, "comma-separated radii")->delimiter(',');
  audit_cmd->add_option("-o,--out", audit.out_path, "output file (default stdout)");

  HeatArgs heat;
  CLI::App* heat_cmd = app.add_subcommand("heatkernel", "heat kernel rows or band statistics");
  add_source_flags(heat_cmd, heat.src, false);
  heat_cmd->add_option("--source", heat.source, "source vertex")->required();
  heat_cmd->add_option("--n-list", heat.n_list, "comma-separated step counts")
      ->delimiter(',')
      ->required();
  CLI::Option* band_flag = heat_cmd->add_flag("--band", heat.band, "emit band statistics CSV");
  heat_cmd->add_option("--dw", heat.d_w, "walk dimension for the band statistic")
      ->needs(band_flag);
  heat_cmd->add_option("--df", heat.d_f, "volume exponent (recorded only)")->needs(band_flag);
  heat_cmd->add_option("--y-list", heat.y_list, "probe vertex ids (default: spread of distances)")
      ->delimiter(',')
      ->needs(band_flag);
  heat_cmd->add_option("-o,--out", heat.out_path, "output file (default stdout)");

  TraceArgs trace;
  CLI::App* trace_cmd = app.add_subcommand("trace", "exit-time level-set trace at one scale");
  add_source_flags(trace_cmd, trace.src, false);
  trace_cmd->add_option("--center", trace.center, "'auto' or a vertex id");
  trace_cmd->add_option("--r", trace.radius, "trace radius (>= 36)")->required();
  trace_cmd->add_option("--dw", trace.d_w, "walk dimension")->required();
  trace_cmd->add_option("--df", trace.d_f, "volume growth exponent")->required();
  trace_cmd->add_option("-o,--out", trace.out_path, "output file (default stdout)");

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "least-squares exponent fits");
  add_source_flags(fit_cmd, fit.src, false);
  fit_cmd->add_option("--what", fit.what, "volume | exit | ondiag")->required();
  fit_cmd->add_option("--center", fit.center, "'auto' or a vertex id");
  fit_cmd->add_option("--radii", fit.radii, "comma-separated radii")->delimiter(',');
  fit_cmd->add_option("--n-list", fit.n_list, "comma-separated step counts for ondiag")
      ->delimiter(',');
  fit_cmd->add_option("-o,--out", fit.out_path, "output file (default stdout)");

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("subgauss");
    for (const std::string& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_json(err, e.what());
    err << app.help();
    return 2;
  }

  try {
    if (*gen) return cmd_gen(gen_src, gen_out, out, err);
    if (*audit_cmd) return cmd_audit(audit, out, err);
    if (*heat_cmd) {
      if (heat.band && heat.d_w == 0.0) {
        throw std::invalid_argument("--band requires --dw");
      }
      return cmd_heatkernel(heat, out, err);
    }
    if (*trace_cmd) return cmd_trace(trace, out, err);
    if (*fit_cmd) return cmd_fit(fit, out, err);
  } catch (const std::exception& e) {
    error_json(err, e.what());
    return 2;
  }
  error_json(err, "no subcommand given");
  return 2;
}

}  // namespace subgauss
