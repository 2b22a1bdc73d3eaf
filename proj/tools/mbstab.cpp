// mbstab: command-line front end for the stabilizer pipeline.

#include "mbstab/assembly.hpp"
#include "mbstab/catalog.hpp"
#include "mbstab/error.hpp"
#include "mbstab/kernels.hpp"
#include "mbstab/report.hpp"
#include "mbstab/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace mbstab;

namespace {

const char* kSchemas = R"(Schemas
  mesh+field   {"vertices": N, "triangles": [[i,j,k],...], "mode": "real"|"circle",
                "values": [...], "windings": {"i,j": w}, "plateaus": [[v,...],...]}
  flow input   {"hamiltonian": P} | {"field": {"u": P, "v": P}} | assemble report | glued field
               optional "domain_radius", "box": [x0,x1,y0,y1],
               "singularities": [{"location": [x,y], "form": ["1","0","1"]}],
               "transversals": [{"center": [x,y], "half_length": h}]
               P = [[i, j, "coefficient"], ...] meaning sum coefficient x^i y^j
  reports      {"schema": "mbstab.report/1", "tool": {...},
                "provenance": {"input_sha256", "seed"}, "<kind>": {...}}
Exit codes: 0 success, 1 validation error, 2 internal error.)";

struct Common {
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  double tol = 0.0;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text;
}

Vec2 parse_point(const std::string& text) {
  std::istringstream in(text);
  Vec2 p{};
  char comma = 0;
  if (!(in >> p[0] >> comma >> p[1]) || comma != ',') throw ValidationError("expected a point 'x,y', got '" + text + "'");
  return p;
}

std::vector<Rational> parse_coeffs(const std::string& text) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON: " + std::string(e.what()));
  }
}

double tol_or(const Common& c, double fallback) { return c.tol > 0 ? c.tol : fallback; }

/// Flow input: a chart field plus the class-V configuration that goes with it.
struct FlowInput {
  FlowField field;
  ClassVConfig config;
  Box box{-2, 2, -2, 2};
};

FlowInput flow_input(const Json& spec, int chart) {
  FlowInput in;
  const Json* glued = nullptr;
  if (spec.contains("assembled")) glued = &spec["assembled"]["field"];
  if (spec.contains("surface") && spec.contains("pieces")) glued = &spec;
  if (glued) {
    const GluedField g = glued_from_json(*glued);
    if (chart < 0 || chart >= static_cast<int>(g.surface().charts.size())) {
      throw ValidationError("chart " + std::to_string(chart) + " does not exist on " + g.surface().name);
    }
    in.field = g.chart_field(chart);
    in.config = class_v_config(g, chart);
    in.box = in.config.domain;
    return in;
  }
  const double radius = spec.value("domain_radius", 10.0);
  if (spec.contains("hamiltonian")) {
    in.field = FlowField::hamiltonian_of(poly_from_json(spec["hamiltonian"]), radius);
  } else if (spec.contains("field")) {
    in.field = FlowField::from_polynomial(field_from_json(spec["field"]), radius);
  } else {
    throw ValidationError("flow input needs 'hamiltonian', 'field' or an assembled field");
  }
  if (spec.contains("box")) {
    const auto b = spec["box"].get<std::vector<double>>();
    if (b.size() != 4) throw ValidationError("box must be [x0, x1, y0, y1]");
    in.box = {b[0], b[1], b[2], b[3]};
  }
  in.config.domain = in.box;
  for (const auto& s : spec.value("singularities", Json::array())) {
    DeclaredSingularity d;
    const auto loc = s.at("location").get<std::vector<double>>();
    d.location = {loc.at(0), loc.at(1)};
    std::vector<Rational> coeffs;
    for (const auto& c : s.at("form")) coeffs.push_back(parse_rational(c.is_string() ? c.get<std::string>() : c.dump()));
    d.form = BinaryForm(std::move(coeffs));
    d.germ = hamiltonian_of(d.form);
    d.radius = s.value("radius", 0.1);
    in.config.singularities.push_back(std::move(d));
  }
  for (const auto& t : spec.value("transversals", Json::array())) {
    const auto c = t.at("center").get<std::vector<double>>();
    in.config.transversals.push_back(Transversal::through(in.field, {c.at(0), c.at(1)}, t.value("half_length", 0.05)));
  }
  return in;
}

std::vector<Vec2> starts_from(const std::vector<std::string>& given, int random_count, std::uint64_t seed) {
  std::vector<Vec2> out;
  for (const auto& s : given) out.push_back(parse_point(s));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (static_cast<int>(out.size()) < static_cast<int>(given.size()) + random_count) {
    const Vec2 p{u(rng), u(rng)};
    if (norm(p) <= 1.0) out.push_back(p);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse-Bott stabilizer toolkit: critical structure, Reeb graphs, stabilizer homotopy type, flows"};
  app.footer(kSchemas);
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Report path (stdout when omitted)");
    sub->add_option("--seed", common.seed, "Random seed recorded in the report");
    sub->add_option("--tol", common.tol, "Numerical tolerance");
  };

  std::string in_path;
  std::optional<double> cut;

  auto* mkmesh = app.add_subcommand("mkmesh", "Emit a bundled example mesh as mesh+field JSON");
  std::string mesh_name;
  bool list = false;
  mkmesh->add_option("--name", mesh_name, "Catalog mesh");
  mkmesh->add_flag("--list", list, "List the catalog");
  add_common(mkmesh);

  auto* inventory = app.add_subcommand("inventory", "Critical points and circles of a mesh field");
  inventory->add_option("--in", in_path, "mesh+field JSON")->required();
  add_common(inventory);

  auto* reeb = app.add_subcommand("reeb", "Reeb graph and its shape");
  reeb->add_option("--in", in_path, "mesh+field JSON")->required();
  reeb->add_option("--cut", cut, "Cut value for circle-valued fields");
  reeb->add_option("--svg", common.svg, "Write a drawing of the graph");
  add_common(reeb);

  auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline: surface, inventory, Reeb graph, verdict, catalog");
  analyze_cmd->add_option("--in", in_path, "mesh+field JSON")->required();
  analyze_cmd->add_option("--cut", cut, "Cut value for circle-valued fields");
  analyze_cmd->add_option("--svg", common.svg, "Write a drawing of the Reeb graph");
  add_common(analyze_cmd);

  auto* form = app.add_subcommand("form", "Classify a homogeneous binary form");
  std::string coeffs;
  std::optional<int> degree;
  form->add_option("--coeffs", coeffs, "a_0,...,a_d for sum a_i x^(d-i) y^i")->required();
  form->add_option("--degree", degree, "Expected degree");
  add_common(form);

  auto* flow = app.add_subcommand("flow", "Integrate, return maps, period functions, class-V checks");
  std::string task = "integrate";
  std::vector<std::string> starts;
  int random_starts = 0;
  double T = 10.0;
  int chart = 0;
  int count = 9;
  double half_length = 0.05;
  flow->add_option("--in", in_path, "Flow input JSON")->required();
  flow->add_option("--task", task, "integrate | return-map | period | class-v")
      ->check(CLI::IsMember({"integrate", "return-map", "period", "class-v"}));
  flow->add_option("--start", starts, "Start point x,y (repeatable)");
  flow->add_option("--random-starts", random_starts, "Additional starts drawn from the unit disk with --seed");
  flow->add_option("--T", T, "Integration time");
  flow->add_option("--chart", chart, "Chart of an assembled field");
  flow->add_option("--count", count, "Return-map samples");
  flow->add_option("--half-length", half_length, "Transversal half-length");
  flow->add_option("--svg", common.svg, "Write a phase portrait");
  add_common(flow);

  auto* assemble = app.add_subcommand("assemble", "Glue local models into a field on a chart surface and verify it");
  std::string surface_name;
  int n = 3;
  int extra = 200;
  bool no_orient = false;
  bool run_class_v = false;
  double delta = 1e-3;
  assemble->add_option("--surface", surface_name, "disk | annulus | sphere | torus_cos | torus_zn")->required();
  assemble->add_option("--n", n, "Degree of torus_zn");
  assemble->add_option("--extra-samples", extra, "Random verification samples per chart from --seed");
  assemble->add_option("--delta", delta, "Zero-set exclusion radius");
  assemble->add_flag("--no-orient", no_orient, "Skip codirectional orientation (regression sabotage)");
  assemble->add_flag("--class-v", run_class_v, "Also run the class-V check on every chart");
  add_common(assemble);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Provenance prov;
  prov.seed = common.seed;
  std::string stage = "input";
  try {
    if (*mkmesh) {
      if (list) {
        for (const auto& c : catalog()) std::cout << c.name << "  " << c.description << "\n";
        return 0;
      }
      if (mesh_name.empty()) throw ValidationError("mkmesh needs --name (or --list)");
      const MeshData m = catalog_mesh(mesh_name);
      write_text(common.out, dump_mesh(m.mesh, m.field));
      return 0;
    }
    if (*form) {
      prov.input_sha256 = sha256_hex(coeffs);
      stage = "form";
      BinaryForm f(parse_coeffs(coeffs));
      if (degree && *degree != f.degree()) {
        throw ValidationError("--degree " + std::to_string(*degree) + " but " + std::to_string(f.coeffs().size()) +
                              " coefficients");
      }
      write_text(common.out, dump_report(envelope("form", form_json(f), prov)));
      return 0;
    }
    if (*assemble) {
      prov.input_sha256 = sha256_hex(surface_name + ":" + std::to_string(n) + (no_orient ? ":no-orient" : ""));
      stage = "assemble";
      const ModelSurface surface = ModelSurface::by_name(surface_name, n);
      const GluedField glued = glue(surface, {.orient = !no_orient});
      VerifyOptions vo;
      vo.delta = delta;
      vo.tol = tol_or(common, 1e-9);
      vo.extra_samples = extra;
      vo.seed = common.seed;
      Json body;
      body["field"] = glued_json(glued);
      body["transition_error"] = surface.transition_error();
      body["verification"] = verify_json(verify_field(glued, vo));
      if (run_class_v) {
        Json charts = Json::array();
        for (int c = 0; c < static_cast<int>(surface.charts.size()); ++c) {
          charts.push_back(class_v_json(class_v_check(glued.chart_field(c), class_v_config(glued, c))));
        }
        body["class_v"] = std::move(charts);
      }
      write_text(common.out, dump_report(envelope("assembled", std::move(body), prov)));
      return 0;
    }

    const std::string text = read_file(in_path);
    prov.input_sha256 = sha256_hex(text);

    if (*flow) {
      stage = "flow";
      const FlowInput in = flow_input(parse_json_text(text), chart);
      const double tol = tol_or(common, 1e-10);
      std::vector<Vec2> pts = starts_from(starts, random_starts, common.seed);
      if (pts.empty() && task != "class-v") throw ValidationError("flow needs --start or --random-starts");
      Json body;
      body["task"] = task;
      std::vector<Trajectory> drawn;
      if (task == "integrate") {
        Json list_json = Json::array();
        for (const Vec2& p : pts) {
          drawn.push_back(integrate(in.field, p, T, tol, !common.svg.empty()));
          list_json.push_back(trajectory_json(drawn.back()));
        }
        body["trajectories"] = std::move(list_json);
      } else if (task == "return-map") {
        ReturnOptions ro;
        ro.tol = tol;
        Json maps = Json::array();
        for (const Vec2& p : pts) maps.push_back(return_map_json(first_return(in.field, Transversal::through(in.field, p, half_length), count, ro)));
        body["return_maps"] = std::move(maps);
      } else if (task == "period") {
        ReturnOptions ro;
        ro.tol = tol;
        body["period"] = period_json(period_function(in.field, pts, ro));
      } else {
        body["class_v"] = class_v_json(class_v_check(in.field, in.config));
      }
      if (!common.svg.empty()) {
        if (drawn.empty()) {
          for (const Vec2& p : pts) drawn.push_back(integrate(in.field, p, T, tol, true));
        }
        write_text(common.svg, phase_portrait_svg(drawn, in.box, in.field.conserved));
      }
      write_text(common.out, dump_report(envelope("flow", std::move(body), prov)));
      return 0;
    }

    stage = "mesh";
    const MeshData data = parse_mesh(text);
    if (*inventory) {
      stage = "critical";
      write_text(common.out, dump_report(envelope("inventory", inventory_json(critical_inventory(data.mesh, data.field)), prov)));
      return 0;
    }
    stage = "analyze";
    const Report r = analyze(data.mesh, data.field, cut);
    if (!common.svg.empty()) write_text(common.svg, reeb_svg(r.reeb));
    if (*reeb) {
      write_text(common.out, dump_report(envelope("reeb", reeb_json(r.reeb, r.shape), prov)));
    } else {
      write_text(common.out, dump_report(envelope("analysis", analysis_json(r), prov)));
    }
    return 0;
  } catch (const ValidationError& e) {
    const std::string where = e.stage().empty() ? stage : e.stage();
    std::cerr << "mbstab: " << where << ": " << e.what() << "\n";
    if (!common.out.empty() && common.out != "-") {
      try {
        write_text(common.out, dump_report(error_report(where, e.what(), prov)));
      } catch (...) {
      }
    }
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "mbstab: " << stage << ": invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mbstab: internal error: " << e.what() << "\n";
    return 2;
  }
}
