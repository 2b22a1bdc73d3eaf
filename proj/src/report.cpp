#include "mbstab/report.hpp"

#include "mbstab/error.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <iomanip>
#include <sstream>

namespace mbstab {

namespace {

/// NaN and infinities are not JSON numbers.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json check_json(const CheckResult& c) {
  Json j;
  j["pass"] = c.pass;
  j["samples"] = c.samples;
  j["witness"] = c.witness;
  return j;
}

Json condition_json(const ConditionResult& c) {
  Json j;
  j["pass"] = c.pass;
  j["numerical"] = c.numerical;
  j["detail"] = c.detail;
  return j;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

Json envelope(const std::string& kind, Json body, const Provenance& provenance) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = {{"name", "mbstab"}, {"version", kToolVersion}};
  j["provenance"] = {{"input_sha256", provenance.input_sha256}, {"seed", provenance.seed}};
  j[kind] = std::move(body);
  return j;
}

Json error_report(const std::string& stage, const std::string& message, const Provenance& provenance) {
  return envelope("error", {{"stage", stage}, {"message", message}}, provenance);
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Poly2& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e.first, e.second, to_string(c)});
  return terms;
}

Json to_json(const PlanarPolyField& f) { return {{"u", to_json(f.u)}, {"v", to_json(f.v)}}; }

Json to_json(const BinaryForm& form) {
  Json c = Json::array();
  for (const auto& a : form.coeffs()) c.push_back(to_string(a));
  return c;
}

Json to_json(Vec2 p) { return Json::array({number(p[0]), number(p[1])}); }

Poly2 poly_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("polynomial must be an array of [i, j, coefficient] terms");
  std::map<Poly2::Exponents, Rational> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer()) {
      throw ValidationError("polynomial term must be [i, j, coefficient]");
    }
    const int a = t[0].get<int>();
    const int b = t[1].get<int>();
    if (a < 0 || b < 0) throw ValidationError("polynomial exponents must be nonnegative");
    const Rational c = t[2].is_string() ? parse_rational(t[2].get<std::string>())
                                        : parse_rational(t[2].dump());
    terms[{a, b}] += c;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  return Poly2(std::move(terms));
}

PlanarPolyField field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("u") || !j.contains("v")) throw ValidationError("field needs 'u' and 'v'");
  return {poly_from_json(j["u"]), poly_from_json(j["v"])};
}

Json form_json(const BinaryForm& form) {
  Json j;
  j["coeffs"] = to_json(form);
  j["degree"] = form.degree();
  const bool square_free = is_square_free(form);
  j["square_free"] = square_free;
  if (square_free && form.degree() >= 2) {
    const auto profile = factor_profile(form);
    const auto cls = classify_singularity(form);
    j["k"] = profile.real_linear_count;
    j["class"] = to_string(cls.kind);
    j["separatrices"] = cls.separatrix_count;
    j["oracle_k"] = sign_change_oracle(form, 256 * form.degree());
  } else if (square_free) {
    j["k"] = factor_profile(form).real_linear_count;
    j["class"] = "Regular";
  }
  j["hamiltonian"] = to_json(hamiltonian_of(form));
  return j;
}

Json surface_json(const SurfaceClass& s) {
  Json j;
  j["name"] = s.name();
  j["orientable"] = s.orientable;
  j["euler_characteristic"] = s.euler_characteristic;
  j["boundary_components"] = s.boundary_components;
  return j;
}

Json inventory_json(const CriticalStructure& structure) {
  Json iso = Json::array();
  for (const auto& c : structure.isolated) {
    Json e;
    e["vertex"] = c.vertex;
    e["value"] = c.value;
    e["class"] = to_string(c.cls.kind);
    e["k"] = c.cls.separatrix_count / 2;
    e["separatrices"] = c.cls.separatrix_count;
    if (c.extremum_sign != 0) e["extremum"] = c.extremum_sign > 0 ? "max" : "min";
    iso.push_back(std::move(e));
  }
  Json circles = Json::array();
  for (const auto& c : structure.circles) {
    Json e;
    e["vertices"] = c.cycle;
    e["value"] = c.value;
    e["parity"] = to_string(c.parity);
    e["side_signs"] = c.side_signs;
    e["collar_orientable"] = c.collar_orientable;
    circles.push_back(std::move(e));
  }
  Json j;
  j["isolated"] = std::move(iso);
  j["circles"] = std::move(circles);
  j["saddle"] = has_saddle(structure);
  j["poincare_hopf_sum"] = poincare_hopf_sum(structure);
  return j;
}

Json reeb_json(const ReebGraph& g, GraphShape shape) {
  Json nodes = Json::array();
  for (const auto& n : g.nodes) {
    Json e;
    e["id"] = n.id;
    e["kind"] = to_string(n.kind);
    e["value"] = n.value;
    e["isolated"] = n.isolated_vertices;
    e["circles"] = n.circles;
    e["boundaries"] = n.boundaries;
    e["degree"] = g.degree(n.id);
    nodes.push_back(std::move(e));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"lo", e.lo}, {"hi", e.hi}});
  Json j;
  j["mode"] = to_string(g.mode);
  j["shape"] = to_string(shape);
  j["first_betti_number"] = g.first_betti_number();
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  return j;
}

Json analysis_json(const Report& r) {
  Json j;
  j["surface"] = surface_json(r.surface);
  j["inventory"] = inventory_json(r.structure);
  j["reeb"] = reeb_json(r.reeb, r.shape);
  Json v;
  v["homotopy_type"] = to_string(r.verdict.kind);
  v["reason"] = to_string(r.verdict.reason);
  if (r.verdict.saddle_vertex) v["saddle_vertex"] = *r.verdict.saddle_vertex;
  j["verdict"] = std::move(v);
  if (r.catalog) {
    j["catalog"] = {{"item", static_cast<int>(r.catalog->item)},
                    {"name", to_string(r.catalog->item)},
                    {"circles", r.catalog->circle_count}};
  } else {
    j["catalog"] = nullptr;
  }
  j["poincare_hopf_sum"] = r.poincare_hopf;
  return j;
}

Json trajectory_json(const Trajectory& t) {
  Json j;
  j["start"] = to_json(t.start);
  j["end"] = to_json(t.end());
  j["end_time"] = t.end_time();
  j["status"] = to_string(t.status);
  j["diagnostic"] = t.diagnostic;
  j["accepted_steps"] = t.accepted_steps;
  j["rejected_steps"] = t.rejected_steps;
  j["min_step"] = number(t.min_step);
  j["max_step"] = number(t.max_step);
  j["drift"] = number(t.drift);
  j["drift_ok"] = t.drift_ok;
  j["samples"] = t.points.size();
  return j;
}

Json return_map_json(const ReturnMap& map) {
  Json samples = Json::array();
  for (const auto& s : map.samples) {
    Json e;
    e["offset"] = s.offset;
    e["returned"] = s.returned;
    e["tag"] = s.tag;
    if (s.returned) {
      e["image_offset"] = s.image_offset;
      e["image"] = to_json(s.image);
      e["return_time"] = s.return_time;
    }
    samples.push_back(std::move(e));
  }
  Json j;
  j["transversal"] = {{"center", to_json(map.transversal.center)},
                      {"direction", to_json(map.transversal.direction)},
                      {"half_length", map.transversal.half_length}};
  j["samples"] = std::move(samples);
  return j;
}

Json period_json(const PeriodResult& p) {
  Json samples = Json::array();
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    samples.push_back({{"point", to_json(p.samples[i])}, {"period", number(p.periods[i])}});
  }
  Json j;
  j["samples"] = std::move(samples);
  j["reconstruction_error"] = number(p.reconstruction_error);
  return j;
}

Json class_v_json(const ClassVReport& r) {
  Json j;
  j["pass"] = r.all_pass();
  j["fixed_set"] = condition_json(r.fixed_set);
  j["non_recurrence"] = condition_json(r.non_recurrence);
  j["return_map"] = condition_json(r.return_map);
  j["h_type"] = condition_json(r.h_type);
  j["boundary"] = condition_json(r.boundary);
  j["zero_clusters"] = r.zero_clusters;
  j["return_period"] = r.return_period;
  j["periodic_samples"] = r.periodic_samples;
  j["non_returning_samples"] = r.non_returning_samples;
  j["recurrent_samples"] = r.recurrent_samples;
  return j;
}

Json glued_json(const GluedField& glued) {
  const ModelSurface& m = glued.surface();
  Json charts = Json::array();
  for (const auto& c : m.charts) {
    charts.push_back({{"name", c.name},
                      {"box", {c.box.x0, c.box.x1, c.box.y0, c.box.y1}},
                      {"period", to_json(c.period)}});
  }
  Json pieces = Json::array();
  for (const auto& p : glued.pieces()) {
    Json e;
    e["kind"] = to_string(p.kind);
    e["chart"] = p.chart;
    e["sign"] = p.sign;
    if (p.everywhere) {
      e["window"] = "everywhere";
    } else if (p.kind == PieceKind::RegularAnnulus) {
      e["window"] = {{"lo", p.lo}, {"hi", p.hi}, {"eps_lo", p.eps_lo}, {"eps_hi", p.eps_hi},
                     {"lo_boundary", p.lo_boundary}, {"hi_boundary", p.hi_boundary}};
      e["label"] = p.label;
    } else {
      e["element"] = p.element;
      e["window"] = {{"value", p.value}, {"epsilon", p.epsilon}};
    }
    if (p.form) e["form"] = to_json(*p.form);
    if (p.germ) e["germ"] = to_json(*p.germ);
    pieces.push_back(std::move(e));
  }
  Json j;
  j["surface"] = m.name;
  j["n"] = m.n;
  j["circle_valued"] = m.circle_valued;
  j["charts"] = std::move(charts);
  j["pieces"] = std::move(pieces);
  return j;
}

GluedField glued_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("surface") || !j.contains("pieces")) {
    throw ValidationError("glued field needs 'surface' and 'pieces'");
  }
  const ModelSurface m = ModelSurface::by_name(j["surface"].get<std::string>(), j.value("n", 3));
  GluedField glued(m, bump_family(m));
  const Json& pieces = j["pieces"];
  if (!pieces.is_array() || pieces.size() != glued.pieces().size()) {
    throw ValidationError("glued field: expected " + std::to_string(glued.pieces().size()) + " pieces");
  }
  for (std::size_t s = 0; s < pieces.size(); ++s) {
    const Piece& p = glued.pieces()[s];
    const std::string where = "pieces[" + std::to_string(s) + "]";
    if (pieces[s].value("kind", "") != to_string(p.kind)) throw ValidationError(where + ": piece kind mismatch");
    const int sign = pieces[s].value("sign", 0);
    if (sign != 1 && sign != -1) throw ValidationError(where + ": sign must be +1 or -1");
    if (p.germ && pieces[s].contains("germ") && !(field_from_json(pieces[s]["germ"]) == *p.germ)) {
      throw ValidationError(where + ": germ does not match the surface model");
    }
    glued.set_sign(static_cast<int>(s), sign);
  }
  return glued;
}

Json verify_json(const VerifyReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["zero_set"] = check_json(r.zero_set);
  j["conservation"] = check_json(r.conservation);
  j["h_type"] = check_json(r.h_type);
  j["min_norm"] = number(r.min_norm);
  j["max_residual"] = number(r.max_residual);
  return j;
}

}  // namespace mbstab
