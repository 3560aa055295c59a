#include "padicdyn/json_io.hpp"

namespace padicdyn {

Json to_json(const PadicScalar& x) {
  Json j;
  j["p"] = x.prime();
  if (x.is_zero()) {
    j["valuation"] = "inf";  // sentinel for the +infinity marker
    j["digits"] = Json::array();
  } else {
    j["valuation"] = x.valuation();
    j["digits"] = x.digits();
  }
  j["precision"] = x.precision();
  return j;
}

PadicScalar scalar_from_json(const Json& j) {
  std::int64_t p = j.at("p").get<std::int64_t>();
  int precision = j.at("precision").get<int>();
  if (j.at("valuation").is_string()) {
    if (j.at("valuation").get<std::string>() != "inf") {
      throw InvalidInput("scalar_from_json: bad valuation sentinel");
    }
    return PadicScalar::zero(p, precision);
  }
  std::int64_t v = j.at("valuation").get<std::int64_t>();
  BigInt unit = 0;
  BigInt pk = 1;
  for (const auto& d : j.at("digits")) {
    unit += pk * d.get<int>();
    pk *= p;
  }
  return PadicScalar::from_unit(p, v, unit, precision);
}

Json to_json(const ProjPoint& P) {
  if (P.is_infinity()) return Json{{"inf", true}};
  return to_json(P.value());
}

Json to_json(const PDisk& d) {
  Json j;
  j["center"] = to_json(d.center);
  j["radius_exponent"] = d.radius_exponent;
  j["kind"] = d.kind == DiskKind::Standard ? "standard" : "complement";
  return j;
}

Json to_json(const Word& w) { return Json(w.symbols); }

Json to_json(const TransitionMatrix& A) { return Json(A.rows); }

Json to_json(const EntropyReport& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["log_lambda"] = r.log_lambda;
  j["iterations"] = r.iterations;
  j["word_counts"] = r.word_counts;
  return j;
}

Json to_json(const ClassificationDetail& d, const MapParams& params) {
  Json reasons;
  reasons["vp_a"] = d.vp_a;
  reasons["branch"] = d.branch;
  if (d.tested) reasons["tested"] = *d.tested;
  if (d.valuation_even) reasons["valuation_even"] = *d.valuation_even;
  if (d.unit_is_qr) reasons["unit_is_qr"] = *d.unit_is_qr;
  Json j;
  j["p"] = params.p;
  j["a"] = rational_to_string(params.a);
  j["regime"] = regime_name(d.regime);
  j["reasons"] = reasons;
  return j;
}

Json to_json(const FixedPointInfo& f) {
  Json j;
  j["point"] = to_json(f.point);
  j["multiplier"] = to_json(f.multiplier);
  j["class"] = multiplier_class_name(f.cls);
  return j;
}

Json to_json(const EscapeVerdict& v) {
  Json j;
  switch (v.kind) {
    case EscapeVerdict::Kind::EscapesToInfinity:
      j["kind"] = "EscapesToInfinity";
      break;
    case EscapeVerdict::Kind::InCoreRegion:
      j["kind"] = "InCoreRegion";
      break;
    case EscapeVerdict::Kind::Undecided:
      j["kind"] = "Undecided";
      break;
  }
  j["step"] = v.step;
  if (v.sphere_index) j["sphere_index"] = *v.sphere_index;
  j["descriptor"] = v.descriptor;
  return j;
}

Json to_json(const CylinderDisk& c) {
  Json j;
  j["word"] = to_json(c.word);
  j["disk"] = to_json(c.disk);
  return j;
}

Json to_json(const TaylorCoeffs& t) {
  Json j;
  j["center"] = to_json(t.center);
  Json coeffs = Json::array();
  for (const auto& c : t.coefficients) coeffs.push_back(to_json(c));
  j["coefficients"] = coeffs;
  return j;
}

Json to_json(const BallId& id) {
  Json j;
  j["level"] = id.level;
  j["chart"] = id.infinity_chart ? "infinity" : "affine";
  j["residue"] = id.residue.str();
  return j;
}

Json to_json(const DecompositionReport& r) {
  Json j;
  j["regime"] = regime_name(r.regime);
  j["p"] = r.p;
  j["a"] = rational_to_string(r.a);
  j["k_min"] = r.k_min;
  j["k_max"] = r.k_max;
  j["note"] =
      "labels are candidates at finite level; exact minimal components are "
      "not claimed";
  Json levels = Json::array();
  for (const auto& s : r.levels) {
    levels.push_back(Json{{"level", s.level},
                          {"balls", s.domain_size},
                          {"cyclic", s.cyclic},
                          {"transient", s.transient},
                          {"cycles", s.cycle_count}});
  }
  j["levels"] = levels;
  Json chains = Json::array();
  for (const auto& c : r.chains) {
    Json lengths = Json::array();
    for (const auto& [level, len] : c.lengths_by_level) {
      lengths.push_back(Json{{"level", level}, {"length", len}});
    }
    chains.push_back(Json{{"label", c.label},
                          {"multiplier_class", c.multiplier_class},
                          {"lengths_by_level", lengths},
                          {"sample_ball", to_json(c.sample_ball)},
                          {"divisibility_ok", c.divisibility_ok}});
  }
  j["chains"] = chains;
  j["transients"] = r.transient_count;
  j["divisibility_ok"] = r.divisibility_ok;
  if (!r.landing_table.empty()) {
    Json landing = Json::array();
    for (const auto& rec : r.landing_table) {
      landing.push_back(Json{{"x", rational_to_string(rec.start)},
                             {"sphere_index", rec.sphere_index},
                             {"step", rec.step}});
    }
    j["landing_table"] = landing;
  }
  return j;
}

}  // namespace padicdyn
