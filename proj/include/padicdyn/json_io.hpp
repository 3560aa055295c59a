#pragma once

#include <json.hpp>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/dynamics.hpp"
#include "padicdyn/symbolic.hpp"

namespace padicdyn {

using Json = nlohmann::ordered_json;

Json to_json(const PadicScalar& x);
PadicScalar scalar_from_json(const Json& j);

Json to_json(const ProjPoint& P);
Json to_json(const PDisk& d);
Json to_json(const Word& w);
Json to_json(const TransitionMatrix& A);
Json to_json(const EntropyReport& r);
Json to_json(const ClassificationDetail& d, const MapParams& params);
Json to_json(const FixedPointInfo& f);
Json to_json(const EscapeVerdict& v);
Json to_json(const CylinderDisk& c);
Json to_json(const TaylorCoeffs& t);
Json to_json(const BallId& id);
Json to_json(const DecompositionReport& r);

}  // namespace padicdyn
