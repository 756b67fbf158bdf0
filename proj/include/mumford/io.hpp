#pragma once

#include <string>

#include <json.hpp>

#include "mumford/covers.hpp"
#include "mumford/normalforms.hpp"
#include "mumford/pgl2.hpp"
#include "mumford/phibound.hpp"
#include "mumford/redgraph.hpp"
#include "mumford/repcat.hpp"

namespace mumford {

/// nlohmann map-based json: keys serialize sorted, reports are byte-stable
using json = nlohmann::json;

struct ParseError : DomainError {
  explicit ParseError(const std::string& what) : DomainError("Parse", what) {}
};

/// Scalar literal grammar: products of factors "a", "a/b", "p^k", e.g.
/// "3/4", "p^2*7", "-1/p".
PadicScalar parse_scalar_literal(long prime, const std::string& text);
std::string render_scalar(const PadicScalar& s);  // plain fraction, re-parsable

/// Word literal: whitespace-separated "g<i>" tokens with optional "^<exp>".
FreeWord parse_word_literal(const std::string& text, int generator_count);

PadicMatrix matrix_from_json(long prime, const json& rows);
json matrix_to_json(const PadicMatrix& m);

ReductionGraph graph_from_json(const json& j);
json graph_to_json(const ReductionGraph& g);

Representation rep_from_json(const json& j);
json rep_to_json(const Representation& rho);

PadicBall ball_from_json(long prime, const json& j);
json ball_to_json(const PadicBall& b);

json poly_to_json(const RatPoly& f);
json word_to_json(const FreeWord& w);
json approx_to_json(const ApproxScalar& a);
json dplus_to_json(const DPlusReport& r, long prime);
json scan_to_json(const ScanResult& r);
json verdict_to_json(const PhiVerdict& v);
json transport_to_json(const TransportReport& r);
json tower_to_json(const ReductionTower& t);
json iso_to_json(const IsoResult& r);
json rcf_to_json(const RcfResult& r);
json integral_conjugacy_to_json(const IntegralConjugacyResult& r);
json pair_classification_to_json(const PairClassification& r);

}  // namespace mumford
