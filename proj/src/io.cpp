#include "mumford/io.hpp"

#include <cctype>
#include <sstream>

namespace mumford {

// ---------------------------------------------------------------------------
// scalar literals

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }
};

mpz_class lex_integer(Lexer& lx) {
  lx.skip_ws();
  size_t start = lx.pos;
  if (lx.pos < lx.s.size() && (lx.s[lx.pos] == '-' || lx.s[lx.pos] == '+'))
    ++lx.pos;
  size_t digits = lx.pos;
  while (lx.pos < lx.s.size() &&
         std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
    ++lx.pos;
  if (lx.pos == digits)
    throw ParseError("expected integer at position " + std::to_string(start) +
                     " in scalar literal '" + lx.s + "'");
  return mpz_class(lx.s.substr(start, lx.pos - start));
}

// atom := ['-' | '+'] (integer | 'p' ['^' integer]); the sign is only legal
// on a leading atom
mpq_class lex_atom(long prime, Lexer& lx, bool allow_sign) {
  lx.skip_ws();
  int sign = 1;
  if (lx.pos < lx.s.size() && (lx.s[lx.pos] == '-' || lx.s[lx.pos] == '+')) {
    if (!allow_sign)
      throw ParseError("unexpected sign in scalar literal '" + lx.s + "'");
    if (lx.s[lx.pos] == '-') sign = -1;
    ++lx.pos;
    lx.skip_ws();
  }
  if (lx.pos < lx.s.size() && lx.s[lx.pos] == 'p') {
    ++lx.pos;
    long k = 1;
    if (lx.eat('^')) k = static_cast<long>(lex_integer(lx).get_si());
    mpq_class v(pow_p(prime, std::abs(k)));
    return sign * (k >= 0 ? v : 1 / v);
  }
  return sign * mpq_class(lex_integer(lx));
}

}  // namespace

PadicScalar parse_scalar_literal(long prime, const std::string& text) {
  Lexer lx{text};
  mpq_class value = 1;
  bool first = true;
  while (true) {
    mpq_class num = lex_atom(prime, lx, first);
    if (lx.eat('/')) {
      mpq_class den = lex_atom(prime, lx, false);
      if (den == 0) throw ParseError("zero denominator in '" + text + "'");
      num /= den;
    }
    value *= num;
    first = false;
    if (!lx.eat('*')) break;
  }
  if (!lx.done())
    throw ParseError("trailing characters in scalar literal '" + text + "'");
  return {prime, value};
}

std::string render_scalar(const PadicScalar& s) { return s.value().get_str(); }

FreeWord parse_word_literal(const std::string& text, int generator_count) {
  std::istringstream is(text);
  std::string tok;
  std::vector<std::pair<int, int>> letters;
  while (is >> tok) {
    if (tok == "1") continue;  // identity token
    if (tok.size() < 2 || tok[0] != 'g')
      throw ParseError("bad word token '" + tok + "' (expected g<i>[^<exp>])");
    size_t caret = tok.find('^');
    int gen = 0;
    long exp = 1;
    try {
      gen = std::stoi(tok.substr(1, caret == std::string::npos
                                        ? std::string::npos
                                        : caret - 1));
      if (caret != std::string::npos) exp = std::stol(tok.substr(caret + 1));
    } catch (const std::exception&) {
      throw ParseError("bad word token '" + tok + "'");
    }
    if (gen < 0 || gen >= generator_count)
      throw ParseError("generator index out of range in '" + tok + "'");
    for (long i = 0; i < std::labs(exp); ++i)
      letters.emplace_back(gen, exp > 0 ? 1 : -1);
  }
  return FreeWord::from_letters(letters);
}

// ---------------------------------------------------------------------------
// json schemas

static long get_prime(const json& j) {
  if (!j.contains("p") || !j["p"].is_number_integer())
    throw ParseError("missing integer field \"p\"");
  long p = j["p"].get<long>();
  if (p < 2) throw ParseError("\"p\" must be >= 2");
  return p;
}

PadicMatrix matrix_from_json(long prime, const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("matrix must be a non-empty array of rows");
  std::vector<std::vector<mpq_class>> vals;
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty())
      throw ParseError("matrix row must be a non-empty array");
    std::vector<mpq_class> r;
    for (const auto& cell : row) {
      if (cell.is_number_integer())
        r.emplace_back(cell.get<long>());
      else if (cell.is_string())
        r.push_back(parse_scalar_literal(prime, cell.get<std::string>()).value());
      else
        throw ParseError("matrix entry must be an integer or scalar literal");
    }
    vals.push_back(std::move(r));
  }
  return PadicMatrix::from_rows(prime, vals);
}

json matrix_to_json(const PadicMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

ReductionGraph graph_from_json(const json& j) {
  long p = get_prime(j);
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("graph needs a \"vertices\" array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) vertices.push_back(v.get<std::string>());
  auto vindex = [&](const std::string& label) {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == label) return static_cast<int>(i);
    throw ParseError("unknown vertex label \"" + label + "\"");
  };
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("graph needs an \"edges\" array");
  std::vector<GraphEdge> edges;
  for (const auto& e : j["edges"]) {
    GraphEdge ge;
    ge.id = e.at("id").get<std::string>();
    ge.from = vindex(e.at("from").get<std::string>());
    ge.to = vindex(e.at("to").get<std::string>());
    ge.width_exp = e.value("width_exp", 1L);
    edges.push_back(std::move(ge));
  }
  if (!j.contains("base")) throw ParseError("graph needs a \"base\" label");
  int base = vindex(j["base"].get<std::string>());
  try {
    return {p, vertices, edges, base};
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

json graph_to_json(const ReductionGraph& g) {
  json j;
  j["p"] = g.prime();
  j["vertices"] = g.vertices();
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json je;
    je["id"] = e.id;
    je["from"] = g.vertices()[e.from];
    je["to"] = g.vertices()[e.to];
    je["width_exp"] = e.width_exp;
    edges.push_back(je);
  }
  j["edges"] = edges;
  j["base"] = g.vertices()[g.base_vertex()];
  return j;
}

Representation rep_from_json(const json& j) {
  long p = get_prime(j);
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw ParseError("representation needs an integer \"rank\"");
  Representation rho{p, j["rank"].get<int>(), {}};
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ParseError("representation needs a \"generators\" array");
  for (const auto& m : j["generators"])
    rho.images.push_back(matrix_from_json(p, m));
  try {
    rho.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid representation: ") + e.what());
  }
  return rho;
}

json rep_to_json(const Representation& rho) {
  json j;
  j["p"] = rho.prime;
  j["rank"] = rho.rank;
  json gens = json::array();
  for (const auto& m : rho.images) gens.push_back(matrix_to_json(m));
  j["generators"] = gens;
  return j;
}

PadicBall ball_from_json(long prime, const json& j) {
  PadicBall b{PadicScalar(prime, 0), 0, false, true};
  if (!j.contains("center") || !j.contains("radius_exp"))
    throw ParseError("ball needs \"center\" and \"radius_exp\"");
  if (j["center"].is_string())
    b.center = parse_scalar_literal(prime, j["center"].get<std::string>());
  else
    b.center = PadicScalar(prime, j["center"].get<long>());
  b.radius_exp = j["radius_exp"].get<long>();
  b.complement = j.value("complement", false);
  b.closed = j.value("closed", true);
  return b;
}

json ball_to_json(const PadicBall& b) {
  json j;
  j["center"] = render_scalar(b.center);
  j["radius_exp"] = b.radius_exp;
  j["complement"] = b.complement;
  j["closed"] = b.closed;
  return j;
}

json poly_to_json(const RatPoly& f) {
  json j;
  json coeffs = json::array();
  for (const auto& c : f) coeffs.push_back(mpq_class(c).get_str());
  j["coefficients"] = coeffs;  // low degree first
  j["display"] = poly_str(f);
  return j;
}

json word_to_json(const FreeWord& w) { return w.str(); }

json approx_to_json(const ApproxScalar& a) {
  json j;
  j["valuation"] = a.valuation;
  j["unit_residue"] = a.unit_residue.get_str();
  j["precision"] = a.precision;
  return j;
}

json dplus_to_json(const DPlusReport& r, long prime) {
  json j;
  j["l"] = r.l;
  j["l_plus"] = r.l_plus;
  j["d_plus_exp"] = r.d_plus_exp;
  j["d_plus"] = "p^-" + std::to_string(r.d_plus_exp);
  j["p"] = prime;
  return j;
}

json scan_to_json(const ScanResult& r) {
  json j;
  j["max_exp"] = r.max_exp;
  j["max_value"] = "p^" + std::to_string(r.max_exp);
  j["max_word"] = r.max_word.str();
  json level = json::array();
  for (const auto& w : r.level_set) level.push_back(w.str());
  j["level_set"] = level;
  j["level_set_size"] = r.level_set_size;
  j["finiteness_proven"] = r.finiteness_proven;
  j["proof_bound_len"] = r.proof_bound_len;
  j["words_enumerated"] = r.words_enumerated;
  return j;
}

json verdict_to_json(const PhiVerdict& v) {
  json j;
  switch (v.kind) {
    case PhiVerdict::Kind::PhiBounded:
      j["verdict"] = "PhiBounded";
      j["certificate"] = v.certificate;
      break;
    case PhiVerdict::Kind::NotPhiBounded:
      j["verdict"] = "NotPhiBounded";
      j["witness"] = v.witness->word.str();
      j["growth_exponent"] = v.witness->growth_exp.get_str();
      break;
    case PhiVerdict::Kind::Unknown:
      j["verdict"] = "Unknown";
      j["scan"] = scan_to_json(*v.scan);
      break;
  }
  return j;
}

static json long_matrix_to_json(const std::vector<long>& m, int r) {
  json rows = json::array();
  for (int i = 0; i < r; ++i) {
    json row = json::array();
    for (int j = 0; j < r; ++j) row.push_back(m[i * r + j]);
    rows.push_back(row);
  }
  return rows;
}

json transport_to_json(const TransportReport& r) {
  json j;
  j["group_order"] = r.group_order;
  j["level"] = r.level;
  j["rank"] = r.rank;
  j["basepoint"] = r.basepoint;
  j["all_equal"] = r.all_equal;
  j["conjugacy_verified"] = r.conjugacy_verified;
  j["conjugator"] = long_matrix_to_json(r.conjugator, r.rank);
  json gens = json::array();
  for (size_t i = 0; i < r.transported.size(); ++i) {
    json g;
    g["transported"] = long_matrix_to_json(r.transported[i], r.rank);
    g["rho_n"] = long_matrix_to_json(r.rho_n[i], r.rank);
    g["equal"] = static_cast<bool>(r.generator_equal[i]);
    gens.push_back(g);
  }
  j["generators"] = gens;
  return j;
}

json tower_to_json(const ReductionTower& t) {
  json j;
  j["p"] = t.prime;
  j["rank"] = t.rank;
  j["n_max"] = t.n_max;
  json levels = json::array();
  for (long k = 1; k <= t.n_max; ++k) {
    json level;
    level["level"] = k;
    level["quotient_order"] = t.quotient_orders[k - 1];
    json gens = json::array();
    for (const auto& m : t.level_images[k - 1])
      gens.push_back(long_matrix_to_json(m, t.rank));
    level["generators"] = gens;
    levels.push_back(level);
  }
  j["levels"] = levels;
  return j;
}

json iso_to_json(const IsoResult& r) {
  json j;
  switch (r.kind) {
    case IsoResult::Kind::Isomorphic:
      j["verdict"] = "Isomorphic";
      j["conjugator"] = matrix_to_json(*r.conjugator);
      break;
    case IsoResult::Kind::NotIsomorphic:
      j["verdict"] = "NotIsomorphic";
      j["witness"] = r.witness;
      break;
    case IsoResult::Kind::Inconclusive:
      j["verdict"] = "Inconclusive";
      break;
  }
  j["hom_dimension"] = r.hom_dimension;
  return j;
}

json rcf_to_json(const RcfResult& r) {
  json j;
  json factors = json::array();
  for (const auto& f : r.factors.factors) factors.push_back(poly_to_json(f));
  j["invariant_factors"] = factors;
  j["canonical"] = matrix_to_json(r.canonical);
  j["conjugator"] = matrix_to_json(r.conjugator);
  return j;
}

json integral_conjugacy_to_json(const IntegralConjugacyResult& r) {
  json j;
  if (r.yes) {
    j["verdict"] = "Yes";
    j["integral_conjugate"] = matrix_to_json(*r.integral_conjugate);
    j["conjugator"] = matrix_to_json(*r.conjugator);
  } else {
    j["verdict"] = "No";
    j["offending_coefficient_index"] = r.offending_index;
    j["offending_coefficient"] = r.offending_coeff.get_str();
  }
  return j;
}

static json scalar_value_to_json(const ScalarValue& v) {
  json j;
  if (v.exact) {
    j["exact"] = v.rational.get_str();
  } else {
    j["approx"] = approx_to_json(v.approx);
  }
  return j;
}

json pair_classification_to_json(const PairClassification& r) {
  json j;
  j["p"] = r.prime;
  j["precision"] = r.precision;
  j["shift_a"] = r.shift_a.get_str();
  j["shift_b"] = r.shift_b.get_str();
  j["t_squared"] = r.t_squared.get_str();
  j["t"] = scalar_value_to_json(r.t);
  j["s"] = scalar_value_to_json(r.s);
  j["c"] = r.c.get_str();
  j["conjugator_exact"] = r.conjugator_exact;
  json conj = json::array();
  for (const auto& row : r.conjugator) {
    json jrow = json::array();
    for (const auto& e : row) {
      json cell;
      cell["rational_part"] = e.a.get_str();
      cell["sqrt_part"] = e.b.get_str();
      jrow.push_back(cell);
    }
    conj.push_back(jrow);
  }
  j["conjugator"] = conj;
  json canon;
  canon["a"] = {{"t", scalar_value_to_json(r.t)}};
  canon["b"] = {{"s", scalar_value_to_json(r.s)}, {"c", r.c.get_str()}};
  j["canonical_pair"] = canon;
  return j;
}

}  // namespace mumford
