#include <doctest.h>

#include "mumford/io.hpp"

using namespace mumford;

TEST_CASE("scalar literal grammar") {
  long p = 5;
  CHECK(parse_scalar_literal(p, "3/4").value() == mpq_class(3, 4));
  CHECK(parse_scalar_literal(p, "p^2*7").value() == 175);
  CHECK(parse_scalar_literal(p, "-1/p").value() == mpq_class(-1, 5));
  CHECK(parse_scalar_literal(p, "p").value() == 5);
  CHECK(parse_scalar_literal(p, "-p^-1").value() == mpq_class(-1, 5));
  CHECK(parse_scalar_literal(p, " 2 * 3/4 ").value() == mpq_class(3, 2));
  CHECK(parse_scalar_literal(p, "0").value() == 0);
  CHECK(parse_scalar_literal(7, "p^2*7").value() == 343);

  CHECK_THROWS_AS(parse_scalar_literal(p, "x"), ParseError);
  CHECK_THROWS_AS(parse_scalar_literal(p, "3/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar_literal(p, "3 4"), ParseError);
  CHECK_THROWS_AS(parse_scalar_literal(p, ""), ParseError);

  // render/parse round trip
  PadicScalar s(p, mpq_class(-22, 7));
  CHECK(parse_scalar_literal(p, render_scalar(s)) == s);
}

TEST_CASE("word literals") {
  FreeWord w = parse_word_literal("g0 g1^-1 g0^2", 2);
  CHECK(w.str() == "g0 g1^-1 g0^2");
  CHECK(parse_word_literal("1", 2).identity());
  CHECK(parse_word_literal("g0 g0^-1", 1).identity());
  CHECK_THROWS_AS(parse_word_literal("g7", 2), ParseError);
  CHECK_THROWS_AS(parse_word_literal("h0", 2), ParseError);
}

TEST_CASE("matrix json round trip") {
  long p = 3;
  json rows = json::parse(R"([["1/3", "p"], [2, "-p^2"]])");
  PadicMatrix m = matrix_from_json(p, rows);
  CHECK(m.at(0, 0) == mpq_class(1, 3));
  CHECK(m.at(0, 1) == 3);
  CHECK(m.at(1, 1) == -9);
  PadicMatrix again = matrix_from_json(p, matrix_to_json(m));
  CHECK(again == m);
}

TEST_CASE("graph json round trip") {
  json j = json::parse(R"({
    "p": 5,
    "vertices": ["v0", "v1", "v2"],
    "edges": [
      {"id": "e0", "from": "v0", "to": "v1", "width_exp": 1},
      {"id": "e1", "from": "v1", "to": "v2", "width_exp": 2},
      {"id": "e2", "from": "v2", "to": "v0", "width_exp": 1}
    ],
    "base": "v0"
  })");
  ReductionGraph g = graph_from_json(j);
  CHECK(g.betti() == 1);
  CHECK(g.edges()[1].width_exp == 2);
  ReductionGraph g2 = graph_from_json(graph_to_json(g));
  CHECK(graph_to_json(g2) == graph_to_json(g));

  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"p": 5})")), ParseError);
}

TEST_CASE("representation json round trip") {
  json j = json::parse(R"({
    "p": 5,
    "rank": 2,
    "generators": [[["2", "0"], ["0", "1/2"]], [["0", "1"], ["-1", "0"]]]
  })");
  Representation rho = rep_from_json(j);
  CHECK(rho.rank == 2);
  CHECK(rho.generators() == 2);
  Representation rho2 = rep_from_json(rep_to_json(rho));
  CHECK(rep_to_json(rho2) == rep_to_json(rho));
  for (int i = 0; i < 2; ++i) CHECK(rho2.images[i] == rho.images[i]);

  // singular generator rejected at parse time
  json bad = json::parse(
      R"({"p": 5, "rank": 1, "generators": [[["0"]]]})");
  CHECK_THROWS_AS(rep_from_json(bad), ParseError);
}

TEST_CASE("ball json") {
  json j = json::parse(
      R"({"center": "-1/p", "radius_exp": -1, "complement": true})");
  PadicBall b = ball_from_json(5, j);
  CHECK(b.center.value() == mpq_class(-1, 5));
  CHECK(b.complement);
  CHECK(b.closed);
  PadicBall b2 = ball_from_json(5, ball_to_json(b));
  CHECK(ball_to_json(b2) == ball_to_json(b));
}

TEST_CASE("reports are deterministic") {
  ReductionGraph g = tate_cycle_graph(5, 3);
  json a = graph_to_json(g);
  json b = graph_to_json(tate_cycle_graph(5, 3));
  CHECK(a.dump() == b.dump());

  ScanResult r;
  r.max_word = FreeWord::generator(0);
  r.max_exp = 2;
  CHECK(scan_to_json(r).dump() == scan_to_json(r).dump());
}
