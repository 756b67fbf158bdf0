// Command-line front end: parse inputs, run pipelines, emit JSON reports with
// exact exponents.  Exit codes: 0 success (negative verdicts are data),
// 2 input/parse error, 3 guard exceeded, 4 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mumford/io.hpp"

using namespace mumford;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
  }
}

json base_report(const std::string& command) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computable side of p-adic Schottky groups, reduction graphs "
               "and their representations"};
  app.require_subcommand(1);

  std::string graph_path, rep_path, rep2_path, matrix_path, input_path,
      out_path;
  std::vector<std::string> words;
  long prime = 5, precision = 8, level = 1, levels = 2, eps_exp = 3;
  long guard = 1000000;
  int depth = 8, m_cycle = 3, max_period = 4, power_check = 4, basepoint = 0;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the JSON report to a file");
  };

  auto* phi = app.add_subcommand("phi-check", "classify phi-boundedness");
  phi->add_option("--graph", graph_path)->required();
  phi->add_option("--rep", rep_path)->required();
  phi->add_option("--depth", depth, "scan depth");
  phi->add_option("--eps-exp", eps_exp, "level set at epsilon = p^-eps_exp");
  phi->add_option("--max-period", max_period);
  phi->add_option("--power-check", power_check);
  add_out(phi);

  auto* dpl = app.add_subcommand("dplus", "d_plus reports for a word list");
  dpl->add_option("--graph", graph_path)->required();
  dpl->add_option("--word", words, "word literal, e.g. \"g0 g1^-1\" (repeatable)")
      ->required();
  add_out(dpl);

  auto* ori = app.add_subcommand("orient", "admissible orientation");
  ori->add_option("--graph", graph_path)->required();
  ori->add_option("--depth", depth, "verification depth");
  add_out(ori);

  auto* tate = app.add_subcommand("tate-graph", "Tate cycle reduction graph");
  tate->add_option("--prime", prime)->required();
  tate->add_option("--m", m_cycle, "number of edges")->required();
  add_out(tate);

  auto* sch = app.add_subcommand("schottky-check", "ball ping-pong test");
  sch->add_option("--input", input_path, "generators + ball pairs")->required();
  add_out(sch);

  auto* rcfc = app.add_subcommand("rcf", "rational canonical form");
  rcfc->add_option("--matrix", matrix_path)->required();
  add_out(rcfc);

  auto* intc = app.add_subcommand("integral-test", "integral conjugacy");
  intc->add_option("--matrix", matrix_path)->required();
  add_out(intc);

  auto* pairc = app.add_subcommand("pair-classify", "generic 2x2 pair");
  pairc->add_option("--input", input_path, "file with \"a\" and \"b\"")
      ->required();
  pairc->add_option("--precision", precision);
  add_out(pairc);

  auto* cov = app.add_subcommand("cover", "finite quotient + Schreier kernel");
  cov->add_option("--rep", rep_path)->required();
  cov->add_option("--level", level, "reduce mod p^level");
  cov->add_option("--graph", graph_path, "optional graph for the voltage cover");
  cov->add_option("--guard", guard, "group order guard");
  add_out(cov);

  auto* dwc = app.add_subcommand("dw-compare", "finite-level transport");
  dwc->add_option("--rep", rep_path)->required();
  dwc->add_option("--level", level);
  dwc->add_option("--basepoint", basepoint);
  dwc->add_option("--guard", guard);
  add_out(dwc);

  auto* tow = app.add_subcommand("tower", "mod p^k reduction tower");
  tow->add_option("--rep", rep_path)->required();
  tow->add_option("--levels", levels, "n_max");
  tow->add_option("--guard", guard);
  add_out(tow);

  auto* tns = app.add_subcommand("tensor", "tensor product");
  tns->add_option("--rep1", rep_path)->required();
  tns->add_option("--rep2", rep2_path)->required();
  add_out(tns);

  auto* dua = app.add_subcommand("dual", "dual representation");
  dua->add_option("--rep", rep_path)->required();
  add_out(dua);

  auto* dsm = app.add_subcommand("dsum", "direct sum");
  dsm->add_option("--rep1", rep_path)->required();
  dsm->add_option("--rep2", rep2_path)->required();
  add_out(dsm);

  auto* iso = app.add_subcommand("iso-check", "conjugacy of representations");
  iso->add_option("--rep1", rep_path)->required();
  iso->add_option("--rep2", rep2_path)->required();
  add_out(iso);

  CLI11_PARSE(app, argc, argv);

  try {
    if (phi->parsed()) {
      ReductionGraph g = graph_from_json(load_json(graph_path));
      Representation rho = rep_from_json(load_json(rep_path));
      if (rho.prime != g.prime())
        throw ParseError("representation and graph primes differ");
      FreeBasis basis = free_basis(g);
      PhiBudget budget{depth, eps_exp, max_period, power_check};
      json r = base_report("phi-check");
      r.update(verdict_to_json(classify_phi(rho, g, basis, budget)));
      emit(r, out_path);
    } else if (dpl->parsed()) {
      ReductionGraph g = graph_from_json(load_json(graph_path));
      FreeBasis basis = free_basis(g);
      FreeWord w = parse_word_literal(
          words, static_cast<int>(basis.generator_paths.size()));
      json r = base_report("dplus");
      r["word"] = w.str();
      r.update(dplus_to_json(d_plus(g, basis, w), g.prime()));
      emit(r, out_path);
    } else if (ori->parsed()) {
      ReductionGraph g = graph_from_json(load_json(graph_path));
      ReductionGraph oriented = orient_admissible(g, depth);
      json r = base_report("orient");
      r["graph"] = graph_to_json(oriented);
      json flipped = json::array();
      for (size_t i = 0; i < g.edges().size(); ++i)
        if (g.edges()[i].from != oriented.edges()[i].from)
          flipped.push_back(g.edges()[i].id);
      r["flipped_edges"] = flipped;
      r["verified_depth"] = depth;
      emit(r, out_path);
    } else if (tate->parsed()) {
      json r = base_report("tate-graph");
      r["graph"] = graph_to_json(tate_cycle_graph(prime, m_cycle));
      emit(r, out_path);
    } else if (sch->parsed()) {
      json in = load_json(input_path);
      long p = in.at("p").get<long>();
      std::vector<MoebiusElement> gens;
      for (const auto& m : in.at("generators"))
        gens.emplace_back(matrix_from_json(p, m));
      std::vector<std::pair<PadicBall, PadicBall>> domains;
      for (const auto& b : in.at("balls"))
        domains.emplace_back(ball_from_json(p, b.at("minus")),
                             ball_from_json(p, b.at("plus")));
      SchottkyVerdict v = schottky_ball_check(gens, domains);
      json r = base_report("schottky-check");
      r["verdict"] = v.good ? "GoodPosition" : "Violation";
      if (!v.good) r["detail"] = v.detail;
      emit(r, out_path);
    } else if (rcfc->parsed()) {
      json in = load_json(matrix_path);
      PadicMatrix m = matrix_from_json(in.at("p").get<long>(), in.at("matrix"));
      json r = base_report("rcf");
      r.update(rcf_to_json(rcf(m)));
      emit(r, out_path);
    } else if (intc->parsed()) {
      json in = load_json(matrix_path);
      PadicMatrix m = matrix_from_json(in.at("p").get<long>(), in.at("matrix"));
      json r = base_report("integral-test");
      r.update(integral_conjugacy_to_json(integral_conjugacy(m)));
      emit(r, out_path);
    } else if (pairc->parsed()) {
      json in = load_json(input_path);
      long p = in.at("p").get<long>();
      PadicMatrix a = matrix_from_json(p, in.at("a"));
      PadicMatrix b = matrix_from_json(p, in.at("b"));
      json r = base_report("pair-classify");
      r.update(pair_classification_to_json(pair_classify(a, b, precision)));
      emit(r, out_path);
    } else if (cov->parsed()) {
      Representation rho = rep_from_json(load_json(rep_path));
      FiniteQuotient G = image_group(rho, level, guard);
      SchreierData data = schreier_basis(G);
      json r = base_report("cover");
      r["group_order"] = G.order();
      r["level"] = level;
      r["kernel_rank"] = static_cast<long>(data.kernel_basis.size());
      r["genus"] = cover_genus(rho.generators(), G.order());
      json basis_words = json::array();
      for (size_t i = 0; i < data.kernel_basis.size() && i < 64; ++i)
        basis_words.push_back(data.kernel_basis[i].str());
      r["kernel_basis"] = basis_words;
      RestrictCheck rc = restrict_check(rho, data, level);
      r["kernel_trivial_mod_pn"] = rc.trivial;
      if (graph_path.size()) {
        ReductionGraph g = graph_from_json(load_json(graph_path));
        if (g.prime() != rho.prime)
          throw ParseError("graph and representation primes differ");
        FreeBasis basis = free_basis(g);
        if (static_cast<int>(basis.generator_paths.size()) != rho.generators())
          throw ParseError("graph Betti number must match generator count");
        std::vector<int> voltages(G.generator_elements().begin(),
                                  G.generator_elements().end());
        ReductionGraph cover = voltage_cover(g, basis, G.view(), voltages);
        r["cover_betti"] = cover.betti();
        r["cover_vertices"] = static_cast<long>(cover.vertices().size());
        r["cover_edges"] = static_cast<long>(cover.edges().size());
      }
      emit(r, out_path);
    } else if (dwc->parsed()) {
      Representation rho = rep_from_json(load_json(rep_path));
      json r = base_report("dw-compare");
      r.update(transport_to_json(dw_transport(rho, level, basepoint, guard)));
      emit(r, out_path);
    } else if (tow->parsed()) {
      Representation rho = rep_from_json(load_json(rep_path));
      json r = base_report("tower");
      r.update(tower_to_json(reduction_tower(rho, levels, guard)));
      emit(r, out_path);
    } else if (tns->parsed()) {
      Representation a = rep_from_json(load_json(rep_path));
      Representation b = rep_from_json(load_json(rep2_path));
      json r = base_report("tensor");
      r["representation"] = rep_to_json(tensor_rep(a, b));
      emit(r, out_path);
    } else if (dua->parsed()) {
      Representation a = rep_from_json(load_json(rep_path));
      json r = base_report("dual");
      r["representation"] = rep_to_json(dual_rep(a));
      emit(r, out_path);
    } else if (dsm->parsed()) {
      Representation a = rep_from_json(load_json(rep_path));
      Representation b = rep_from_json(load_json(rep2_path));
      json r = base_report("dsum");
      r["representation"] = rep_to_json(direct_sum_rep(a, b));
      emit(r, out_path);
    } else if (iso->parsed()) {
      Representation a = rep_from_json(load_json(rep_path));
      Representation b = rep_from_json(load_json(rep2_path));
      json r = base_report("iso-check");
      r.update(iso_to_json(iso_check(a, b)));
      emit(r, out_path);
    }
  } catch (const GuardError& e) {
    json err;
    err["error"] = e.code;
    err["detail"] = e.what();
    err["required"] = e.required;
    std::cerr << err.dump(2) << "\n";
    return 3;
  } catch (const ParseError& e) {
    json err;
    err["error"] = "Parse";
    err["detail"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const DomainError& e) {
    json err;
    err["error"] = e.code;
    err["detail"] = e.what();
    std::cerr << err.dump(2) << "\n";
    bool internal = e.code == "Internal" || e.code == "ProofBoundViolated";
    return internal ? 4 : 2;
  } catch (const std::exception& e) {
    json err;
    err["error"] = "Internal";
    err["detail"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 4;
  }
  return 0;
}
