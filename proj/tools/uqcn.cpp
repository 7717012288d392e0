// Command-line front end: verification suites and batch operator application.
#include "uqcn/lattice.hpp"
#include "uqcn/verify.hpp"
#include "uqcn/vertex.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace uqcn;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct Options {
  int rank = 2;
  std::string relation = "all";
  long mode_min = -2, mode_max = 2;
  std::optional<long> serre_min, serre_max;
  long max_level = 2;
  std::string which = "all";
  std::string op, format = "text", out;
  std::vector<std::string> vectors;
  std::string construction = "repaired", bracket = "drinfeld";
  bool no_timing = false, verbose = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CheckConfig make_config(const Options& o) {
  CheckConfig c;
  c.rank = o.rank;
  c.mode_min = o.mode_min;
  c.mode_max = o.mode_max;
  c.serre_min = o.serre_min;
  c.serre_max = o.serre_max;
  c.max_level = o.max_level;
  c.construction = o.construction == "literal" ? Construction::literal : Construction::repaired;
  c.norm = o.bracket == "literal" ? HeisenbergNorm::literal : HeisenbergNorm::drinfeld;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.rank > 12) throw UsageError("rank must be at most 12");
  for (const auto& s : o.vectors) c.vectors.push_back(algebra_for(c).fock().parse(s));
  return c;
}

// Per-name tallies plus every failing record.
std::string summary_text(const VerificationReport& r, bool timing) {
  std::map<std::string, std::tuple<std::size_t, std::size_t, double>> by;
  for (const auto& c : r.checks()) {
    auto& [tot, bad, ms] = by[c.name];
    ++tot;
    bad += !c.pass();
    ms += c.elapsed_ms;
  }
  std::ostringstream os;
  os << r.command() << " (rank " << r.rank() << ")\n";
  for (const auto& [name, t] : by) {
    const auto& [tot, bad, ms] = t;
    os << (bad ? "FAIL " : "PASS ") << name << "  " << tot - bad << "/" << tot << " checks";
    if (timing) os << "  [" << static_cast<long long>(ms) << " ms]";
    os << '\n';
  }
  for (const auto& c : r.checks()) {
    if (c.pass()) continue;
    os << "FAIL " << c.name << ' ' << c.params.dump() << '\n';
    for (const auto& line : c.residual) os << "    residual: " << line << '\n';
  }
  os << "total " << r.total() << ", failed " << r.failed() << '\n';
  return os.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot open " + o.out);
  f << text;
}

int report(const Options& o, VerificationReport r, bool summarize) {
  r.sort();
  const bool timing = !o.no_timing;
  if (o.format == "json") {
    emit(o, r.to_json(timing).dump(2) + "\n");
  } else {
    emit(o, summarize && !o.verbose ? summary_text(r, timing) : r.to_text(timing));
  }
  return r.ok() ? kExitPass : kExitFail;
}

int cmd_identities(const Options& o) {
  VerificationReport r("identities", 0);
  const bool all = o.which == "all";
  if (all || o.which == "1") r.merge(check_identity1());
  if (all || o.which == "2") r.merge(check_identity2());
  if (all || o.which == "3") r.merge(check_identity3());
  if (all || o.which == "ope") r.merge(check_ope_factors());
  return report(o, std::move(r), false);
}

int cmd_cocycle(const Options& o) {
  make_config(o);
  VerificationReport r("cocycle", o.rank);
  r.merge(check_quasi_cocycle_axioms(o.rank));
  return report(o, std::move(r), false);
}

int cmd_relations(const Options& o) {
  const CheckConfig c = make_config(o);
  VerificationReport r("relations", o.rank);
  r.merge(verify_relations(c, o.relation));
  return report(o, std::move(r), true);
}

int cmd_hwv(const Options& o) {
  const CheckConfig c = make_config(o);
  VerificationReport r("hwv", o.rank);
  r.merge(verify_hwv(c));
  r.merge(verify_lemma(c));
  return report(o, std::move(r), true);
}

int cmd_act(const Options& o) {
  if (o.op.empty() || o.vectors.size() != 1) throw UsageError("act needs --op and exactly one --vector");
  Options base = o;
  base.vectors.clear();
  const CheckConfig c = make_config(base);
  VertexAlgebra& va = algebra_for(c);
  auto ops = va.parse_ops(o.op);
  FockVector v = va.fock().parse(o.vectors[0]);
  FockVector r = va.apply(ops, v);
  const std::string printed = va.fock().print(r);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "act";
    j["rank"] = o.rank;
    j["op"] = o.op;
    j["vector"] = va.fock().print(v);
    j["result"] = printed;
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, printed + "\n");
  }
  return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for a level-one vertex representation of the quantum affine algebra of type C"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool ranked) {
    if (ranked) s->add_option("--rank", o.rank, "Rank n >= 2")->capture_default_str();
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    s->add_option("--out", o.out, "Write the report to this file");
    s->add_flag("--no-timing", o.no_timing, "Write elapsed_ms as 0 so reruns are byte-identical");
  };
  auto window = [&](CLI::App* s) {
    s->add_option("--mode-min", o.mode_min, "Lowest mode")->capture_default_str();
    s->add_option("--mode-max", o.mode_max, "Highest mode")->capture_default_str();
    s->add_option("--max-level", o.max_level, "Skip test vectors above this creation level")->capture_default_str();
    s->add_option("--construction", o.construction, "Vertex operator form")
        ->check(CLI::IsMember({"repaired", "literal"}))
        ->capture_default_str();
    s->add_option("--bracket", o.bracket, "Oscillator normalization")
        ->check(CLI::IsMember({"drinfeld", "literal"}))
        ->capture_default_str();
  };

  auto* ids = app.add_subcommand("identities", "Polynomial identities and OPE factors");
  ids->add_option("--which", o.which, "Which identity")->check(CLI::IsMember({"1", "2", "3", "ope", "all"}))->capture_default_str();
  common(ids, false);

  auto* coc = app.add_subcommand("cocycle", "Cocycle tables and quasi-cocycle axioms");
  common(coc, true);

  auto* rel = app.add_subcommand("relations", "Relation sweeps over the test vectors");
  common(rel, true);
  window(rel);
  rel->add_option("--relation", o.relation, "Relation to sweep")
      ->check(CLI::IsMember({"r2", "r4", "r5", "r6", "r7", "r8", "serre", "all"}))
      ->capture_default_str();
  rel->add_option("--serre-min", o.serre_min, "Lowest Serre mode (default max(mode-min, -1))");
  rel->add_option("--serre-max", o.serre_max, "Highest Serre mode (default min(mode-max, 1))");
  rel->add_option("--vector", o.vectors, "Test vector literal (repeatable; replaces the default set)");
  rel->add_flag("--verbose", o.verbose, "List every check in text output");

  auto* hwv = app.add_subcommand("hwv", "Highest weight vectors and the lowering lemma");
  common(hwv, true);
  window(hwv);
  hwv->add_flag("--verbose", o.verbose, "List every check in text output");

  auto* act = app.add_subcommand("act", "Apply an operator word to a vector");
  common(act, true);
  act->add_option("--op", o.op, "Operator word; the rightmost operator acts first")->required();
  act->add_option("--vector", o.vectors, "Vector literal")->required();
  act->add_option("--construction", o.construction, "Vertex operator form")
      ->check(CLI::IsMember({"repaired", "literal"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ids) return cmd_identities(o);
    if (*coc) return cmd_cocycle(o);
    if (*rel) return cmd_relations(o);
    if (*hwv) return cmd_hwv(o);
    if (*act) return cmd_act(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
