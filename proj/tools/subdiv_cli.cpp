// Command-line front-end: find, check, verify, construct, stats.
//
// Exit codes: 0 found/valid/all-contain, 1 not found/invalid/counterexample,
// 2 budget exhausted/inconclusive, 3 parse error, 4 usage or parameter error,
// 5 size limit, 6 precondition failure, 7 any other library error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "subdiv/constructions.hpp"
#include "subdiv/json_io.hpp"
#include "subdiv/mader.hpp"
#include "subdiv/menger.hpp"

using namespace subdiv;

namespace {

enum Exit { kOk = 0, kNo = 1, kBudget = 2, kParse = 3, kUsage = 4, kTooLarge = 5, kPrecondition = 6, kOther = 7 };

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return kParse;
    case ErrorKind::BadParams:
    case ErrorKind::DegeneratePattern: return kUsage;
    case ErrorKind::TooLarge: return kTooLarge;
    case ErrorKind::PreconditionViolated:
    case ErrorKind::PropertyMismatch: return kPrecondition;
    default: return kOther;
  }
}

struct Config {
  std::string in, pattern, cert, out, format = "json", mode, log;
  std::uint64_t budget = 10'000'000, seed = 1, count = 1000;
  int n_max = 5, k = 0, threads = 1;
  bool no_fallback = false;
};

// A pattern argument naming an existing file is read as an edge list.
Digraph load_pattern(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return read_edge_list_file(arg);
  return pattern_graph(parse_pattern_spec(arg));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << text;
}

std::string graph_as(const Digraph& d, const std::string& format) {
  if (format == "dot") return to_dot(d);
  if (format == "json") return nlohmann::json{{"n", d.n()}, {"arcs", d.arcs()}}.dump(2) + "\n";
  std::ostringstream out;
  write_edge_list(out, d);
  return out.str();
}

int cmd_find(const Config& c) {
  Digraph d = read_edge_list_file(c.in);
  PatternSpec spec = parse_pattern_spec(c.pattern);
  SearchBudget budget{c.budget, 0};
  FinderResult r = find_pattern(d, spec, budget, {!c.no_fallback}, c.seed);
  std::cout << spec.text() << ": " << finder_status_name(r.status);
  if (!r.route.empty()) std::cout << " via " << r.route;
  std::cout << " (" << r.nodes << " search nodes)\n";
  if (r.stuck && r.status != FinderStatus::Found) std::cout << "stuck: " << stuck_to_json(*r.stuck) << '\n';
  if (!c.log.empty()) {
    std::ostringstream lines;
    for (const auto& l : r.log) lines << l << '\n';
    write_text(c.log, lines.str());
  }
  if (r.certificate && !c.out.empty()) {
    if (c.format == "dot") {
      std::vector<Arc> arcs;
      for (const auto& p : r.certificate->paths)
        for (std::size_t i = 0; i + 1 < p.path.vertices.size(); ++i) arcs.emplace_back(p.path.vertices[i], p.path.vertices[i + 1]);
      write_text(c.out, to_dot(Digraph(d.n(), arcs), "certificate"));
    } else {
      write_json_file(c.out, certificate_to_json(*r.certificate));
    }
  }
  switch (r.status) {
    case FinderStatus::Found: return kOk;
    case FinderStatus::NotFound: return kNo;
    case FinderStatus::BudgetExceeded: return kBudget;
  }
  return kOther;
}

int cmd_check(const Config& c) {
  Digraph d = read_edge_list_file(c.in);
  Digraph pattern = load_pattern(c.pattern);
  SubdivisionCertificate cert = certificate_from_json(read_json_file(c.cert));
  ValidationReport rep = validate_certificate(d, pattern, cert);
  std::cout << (rep.ok ? "valid" : "invalid: " + rep.message) << '\n';
  return rep.ok ? kOk : kNo;
}

int cmd_verify(const Config& c) {
  PatternSpec spec = parse_pattern_spec(c.pattern);
  MaderMode mode;
  if (c.mode == "sampled") {
    mode.kind = MaderMode::Kind::Sampled;
    mode.count = c.count;
    mode.seed = c.seed;
  } else if (!c.mode.empty() && c.mode != "exhaustive") {
    throw Error(ErrorKind::BadParams, "verify mode must be 'exhaustive' or 'sampled'");
  }
  mode.threads = c.threads;
  MaderReport rep = verify_upper(spec, c.k, c.n_max, mode, c.budget);
  std::string ce_path;
  if (rep.counterexample && !c.out.empty()) {
    ce_path = c.out + ".counterexample.edges";
    write_text(ce_path, graph_as(*rep.counterexample, "edges"));
  }
  std::cout << spec.text() << " at K=" << c.k << ", n<=" << c.n_max << ": " << mader_outcome_name(rep.outcome) << " ("
            << rep.hosts_checked << " hosts)\n";
  if (!c.out.empty()) {
    if (c.format == "csv")
      write_text(c.out, report_csv_header() + "\n" + report_csv_row(rep, ce_path) + "\n");
    else
      write_json_file(c.out, report_to_json(rep));
  }
  switch (rep.outcome) {
    case MaderOutcome::AllContain: return kOk;
    case MaderOutcome::Counterexample: return kNo;
    case MaderOutcome::Inconclusive: return kBudget;
  }
  return kOther;
}

int cmd_construct(const Config& c) {
  Digraph g;
  if (c.mode == "no-k4" || c.mode == "no-s4") {
    BuildingBlock block = c.in.empty() ? (c.mode == "no-k4" ? shipped_no_even_block() : shipped_no_s3_block())
                                       : read_block_file(c.in);
    g = c.mode == "no-k4" ? join_no_k4(block).graph : join_no_s4(block).graph;
  } else if (c.mode == "lower-witness") {
    g = lower_witness(load_pattern(c.pattern));
  } else if (c.mode.empty() || c.mode == "pattern") {
    if (c.pattern.empty()) throw Error(ErrorKind::BadParams, "construct needs --pattern or --mode");
    g = pattern_graph(parse_pattern_spec(c.pattern));
  } else {
    throw Error(ErrorKind::BadParams, "construct mode must be no-k4, no-s4, lower-witness or pattern");
  }
  const std::string text = graph_as(g, c.format);
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  std::cerr << "constructed " << g.n() << " vertices, " << g.arc_count() << " arcs\n";
  return kOk;
}

int cmd_stats(const Config& c) {
  Digraph d = read_edge_list_file(c.in);
  nlohmann::json j;
  j["n"] = d.n();
  j["m"] = d.arc_count();
  if (d.n() > 0) {
    j["min_out"] = min_out_degree(d);
    j["max_out"] = max_out_degree(d);
    j["min_in"] = min_in_degree(d);
    j["max_in"] = max_in_degree(d);
  }
  auto girth = directed_girth(d);
  j["girth"] = girth ? nlohmann::json(*girth) : nlohmann::json("inf");
  j["arc_connectivity"] = d.n() > 0 ? strong_arc_connectivity(d) : 0;
  j["strong_components"] = strong_components(d).size();
  std::cout << "n " << d.n() << ", m " << d.arc_count();
  if (d.n() > 0) std::cout << ", min out-degree " << j["min_out"];
  std::cout << ", girth " << (girth ? std::to_string(*girth) : "inf") << ", arc-connectivity " << j["arc_connectivity"]
            << ", strong components " << j["strong_components"] << '\n';
  if (!c.out.empty()) write_json_file(c.out, j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subdivision finders for oriented cycles in digraphs of large out-degree"};
  app.require_subcommand(1);
  Config c;

  auto common_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "Search-node budget")->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  };

  auto* find = app.add_subcommand("find", "Search a host for a subdivision of a pattern");
  find->add_option("--in", c.in, "Host edge-list file")->required();
  find->add_option("--pattern", c.pattern, "Pattern spec, e.g. cab:2,3 or twoblock:3,2")->required();
  find->add_option("--out", c.out, "Certificate output file");
  find->add_option("--format", c.format, "Certificate format")->check(CLI::IsMember({"json", "dot"}));
  find->add_option("--log", c.log, "Run log output (JSON lines)");
  find->add_flag("--no-fallback", c.no_fallback, "Report the constructive outcome without exact search");
  common_budget(find);

  auto* check = app.add_subcommand("check", "Validate a certificate");
  check->add_option("--in", c.in, "Host edge-list file")->required();
  check->add_option("--pattern", c.pattern, "Pattern spec or pattern edge-list file")->required();
  check->add_option("--cert", c.cert, "Certificate JSON")->required();

  auto* verify = app.add_subcommand("verify", "Check an out-degree upper bound on small hosts");
  verify->add_option("--pattern", c.pattern, "Pattern spec")->required();
  verify->add_option("--k", c.k, "Minimum out-degree of the hosts")->required();
  verify->add_option("--n-max", c.n_max, "Largest host order")->capture_default_str();
  verify->add_option("--mode", c.mode, "exhaustive or sampled");
  verify->add_option("--count", c.count, "Sampled hosts")->capture_default_str();
  verify->add_option("--threads", c.threads, "Enumeration shards")->capture_default_str();
  verify->add_option("--out", c.out, "Report file");
  verify->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  common_budget(verify);

  auto* construct = app.add_subcommand("construct", "Emit a pattern, a lower-bound witness or a block join");
  construct->add_option("--mode", c.mode, "pattern, lower-witness, no-k4 or no-s4");
  construct->add_option("--pattern", c.pattern, "Pattern spec");
  construct->add_option("--in", c.in, "Building-block file with a property header");
  construct->add_option("--out", c.out, "Output file (stdout if omitted)");
  construct->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"edges", "json", "dot"}));

  auto* stats = app.add_subcommand("stats", "Degrees, girth, arc-connectivity and strong components");
  stats->add_option("--in", c.in, "Host edge-list file")->required();
  stats->add_option("--out", c.out, "JSON summary file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (construct->parsed() && c.format == "json" && construct->count("--format") == 0) c.format = "edges";

  try {
    if (find->parsed()) return cmd_find(c);
    if (check->parsed()) return cmd_check(c);
    if (verify->parsed()) return cmd_verify(c);
    if (construct->parsed()) return cmd_construct(c);
    if (stats->parsed()) return cmd_stats(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kUsage;
}
