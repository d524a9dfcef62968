// colltrip: command-line front end.
//
// Structured output (JSON, or CSV with --format csv) goes to stdout, a short
// human summary to stderr. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error, 3 search budget exhausted.

#include <cctype>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "colltrip/checkpoint.hpp"
#include "colltrip/verify.hpp"

#ifndef COLLTRIP_VERSION
#define COLLTRIP_VERSION "dev"
#endif

namespace {

using namespace colltrip;
using nlohmann::json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string mode = std::string(to_string(kDefaultMode));
  std::string format = "json";
  unsigned workers = 1;
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> budget_seconds;

  CollinearityMode collinearity() const { return *parse_mode(mode); }

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = budget_nodes;
    if (budget_seconds) b.max_time = Seconds(*budget_seconds);
    b.workers = workers;
    return b;
  }
};

std::optional<Residue> parse_int(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  Residue v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// "[0,1,4,5,2,3,6]"
std::vector<Residue> parse_transversal_literal(const std::string& text) {
  std::string_view s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw UsageError("transversal literal must be bracketed, e.g. [0,1,2]");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Residue> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto v = parse_int(item);
    if (!v) throw UsageError("transversal literal: bad entry '" + std::string(item) + "' at position " +
                             std::to_string(out.size()));
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

// One point per line, two base-10 integers; '#' starts a comment.
PointSet read_points_file(const std::string& path, Residue n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open points file " + path);
  PointSet out;
  std::vector<int> origin;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = raw.substr(0, hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    auto where = [&] { return path + ":" + std::to_string(line_no) + ": "; };
    if (tokens.size() != 2) throw UsageError(where() + "expected two integers, got '" + line + "'");
    const auto x = parse_int(tokens[0]), y = parse_int(tokens[1]);
    if (!x || !y) throw UsageError(where() + "not an integer pair: '" + line + "'");
    if (*x < 0 || *x >= n || *y < 0 || *y >= n) {
      throw UsageError(where() + "coordinate outside [0, " + std::to_string(n) + ")");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] == GridPoint{*x, *y}) {
        throw UsageError(where() + "duplicate point (" + tokens[0] + "," + tokens[1] + "), first on line " +
                         std::to_string(origin[i]));
      }
    }
    out.push_back({*x, *y});
    origin.push_back(line_no);
  }
  return out;
}

json points_json(const PointSet& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

// Recount the witness from scratch; a report never carries an unchecked value.
bool witness_verified(const SearchOutcome& out, CollinearityMode mode) {
  const auto* t = out.transversal();
  if (!t) return !out.found;
  return (t->size() >= 3 ? count_triples(*t, mode) : 0) == out.value;
}

json witness_json(const SearchOutcome& out) {
  if (const auto* t = out.transversal()) return t->values();
  if (const auto* s = out.point_set()) return points_json(*s);
  return nullptr;
}

json outcome_json(const SearchOutcome& out) {
  json j;
  j["value"] = out.value;
  j["witness"] = witness_json(out);
  j["exact"] = out.exact;
  j["found"] = out.found;
  j["bound"] = out.exact ? "exact" : (out.objective == Objective::Minimize ? "upper" : "lower");
  j["nodes_explored"] = out.nodes_explored;
  j["nodes_pruned"] = out.nodes_pruned;
  j["elapsed_seconds"] = out.elapsed.count();
  return j;
}

class Report {
 public:
  Report(std::string command, const Common& common) : command_(std::move(command)), common_(common) {}

  json& parameters() { return parameters_; }
  json& result() { return result_; }
  void set_exact(bool exact) { exact_ = exact; }
  void set_csv(std::string header, std::vector<std::vector<std::string>> rows) {
    csv_header_ = std::move(header);
    csv_rows_ = std::move(rows);
  }

  void emit(double seconds) const {
    if (common_.format == "csv") {
      std::cout << csv();
      return;
    }
    json doc;
    doc["command"] = command_;
    doc["parameters"] = parameters_;
    doc["result"] = result_;
    doc["exact"] = exact_;
    doc["timings"] = {{"seconds", seconds}};
    doc["version"] = COLLTRIP_VERSION;
    std::cout << doc.dump(2) << '\n';
  }

  std::string csv() const {
    std::ostringstream s;
    if (!csv_header_.empty()) {
      s << csv_header_ << '\n';
      for (const auto& row : csv_rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
        s << '\n';
      }
      return s.str();
    }
    s << "key,value\n";
    for (const auto& [key, value] : result_.items()) {
      if (value.is_primitive()) s << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return s.str();
  }

 private:
  std::string command_;
  const Common& common_;
  json parameters_ = json::object();
  json result_ = json::object();
  bool exact_ = true;
  std::string csv_header_;
  std::vector<std::vector<std::string>> csv_rows_;
};

// --- count ------------------------------------------------------------------

struct CountArgs {
  std::optional<Residue> n;
  std::string transversal;
  std::string points;
};

int run_count(const CountArgs& args, const Common& common, Report& report) {
  if (args.transversal.empty() == args.points.empty()) throw UsageError("give exactly one of --transversal or --points");
  PointSet pts;
  std::optional<Transversal> t;
  Residue n = 0;
  if (!args.transversal.empty()) {
    auto sigma = parse_transversal_literal(args.transversal);
    if (args.n && *args.n != static_cast<Residue>(sigma.size())) {
      throw UsageError("--n " + std::to_string(*args.n) + " does not match transversal length " +
                       std::to_string(sigma.size()));
    }
    try {
      t.emplace(std::move(sigma));
    } catch (const Error& e) {
      throw UsageError(std::string("transversal literal: ") + e.what());
    }
    n = t->size();
    pts = t->points();
  } else {
    if (!args.n) throw UsageError("--points needs --n");
    n = *args.n;
    pts = read_points_file(args.points, n);
  }
  const Modulus m(n);
  const auto mode = common.collinearity();
  report.parameters() = {{"n", n}, {"mode", to_string(mode)}, {"points", pts.size()}};
  if (t) report.parameters()["transversal"] = t->values();

  const std::int64_t triples = pts.size() >= 3 ? count_triples(pts, m, mode) : 0;
  const std::int64_t quads = pts.size() >= 4 ? count_quadruples(pts, m, mode) : 0;
  auto& r = report.result();
  r["triples"] = triples;
  r["quadruples"] = quads;
  if (m.prime() && pts.size() >= 2) {
    const auto census = line_decomposition(pts, m);
    json lines = json::array();
    std::int64_t two_point = 0;
    for (const auto& lc : census.lines) {
      if (lc.points == 2) {
        ++two_point;
        continue;
      }
      lines.push_back({{"a", lc.line.a}, {"b", lc.line.b}, {"c", lc.line.c}, {"points", lc.points}});
    }
    r["lines_with_two_points"] = two_point;
    r["lines_with_three_or_more"] = lines;
    if (t) {
      json hist = json::object();
      for (const auto& [slope, count] : slope_histogram(*t)) hist[slope.str()] = count;
      r["slope_histogram"] = hist;
    }
  }
  std::cerr << "n=" << n << " mode=" << to_string(mode) << ": " << triples << " collinear triples, " << quads
            << " collinear quadruples\n";
  return kOk;
}

// --- psi / table --------------------------------------------------------------

struct PsiArgs {
  Residue n = 0;
  std::string checkpoint;
};

int run_psi(const PsiArgs& args, const Common& common, Report& report) {
  if (args.n < 1) throw UsageError("--n must be >= 1");
  if (args.n > kMaxSearchModulus) throw UsageError("--n must be <= " + std::to_string(kMaxSearchModulus));
  const auto mode = common.collinearity();
  PsiState state;
  bool resumed = false;
  if (!args.checkpoint.empty() && std::filesystem::exists(args.checkpoint)) {
    try {
      state = load_checkpoint_for(args.checkpoint, args.n, mode);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    resumed = true;
  } else {
    state = psi_initial_state(args.n, mode);
  }
  PsiOptions opts;
  if (!args.checkpoint.empty()) {
    opts.on_progress = [&](const PsiState& s) { save_checkpoint(args.checkpoint, s); };
  }
  const auto out = psi_resume(state, common.budget(), opts);
  if (!args.checkpoint.empty()) save_checkpoint(args.checkpoint, state);

  report.parameters() = {{"n", args.n}, {"mode", to_string(mode)}, {"workers", common.workers}};
  if (common.budget_nodes) report.parameters()["budget_nodes"] = *common.budget_nodes;
  if (common.budget_seconds) report.parameters()["budget_seconds"] = *common.budget_seconds;
  if (!args.checkpoint.empty()) {
    report.parameters()["checkpoint"] = args.checkpoint;
    report.parameters()["resumed"] = resumed;
  }
  report.result() = outcome_json(out);
  report.result()["pending_prefixes"] = state.pending.size();
  report.result()["witness_verified"] = witness_verified(out, mode);
  report.set_exact(out.exact);
  if (!witness_verified(out, mode)) {
    std::cerr << "witness recount disagrees with reported value\n";
    return kVerifyFailed;
  }
  std::cerr << "psi(" << args.n << ") " << (out.exact ? "= " : "<= ") << out.value << " ["
            << to_string(mode) << "], " << out.nodes_explored << " nodes\n";
  return out.exact ? kOk : kBudget;
}

struct TableArgs {
  Residue max_n = 0;
  std::string csv_path;
};

int run_table(const TableArgs& args, const Common& common, Report& report) {
  if (args.max_n < 1) throw UsageError("--max-n must be >= 1");
  if (args.max_n > kMaxSearchModulus) throw UsageError("--max-n must be <= " + std::to_string(kMaxSearchModulus));
  const auto mode = common.collinearity();
  json rows = json::array();
  std::vector<std::vector<std::string>> csv_rows;
  bool all_exact = true;
  for (Residue n = 1; n <= args.max_n; ++n) {
    const auto out = psi(n, mode, common.budget());
    all_exact = all_exact && out.exact;
    if (!witness_verified(out, mode)) throw std::logic_error("witness recount disagrees at n = " + std::to_string(n));
    json row = {{"n", n}, {"psi", out.value}, {"exact", out.exact}, {"witness", witness_json(out)}};
    if (n <= static_cast<Residue>(std::size(kPublishedPsi))) row["published"] = kPublishedPsi[n - 1];
    rows.push_back(row);
    csv_rows.push_back({std::to_string(n), std::to_string(out.value), out.exact ? "exact" : "upper_bound"});
    std::cerr << "  " << n << "\t" << (out.exact ? "" : "<=") << out.value << "\n";
  }
  report.parameters() = {{"max_n", args.max_n}, {"mode", to_string(mode)}, {"workers", common.workers}};
  report.result()["rows"] = rows;
  report.set_exact(all_exact);
  report.set_csv("n,psi,status", csv_rows);
  if (!args.csv_path.empty()) {
    std::ofstream out(args.csv_path);
    if (!out) throw UsageError("cannot write " + args.csv_path);
    out << report.csv();
    report.parameters()["csv"] = args.csv_path;
  }
  return all_exact ? kOk : kBudget;
}

// --- construct ----------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  Residue n = 0;
  std::optional<Residue> a, b, c, d;
};

int run_construct(const ConstructArgs& args, const Common& common, Report& report) {
  const Modulus m(std::max<Residue>(args.n, 1));
  const auto mode = common.collinearity();
  Transversal t;
  std::int64_t predicted = 0;
  std::optional<std::int64_t> predicted_quads = 0;
  try {
    if (args.n < 3 || !m.prime()) throw UsageError("n prime and > 2 required for every family");
    if (args.family == "inverse") {
      t = inverse_permutation(m);
      predicted = predicted_mobius_triples(m);
    } else if (args.family == "g") {
      t = g_permutation(m);
      predicted = predicted_mobius_triples(m);
    } else if (args.family == "cubic") {
      if (args.n % 3 != 2) throw UsageError("n = 2 mod 3 required for the cubic family (n = " + std::to_string(args.n) + ")");
      t = cubic_permutation(m);
      predicted = predicted_cubic_triples(m);
    } else if (args.family == "mobius") {
      if (!args.a || !args.b || !args.c || !args.d) throw UsageError("mobius needs --a --b --c --d");
      try {
        t = mobius_permutation(m, {*args.a, *args.b, *args.c, *args.d});
      } catch (const Error& e) {
        throw UsageError(e.kind() == ErrorKind::DegenerateParams ? "c != 0 and ad - bc != 0 mod n required"
                                                                  : e.what());
      }
      predicted = predicted_mobius_triples(m);
    } else {
      throw UsageError("unknown family '" + args.family + "'");
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto census = line_decomposition(t.points(), m);
  const auto triples = count_triples(t, mode);
  report.parameters() = {{"family", args.family}, {"n", args.n}, {"mode", to_string(mode)}};
  if (args.family == "mobius") report.parameters()["params"] = {*args.a, *args.b, *args.c, *args.d};
  auto& r = report.result();
  r["permutation"] = t.values();
  r["triples"] = triples;
  r["quadruples"] = census.quadruples;
  r["predicted_triples"] = predicted;
  r["predicted_quadruples"] = *predicted_quads;
  r["match"] = triples == predicted && census.quadruples == *predicted_quads;
  if (args.family == "cubic") {
    std::int64_t two = 0;
    for (const auto& lc : census.lines) two += lc.points == 2 ? 1 : 0;
    r["lines_with_two_points"] = two;
    r["predicted_lines_with_two_points"] = args.n - 1;
    r["match"] = r["match"].get<bool>() && two == args.n - 1;
  }
  std::cerr << args.family << "(" << args.n << ") = " << t.str() << ": " << triples << " triples (predicted "
            << predicted << ")\n";
  return kOk;
}

// --- pack ---------------------------------------------------------------------

struct PackArgs {
  std::string method;
  std::int64_t pairs = 0;
  std::int64_t lines = 0;
  std::size_t max_optima = 64;
};

json partition_json(const PackingPartition& p) { return p.parts(); }

int run_pack(const PackArgs& args, const Common&, Report& report) {
  if (args.pairs < 0 || args.lines < 0) throw UsageError("K and L must be nonnegative");
  report.parameters() = {{"method", args.method}, {"K", args.pairs}, {"L", args.lines}};
  auto& r = report.result();
  try {
    if (args.method == "exact") {
      const auto res = t_exact(args.pairs, args.lines, {.max_optima = args.max_optima});
      r["value"] = res.value;
      json optima = json::array();
      for (const auto& p : res.optima) optima.push_back(partition_json(p));
      r["optima"] = optima;
      r["truncated"] = res.truncated;
      if (args.pairs <= 3 * args.lines) {
        r["closed_form"] = t_closed_form(args.pairs, args.lines);
        r["closed_form_agrees"] = r["closed_form"].get<std::int64_t>() == res.value;
      }
      std::cerr << "T(" << args.pairs << "," << args.lines << ") = " << res.value << "\n";
    } else if (args.method == "closed") {
      r["value"] = t_closed_form(args.pairs, args.lines);
      if (args.pairs <= 2000 && args.lines <= 200) {
        r["exact"] = t_exact(args.pairs, args.lines, {.max_optima = 1}).value;
        r["exact_agrees"] = r["exact"] == r["value"];
      }
      std::cerr << "closed form T(" << args.pairs << "," << args.lines << ") = " << r["value"] << "\n";
    } else if (args.method == "greedy") {
      const auto g = greedy_packing(args.pairs, args.lines);
      r["partition"] = partition_json(g);
      r["cost"] = trip_cost(g);
      if (args.pairs <= 2000 && args.lines <= 200) r["exact"] = t_exact(args.pairs, args.lines, {.max_optima = 1}).value;
      std::cerr << "greedy " << g.str() << " costs " << trip_cost(g) << "\n";
    } else if (args.method == "jensen") {
      r["value"] = jensen_lower_bound(args.pairs, args.lines);
      r["tolerance"] = kJensenTolerance;
      if (args.pairs <= 2000 && args.lines <= 200) r["exact"] = t_exact(args.pairs, args.lines, {.max_optima = 1}).value;
      std::cerr << "Jensen bound " << r["value"] << "\n";
    } else if (args.method == "canonical") {
      const auto p = canonical_optimal_partition(args.pairs, args.lines);
      r["partition"] = partition_json(p);
      r["cost"] = trip_cost(p);
      r["closed_form"] = t_closed_form(args.pairs, args.lines);
      std::cerr << "canonical " << p.str() << " costs " << trip_cost(p) << "\n";
    } else {
      throw UsageError("unknown pack method '" + args.method + "'");
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

// --- verify -------------------------------------------------------------------

int run_verify(const std::string& level, const Common&, Report& report) {
  VerifyOptions opts;
  if (level == "quick") {
    opts.level = VerifyLevel::Quick;
  } else if (level == "full") {
    opts.level = VerifyLevel::Full;
  } else {
    throw UsageError("level must be quick or full");
  }
#ifdef COLLTRIP_SEEDED_COUNT_BUG
  opts.triple_counter = [](const Transversal& t) { return count_triples(t) + (t.size() % 2 == 1 ? 1 : 0); };
#endif
  opts.on_result = [](const CheckResult& c) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.claim << "\n";
  };
  const auto results = run_verification(opts);
  json checks = json::array();
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
  for (const auto& c : results) {
    checks.push_back({{"id", c.id},
                      {"claim", c.claim},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"passed", c.passed},
                      {"seconds", c.seconds}});
    rows.push_back({c.id, c.passed ? "pass" : "fail"});
    ok = ok && c.passed;
  }
  report.parameters() = {{"level", level}};
  report.result()["checks"] = checks;
  report.result()["all_passed"] = ok;
  report.set_csv("id,status", rows);
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collinear triples in transversals and subsets of Z_n x Z_n"};
  app.require_subcommand(1);
  Common common;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", common.mode, "line semantics for composite n")
        ->check(CLI::IsMember({"any", "unit"}))
        ->capture_default_str();
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "search threads")->check(CLI::PositiveNumber);
    sub->add_option("--budget-nodes", common.budget_nodes, "stop after this many search nodes");
    sub->add_option("--budget-seconds", common.budget_seconds, "stop after this many seconds");
  };

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "count collinear triples and quadruples");
  count->add_option("--n", count_args.n, "modulus");
  count->add_option("--transversal", count_args.transversal, "permutation literal, e.g. [0,1,4,5,2,3,6]");
  count->add_option("--points", count_args.points, "points file: one 'x y' per line, '#' comments");
  add_mode(count);

  PsiArgs psi_args;
  auto* psi_cmd = app.add_subcommand("psi", "least number of collinear triples over transversals of Z_n");
  psi_cmd->add_option("--n", psi_args.n, "modulus")->required();
  psi_cmd->add_option("--checkpoint", psi_args.checkpoint, "resume from / save to this file");
  add_mode(psi_cmd);
  add_budget(psi_cmd);

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "psi(n) for n = 1..max-n");
  table->add_option("--max-n", table_args.max_n, "largest modulus")->required();
  table->add_option("--csv", table_args.csv_path, "also write the table as CSV here");
  add_mode(table);
  add_budget(table);

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "build a permutation family and check its counts");
  construct->add_option("family", construct_args.family, "inverse | cubic | mobius | g")
      ->required()
      ->check(CLI::IsMember({"inverse", "cubic", "mobius", "g"}));
  construct->add_option("--n", construct_args.n, "prime modulus")->required();
  construct->add_option("--a", construct_args.a);
  construct->add_option("--b", construct_args.b);
  construct->add_option("--c", construct_args.c);
  construct->add_option("--d", construct_args.d);
  add_mode(construct);

  PackArgs pack_args;
  auto* pack = app.add_subcommand("pack", "pair packing T(K,L)");
  pack->add_option("method", pack_args.method, "exact | closed | greedy | jensen | canonical")
      ->required()
      ->check(CLI::IsMember({"exact", "closed", "greedy", "jensen", "canonical"}));
  pack->add_option("K", pack_args.pairs, "pairs")->required();
  pack->add_option("L", pack_args.lines, "lines")->required();
  pack->add_option("--max-optima", pack_args.max_optima, "cap on enumerated optima")->capture_default_str();
  add_mode(pack);

  std::string verify_level = "quick";
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("level", verify_level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  add_mode(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto* chosen = app.get_subcommands().front();
  Report report(chosen->get_name(), common);
  int code = kOk;
  try {
    if (chosen == count) code = run_count(count_args, common, report);
    if (chosen == psi_cmd) code = run_psi(psi_args, common, report);
    if (chosen == table) code = run_table(table_args, common, report);
    if (chosen == construct) code = run_construct(construct_args, common, report);
    if (chosen == pack) code = run_pack(pack_args, common, report);
    if (chosen == verify) code = run_verify(verify_level, common, report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  report.emit(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return code;
}
