#include "flashcode/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flashcode/analysis.hpp"
#include "flashcode/constant_rate.hpp"
#include "flashcode/state_json.hpp"

namespace flashcode::cli {

namespace {

struct Config {
  int n = 0;
  int k = 0;
  int q = 0;
  std::string scheme = "indexless";
  std::string policy = "uniform-random";
  std::uint64_t seed = 0;
  int runs = 1;
  std::string out;
  std::string format = "csv";
  std::size_t max_states = OracleOptions{}.max_states;
  bool serial = false;
};

void add_params(CLI::App& cmd, Config& cfg, bool with_scheme) {
  cmd.add_option("--n", cfg.n, "Number of cells")->required();
  cmd.add_option("--k", cfg.k, "Number of information bits")->required();
  cmd.add_option("--q", cfg.q, "Levels per cell")->required();
  if (with_scheme) {
    cmd.add_option("--scheme", cfg.scheme, "indexless | multistage-baseq | multistage-stacked | constant-rate")
        ->capture_default_str();
  }
  cmd.add_option("--out", cfg.out, "Write output to this file instead of stdout");
  cmd.add_option("--format", cfg.format, "csv | json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
}

ordered_json report_json(const DeficiencyReport& r) {
  ordered_json row;
  row["scheme"] = scheme_name(r.scheme);
  row["n"] = r.n;
  row["k"] = r.k;
  row["q"] = r.q;
  row["policy"] = r.policy;
  row["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json();
  row["writes"] = r.writes;
  row["deficiency"] = r.deficiency;
  row["bound"] = r.bound;
  return row;
}

void emit_reports(const std::vector<DeficiencyReport>& rows, const Config& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    auto doc = ordered_json::array();
    for (const auto& r : rows) doc.push_back(report_json(r));
    out << doc.dump() << '\n';
    return;
  }
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

std::string format_double(double value) {
  std::ostringstream s;
  s.precision(10);
  s << value;
  return s.str();
}

int run_bounds(const Config& cfg, std::ostream& out) {
  // Validates n, k, q independently of any layout.
  CodeParams::make(cfg.n, cfg.k, cfg.q, Scheme::indexless);

  const auto n = cfg.n;
  const auto k = cfg.k;
  const auto q = cfg.q;
  const auto ms_k = effective_k(k, q, Scheme::multistage_baseq);

  std::optional<std::int64_t> cr_exact;
  try {
    cr_exact = constant_rate::cr_capacity(CodeParams::make(n, k, q, Scheme::constant_rate));
  } catch (const Error&) {
  }
  std::optional<double> cr_ideal;
  if (k >= 2) cr_ideal = constant_rate::cr_capacity_ideal(n, k, q);

  const auto jbb = jbb_lower_bound(n, k, q);
  struct Row {
    std::string name;
    std::string text;
    ordered_json value;
  };
  auto int_row = [](std::string name, std::int64_t v) { return Row{std::move(name), std::to_string(v), v}; };
  std::vector<Row> rows;
  rows.push_back({"jbb", jbb.str(), jbb.den == 1 ? ordered_json(jbb.num) : ordered_json(jbb.str())});
  rows.push_back(int_row("indexless", bound_indexless(effective_k(k, q, Scheme::indexless), q)));
  rows.push_back(int_row("multistage-baseq", bound_multistage_baseq(ms_k, q)));
  rows.push_back(int_row("multistage-stacked", bound_multistage_stacked(ms_k, q, true)));
  rows.push_back(int_row("multistage-stacked-no-tally", bound_multistage_stacked(ms_k, q, false)));
  rows.push_back(cr_ideal ? Row{"constant-rate-ideal", format_double(*cr_ideal), *cr_ideal}
                          : Row{"constant-rate-ideal", "n/a", nullptr});
  rows.push_back(cr_exact ? int_row("constant-rate", *cr_exact) : Row{"constant-rate", "n/a", nullptr});

  if (cfg.format == "json") {
    ordered_json doc;
    for (const auto& r : rows) doc[r.name] = r.value;
    out << doc.dump() << '\n';
  } else {
    out << "bound,value\n";
    for (const auto& r : rows) out << r.name << ',' << r.text << '\n';
  }
  return ok;
}

int run_oracle(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto params = CodeParams::make(cfg.n, cfg.k, cfg.q, parse_scheme(cfg.scheme));
  const auto codec = make_codec(params);
  const auto result = oracle_min_writes(*codec, OracleOptions{cfg.max_states});
  if (!result.complete) {
    err << "error: oracle budget of " << cfg.max_states << " states exceeded";
    if (result.writes >= 0) err << "; shortest erasing sequence found has " << result.writes << " writes";
    err << '\n';
    return budget_exceeded;
  }
  const auto report = make_report(params, "exhaustive", std::nullopt, result.writes);
  emit_reports({report}, cfg, out);
  return report.within_bound() ? ok : bound_violation;
}

int run_simulate(const Config& cfg, std::ostream& out) {
  const auto params = CodeParams::make(cfg.n, cfg.k, cfg.q, parse_scheme(cfg.scheme));
  const auto policy = parse_policy(cfg.policy);
  const auto rows =
      cfg.serial ? simulate_serial(params, policy, cfg.seed, cfg.runs) : simulate(params, policy, cfg.seed, cfg.runs);
  emit_reports(rows, cfg, out);
  const bool all_within = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.within_bound(); });
  return all_within ? ok : bound_violation;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int run_trace(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto params = CodeParams::make(cfg.n, cfg.k, cfg.q, parse_scheme(cfg.scheme));
  const auto codec = make_codec(params);

  auto state = codec->init();
  auto record = [&](std::int64_t write, std::optional<int> bit) {
    auto doc = state_to_json(params, state);
    doc["write"] = write;
    doc["bit"] = bit ? ordered_json(*bit) : ordered_json();
    doc["stage"] = codec->stage(state);
    doc["bits"] = codec->decode(state).bits;
    out << doc.dump() << '\n';
  };
  record(0, std::nullopt);

  std::string line;
  std::int64_t line_no = 0;
  std::int64_t writes = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    int bit = -1;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), bit);
    if (ec != std::errc() || end != text.data() + text.size()) {
      err << "error: line " << line_no << ": expected a bit index, got '" << text << "'\n";
      return invalid_params;
    }
    if (bit < 0 || bit >= params.k) {
      err << "error: line " << line_no << ": bit index " << bit << " out of range [0, " << params.k << ")\n";
      return invalid_params;
    }
    ++writes;
    auto next = codec->encode(bit, state);
    if (next.erased()) {
      ordered_json doc;
      doc["erase"] = true;
      doc["write"] = writes;
      doc["bit"] = bit;
      out << doc.dump() << '\n';
      return ok;
    }
    state = std::move(next).take();
    record(writes, bit);
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flash codes: bounds, exhaustive oracle, simulation and traces", "flashcode"};
  app.require_subcommand(1);

  Config cfg;
  auto* bounds = app.add_subcommand("bounds", "Print closed-form deficiency bounds and capacities");
  add_params(*bounds, cfg, false);

  auto* oracle = app.add_subcommand("oracle", "Exact guaranteed writes by exhaustive adversarial search");
  add_params(*oracle, cfg, true);
  oracle->add_option("--max-states", cfg.max_states, "Memo table cap")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Drive the codec to erasure under a write policy");
  add_params(*sim, cfg, true);
  sim->add_option("--policy", cfg.policy, "uniform-random | round-robin | greedy-adversary")->capture_default_str();
  sim->add_option("--seed", cfg.seed, "Seed of the first run; run j uses seed + j")->capture_default_str();
  sim->add_option("--runs", cfg.runs, "Number of runs")->capture_default_str()->check(CLI::NonNegativeNumber);
  sim->add_flag("--serial", cfg.serial, "Use the single-threaded reference path");

  auto* trace = app.add_subcommand("trace", "Apply bit indices from stdin, one per line, emitting JSON lines");
  add_params(*trace, cfg, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid_params;
  }

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open " << cfg.out << " for writing\n";
      return invalid_params;
    }
  }
  std::ostream& sink = cfg.out.empty() ? out : file;

  try {
    if (bounds->parsed()) return run_bounds(cfg, sink);
    if (oracle->parsed()) return run_oracle(cfg, sink, err);
    if (sim->parsed()) return run_simulate(cfg, sink);
    return run_trace(cfg, in, sink, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return invalid_params;
  }
}

}  // namespace flashcode::cli
