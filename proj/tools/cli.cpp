#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "langeval/dataset_io.hpp"
#include "langeval/errors.hpp"
#include "langeval/report.hpp"
#include "langeval/sensitivity.hpp"
#include "langeval/validation.hpp"
#include "service.hpp"

#ifndef LANGEVAL_DEFAULT_DATASET
#define LANGEVAL_DEFAULT_DATASET "data/paper-2023-oop.json"
#endif
#ifndef LANGEVAL_UI_DIR
#define LANGEVAL_UI_DIR "ui"
#endif

namespace langeval::cli {

namespace {

using json = nlohmann::ordered_json;

// Malformed flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string dataset = LANGEVAL_DEFAULT_DATASET;
  std::string profile = "default";
  std::string weights_file;
  std::vector<std::string> set;
  std::string category = "all";
  std::string format = "table";
  int decimals = 2;

  std::string subject;
  std::string request_file;
  std::vector<std::string> rate;
  std::string param;
  double from = 1.0;
  double to = 5.0;
  int steps = 41;
  std::string kind;
  std::string published;
  std::string addr = "127.0.0.1:8080";
  std::string static_dir = LANGEVAL_UI_DIR;
};

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("invalid number '" + text + "' in " + what);
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw UsageError(flag + " expects KEY=VALUE, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

CategoryFilter category_of(const Options& o) {
  auto f = parse_category_filter(o.category);
  if (!f) throw UsageError("unknown category '" + o.category + "'");
  return *f;
}

ReportSpec spec_of(const Options& o, ReportKind kind) {
  auto f = parse_output_format(o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "'");
  return ReportSpec{kind, *f, o.decimals};
}

Dataset load_valid(const Options& o) {
  Dataset ds = load_dataset(o.dataset);
  const auto report = validate_dataset(ds);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(o.dataset + ": invalid dataset: " + v.location + ": " + v.message + " (" +
                std::to_string(report.violations.size()) + " violation(s); run 'validate' for the full list)");
  }
  return ds;
}

// Base request assembled from --profile, --weights, --set and --category.
WhatIfRequest request_of(const Options& o, const Dataset& ds) {
  WhatIfRequest req;
  if (!o.request_file.empty()) {
    const std::string text = read_text_file(o.request_file);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(o.request_file, e.what());
    }
    req = whatif_request_from_json(j);
  }
  if (o.profile != "default" || o.request_file.empty()) req.profile = o.profile;
  if (!o.weights_file.empty()) {
    const std::string text = read_text_file(o.weights_file);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(o.weights_file, e.what());
    }
    for (const auto& [id, w] : profile_from_json(j, ds.framework).weights) req.weights[id] = w;
  }
  for (const auto& s : o.set) {
    auto [id, value] = split_assignment(s, "--set");
    req.weights[id] = parse_double(value, "--set " + s);
  }
  if (o.category != "all" || o.request_file.empty()) req.category = category_of(o);
  for (const auto& r : o.rate) {
    auto [cell, value] = split_assignment(r, "--rate");
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t slash; (slash = cell.find('/', start)) != std::string::npos; start = slash + 1) {
      parts.push_back(cell.substr(start, slash - start));
    }
    parts.push_back(cell.substr(start));
    if (parts.size() < 2 || parts.size() > 3) {
      throw UsageError("--rate expects SUBJECT/PARAMETER[/SUB]=VALUE, got '" + r + "'");
    }
    RatingOverride ov;
    ov.target.subject = parts[0];
    ov.target.parameter = parts[1];
    if (parts.size() == 3) ov.target.sub_parameter = parts[2];
    json v = value;
    if (!parse_level(value)) v = parse_double(value, "--rate " + r);
    ov.value = rating_value_from_json(v, ov.target.sub_parameter.has_value(), "--rate");
    req.ratings.push_back(std::move(ov));
  }
  return req;
}

void add_dataset(CLI::App* sub, Options& o) {
  sub->add_option("dataset", o.dataset, "Dataset file")->capture_default_str();
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json", "md", "markdown"}))
      ->capture_default_str();
  sub->add_option("--decimals", o.decimals, "Display decimals")->check(CLI::Range(0, 12))->capture_default_str();
}

void add_weights(CLI::App* sub, Options& o) {
  sub->add_option("--profile", o.profile, "Base weight profile")->capture_default_str();
  sub->add_option("--weights", o.weights_file, "Weight profile file {\"weights\": {...}}")->check(CLI::ExistingFile);
  sub->add_option("--set", o.set, "Weight override PARAM=W (repeatable)");
  sub->add_option("--category", o.category, "Parameter scope")
      ->check(CLI::IsMember({"all", "tech", "technical", "env", "environmental"}))
      ->capture_default_str();
}

int cmd_validate(const Options& o, std::ostream& out) {
  Dataset ds;
  try {
    ds = load_dataset(o.dataset);
  } catch (const Error& e) {
    out << "invalid: " << e.what() << "\n";
    return kFailure;
  }
  const auto report = validate_dataset(ds);
  for (const auto& v : report.violations) {
    out << v.location << ": " << v.message << " (" << to_string(v.kind) << ")\n";
  }
  for (const auto& n : report.notes) out << "note: " << n << "\n";
  if (!report.ok()) return kFailure;
  out << "ok: " << ds.subjects.size() << " subjects, " << ds.framework.parameters.size() << " parameters, "
      << ds.ratings.size() << " ratings\n";
  return kOk;
}

int cmd_score(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  const WeightProfile profile = apply_weight_overrides(ds, req);
  const ReportSpec spec = spec_of(o, ReportKind::ParameterTable);
  if (o.subject.empty()) {
    out << render_parameter_table(rank(ds, profile, req.category), ds, profile, req.category, spec);
    return kOk;
  }
  const ScoreCard card = score_card(ds, o.subject, profile, req.category);
  if (spec.format == OutputFormat::Json) {
    out << to_json(card).dump(2) << "\n";
    return kOk;
  }
  const auto breakdown = contribution(card);
  TextTable t;
  t.header = {"Parameter", "Weight", "Score", "Weighted", "Share"};
  for (std::size_t i = 0; i < card.parameters.size(); ++i) {
    const auto& p = card.parameters[i];
    const Parameter* param = ds.framework.find(p.score.parameter);
    t.rows.push_back({param ? param->name : p.score.parameter, p.weight, p.score.score, p.weighted,
                      breakdown.parameters[i].share});
  }
  t.rows.push_back({std::string("LS"), card.weight_total, card.ls_bounded, card.ls, breakdown.zero_total ? 0.0 : 1.0});
  out << render_text_table(t, spec.format, spec.decimals);
  return kOk;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  const WeightProfile profile = apply_weight_overrides(ds, req);
  out << render_overall_table(rank(ds, profile, req.category), ds, profile, req.category,
                              spec_of(o, ReportKind::OverallTable));
  return kOk;
}

int cmd_transition(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  out << render_transition_table(ds, spec_of(o, ReportKind::TransitionTable));
  return kOk;
}

int cmd_demand(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  std::vector<std::string> order;
  for (const auto& c : rank(ds, apply_weight_overrides(ds, req), req.category)) order.push_back(c.subject);
  out << render_demand_table(ds, order, spec_of(o, ReportKind::DemandTable));
  return kOk;
}

int cmd_whatif(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  ReportContext ctx;
  ctx.dataset = &ds;
  ctx.whatif = request_of(o, ds);
  out << render_report(spec_of(o, ReportKind::WhatIfTable), ctx);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  const WeightProfile profile = apply_weight_overrides(ds, req);
  out << render_sweep(weight_sweep(ds, profile, req.category, o.param, o.from, o.to, o.steps), ds,
                      spec_of(o, ReportKind::OverallTable));
  return kOk;
}

int cmd_stability(const Options& o, std::ostream& out) {
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  const WeightProfile profile = apply_weight_overrides(ds, req);
  out << render_stability(rank_stability(ds, profile, req.category, o.param), ds,
                          spec_of(o, ReportKind::OverallTable));
  return kOk;
}

std::string default_published(const std::string& dataset) {
  std::filesystem::path p(dataset);
  p.replace_extension(".published.json");
  return p.string();
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto kind = parse_report_kind(o.kind);
  if (!kind) throw UsageError("unknown report kind '" + o.kind + "'");
  const Dataset ds = load_valid(o);
  const WhatIfRequest req = request_of(o, ds);
  ReportContext ctx;
  ctx.dataset = &ds;
  ctx.profile = apply_weight_overrides(ds, req);
  ctx.category = req.category;
  ctx.whatif = req;
  std::optional<PublishedTables> published;
  if (*kind == ReportKind::DiscrepancyReport) {
    published = load_published_tables(o.published.empty() ? default_published(o.dataset) : o.published);
    ctx.published = &*published;
  }
  out << render_report(spec_of(o, *kind), ctx);
  return kOk;
}

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

int cmd_serve(const Options& o, std::ostream& out) {
  const auto colon = o.addr.rfind(':');
  if (colon == std::string::npos) throw UsageError("--addr expects HOST:PORT, got '" + o.addr + "'");
  const std::string host = o.addr.substr(0, colon);
  const double port = parse_double(o.addr.substr(colon + 1), "--addr");
  if (port < 0 || port > 65535 || port != static_cast<int>(port)) throw UsageError("invalid port in --addr");

  auto ds = std::make_shared<const Dataset>(load_valid(o));
  std::optional<std::filesystem::path> static_dir;
  if (!o.static_dir.empty()) static_dir = o.static_dir;
  Service service(ds, static_dir);
  const int bound = service.bind(host, static_cast<int>(port));
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;

  g_stop = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done && !g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
  });
  service.listen();
  done = true;
  watcher.join();
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-criteria suitability scoring for programming languages", "langeval"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a dataset and report every violation");
  add_dataset(validate, o);

  auto* score = app.add_subcommand("score", "Per-parameter scores for every subject, in rank order");
  add_dataset(score, o);
  add_weights(score, o);
  add_format(score, o);
  score->add_option("--subject", o.subject, "Show one subject's contribution breakdown");

  auto* rank_cmd = app.add_subcommand("rank", "Ranking with bounded and unbounded scores");
  add_dataset(rank_cmd, o);
  add_weights(rank_cmd, o);
  add_format(rank_cmd, o);

  auto* transition = app.add_subcommand("transition", "Pairwise transition costs and transferability ratings");
  add_dataset(transition, o);
  add_format(transition, o);

  auto* demand = app.add_subcommand("demand", "Demand snapshot with normalized demand scores");
  add_dataset(demand, o);
  add_weights(demand, o);
  add_format(demand, o);

  auto* whatif = app.add_subcommand("whatif", "Ranking under weight and rating overrides");
  add_dataset(whatif, o);
  add_weights(whatif, o);
  add_format(whatif, o);
  whatif->add_option("--request", o.request_file, "What-if request JSON file")->check(CLI::ExistingFile);
  whatif->add_option("--rate", o.rate, "Rating override SUBJECT/PARAM[/SUB]=VALUE (repeatable)");

  auto* sweep = app.add_subcommand("sweep", "Rankings over a weight range with crossover points");
  add_dataset(sweep, o);
  add_weights(sweep, o);
  add_format(sweep, o);
  sweep->add_option("--param", o.param, "Parameter whose weight is swept")->required();
  sweep->add_option("--from", o.from, "Lowest weight")->capture_default_str();
  sweep->add_option("--to", o.to, "Highest weight")->capture_default_str();
  sweep->add_option("--steps", o.steps, "Grid points, both ends included")->capture_default_str();

  auto* stability = app.add_subcommand("stability", "Weight interval that keeps the top subject on top");
  add_dataset(stability, o);
  add_weights(stability, o);
  add_format(stability, o);
  stability->add_option("--param", o.param, "Parameter whose weight varies")->required();

  auto* report = app.add_subcommand("report", "Render a report");
  add_dataset(report, o);
  add_weights(report, o);
  add_format(report, o);
  report->add_option("--kind", o.kind, "Report kind")
      ->required()
      ->check(CLI::IsMember({"parameter-table", "overall-table", "demand-table", "transition-table", "whatif-table",
                             "discrepancy-report"}));
  report->add_option("--published", o.published, "Published tables file (discrepancy-report)")
      ->check(CLI::ExistingFile);
  report->add_option("--request", o.request_file, "What-if request JSON file (whatif-table)")
      ->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Serve the JSON API and static UI");
  serve->add_option("--addr", o.addr, "HOST:PORT to listen on")->capture_default_str();
  serve->add_option("--dataset", o.dataset, "Dataset file")->capture_default_str();
  serve->add_option("--static", o.static_dir, "Directory served at /")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n"
        << "hint: run 'langeval --help' or 'langeval <command> --help'\n";
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*score) return cmd_score(o, out);
    if (*rank_cmd) return cmd_rank(o, out);
    if (*transition) return cmd_transition(o, out);
    if (*demand) return cmd_demand(o, out);
    if (*whatif) return cmd_whatif(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*stability) return cmd_stability(o, out);
    if (*report) return cmd_report(o, out);
    if (*serve) return cmd_serve(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n"
        << "hint: run 'langeval --help' or 'langeval <command> --help'\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace langeval::cli
