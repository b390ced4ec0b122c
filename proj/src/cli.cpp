#include "plift/cli.hpp"

#include <algorithm>
#include <functional>

#include "CLI11.hpp"
#include "json.hpp"
#include "plift/error.hpp"
#include "plift/ideals.hpp"
#include "plift/io.hpp"
#include "plift/lifting.hpp"
#include "plift/verify.hpp"

namespace plift {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  int trials = 8;
  std::uint64_t seed = 0;
  int attempts = 32;
  bool deterministic = false;
  std::string format = "plain";
  std::string configPath;
  std::string abscissasPath;
  std::vector<std::string> rationals;
  std::string target;
  std::string suite;
  int k = 0;
};

QVector parse_rationals(const std::vector<std::string>& args, std::size_t expected) {
  if (args.size() != expected)
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(expected) + " rationals, got " +
                                             std::to_string(args.size()));
  QVector x;
  for (const auto& a : args) x.push_back(parse_rat(a));
  return x;
}

json report_json(const LiftabilityReport& r) {
  json j;
  j["omega"] = r.omega;
  j["genericRank"] = r.genericRank;
  j["verdict"] = std::string(to_string(r.verdict));
  j["components"] = json::array();
  for (const auto& c : r.components)
    j["components"].push_back({{"points", c.points},
                               {"lines", c.lines},
                               {"rank", c.rank},
                               {"liftable", c.liftable}});
  j["trials"] = r.trials;
  j["deterministic"] = r.deterministic;
  j["hypothesis"] = r.hypothesis;
  j["errorBound"] = r.errorBound;
  return j;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Config c = load_config(o.configPath);
  const LiftabilityReport r = is_liftable_generic(c, o.trials, o.seed, o.deterministic);
  json j = report_json(r);
  if (r.verdict == Verdict::NotLiftable)
    j["quasi"] = std::string(to_string(is_quasi_liftable(c, o.trials, o.seed).verdict));
  out << j.dump(2) << "\n";
  return kExitOk;
}

int lift_and_print(const Config& c, const QVector& x, const Options& o, std::ostream& out) {
  const auto l = lift(c, x, o.attempts, o.seed);
  if (!l || l->kind == LiftKind::Trivial) {
    json j;
    j["kind"] = "none";
    j["liftSpaceDimension"] = lift_space(build_collin(c, x)).dimension;
    out << j.dump(2) << "\n";
    return kExitNoLift;
  }
  out << lift_result_to_json(*l);
  return l->kind == LiftKind::Realising ? kExitOk : kExitDegenerate;
}

int cmd_lift(const Options& o, std::ostream& out) {
  return lift_and_print(load_config(o.configPath), load_abscissas(o.abscissasPath), o, out);
}

// Rank of the collinearity matrix and the generator test on the points (x_i, 1, 0).
int abscissa_check(const Config& c, const GeneratorSet& gens, std::size_t liftableRank,
                   const QVector& x, std::ostream& out) {
  const CollinMatrix m = build_collin(c, x);
  const std::size_t rk = rank(*m.numeric);
  QMatrix pts(3, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    pts(0, i) = x[i];
    pts(1, i) = 1;
  }
  const Assignment at = Assignment::from_columns(pts);
  std::optional<std::string> witness;
  for (const auto& g : gens.entries)
    if (sgn(g.poly.evaluate(at)) != 0) {
      witness = g.label;
      break;
    }
  const bool liftable = rk <= liftableRank;
  json j;
  j["rank"] = rk;
  j["liftable"] = liftable;
  j["generatorsVanish"] = !witness.has_value();
  if (witness) j["witness"] = *witness;
  out << j.dump(2) << "\n";
  return liftable ? kExitOk : kExitNoLift;
}

int cmd_gens(const Options& o, std::ostream& out) {
  GeneratorSet g;
  if (o.target == "qs") {
    g = qs_generators();
  } else if (o.target == "grid34") {
    g = g34_generators();
  } else if (o.target.rfind("radical:", 0) == 0) {
    const Config c = load_config(o.target.substr(8));
    g = o.k > 0 ? radical_ideal_generators(c, static_cast<std::size_t>(o.k))
                : radical_ideal_generators(c);
  } else {
    throw Error(ErrorKind::UnknownFormat, "unknown target '" + o.target +
                                              "' (expected qs, grid34 or radical:<config>)");
  }
  out << emit(g, o.format);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  ProbeReport r;
  if (o.suite == "tfae-qs") {
    r = probe_tfae_qs(o.trials, o.seed);
  } else if (o.suite == "tfae-grid") {
    r = probe_tfae_grid(o.trials, o.seed);
  } else if (o.suite == "decomposition-qs") {
    r = probe_decomposition(Matroid::QS, o.trials, o.seed);
  } else if (o.suite == "decomposition-grid") {
    r = probe_decomposition(Matroid::G34, o.trials, o.seed);
  } else {
    throw Error(ErrorKind::UnknownFormat,
                "unknown suite '" + o.suite +
                    "' (expected tfae-qs, tfae-grid, decomposition-qs or decomposition-grid)");
  }
  out << to_json(r) << "\n";
  return r.ok() ? kExitOk : kExitFailure;
}

int cmd_table1(std::ostream& out) {
  const auto results = table1_verify();
  json j;
  j["rows"] = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    j["rows"].push_back({{"ijk", r.row.ijk},
                         {"generator", r.row.generator},
                         {"coefficients", r.row.coefficients},
                         {"pass", r.pass}});
  }
  j["passed"] = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  j["failed"] = results.size() - static_cast<std::size_t>(j["passed"].get<std::ptrdiff_t>());
  out << j.dump(2) << "\n";
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lifting collinear point tuples to point-line configurations"};
  app.name("plift");
  app.require_subcommand(1);
  Options o;

  auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "Random trials")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  auto add_lift_opts = [&](CLI::App* sub) {
    sub->add_option("--attempts", o.attempts, "Random lift candidates")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;

  auto* check = app.add_subcommand("check", "Decide liftability of a configuration");
  check->add_option("config", o.configPath, "Config JSON")->required()->check(CLI::ExistingFile);
  add_trials(check);
  check->add_flag("--deterministic", o.deterministic, "Rank over the polynomial ring (n <= 12)");
  handlers.emplace_back(check, [&] { return cmd_check(o, out); });

  auto* liftCmd = app.add_subcommand("lift", "Lift abscissas to a realisation");
  liftCmd->add_option("config", o.configPath, "Config JSON")->required()->check(CLI::ExistingFile);
  liftCmd->add_option("abscissas", o.abscissasPath, "Abscissas JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_lift_opts(liftCmd);
  handlers.emplace_back(liftCmd, [&] { return cmd_lift(o, out); });

  struct Fixed {
    const char* name;
    const char* help;
    bool isLift;
    bool isGrid;
  };
  for (const Fixed f : {Fixed{"qs-check", "Test 6 abscissas against the quadrilateral set", false, false},
                        Fixed{"qs-lift", "Lift 6 abscissas to a quadrilateral set", true, false},
                        Fixed{"grid-check", "Test 12 abscissas against the 3x4 grid", false, true},
                        Fixed{"grid-lift", "Lift 12 abscissas to a 3x4 grid", true, true}}) {
    auto* sub = app.add_subcommand(f.name, f.help);
    sub->add_option("x", o.rationals, "Abscissas as p or p/q")->required();
    if (f.isLift) add_lift_opts(sub);
    handlers.emplace_back(sub, [&, f] {
      const Config c = f.isGrid ? grid3x4_config() : quadset_config();
      const QVector x = parse_rationals(o.rationals, f.isGrid ? 12 : 6);
      if (f.isLift) return lift_and_print(c, x, o, out);
      return f.isGrid ? abscissa_check(c, g34_generators(), 9, x, out)
                      : abscissa_check(c, qs_generators(), 3, x, out);
    });
  }

  auto* gens = app.add_subcommand("gens", "Emit a generating set");
  gens->add_option("target", o.target, "qs, grid34 or radical:<config>")->required();
  gens->add_option("--format", o.format, "plain, cas or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"plain", "cas", "json"}));
  gens->add_option("--k", o.k, "Minor size for radical targets (default n - 2)");
  handlers.emplace_back(gens, [&] { return cmd_gens(o, out); });

  auto* verify = app.add_subcommand("verify", "Run a probe suite");
  verify->add_option("suite", o.suite, "tfae-qs, tfae-grid, decomposition-qs, decomposition-grid")
      ->required();
  add_trials(verify);
  handlers.emplace_back(verify, [&] { return cmd_verify(o, out); });

  auto* table1 = app.add_subcommand("table1", "Check the rewriting identities for QS(l123)");
  handlers.emplace_back(table1, [&] { return cmd_table1(out); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    for (auto& [sub, handler] : handlers)
      if (sub->parsed()) return handler();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace plift
