// altnet command-line tool: capacity formulas, schedule simulation,
// scheme verification and exhaustive linear-scheme search for two- and
// three-user networks with alternating connectivity.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "altnet/report.hpp"

namespace {

using namespace altnet;

// Exit codes: 0 success / verification pass, 1 verification failure,
// 2 usage or precondition error, 3 enumeration/search budget error.
constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open output file " + out_path);
  f << text;
}

std::string rational_line(const Rational& r) {
  return r.str() + " (~" + r.decimal() + ")";
}

struct CapacityArgs {
  std::string scenario = "ic2";
  std::string lambda;
  std::int64_t p = 0;
  bool json = false;
  std::string out;
  int sweep_den = 0;
};

int run_capacity(const CapacityArgs& args) {
  Scenario scenario = scenario_from_string(args.scenario);
  if (scenario == Scenario::Ic3Example)
    throw std::invalid_argument("capacity: scenario must be ic2, x2 or bc2");
  std::optional<FieldSpec> field;
  if (args.p != 0) field = FieldSpec(args.p);

  auto evaluate = [&](const StateFractions& f) {
    Json j;
    j["schema"] = "altnet-capacity/v1";
    j["scenario"] = to_string(scenario);
    j["lambda"] = fractions_json(f);
    Rational cap;
    switch (scenario) {
      case Scenario::Ic2: cap = ic2_sum_capacity(f); break;
      case Scenario::X2: cap = x2_sum_capacity(f); break;
      case Scenario::Bc2: cap = bc2_sum_capacity(f); break;
      default: throw std::logic_error("unreachable");
    }
    j["capacity"] = rational_json(cap);
    if (scenario != Scenario::Bc2) {
      j["bounds"] = bounds_json(ic2_outer_bounds(f));
      auto [baseline, gain] = ic2_baseline_and_gain(f);
      j["baseline"] = rational_json(baseline);
      j["gain"] = rational_json(gain);
    } else {
      Json mapping;
      for (const auto& e : csit_state_mapping())
        mapping[std::string(1, to_char(e.state))] =
            std::string(1, e.user1) + std::string(1, e.user2);
      j["csit_equivalence"] = mapping;
    }
    if (field) {
      j["field"] = Json{{"p", field->p()},
                        {"meets_capacity_preconditions",
                         field->meets_capacity_preconditions()}};
      if (!field->meets_capacity_preconditions())
        j["field"]["flag"] = "theorem-preconditions-unmet";
    }
    return j;
  };

  if (args.sweep_den > 0) {
    // CSV sweep over the exact lambda grid with the given denominator.
    std::ostringstream csv;
    csv << "lambda_a,lambda_b,lambda_c,lambda_d,capacity,capacity_decimal";
    if (scenario != Scenario::Bc2)
      csv << ",z_bound,mac_bound_1,mac_bound_2,baseline,gain,gain_decimal";
    csv << "\n";
    int den = args.sweep_den;
    for (int a = 0; a <= den; ++a)
      for (int b = 0; b <= den - a; ++b)
        for (int c = 0; c <= den - a - b; ++c) {
          int d = den - a - b - c;
          StateFractions f(Rational(a, den), Rational(b, den), Rational(c, den),
                           Rational(d, den));
          if (scenario != Scenario::Ic2 && f.a() != f.b()) continue;
          Rational cap;
          switch (scenario) {
            case Scenario::Ic2: cap = ic2_sum_capacity(f); break;
            case Scenario::X2: cap = x2_sum_capacity(f); break;
            case Scenario::Bc2: cap = bc2_sum_capacity(f); break;
            default: throw std::logic_error("unreachable");
          }
          csv << f.a().str() << ',' << f.b().str() << ',' << f.c().str() << ','
              << f.d().str() << ',' << cap.str() << ',' << cap.decimal();
          if (scenario != Scenario::Bc2) {
            BoundSet bounds = ic2_outer_bounds(f);
            auto [baseline, gain] = ic2_baseline_and_gain(f);
            csv << ',' << bounds.z_bound.str() << ',' << bounds.mac_bound_1.str()
                << ',' << bounds.mac_bound_2.str() << ',' << baseline.str() << ','
                << gain.str() << ',' << gain.decimal();
          }
          csv << "\n";
        }
    write_output(csv.str(), args.out);
    return kExitPass;
  }

  if (args.lambda.empty())
    throw std::invalid_argument("capacity: --lambda is required (or use --sweep)");
  StateFractions f = StateFractions::parse(args.lambda);
  Json j = evaluate(f);
  if (args.json || !args.out.empty()) {
    write_output(j.dump(2) + "\n", args.out);
  } else {
    std::cout << "scenario        " << to_string(scenario) << "\n";
    std::cout << "lambda          " << f.str() << "\n";
    std::cout << "sum capacity    "
              << rational_line(Rational::parse(
                     j["capacity"]["rational"].get<std::string>()))
              << "\n";
    if (scenario != Scenario::Bc2) {
      BoundSet bounds = ic2_outer_bounds(f);
      for (const auto& [name, value] : bounds.named())
        std::cout << "bound " << name << "  " << rational_line(value) << "\n";
      auto [baseline, gain] = ic2_baseline_and_gain(f);
      std::cout << "baseline        " << rational_line(baseline) << "\n";
      std::cout << "joint gain      " << rational_line(gain) << "\n";
    }
    if (field && !field->meets_capacity_preconditions())
      std::cout << "note            p = " << field->p()
                << ": theorem-preconditions-unmet (formulas assume p > 2)\n";
  }
  return kExitPass;
}

struct SimulateArgs {
  std::string scenario = "ic2";
  std::string lambda;
  std::int64_t p = 5;
  int n = 0;
  std::uint64_t seed = 0;
  std::string sequence_mode = "quota";
  std::string decodability = "worst";
  std::string pair_file;
  bool json = false;
  std::string out;
};

CheckMode check_mode_from_cli(const std::string& s) {
  if (s == "worst" || s == "worst-case") return CheckMode::WorstCase;
  if (s == "generic" || s == "generic-sampled") return CheckMode::GenericSampled;
  if (s == "single") return CheckMode::Single;
  if (s == "fraction" || s == "exhaustive-fraction")
    return CheckMode::ExhaustiveFraction;
  throw std::invalid_argument("unknown decodability mode \"" + s + "\"");
}

int run_simulate(const SimulateArgs& args) {
  SimConfig config;
  config.scenario = scenario_from_string(args.scenario);
  if (!args.lambda.empty()) config.fractions = StateFractions::parse(args.lambda);
  config.p = args.p;
  config.n = args.n;
  config.seed = args.seed;
  config.sequence_mode = sequence_mode_from_string(args.sequence_mode);
  config.decodability = check_mode_from_cli(args.decodability);
  if (config.scenario == Scenario::Ic3Example) {
    if (args.pair_file.empty())
      throw std::invalid_argument("simulate: ic3-example needs --pair-file");
    std::ifstream f(args.pair_file);
    if (!f) throw std::invalid_argument("cannot open " + args.pair_file);
    auto states = parse_topology_blocks(f);
    if (states.size() != 2)
      throw std::invalid_argument("pair file must contain exactly 2 states, found " +
                                  std::to_string(states.size()));
    config.ic3_pair = {states[0], states[1]};
  }
  RateReport report = run_simulation(config);
  Json j = rate_report_json(report);
  if (args.json || !args.out.empty()) {
    write_output(j.dump(2) + "\n", args.out);
  } else {
    std::cout << "achieved rate   " << rational_line(report.achieved) << "\n";
    if (report.formula)
      std::cout << "formula value   " << rational_line(*report.formula) << "\n";
    if (report.gap) std::cout << "gap             " << report.gap->str() << "\n";
    if (report.bounds)
      for (const auto& [name, value] : report.bounds->named())
        std::cout << "bound " << name << "  " << rational_line(value) << "\n";
    std::cout << "decoded         " << report.symbols_decoded << "/"
              << report.symbols_total << " symbols, " << report.decode_failures
              << " failures\n";
    if (!report.note.empty()) std::cout << "note            " << report.note << "\n";
    std::cout << "config hash     " << report.config_hash << "\n";
  }
  return kExitPass;
}

struct VerifyArgs {
  std::string scheme_file;
  std::string builtin;
  std::string mode = "worst";
  std::int64_t p = 0;
  int trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t guard = kDefaultEnumerationGuard;
  bool json = false;
  std::string out;
};

LinearScheme load_scheme(const VerifyArgs& args) {
  if (!args.builtin.empty()) {
    std::int64_t p = args.p == 0 ? 3 : args.p;
    if (args.builtin == "ic2-joint-abc") return ic2_joint_abc_scheme(FieldSpec(p));
    if (args.builtin == "bc2-joint-ab") return bc2_joint_ab_scheme(FieldSpec(p));
    throw std::invalid_argument("unknown builtin \"" + args.builtin +
                                "\" (want ic2-joint-abc or bc2-joint-ab)");
  }
  if (args.scheme_file.empty())
    throw std::invalid_argument("verify: need --scheme or --builtin");
  std::ifstream f(args.scheme_file);
  if (!f) throw std::invalid_argument("cannot open " + args.scheme_file);
  LinearScheme scheme = parse_scheme(f);
  if (args.p != 0 && args.p != scheme.field().p())
    return refield_scheme(scheme, FieldSpec(args.p));
  return scheme;
}

int run_verify(const VerifyArgs& args) {
  LinearScheme scheme = load_scheme(args);
  CheckMode mode = check_mode_from_cli(args.mode);
  DecodabilityReport report;
  switch (mode) {
    case CheckMode::Single: {
      ChannelRealization real =
          sample_realization(scheme.seq(), scheme.field(), args.seed);
      report = single_check(scheme, real);
      break;
    }
    case CheckMode::WorstCase:
      report = worst_case_check(scheme, args.guard);
      break;
    case CheckMode::GenericSampled:
      report = generic_check(scheme, args.trials, args.seed);
      break;
    case CheckMode::ExhaustiveFraction:
      report = failure_fraction_exact(scheme, args.guard);
      break;
  }
  Json j = decodability_json(report);
  j["scheme_rate"] = rational_json(scheme.rate());
  if (!scheme.field().meets_capacity_preconditions())
    j["field_flag"] = "theorem-preconditions-unmet";
  if (args.json || !args.out.empty()) {
    write_output(j.dump(2) + "\n", args.out);
  } else {
    std::cout << "mode            " << to_string(report.mode) << "\n";
    std::cout << "verdict         " << (report.verdict ? "pass" : "FAIL") << "\n";
    std::cout << "realizations    " << report.realizations_checked << "/"
              << report.realizations_total << " checked, " << report.failures
              << " failures\n";
    if (report.failure_fraction)
      std::cout << "failure frac    " << report.failure_fraction->str() << "\n";
    std::cout << "scheme rate     " << rational_line(scheme.rate()) << "\n";
    if (report.counterexample) {
      std::cout << "counterexample (receiver " << *report.counterexample_receiver
                << "):\n"
                << realization_json(*report.counterexample).dump(2) << "\n";
    }
  }
  return report.verdict ? kExitPass : kExitVerificationFailure;
}

struct SearchArgs {
  int users = 2;
  std::string sequence;
  std::string states_file;
  std::int64_t p = 3;
  std::string mode = "worst";
  int max_symbols = 2;
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint64_t guard = kDefaultEnumerationGuard;
  bool json = false;
  std::string out;
  std::string witness_out;
};

StateSequence sequence_from_args(const SearchArgs& args) {
  if (args.sequence.empty())
    throw std::invalid_argument("search: --sequence is required");
  if (!args.states_file.empty()) {
    std::ifstream f(args.states_file);
    if (!f) throw std::invalid_argument("cannot open " + args.states_file);
    auto alphabet = parse_topology_blocks(f);
    StateSequence seq;
    seq.alphabet = std::move(alphabet);
    std::istringstream iss(args.sequence);
    std::string tok;
    while (std::getline(iss, tok, ','))
      seq.slots.push_back(std::stoi(tok));
    seq.validate();
    return seq;
  }
  std::vector<TwoUserStateId> ids;
  std::istringstream iss(args.sequence);
  std::string tok;
  while (std::getline(iss, tok, ',')) {
    if (tok.size() != 1)
      throw std::invalid_argument("bad state token \"" + tok + "\"");
    ids.push_back(two_user_state_from_char(tok[0]));
  }
  return sequence_of_two_user_ids(ids);
}

int run_search(const SearchArgs& args) {
  SearchSpec spec{sequence_from_args(args), FieldSpec(args.p)};
  if (spec.seq.users() != args.users)
    throw std::invalid_argument(
        "search: --users disagrees with the sequence's user count");
  spec.max_symbols_per_tx = args.max_symbols;
  spec.decodability = args.mode == "generic" ? CheckMode::ExhaustiveFraction
                                             : CheckMode::WorstCase;
  spec.budget = args.budget;
  spec.guard = args.guard;
  SearchResult result = max_linear_rate(spec);
  Json j = search_result_json(result);
  if (!args.witness_out.empty())
    write_output(format_scheme(result.witness), args.witness_out);
  if (args.json || !args.out.empty()) {
    write_output(j.dump(2) + "\n", args.out);
  } else {
    std::cout << "max linear zero-error sum rate  "
              << rational_line(result.best_rate) << "\n";
    std::cout << "candidates examined             " << result.candidates_examined
              << "\n";
    std::cout << "exhaustive                      "
              << (result.exhaustive ? "yes" : "no") << "\n";
    std::cout << "witness:\n" << format_scheme(result.witness);
  }
  return kExitPass;
}

struct FindExamplesArgs {
  std::int64_t p = 3;
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint64_t guard = kDefaultEnumerationGuard;
  bool raw = false;
  bool json = false;
  std::string out;
  std::string witness_dir;
};

int run_find_examples(const FindExamplesArgs& args) {
  ExampleSearchOptions opts;
  opts.budget = args.budget;
  opts.guard = args.guard;
  opts.dedup = !args.raw;
  opts.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  auto found = find_example_topologies(FieldSpec(args.p), opts);
  Json j;
  j["schema"] = "altnet-examples/v1";
  j["p"] = args.p;
  j["dedup"] = !args.raw;
  j["count"] = found.size();
  Json list = Json::array();
  for (const auto& c : found) list.push_back(example_candidate_json(c));
  j["examples"] = list;
  if (!args.witness_dir.empty()) {
    for (std::size_t i = 0; i < found.size(); ++i) {
      std::string base = args.witness_dir + "/example" + std::to_string(i + 1);
      std::array<TopologyState, 2> pair = {found[i].first, found[i].second};
      write_output(format_topology_blocks(pair), base + ".topo");
      write_output(format_scheme(found[i].witness), base + ".scheme");
    }
  }
  if (args.json || !args.out.empty()) {
    write_output(j.dump(2) + "\n", args.out);
  } else {
    std::cout << "certified pairs found: " << found.size() << "\n";
    for (std::size_t i = 0; i < found.size(); ++i) {
      const auto& c = found[i];
      std::cout << "--- pair " << (i + 1) << ": joint " << c.profile.joint.str()
                << ", pairwise " << c.profile.pairwise[0].str() << "/"
                << c.profile.pairwise[1].str() << "/" << c.profile.pairwise[2].str()
                << "\n";
      std::cout << c.first.grid_text() << "\n" << c.second.grid_text();
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "altnet: finite-field toolkit for partially connected networks with "
      "alternating connectivity"};
  app.require_subcommand(1);

  CapacityArgs cap_args;
  auto* cap = app.add_subcommand(
      "capacity", "Evaluate sum-capacity formulas, outer bounds and gains");
  cap->add_option("--scenario", cap_args.scenario, "ic2, x2 or bc2")
      ->capture_default_str();
  cap->add_option("--lambda", cap_args.lambda,
                  "state fractions A,B,C,D as rationals, e.g. 1/3,1/3,1/3,0");
  cap->add_option("--p", cap_args.p, "field modulus (only for the p>2 flag)");
  cap->add_flag("--json", cap_args.json, "canonical JSON output");
  cap->add_option("--out", cap_args.out, "write output to this path");
  cap->add_option("--sweep", cap_args.sweep_den,
                  "CSV sweep over the lambda grid with this denominator");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "Run a schedule end to end over a seeded realization");
  sim->add_option("--scenario", sim_args.scenario, "ic2, x2, bc2 or ic3-example")
      ->capture_default_str();
  sim->add_option("--lambda", sim_args.lambda, "state fractions A,B,C,D");
  sim->add_option("--n", sim_args.n, "block length")->required();
  sim->add_option("--p", sim_args.p, "field modulus")->capture_default_str();
  sim->add_option("--seed", sim_args.seed, "rng seed")->capture_default_str();
  sim->add_option("--sequence-mode", sim_args.sequence_mode, "quota or iid")
      ->capture_default_str();
  sim->add_option("--decodability", sim_args.decodability,
                  "worst (hard error on failure) or generic")
      ->capture_default_str();
  sim->add_option("--pair-file", sim_args.pair_file,
                  "topology pair file for ic3-example");
  sim->add_flag("--json", sim_args.json, "canonical JSON output");
  sim->add_option("--out", sim_args.out, "write output to this path");

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Check a scheme's decodability");
  ver->add_option("--scheme", ver_args.scheme_file, "scheme file to verify");
  ver->add_option("--builtin", ver_args.builtin,
                  "ic2-joint-abc or bc2-joint-ab instead of a file");
  ver->add_option("--mode", ver_args.mode, "single, worst, generic or fraction")
      ->capture_default_str();
  ver->add_option("--p", ver_args.p, "field modulus override");
  ver->add_option("--trials", ver_args.trials, "trials for generic mode")
      ->capture_default_str();
  ver->add_option("--seed", ver_args.seed, "rng seed")->capture_default_str();
  ver->add_option("--guard", ver_args.guard, "enumeration guard")
      ->capture_default_str();
  ver->add_flag("--json", ver_args.json, "canonical JSON output");
  ver->add_option("--out", ver_args.out, "write output to this path");

  SearchArgs search_args;
  auto* search = app.add_subcommand(
      "search", "Exhaustive maximum-linear-rate search over a state sequence");
  search->add_option("--users", search_args.users, "number of users")
      ->capture_default_str();
  search->add_option("--sequence", search_args.sequence,
                     "A,B,C letters (2-user) or state indices with --states");
  search->add_option("--states", search_args.states_file,
                     "topology blocks file defining the state alphabet");
  search->add_option("--p", search_args.p, "field modulus")->capture_default_str();
  search->add_option("--mode", search_args.mode, "worst or generic")
      ->capture_default_str();
  search->add_option("--max-symbols", search_args.max_symbols,
                     "max symbols per transmitter")
      ->capture_default_str();
  search->add_option("--budget", search_args.budget, "candidate budget")
      ->capture_default_str();
  search->add_option("--guard", search_args.guard, "realization guard")
      ->capture_default_str();
  search->add_flag("--json", search_args.json, "canonical JSON output");
  search->add_option("--out", search_args.out, "write output to this path");
  search->add_option("--witness-out", search_args.witness_out,
                     "write the witness scheme to this path");

  FindExamplesArgs fx_args;
  auto* fx = app.add_subcommand(
      "find-examples",
      "Reconstruct 3-user two-state examples: individually useless, jointly 3/2");
  fx->add_option("--p", fx_args.p, "field modulus")->capture_default_str();
  fx->add_option("--budget", fx_args.budget, "candidate budget per search")
      ->capture_default_str();
  fx->add_option("--guard", fx_args.guard, "realization guard")
      ->capture_default_str();
  fx->add_flag("--raw", fx_args.raw, "keep user-relabeled duplicates");
  fx->add_flag("--json", fx_args.json, "canonical JSON output");
  fx->add_option("--out", fx_args.out, "write output to this path");
  fx->add_option("--witness-dir", fx_args.witness_dir,
                 "write exampleN.topo / exampleN.scheme files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*cap) return run_capacity(cap_args);
    if (*sim) return run_simulate(sim_args);
    if (*ver) return run_verify(ver_args);
    if (*search) return run_search(search_args);
    if (*fx) return run_find_examples(fx_args);
    throw std::invalid_argument("no subcommand selected");
  } catch (const GuardExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TheoremPreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CorruptedInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
}
