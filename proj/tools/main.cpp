// conelab: verify positive-cone preserver statements on direct sums of
// complex matrix blocks, search for counterexample witnesses, and move
// elements and reports through JSON.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "conelab/io.hpp"

namespace {

using namespace conelab;

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::string token;
  std::istringstream ss(spec);
  while (std::getline(ss, token, ',')) {
    try {
      size_t used = 0;
      const int d = std::stoi(token, &used);
      if (used != token.size() || d < 1) throw std::invalid_argument("dims");
      dims.push_back(d);
    } catch (const std::exception&) {
      throw UsageError("--dims expects positive integers like '2,3', got '" +
                       spec + "'");
    }
  }
  if (dims.empty()) throw UsageError("--dims must name at least one block");
  return dims;
}

std::vector<SuiteId> parse_suites(const std::string& spec) {
  if (spec == "all") return all_suite_ids();
  std::vector<SuiteId> ids;
  std::string token;
  std::istringstream ss(spec);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    // Bare names of parameterized suites expand to their standard
    // exponent set.
    bool expanded = false;
    if (token.find(':') == std::string::npos) {
      for (const SuiteId& id : all_suite_ids()) {
        if (id.p && token == SuiteId{id.kind, std::nullopt}.name()) {
          ids.push_back(id);
          expanded = true;
        }
      }
    }
    if (!expanded) ids.push_back(SuiteId::parse(token));
  }
  if (ids.empty()) throw UsageError("--suite must name at least one suite");
  return ids;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

int cmd_verify(const std::string& suites_spec, const std::string& dims_spec,
               int trials, std::uint64_t seed, double tol,
               const std::string& format, const std::string& out_path) {
  const AlgebraShape shape(parse_dims(dims_spec));
  const std::vector<SuiteId> ids = parse_suites(suites_spec);
  if (format != "json" && format != "text") {
    throw UsageError("--format must be json or text");
  }

  std::vector<SuiteReport> reports;
  for (const SuiteId& id : ids) {
    reports.push_back(run_suite(id, shape, trials, seed, tol));
  }

  std::string text;
  if (format == "json") {
    if (reports.size() == 1) {
      text = to_json(reports[0]) + "\n";
    } else {
      text = "[";
      for (size_t i = 0; i < reports.size(); ++i) {
        if (i) text += ",";
        text += to_json(reports[i]);
      }
      text += "]\n";
    }
  } else {
    for (const SuiteReport& r : reports) text += format_report_text(r);
  }
  emit(text, out_path);

  bool any_fail = false;
  bool any_inconclusive = false;
  for (const SuiteReport& r : reports) {
    any_fail = any_fail || r.verdict == Verdict::Fail;
    any_inconclusive = any_inconclusive || r.verdict == Verdict::Inconclusive;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 3;
  return 0;
}

int cmd_witness(const std::string& kind, const std::string& element_path,
                int budget, std::uint64_t seed, const std::string& out_path) {
  const Element a = load_element(element_path);
  WitnessSearchResult res;
  if (kind == "nonadditivity") {
    res = search_nonadditivity_witness(a, budget, seed);
  } else if (kind == "squaring") {
    res = search_squaring_witness(a, budget, seed);
  } else if (kind == "seminorm-gap") {
    res = search_seminorm_gap_witness(a, budget, seed);
  } else {
    throw UsageError(
        "--kind must be nonadditivity, squaring or seminorm-gap");
  }

  std::string text = "{\"budget\":" + std::to_string(budget);
  text += ",\"conclusive\":" + std::string(res.conclusive ? "true" : "false");
  text += ",\"found\":" + std::string(res.witness ? "true" : "false");
  text += ",\"kind\":\"" + kind + "\"";
  text += ",\"max_observed\":" + format_double(res.max_observed);
  text += ",\"samples_used\":" + std::to_string(res.samples_used);
  text += ",\"seed\":" + std::to_string(seed);
  text += ",\"witness\":";
  text += res.witness ? to_json(*res.witness) : "null";
  text += "}\n";
  emit(text, out_path);
  return res.conclusive ? 0 : 3;
}

int cmd_elem_random(const std::string& dims_spec, const std::string& cls_name,
                    double lo, double hi, bool lo_set, bool hi_set,
                    bool pin_lo, std::uint64_t seed,
                    const std::string& out_path) {
  const AlgebraShape shape(parse_dims(dims_spec));
  const ClassTag cls = class_tag_from_string(cls_name);
  if (!lo_set || !hi_set) {
    switch (cls) {
      case ClassTag::PositiveInvertible:
        if (!lo_set) lo = 0.5;
        if (!hi_set) hi = 2.0;
        break;
      case ClassTag::Positive:
      case ClassTag::Effect:
        if (!lo_set) lo = 0.0;
        if (!hi_set) hi = 1.0;
        break;
      default:
        if (!lo_set) lo = -1.0;
        if (!hi_set) hi = 1.0;
        break;
    }
  }
  Rng rng(seed);
  const Element e = random_element(shape, cls, lo, hi, rng, pin_lo);
  emit(to_json(e) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive-cone preserver verification on direct sums of "
               "complex matrix blocks"};
  app.require_subcommand(1);

  // verify
  std::string v_suites;
  std::string v_dims;
  int v_trials = 500;
  std::uint64_t v_seed = 0;
  double v_tol = 1e-8;
  std::string v_out;
  std::string v_format = "json";
  CLI::App* verify = app.add_subcommand("verify", "run theorem suites");
  verify->add_option("--suite", v_suites,
                     "comma-separated suite names, or 'all'")->required();
  verify->add_option("--dims", v_dims, "block sizes, e.g. 2,3")->required();
  verify->add_option("--trials", v_trials, "samples per suite");
  verify->add_option("--seed", v_seed, "RNG seed (always recorded)");
  verify->add_option("--tol", v_tol, "suite tolerance (relative)");
  verify->add_option("--out", v_out, "write the report here");
  verify->add_option("--format", v_format, "json or text");

  // witness
  std::string w_kind;
  std::string w_element;
  int w_budget = kDefaultWitnessBudget;
  std::uint64_t w_seed = 0;
  std::string w_out;
  CLI::App* witness =
      app.add_subcommand("witness", "search for a counterexample witness");
  witness->add_option("--kind", w_kind,
                      "nonadditivity | squaring | seminorm-gap")->required();
  witness->add_option("--element", w_element,
                      "path to the element JSON")->required();
  witness->add_option("--budget", w_budget, "sample budget");
  witness->add_option("--seed", w_seed, "RNG seed");
  witness->add_option("--out", w_out, "write the result here");

  // elem random
  std::string e_dims;
  std::string e_class = "PositiveInvertible";
  double e_lo = 0.0;
  double e_hi = 0.0;
  bool e_pin = false;
  std::uint64_t e_seed = 0;
  std::string e_out;
  CLI::App* elem = app.add_subcommand("elem", "element utilities");
  elem->require_subcommand(1);
  CLI::App* elem_random =
      elem->add_subcommand("random", "draw a random element");
  elem_random->add_option("--dims", e_dims, "block sizes")->required();
  elem_random->add_option("--class", e_class,
                          "General | SelfAdjoint | Positive | "
                          "PositiveInvertible | Effect");
  CLI::Option* lo_opt = elem_random->add_option("--lo", e_lo,
                                                "spectrum lower bound");
  CLI::Option* hi_opt = elem_random->add_option("--hi", e_hi,
                                                "spectrum upper bound");
  elem_random->add_flag("--pin-lo", e_pin,
                        "pin one eigenvalue per block to the lower bound");
  elem_random->add_option("--seed", e_seed, "RNG seed");
  elem_random->add_option("--out", e_out, "write the element here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify(v_suites, v_dims, v_trials, v_seed, v_tol, v_format,
                        v_out);
    }
    if (witness->parsed()) {
      return cmd_witness(w_kind, w_element, w_budget, w_seed, w_out);
    }
    if (elem->parsed() && elem_random->parsed()) {
      return cmd_elem_random(e_dims, e_class, e_lo, e_hi,
                             !lo_opt->empty(), !hi_opt->empty(), e_pin,
                             e_seed, e_out);
    }
    std::cerr << "usage error: no command given\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidRange& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
