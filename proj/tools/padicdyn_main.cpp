#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/json_io.hpp"
#include "padicdyn/symbolic.hpp"
#include "padicdyn/verify.hpp"

namespace {

using namespace padicdyn;

struct CommonOptions {
  std::int64_t p = 3;
  std::string a = "1";
  int precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  std::string out;
  bool json = true;  // compact JSON; --no-json pretty-prints the same object
};

void add_map_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--p", opts.p, "odd prime p")->required();
  cmd->add_option("--a", opts.a, "map parameter a as 'num' or 'num/den'")
      ->required();
  cmd->add_option("--precision", opts.precision,
                  "significant base-p digits for digit-mode work");
}

void add_output_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--out", opts.out, "also write the report to this file");
  cmd->add_flag("--json,!--no-json", opts.json,
                "compact JSON (default); --no-json pretty-prints");
}

void emit(const Json& report, const CommonOptions& opts) {
  std::string text = opts.json ? report.dump() : report.dump(2);
  text += "\n";
  std::cout << text;
  if (!opts.out.empty()) {
    std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidInput("cannot open output file: " + opts.out);
    file << text;
  }
}

MapParams params_from(const CommonOptions& opts) {
  return MapParams(opts.p, parse_rational(opts.a), opts.precision);
}

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Expands a flat key=value config file into trailing command-line tokens.
// Keys already given as flags are skipped, so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string config_path;
  std::set<std::string> present;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0) continue;
    auto eq = token.find('=');
    std::string key = token.substr(0, eq);
    present.insert(key);
    if (key == "--config") {
      config_path = (eq != std::string::npos)
                        ? token.substr(eq + 1)
                        : (i + 1 < args.size() ? args[i + 1] : "");
    }
  }
  if (config_path.empty()) return args;
  std::ifstream file(config_path);
  if (!file) throw InvalidInput("cannot open config file: " + config_path);
  std::string line;
  while (std::getline(file, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("config line is not key=value: '" + line + "'");
    }
    std::string key = "--" + trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (present.count(key)) continue;
    if (value == "true") {
      args.push_back(key);
    } else if (value == "false") {
      continue;
    } else {
      args.push_back(key);
      args.push_back(value);
    }
  }
  return args;
}

ProjPoint parse_point(const std::string& text, const MapParams& params) {
  if (text == "inf") return ProjPoint::infinity(params.p);
  if (text == "fixed1" || text == "fixed2") {
    auto fps = fixed_points(params);
    if (fps.size() < 3) {
      throw InvalidInput("no finite fixed points for these parameters");
    }
    return text == "fixed1" ? fps[1].point : fps[2].point;
  }
  if (text == "period2") return period2_point(params, 1);
  return ProjPoint::finite(
      PadicScalar::from_rational(parse_rational(text), params.p, params.precision));
}

int default_kmax(const MapParams& params) {
  int k = min_level(params);
  while (ball_count(params.p, k + 1) <= 1000) ++k;
  return k;
}

int run(int argc, char** argv) {
  CLI::App app{
      "exact arithmetic-dynamics toolkit for the map x -> ax + 1/x on the "
      "projective line over Q_p (p >= 3)"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string x_text = "1";
  int depth = 64;
  int kmax = 0;
  int samples = -1;
  int pairs = -1;
  std::string word_text;
  std::vector<std::string> suites;
  bool inject_fault = false;

  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "five-way regime of the parameter (exact residue tests)");
  add_map_options(classify_cmd, opts);
  add_output_options(classify_cmd, opts);

  CLI::App* orbit_cmd =
      app.add_subcommand("orbit", "digit-mode orbit x, phi(x), ..., phi^n(x)");
  add_map_options(orbit_cmd, opts);
  add_output_options(orbit_cmd, opts);
  orbit_cmd->add_option("--x", x_text,
                        "start: rational, 'inf', 'fixed1', 'fixed2', 'period2'");
  orbit_cmd->add_option("--depth", depth, "number of steps");

  CLI::App* itinerary_cmd = app.add_subcommand(
      "itinerary", "symbolic itinerary (2 symbols in FullShiftTwo, 4 in "
                   "ChaoticSFT)");
  add_map_options(itinerary_cmd, opts);
  add_output_options(itinerary_cmd, opts);
  itinerary_cmd->add_option("--x", x_text, "start point (see orbit --x)");
  itinerary_cmd->add_option("--depth", depth, "itinerary length");

  CLI::App* cylinder_cmd = app.add_subcommand(
      "cylinder", "cylinder disk of a binary word (FullShiftTwo)");
  add_map_options(cylinder_cmd, opts);
  add_output_options(cylinder_cmd, opts);
  cylinder_cmd
      ->add_option("--word", word_text, "comma-separated symbols, e.g. 1,2,1")
      ->required();

  CLI::App* fixed_cmd =
      app.add_subcommand("fixed-points", "fixed points with multipliers");
  add_map_options(fixed_cmd, opts);
  add_output_options(fixed_cmd, opts);

  CLI::App* escape_cmd = app.add_subcommand(
      "escape", "certified escape / core-region verdict for a start point");
  add_map_options(escape_cmd, opts);
  add_output_options(escape_cmd, opts);
  escape_cmd->add_option("--x", x_text, "start point (see orbit --x)");
  escape_cmd->add_option("--depth", depth, "iteration budget");

  CLI::App* entropy_cmd = app.add_subcommand(
      "entropy", "spectral radius and entropy of the 4-state coding matrix");
  add_output_options(entropy_cmd, opts);

  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose",
      "finite-level minimal-decomposition exploration (GoodReduction / "
      "MinimalOffOrigin)");
  add_map_options(decompose_cmd, opts);
  add_output_options(decompose_cmd, opts);
  decompose_cmd->add_option("--kmax", kmax, "deepest level (default by prime)");
  decompose_cmd->add_option("--samples", samples,
                            "landing-table sample count (default 50)");
  decompose_cmd->add_option("--seed", opts.seed, "sampling seed");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the verification suites and emit a verdict report");
  add_output_options(verify_cmd, opts);
  verify_cmd->add_option("--suite", suites, "run only the named suites");
  verify_cmd->add_option("--pairs", pairs, "override pair counts");
  verify_cmd->add_option("--samples", samples, "override sample counts");
  verify_cmd->add_option("--seed", opts.seed, "sampling seed");
  verify_cmd->add_flag("--inject-fault", inject_fault,
                       "self-test: flip one transition of A");

  std::string config_path;
  for (CLI::App* cmd : app.get_subcommands(nullptr)) {
    cmd->add_option("--config", config_path,
                    "flat key=value config file mirroring the flags; flags win");
  }

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (classify_cmd->parsed()) {
    MapParams params = params_from(opts);
    emit(to_json(classify_detail(params), params), opts);
    return 0;
  }
  if (orbit_cmd->parsed()) {
    MapParams params = params_from(opts);
    ProjPoint x = parse_point(x_text, params);
    Json points = Json::array();
    for (const ProjPoint& pt : orbit(params, x, depth)) {
      points.push_back(to_json(pt));
    }
    Json j;
    j["p"] = params.p;
    j["a"] = rational_to_string(params.a);
    j["regime"] = regime_name(classify(params));
    j["orbit"] = points;
    emit(j, opts);
    return 0;
  }
  if (itinerary_cmd->parsed()) {
    MapParams params = params_from(opts);
    ProjPoint x = parse_point(x_text, params);
    Regime regime = classify(params);
    ItineraryResult result = [&] {
      if (regime == Regime::FullShiftTwo) return itinerary2(params, x, depth);
      if (regime == Regime::ChaoticSFT) return itinerary4(params, x, depth);
      throw WrongRegime("itinerary: regime " + regime_name(regime) +
                        " has no symbolic coding");
    }();
    Json j;
    j["p"] = params.p;
    j["a"] = rational_to_string(params.a);
    j["regime"] = regime_name(regime);
    j["alphabet"] = result.word.alphabet_size;
    j["word"] = to_json(result.word);
    if (result.escape_step) j["escape_step"] = *result.escape_step;
    emit(j, opts);
    return 0;
  }
  if (cylinder_cmd->parsed()) {
    MapParams params = params_from(opts);
    std::vector<int> symbols;
    std::stringstream ss(word_text);
    std::string item;
    while (std::getline(ss, item, ',')) symbols.push_back(std::stoi(item));
    CylinderDisk cd = cylinder(params, Word(2, symbols));
    emit(to_json(cd), opts);
    return 0;
  }
  if (fixed_cmd->parsed()) {
    MapParams params = params_from(opts);
    Json fps = Json::array();
    for (const FixedPointInfo& f : fixed_points(params)) {
      fps.push_back(to_json(f));
    }
    Json j;
    j["p"] = params.p;
    j["a"] = rational_to_string(params.a);
    j["fixed_points"] = fps;
    if (params.a == 1) {
      j["note"] = "a = 1: the formula +-1/sqrt(1-a) degenerates; no finite "
                  "fixed points reported";
    }
    emit(j, opts);
    return 0;
  }
  if (escape_cmd->parsed()) {
    MapParams params = params_from(opts);
    ProjPoint x = parse_point(x_text, params);
    emit(to_json(escape_test(params, x, depth)), opts);
    return 0;
  }
  if (entropy_cmd->parsed()) {
    emit(to_json(entropy(transition_matrix4())), opts);
    return 0;
  }
  if (decompose_cmd->parsed()) {
    MapParams params = params_from(opts);
    int k = kmax > 0 ? kmax : default_kmax(params);
    int landing = samples > 0 ? samples : 50;
    emit(to_json(decompose_report(params, k, opts.seed, landing)), opts);
    return 0;
  }
  if (verify_cmd->parsed()) {
    VerifyOptions vopts;
    vopts.seed = opts.seed;
    vopts.pairs = pairs;
    vopts.samples = samples;
    vopts.inject_fault = inject_fault;
    std::vector<std::string> to_run =
        suites.empty() ? suite_names() : suites;
    Json reports = Json::array();
    long failures = 0;
    for (const std::string& name : to_run) {
      VerdictReport report = run_suite(name, vopts);
      failures += report.failures;
      Json j;
      j["suite"] = report.suite;
      j["cases"] = report.cases;
      j["failures"] = report.failures;
      j["witnesses"] = report.witnesses;
      j["wall_ms"] = report.wall_ms;
      if (!report.details.is_null()) j["details"] = report.details;
      reports.push_back(j);
      std::cerr << (report.passed() ? "[PASS] " : "[FAIL] ") << report.suite
                << " (" << report.cases << " cases, " << report.wall_ms
                << " ms)\n";
    }
    Json j;
    j["suites"] = reports;
    j["total_failures"] = failures;
    emit(j, opts);
    return failures == 0 ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const WrongRegime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
