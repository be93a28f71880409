#pragma once

// Command-line front end. Everything lives in run() so the test suite can
// drive it in-process.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dowker/dowker.hpp"

namespace dowker::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kBettiMismatch = 2, kSizeCap = 3 };

namespace detail {

struct Failure {
  int code;
  std::string message;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kInputError, "cannot write " + path};
}

inline std::size_t size_cap() {
  const char* env = std::getenv("DOWKER_SIZE_CAP");
  if (!env || !*env) return kDefaultSizeCap;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Failure{kInputError, std::string("DOWKER_SIZE_CAP must be a positive integer, got '") + env + "'"};
  }
}

// Relations read from .rel files may carry contained columns; the reducer
// needs an irreducible input, so those are cleaned up on load.
inline Relation load_relation(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  if (format == "rel") return make_column_irreducible(read_relation(text));
  if (format == "toplex") return from_toplexes(parse_toplex_file(text));
  return from_toplexes(normalize(parse_off(text)));
}

inline int default_max_dim(const ToplexList& list) { return std::clamp(max_toplex_dim(list), 2, 3); }

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

struct InputArgs {
  std::string input;
  std::string format;
};

inline void add_input(CLI::App* cmd, InputArgs& a) {
  cmd->add_option("-i,--input", a.input, "input file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-f,--format", a.format, "input format")
      ->required()
      ->check(CLI::IsMember({"rel", "toplex", "off"}));
}

struct ReduceArgs {
  InputArgs in;
  std::string output;
  std::string log;
  bool check_betti = false;
  bool json = false;
  bool no_time = false;
  std::optional<int> max_dim;
};

inline int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  const Relation input = load_relation(a.in.input, a.in.format);
  const auto t0 = std::chrono::steady_clock::now();
  const ReductionResult res = reduce(input);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!a.output.empty()) write_file(a.output, write_relation(res.relation));
  if (!a.log.empty()) {
    std::string text;
    for (std::size_t i = 0; i < res.steps.size(); ++i) text += format_step(res.steps[i], i + 1) + "\n";
    write_file(a.log, text);
  }

  std::vector<std::size_t> before, after;
  int d = 0;
  if (a.check_betti) {
    const ToplexList in_list = to_toplexes(input);
    d = a.max_dim.value_or(default_max_dim(in_list));
    const std::size_t cap = size_cap();
    before = betti_gf2(in_list, d, cap);
    after = betti_gf2(to_toplexes(res.relation), d, cap);
  }
  const bool match = before == after;
  const auto& st = res.stats;

  if (a.json) {
    nlohmann::ordered_json j;
    j["input"] = {{"rows", st.rows_before}, {"cols", st.cols_before}};
    j["output"] = {{"rows", st.rows_after}, {"cols", st.cols_after}};
    j["steps"] = st.steps_applied;
    j["tests"] = st.contractibility_tests;
    j["budget"] = st.comparison_budget;
    if (a.check_betti) {
      j["max_dim"] = d;
      j["betti_before"] = before;
      j["betti_after"] = after;
      j["betti_preserved"] = match;
    }
    if (!a.no_time) j["wall_seconds"] = wall;
    out << j.dump(2) << "\n";
  } else {
    out << "input-rows: " << st.rows_before << "\n"
        << "input-cols: " << st.cols_before << "\n"
        << "output-rows: " << st.rows_after << "\n"
        << "output-cols: " << st.cols_after << "\n"
        << "steps: " << st.steps_applied << "\n"
        << "tests: " << st.contractibility_tests << "\n"
        << "budget: " << st.comparison_budget << "\n";
    if (a.check_betti) {
      out << "betti-before: " << join(before) << "\n"
          << "betti-after: " << join(after) << "\n"
          << "betti-preserved: " << (match ? "yes" : "no") << "\n";
    }
    if (!a.no_time) {
      std::ostringstream w;
      w.setf(std::ios::fixed);
      w.precision(6);
      w << wall;
      out << "wall-seconds: " << w.str() << "\n";
    }
  }
  if (!match) throw Failure{kBettiMismatch, "Betti numbers changed: " + join(before) + " vs " + join(after)};
  return kOk;
}

struct BettiArgs {
  InputArgs in;
  std::optional<int> max_dim;
  bool json = false;
};

inline int cmd_betti(const BettiArgs& a, std::ostream& out) {
  const ToplexList list = to_toplexes(load_relation(a.in.input, a.in.format));
  const int d = a.max_dim.value_or(default_max_dim(list));
  const auto b = betti_gf2(list, d, size_cap());
  if (a.json) {
    nlohmann::ordered_json j;
    j["max_dim"] = d;
    j["betti"] = b;
    out << j.dump(2) << "\n";
  } else {
    out << join(b) << "\n";
  }
  return kOk;
}

struct GenArgs {
  std::string shape;
  std::string output;
  std::size_t m = 4, n = 4, slices = 24, stacks = 21;
};

inline int cmd_gen(const GenArgs& a, CLI::App* gen, std::ostream& out) {
  ToplexList list;
  if (a.shape == "sphere-cube") {
    list = gen_sphere_cube();
  } else if (a.shape == "sphere-uv") {
    list = gen_sphere_uv(a.slices, a.stacks);
  } else if (a.shape == "torus") {
    list = gen_torus_grid(a.m, a.n);
  } else {
    if (gen->count("--n") == 0) throw Failure{kInputError, "simplex-boundary needs --n"};
    list = gen_simplex_boundary(a.n);
  }
  const std::string text = write_toplex_file(list);
  if (a.output.empty()) {
    out << text;
  } else {
    write_file(a.output, text);
  }
  return kOk;
}

struct CheckArgs {
  InputArgs in;
  bool json = false;
};

inline int cmd_check(const CheckArgs& a, std::ostream& out) {
  const std::string text = read_file(a.in.input);
  // Checked before any clean-up so the answer describes the file as given.
  const Relation r = a.in.format == "rel"      ? read_relation(text)
                     : a.in.format == "toplex" ? from_toplexes(parse_toplex_file(text))
                                               : from_toplexes(normalize(parse_off(text)));
  const bool irreducible = is_column_irreducible(r);
  const Relation core = collapse_core(r);
  const bool collapsible = core.rows() == 1 && core.cols() == 1;
  if (a.json) {
    nlohmann::ordered_json j;
    j["rows"] = r.rows();
    j["cols"] = r.cols();
    j["column_irreducible"] = irreducible;
    j["strong_collapsible"] = collapsible;
    j["core"] = {{"rows", core.rows()}, {"cols", core.cols()}};
    out << j.dump(2) << "\n";
  } else {
    out << "column-irreducible: " << (irreducible ? "yes" : "no") << "\n"
        << "strong-collapsible: " << (collapsible ? "yes" : "no") << " (core " << core.rows() << "x" << core.cols()
        << ")\n";
  }
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homology-preserving reduction of vertex-toplex relations", "dowker"};
  app.require_subcommand(1);

  detail::ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a complex and report sizes");
  detail::add_input(reduce_cmd, ra.in);
  reduce_cmd->add_option("-o,--output", ra.output, "write the reduced relation here");
  reduce_cmd->add_option("--log", ra.log, "write the step log here");
  reduce_cmd->add_flag("--check-betti", ra.check_betti, "compare Betti numbers before and after");
  reduce_cmd->add_option("--max-dim", ra.max_dim, "top homology dimension for --check-betti")->check(CLI::NonNegativeNumber);
  reduce_cmd->add_flag("--json", ra.json, "JSON report");
  reduce_cmd->add_flag("--no-time", ra.no_time, "omit wall time from the report");

  detail::BettiArgs ba;
  auto* betti_cmd = app.add_subcommand("betti", "print mod-2 Betti numbers");
  detail::add_input(betti_cmd, ba.in);
  betti_cmd->add_option("--max-dim", ba.max_dim, "top dimension")->check(CLI::NonNegativeNumber);
  betti_cmd->add_flag("--json", ba.json, "JSON output");

  detail::GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated toplex file");
  gen_cmd->add_option("shape", ga.shape, "shape")
      ->required()
      ->check(CLI::IsMember({"sphere-cube", "sphere-uv", "torus", "simplex-boundary"}));
  gen_cmd->add_option("--m", ga.m, "torus rows")->capture_default_str();
  gen_cmd->add_option("--n", ga.n, "torus columns, or simplex-boundary dimension")->capture_default_str();
  gen_cmd->add_option("--slices", ga.slices, "sphere-uv slices")->capture_default_str();
  gen_cmd->add_option("--stacks", ga.stacks, "sphere-uv stacks")->capture_default_str();
  gen_cmd->add_option("-o,--output", ga.output, "output file (default stdout)");

  detail::CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "column irreducibility and strong collapsibility");
  detail::add_input(check_cmd, ca.in);
  check_cmd->add_flag("--json", ca.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*reduce_cmd) return detail::cmd_reduce(ra, out);
    if (*betti_cmd) return detail::cmd_betti(ba, out);
    if (*gen_cmd) return detail::cmd_gen(ga, gen_cmd, out);
    return detail::cmd_check(ca, out);
  } catch (const detail::Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const SizeCapError& e) {
    err << "error: " << e.what() << "\n";
    return kSizeCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace dowker::cli
