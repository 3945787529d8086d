#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flowdec/decomposers.hpp"
#include "flowdec/exact.hpp"
#include "flowdec/generators.hpp"
#include "flowdec/io.hpp"
#include "flowdec/structure.hpp"

namespace flowdec::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3 };

namespace detail {

using nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(Errc::ParseError, "cannot write " + path);
}

inline std::int64_t default_pw_budget() {
  if (const char* env = std::getenv("FLOWDEC_PW_BUDGET")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultPwBudget;
}

inline std::string ratio(std::size_t size, Weight lower) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << (lower > 0 ? static_cast<double>(size) / static_cast<double>(lower) : 0.0);
  return os.str();
}

inline std::string join(const std::vector<std::int64_t>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

struct FlowReport {
  Weight value = 0, max_flow = 0;
  int log_factor = 0;
  std::optional<Weight> width_support, fwidth;
};

inline FlowReport flow_report(const FlowNetwork& net) {
  FlowReport r{net.value(), net.max_weight(), net.log_factor(), std::nullopt, std::nullopt};
  if (r.value > 0) {
    r.width_support = width(flow_subgraph(net).network.graph_ptr()).value;
    r.fwidth = flow_width(net).value;
  }
  return r;
}

template <class T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

// ---------------------------------------------------------------------------

inline int analyze(const std::string& input, bool json, std::int64_t budget, std::ostream& out) {
  GraphFile file = parse_graph(read_file(input));
  const FlowNetwork& net = file.network;
  const StructureReport s = analyze_structure(net.graph(), budget);
  const FlowReport f = flow_report(net);
  if (json) {
    ordered_json j;
    j["vertices"] = net.graph().vertex_count();
    j["edges"] = net.graph().edge_count();
    j["value"] = f.value;
    j["max_flow"] = f.max_flow;
    j["log_factor"] = f.log_factor;
    j["width"] = s.width;
    j["width_support"] = opt(f.width_support);
    j["fwidth"] = opt(f.fwidth);
    j["pw"] = {{"lower", s.parallel_width.lower}, {"upper", s.parallel_width.upper}, {"exact", s.parallel_width.exact}};
    j["width_stable"] = s.stability.stable;
    j["ch2_witness"] = s.stability.witness ? ordered_json::array({s.stability.witness->first, s.stability.witness->second})
                                           : ordered_json(nullptr);
    out << j.dump() << '\n';
    return kOk;
  }
  auto row = [&](const char* key, const std::string& value) { out << std::left << std::setw(16) << key << value << '\n'; };
  auto text = [](const std::optional<Weight>& v) { return v ? std::to_string(*v) : std::string("-"); };
  row("vertices", std::to_string(net.graph().vertex_count()));
  row("edges", std::to_string(net.graph().edge_count()));
  row("value", std::to_string(f.value));
  row("max_flow", std::to_string(f.max_flow));
  row("log_factor", std::to_string(f.log_factor));
  row("width", std::to_string(s.width));
  row("width_support", text(f.width_support));
  row("fwidth", text(f.fwidth));
  if (s.parallel_width.exact)
    row("pw", std::to_string(s.parallel_width.lower));
  else
    row("pw", "[" + std::to_string(s.parallel_width.lower) + ", " + std::to_string(s.parallel_width.upper) + "] (budget)");
  row("width_stable", s.stability.stable ? "true" : "false");
  if (s.stability.witness)
    row("ch2_witness", std::to_string(s.stability.witness->first) + " " + std::to_string(s.stability.witness->second));
  return kOk;
}

struct DecomposeOutcome {
  Decomposition decomposition;
  DecompositionStats stats;
  std::optional<bool> optimal;
};

inline DecomposeOutcome run_algorithm(const FlowNetwork& net, const std::string& algo, std::int64_t budget) {
  DecomposeOutcome o;
  if (algo == "parityfix") {
    auto r = parity_fix_decompose(net);
    o.decomposition = std::move(r.decomposition);
    o.stats = std::move(r.stats);
    return o;
  }
  o.stats.log_factor = net.log_factor();
  if (algo == "greedy") {
    o.decomposition = greedy_decompose(net);
    o.stats.lower_bound = mfd_lower_bound(net);
  } else {
    auto r = exact_mfd(net, ExactLimits{budget});
    o.decomposition = std::move(r.decomposition);
    o.stats.lower_bound = r.lower_bound;
    o.optimal = r.optimal;
  }
  o.stats.size = o.decomposition.size();
  return o;
}

inline int decompose(const std::string& input, const std::string& algo, const std::string& out_path, bool json,
                     std::int64_t budget, std::ostream& out, std::ostream& err) {
  GraphFile file = parse_graph(read_file(input));
  const FlowNetwork& net = file.network;
  DecomposeOutcome o = run_algorithm(net, algo, budget);
  const Verdict verdict = verify(net, o.decomposition);
  if (!verdict) {
    err << "internal verification failed: " << verdict.describe() << '\n';
    return kVerifyFailed;
  }
  const std::string body = serialize_decomposition(o.decomposition, &net.graph());
  if (!out_path.empty()) write_file(out_path, body);

  if (json) {
    ordered_json j;
    j["algo"] = algo;
    j["size"] = o.stats.size;
    j["lower_bound"] = o.stats.lower_bound;
    j["ratio"] = ratio(o.stats.size, o.stats.lower_bound);
    j["log_factor"] = o.stats.log_factor;
    j["optimal"] = opt(o.optimal);
    j["iterations"] = ordered_json::array();
    for (const auto& it : o.stats.iterations)
      j["iterations"].push_back({{"i", it.index}, {"value", it.value}, {"fwidth", it.flow_width}});
    j["paths"] = ordered_json::array();
    for (const auto& p : o.decomposition.paths) j["paths"].push_back({{"weight", p.weight}, {"edges", p.edges}});
    out << j.dump() << '\n';
  } else {
    if (out_path.empty()) out << body;
    out << "# algo " << algo << '\n';
    out << "# size " << o.stats.size << '\n';
    out << "# lower_bound " << o.stats.lower_bound << '\n';
    out << "# ratio " << ratio(o.stats.size, o.stats.lower_bound) << '\n';
    if (o.optimal) out << "# optimal " << (*o.optimal ? "true" : "false") << '\n';
    if (!o.stats.iterations.empty()) {
      out << "# i val(f_i) fwidth\n";
      for (const auto& it : o.stats.iterations) out << "# " << it.index << ' ' << it.value << ' ' << it.flow_width << '\n';
    }
  }
  if (o.optimal && !*o.optimal) {
    err << "exact search budget exhausted; best decomposition found was emitted\n";
    return kBudget;
  }
  return kOk;
}

inline int verify_files(const std::string& graph_path, const std::string& decomposition_path, std::ostream& out) {
  GraphFile file = parse_graph(read_file(graph_path));
  Decomposition d = parse_decomposition(read_file(decomposition_path), &file.network.graph());
  const Verdict v = verify(file.network, d);
  if (v) {
    out << "ok: " << d.size() << " paths\n";
    return kOk;
  }
  out << "verification failed: " << v.describe() << '\n';
  return kVerifyFailed;
}

inline std::string header_for(const InstanceSpec& spec) {
  return " " + std::string(family_name(spec.family)) + " " + join(spec.parameters, " ") + " seed " + std::to_string(spec.seed);
}

inline int gen(const std::string& family, const std::vector<std::int64_t>& params, std::uint64_t seed,
               const std::string& out_path, std::ostream& out) {
  auto fam = family_from_name(family);
  if (!fam) throw Error(Errc::InvalidParameters, "unknown family '" + family + "'");
  InstanceSpec spec{*fam, params, seed};
  GeneratedInstance inst = generate(spec);
  const std::string text = serialize_graph(inst.network, {header_for(spec)});
  if (out_path.empty()) {
    out << text;
    return kOk;
  }
  write_file(out_path, text);
  if (inst.witness) write_file(out_path + ".witness", serialize_decomposition(*inst.witness, &inst.network.graph()));
  return kOk;
}

/// Parameters used by `bench` for one size value.
inline std::vector<std::int64_t> bench_parameters(Family family, std::int64_t size) {
  if (size < 1) throw Error(Errc::InvalidParameters, "sizes must be positive");
  switch (family) {
    case Family::Genset: {
      std::vector<std::int64_t> a;
      for (std::int64_t i = 1; i <= size; ++i) a.push_back(i);
      return a;
    }
    case Family::ThreePartition: {
      std::vector<std::int64_t> p{30};
      for (std::int64_t j = 0; j < size; ++j) {
        const std::int64_t shift = j % 2;
        p.insert(p.end(), {9 + shift, 10, 11 - shift});
      }
      return p;
    }
    case Family::Chk:
    case Family::Pc: return {size};
    case Family::RandomPaths: return {size + 4, size, 16};
    case Family::SeriesParallel: return {size, 100};
    case Family::Adversarial: return {size, size};
  }
  return {};
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline int bench(const std::string& families, const std::string& sizes, const std::string& algos, std::uint64_t seed,
                 const std::string& out_path, bool timing, std::int64_t budget, std::int64_t pw_budget, std::ostream& out,
                 std::ostream& err) {
  std::vector<Family> fams;
  for (const auto& name : split_list(families)) {
    auto f = family_from_name(name);
    if (!f) throw Error(Errc::InvalidParameters, "unknown family '" + name + "'");
    fams.push_back(*f);
  }
  std::vector<std::int64_t> size_list;
  for (const auto& s : split_list(sizes)) size_list.push_back(flowdec::detail::parse_int(s, 0, "size"));
  std::vector<std::string> algo_list = split_list(algos);
  for (const auto& a : algo_list)
    if (a != "parityfix" && a != "greedy" && a != "exact") throw Error(Errc::InvalidParameters, "unknown algorithm '" + a + "'");
  if (fams.empty() || size_list.empty() || algo_list.empty()) throw Error(Errc::InvalidParameters, "empty bench configuration");

  std::ostringstream csv;
  csv << "family,params,n,m,val,maxflow,width,fwidth,pw,algo,size,lower_bound,ratio,wall_ms\n";
  bool dominance_ok = true;
  for (Family fam : fams) {
    for (std::int64_t size : size_list) {
      InstanceSpec spec{fam, bench_parameters(fam, size), seed};
      GeneratedInstance inst = generate(spec);
      const FlowNetwork& net = inst.network;
      const MultiDag& g = net.graph();
      const ParallelWidth pw = parallel_width(g, pw_budget);
      const std::string pw_text = pw.exact ? std::to_string(pw.lower) : std::to_string(pw.lower) + ".." + std::to_string(pw.upper);
      const Weight w = width(g).value;
      const Weight fw = flow_width(net).value;
      std::map<std::string, std::size_t> sizes_by_algo;
      std::optional<bool> exact_optimal;
      for (const auto& algo : algo_list) {
        const auto start = std::chrono::steady_clock::now();
        DecomposeOutcome o = run_algorithm(net, algo, budget);
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!verify(net, o.decomposition)) {
          err << "verification failed for " << family_name(fam) << ' ' << size << ' ' << algo << '\n';
          return kVerifyFailed;
        }
        sizes_by_algo[algo] = o.decomposition.size();
        if (o.optimal) exact_optimal = o.optimal;
        csv << family_name(fam) << ',' << join(spec.parameters, ";") << ',' << g.vertex_count() << ',' << g.edge_count() << ','
            << net.value() << ',' << net.max_weight() << ',' << w << ',' << fw << ',' << pw_text << ',' << algo << ','
            << o.decomposition.size() << ',' << fw << ',' << ratio(o.decomposition.size(), fw) << ','
            << (timing ? static_cast<std::int64_t>(ms) : 0) << '\n';
      }
      if (exact_optimal.value_or(false)) {
        const std::size_t best = sizes_by_algo.at("exact");
        for (const auto& [algo, s] : sizes_by_algo)
          if (s < best) {
            dominance_ok = false;
            err << "dominance violated on " << family_name(fam) << ' ' << size << ": " << algo << " beats exact\n";
          }
      }
    }
  }
  if (out_path.empty())
    out << csv.str();
  else
    write_file(out_path, csv.str());
  return dominance_ok ? kOk : kVerifyFailed;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum flow decomposition toolkit"};
  app.require_subcommand(1);

  std::string input, decomposition_path, out_path, algo = "parityfix", family;
  std::string families, sizes, algos = "parityfix,greedy,exact";
  bool json = false, no_timing = false;
  std::int64_t pw_budget = detail::default_pw_budget();
  std::int64_t budget = ExactLimits{}.node_budget;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> params;

  auto* analyze = app.add_subcommand("analyze", "Structural and flow report");
  analyze->add_option("input", input, "Graph file")->required();
  analyze->add_flag("--json", json, "Emit one JSON object");
  analyze->add_option("--pw-budget", pw_budget, "Parallel-width search budget (nodes)")->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "Decompose the flow into weighted paths");
  decompose->add_option("input", input, "Graph file")->required();
  decompose->add_option("--algo", algo, "parityfix | greedy | exact")->check(CLI::IsMember({"parityfix", "greedy", "exact"}));
  decompose->add_option("--out", out_path, "Decomposition output file");
  decompose->add_flag("--json", json, "Emit one JSON object");
  decompose->add_option("--budget", budget, "Exact search budget (nodes)")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Check a decomposition against a graph file");
  verify_cmd->add_option("graph", input, "Graph file")->required();
  verify_cmd->add_option("decomposition", decomposition_path, "Decomposition file")->required();

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("family", family, "genset | threepart | chk | pc | random_paths | series_parallel | adversarial")->required();
  gen->add_option("params", params, "Family parameters");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", out_path, "Graph output file (witness goes to <out>.witness)");

  auto* bench = app.add_subcommand("bench", "Benchmark algorithms over generated families");
  bench->add_option("--families", families, "Comma-separated families")->required();
  bench->add_option("--sizes", sizes, "Comma-separated size values")->required();
  bench->add_option("--algos", algos, "Comma-separated algorithms");
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--out", out_path, "CSV output file");
  bench->add_flag("--no-timing", no_timing, "Write 0 in wall_ms for byte-stable output");
  bench->add_option("--budget", budget, "Exact search budget (nodes)")->check(CLI::PositiveNumber);
  bench->add_option("--pw-budget", pw_budget, "Parallel-width search budget (nodes)")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*analyze) return detail::analyze(input, json, pw_budget, out);
    if (*decompose) return detail::decompose(input, algo, out_path, json, budget, out, err);
    if (*verify_cmd) return detail::verify_files(input, decomposition_path, out);
    if (*gen) return detail::gen(family, params, seed, out_path, out);
    if (*bench) return detail::bench(families, sizes, algos, seed, out_path, !no_timing, budget, pw_budget, out, err);
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace flowdec::cli
