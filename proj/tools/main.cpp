#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "seqevolve/circuit.hpp"
#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/oracle.hpp"
#include "seqevolve/synthesizer.hpp"

namespace fs = std::filesystem;
using namespace seqevolve;
using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "benchmark,target,run,seed,generations,termination,design,gates,final\n";

int env_threads() {
  const char* v = std::getenv("SEQEVOLVE_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Write to a temp file in the target directory, then rename into place.
void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const auto& r : records) {
    os << r.benchmark << ',' << r.target_id << ',' << r.run_index << ',' << r.seed << ','
       << r.generations << ',' << r.termination << ',' << r.design << ',' << r.gates << ','
       << r.final_score << '\n';
  }
  return os.str();
}

struct CommonFlags {
  std::string fsm_path;
  int rows = 4, cols = 4;
  std::string connectivity = "all-left";
  bool fixed_types = false;
  int pop = 10;
  int max_gens = 40000;
  int stall = 20000;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;
  int elitism = 1;
  int runs = 1;
  std::uint64_t seed = 0;
  std::string target = "all";
  std::string out_dir;
};

void add_ga_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--fsm", f.fsm_path, "FSM spec file (JSON)")->required();
  cmd->add_option("--rows", f.rows, "array rows");
  cmd->add_option("--cols", f.cols, "array columns");
  cmd->add_option("--connectivity", f.connectivity, "all-left|neighbor")
      ->check(CLI::IsMember({"all-left", "neighbor"}));
  cmd->add_flag("--fixed-types", f.fixed_types, "fix gate types to a row pattern");
  cmd->add_option("--pop", f.pop, "population size");
  cmd->add_option("--max-gens", f.max_gens, "maximum generations");
  cmd->add_option("--stall", f.stall, "stall generations");
  cmd->add_option("--crossover-rate", f.crossover_rate, "crossover probability");
  cmd->add_option("--mutation-rate", f.mutation_rate, "per-bit mutation probability");
  cmd->add_option("--elitism", f.elitism, "preserved best individuals");
  cmd->add_option("--runs", f.runs, "independent runs per subcircuit");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--target", f.target, "all|dff:NAME|out:NAME");
  cmd->add_option("--out", f.out_dir, "output directory")->required();
}

SynthesisOptions make_options(const CommonFlags& f) {
  SynthesisOptions opt;
  opt.rows = f.rows;
  opt.cols = f.cols;
  opt.connectivity = connectivity_from_string(f.connectivity);
  opt.fixed_gate_types = f.fixed_types;
  opt.runs = f.runs;
  opt.ga.population_size = f.pop;
  opt.ga.max_generations = f.max_gens;
  opt.ga.stall_generations = f.stall;
  opt.ga.crossover_rate = f.crossover_rate;
  opt.ga.mutation_rate = f.mutation_rate;
  opt.ga.elitism = f.elitism;
  opt.ga.seed = f.seed;
  opt.threads = env_threads();
  if (f.target != "all") opt.target_filter = f.target;
  return opt;
}

int run_evolve(const CommonFlags& f) {
  FsmSpec spec = parse_fsm(read_file(f.fsm_path));
  SynthesisOptions opt = make_options(f);
  fs::create_directories(f.out_dir);
  fs::path out(f.out_dir);
  try {
    SynthesisOutcome result = synthesize(spec, opt);
    bool full = !opt.target_filter;
    if (full) {
      write_file_atomic(out / "circuit.json", export_circuit(result.circuit).dump(2) + "\n");
      write_file_atomic(out / "expressions.txt", circuit_expressions(result.circuit));
    }
    write_file_atomic(out / "report.json", result.report.to_json().dump(2) + "\n");
    write_file_atomic(out / "stats.csv", records_csv(result.records));
    for (const auto& s : result.report.subcircuits)
      std::cout << s.target_id << ": gates=" << s.gates << " generations=" << s.generations
                << " expr=" << s.expression << "\n";
    std::cout << "total gates: " << result.report.total_gates << "\n";
    if (full) {
      std::cout << "verification: " << (result.report.verified ? "pass" : "FAIL") << "\n";
      return result.report.verified ? 0 : 1;
    }
    return 0;
  } catch (const SynthesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_bench(const CommonFlags& f) {
  FsmSpec spec = parse_fsm(read_file(f.fsm_path));
  SynthesisOptions opt = make_options(f);
  opt.allow_failure = true;
  SynthesisOutcome result = synthesize(spec, opt);

  std::ostringstream summary;
  summary << "target runs success gens_min gens_med gens_max gates_min gates_med gates_max\n";
  for (const auto& s : result.report.subcircuits) {
    std::vector<int> gens, gates;
    for (const auto& r : result.records) {
      if (r.target_id != s.target_id) continue;
      gens.push_back(r.generations);
      gates.push_back(r.gates);
    }
    std::sort(gens.begin(), gens.end());
    std::sort(gates.begin(), gates.end());
    summary << s.target_id << ' ' << f.runs << ' ' << s.successful_runs << ' ' << gens.front()
            << ' ' << gens[gens.size() / 2] << ' ' << gens.back() << ' ' << gates.front() << ' '
            << gates[gates.size() / 2] << ' ' << gates.back() << '\n';
  }
  fs::create_directories(f.out_dir);
  fs::path out(f.out_dir);
  write_file_atomic(out / "stats.csv", records_csv(result.records));
  write_file_atomic(out / "summary.txt", summary.str());
  std::cout << summary.str();
  return 0;
}

int run_verify(const std::string& circuit_path, const std::string& fsm_path) {
  FsmSpec spec = parse_fsm(read_file(fsm_path));
  SequentialCircuit circuit = import_circuit(json::parse(read_file(circuit_path)), spec);
  auto mismatches = verify(circuit, spec);
  for (const auto& m : mismatches)
    std::cout << "mismatch: state=" << m.state << " input=" << bits_to_string(m.input)
              << " field=" << m.field << " expected=" << int(m.expected) << " got=" << int(m.got)
              << "\n";
  std::cout << (mismatches.empty() ? "pass" : "FAIL: " + std::to_string(mismatches.size()) +
                                                  " mismatches")
            << "\n";
  return mismatches.empty() ? 0 : 1;
}

int run_show(const std::string& circuit_path, const std::string& format) {
  json doc = json::parse(read_file(circuit_path));
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  for (const auto& entry : doc.at("subcircuits")) {
    ImportedNetlist net = import_netlist(entry);
    std::string id = entry.at("target").get<std::string>();
    std::string name = id.substr(id.find(':') + 1);
    if (format == "expr") {
      std::string lhs = id.rfind("dff:", 0) == 0 ? "D_" + name : name;
      std::cout << lhs << "=" << to_expression(net.phenotype, net.pi_names, net.ps_names) << "\n";
    } else {
      std::cout << to_dot(net.phenotype, net.pi_names, net.ps_names, id);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GA-based synthesis of sequential circuits from FSM specs"};
  app.require_subcommand(1);

  CommonFlags evolve_flags, bench_flags;
  auto* evolve = app.add_subcommand("evolve", "evolve a circuit for an FSM spec");
  add_ga_flags(evolve, evolve_flags);
  auto* bench = app.add_subcommand("bench", "batch statistics over repeated runs");
  add_ga_flags(bench, bench_flags);

  std::string verify_circuit, verify_fsm;
  auto* verify_cmd = app.add_subcommand("verify", "check a circuit against an FSM spec");
  verify_cmd->add_option("--circuit", verify_circuit, "circuit JSON")->required();
  verify_cmd->add_option("--fsm", verify_fsm, "FSM spec file")->required();

  std::string show_circuit, show_format = "expr";
  auto* show = app.add_subcommand("show", "render a circuit");
  show->add_option("--circuit", show_circuit, "circuit JSON")->required();
  show->add_option("--format", show_format, "expr|json|dot")
      ->check(CLI::IsMember({"expr", "json", "dot"}));

  std::string bench_out = "seqdet6.json";
  auto* emit = app.add_subcommand("benchmark", "write the bundled detector benchmark FSM");
  emit->add_option("--out", bench_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*evolve) return run_evolve(evolve_flags);
    if (*bench) return run_bench(bench_flags);
    if (*verify_cmd) return run_verify(verify_circuit, verify_fsm);
    if (*show) return run_show(show_circuit, show_format);
    if (*emit) {
      write_file_atomic(bench_out, serialize_fsm(oracle::derive_benchmark_fsm()));
      std::cout << "wrote " << bench_out << "\n";
      return 0;
    }
  } catch (const FsmParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FsmValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
