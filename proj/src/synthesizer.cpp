#include "seqevolve/synthesizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>
#include <tuple>

namespace seqevolve {

using nlohmann::json;

SynthesisError::SynthesisError(std::string target, int best, int max_design)
    : std::runtime_error("synthesis failed for target " + target + ": best design fitness " +
                         std::to_string(best) + "/" + std::to_string(max_design)),
      target_id(std::move(target)),
      best_design(best),
      design_max(max_design) {}

int SequentialCircuit::total_gates() const {
  int total = 0;
  for (const auto& p : next_state_subcircuits) total += used_gates(p).count;
  for (const auto& p : output_subcircuits) total += used_gates(p).count;
  return total;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t target_index,
                              std::size_t run_index) {
  return splitmix64(splitmix64(master_seed ^ (0x7461726765740000ULL + target_index)) ^
                    (0x72756e0000000000ULL + run_index));
}

json SynthesisReport::to_json() const {
  json j;
  j["fsm"] = fsm_name;
  j["total_gates"] = total_gates;
  j["verified"] = verified;
  j["subcircuits"] = json::array();
  for (const auto& s : subcircuits) {
    j["subcircuits"].push_back({{"target", s.target_id},
                                {"gates", s.gates},
                                {"generations", s.generations},
                                {"expression", s.expression},
                                {"successful_runs", s.successful_runs},
                                {"generations_to_functionality",
                                 {{"min", s.min_gens_to_func},
                                  {"median", s.median_gens_to_func},
                                  {"max", s.max_gens_to_func}}},
                                {"wall_ms", s.wall_ms}});
  }
  return j;
}

namespace {

struct RunOutcome {
  RunResult result;
  double wall_ms{};
};

void run_tasks(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int n = std::min<std::size_t>(threads, count);
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  for (auto& th : pool) th.join();
}

// Fully functional first, then fewer used gates, then fewer generations.
bool better_run(const RunResult& a, const RunResult& b) {
  auto key = [](const RunResult& r) {
    return std::tuple<int, int, int>(r.best_report.fully_functional ? 0 : 1,
                                     -r.best_report.final_score, r.generations_run);
  };
  return key(a) < key(b);
}

}  // namespace

SynthesisOutcome synthesize(const FsmSpec& spec, const SynthesisOptions& options) {
  if (options.runs < 1) throw std::invalid_argument("runs must be >= 1");
  options.ga.validate();

  auto all_targets = derive_targets(spec);
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < all_targets.size(); ++i)
    if (!options.target_filter || *options.target_filter == "all" ||
        all_targets[i].id() == *options.target_filter)
      selected.push_back(i);
  if (selected.empty()) throw std::invalid_argument("target filter matches no target");

  LayoutPtr layout = build_layout(options.rows, options.cols, int(spec.input_bits.size()),
                                  int(spec.state_bits.size()), options.connectivity,
                                  options.fixed_gate_types);

  std::size_t total_runs = selected.size() * options.runs;
  std::vector<RunOutcome> outcomes(total_runs);
  std::vector<PackedTarget> packed;
  packed.reserve(selected.size());
  for (std::size_t s : selected) packed.push_back(PackedTarget::pack(all_targets[s]));

  run_tasks(total_runs, options.threads, [&](std::size_t task) {
    std::size_t ti = task / options.runs;
    std::size_t run = task % options.runs;
    GaConfig cfg = options.ga;
    cfg.seed = derive_run_seed(options.ga.seed, selected[ti], run);
    auto start = std::chrono::steady_clock::now();
    outcomes[task].result = run_ga(layout, packed[ti], cfg);
    outcomes[task].wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  });

  SynthesisOutcome out;
  out.circuit.spec = spec;
  out.circuit.layout = layout;
  out.circuit.next_state_subcircuits.resize(spec.state_bits.size());
  out.circuit.output_subcircuits.resize(spec.output_bits.size());
  out.report.fsm_name = spec.name;

  bool partial = selected.size() != all_targets.size();

  for (std::size_t ti = 0; ti < selected.size(); ++ti) {
    const TargetFunction& target = all_targets[selected[ti]];
    const RunResult* best = nullptr;
    SubcircuitResult sub;
    sub.target_id = target.id();
    std::vector<int> gens_to_func;
    for (int run = 0; run < options.runs; ++run) {
      const RunOutcome& o = outcomes[ti * options.runs + run];
      const RunResult& r = o.result;
      RunRecord rec;
      rec.benchmark = spec.name;
      rec.target_id = target.id();
      rec.run_index = run;
      rec.seed = derive_run_seed(options.ga.seed, selected[ti], run);
      rec.generations = r.generations_run;
      rec.termination = to_string(r.termination);
      rec.design = r.best_report.design;
      rec.gates = options.rows * options.cols - r.best_report.optimization;
      rec.final_score = r.best_report.final_score;
      rec.generations_to_functionality = r.generations_to_functionality;
      out.records.push_back(std::move(rec));
      sub.wall_ms += o.wall_ms;
      if (r.best_report.fully_functional) {
        ++sub.successful_runs;
        gens_to_func.push_back(r.generations_to_functionality);
      }
      if (!best || better_run(r, *best)) best = &r;
    }
    if (!best->best_report.fully_functional && !options.allow_failure)
      throw SynthesisError(target.id(), best->best_report.design, best->best_report.design_max);

    sub.chromosome = best->best;
    sub.phenotype = decode(layout, best->best);
    sub.report = best->best_report;
    sub.gates = used_gates(sub.phenotype).count;
    sub.generations = best->generations_run;
    sub.expression = to_expression(sub.phenotype, spec.input_bits, spec.state_bits);
    if (!gens_to_func.empty()) {
      std::sort(gens_to_func.begin(), gens_to_func.end());
      sub.min_gens_to_func = gens_to_func.front();
      sub.max_gens_to_func = gens_to_func.back();
      sub.median_gens_to_func = gens_to_func[gens_to_func.size() / 2];
    }

    if (target.kind == TargetKind::NextStateBit)
      out.circuit.next_state_subcircuits[target.bit_index] = sub.phenotype;
    else
      out.circuit.output_subcircuits[target.bit_index] = sub.phenotype;
    out.report.subcircuits.push_back(std::move(sub));
  }

  if (partial) {
    for (const auto& s : out.report.subcircuits) out.report.total_gates += s.gates;
    out.report.verified = false;
  } else {
    out.report.total_gates = out.circuit.total_gates();
    out.report.verified = verify(out.circuit, spec).empty();
  }
  return out;
}

std::pair<Bits, Bits> step(const SequentialCircuit& circuit, const Bits& state_code,
                           const Bits& input_vector) {
  if (state_code.size() != circuit.spec.state_bits.size() ||
      input_vector.size() != circuit.spec.input_bits.size())
    throw std::invalid_argument("state or input width mismatch");
  Bits next(state_code.size()), outputs(circuit.spec.output_bits.size());
  for (std::size_t i = 0; i < next.size(); ++i)
    next[i] = evaluate(circuit.next_state_subcircuits[i], input_vector, state_code);
  for (std::size_t i = 0; i < outputs.size(); ++i)
    outputs[i] = evaluate(circuit.output_subcircuits[i], input_vector, state_code);
  return {next, outputs};
}

namespace {

std::vector<Mismatch> check_vectors(const SequentialCircuit& circuit,
                                    const std::vector<EvalVector>& vectors, const FsmSpec& spec) {
  std::vector<Mismatch> mismatches;
  for (const auto& v : vectors) {
    auto [next, outputs] = step(circuit, v.present_state_code, v.input_vector);
    std::string state_name = bits_to_string(v.present_state_code);
    for (const auto& s : spec.states)
      if (s.code == v.present_state_code) state_name = s.name;
    for (std::size_t i = 0; i < next.size(); ++i)
      if (next[i] != v.expected_next_state[i])
        mismatches.push_back({state_name, v.input_vector, "dff:" + spec.state_bits[i],
                              v.expected_next_state[i], next[i]});
    for (std::size_t i = 0; i < outputs.size(); ++i)
      if (outputs[i] != v.expected_outputs[i])
        mismatches.push_back({state_name, v.input_vector, "out:" + spec.output_bits[i],
                              v.expected_outputs[i], outputs[i]});
  }
  return mismatches;
}

}  // namespace

std::vector<Mismatch> verify(const SequentialCircuit& circuit, const FsmSpec& spec) {
  return check_vectors(circuit, eval_vectors(spec), spec);
}

std::vector<UndeclaredCodeStep> undeclared_code_report(const SequentialCircuit& circuit,
                                                       const FsmSpec& spec) {
  std::vector<UndeclaredCodeStep> out;
  std::size_t nbits = spec.state_bits.size();
  for (std::size_t code = 0; code < (std::size_t(1) << nbits); ++code) {
    Bits state(nbits);
    for (std::size_t b = 0; b < nbits; ++b) state[b] = Bit((code >> (nbits - 1 - b)) & 1);
    bool declared = false;
    for (const auto& s : spec.states)
      if (s.code == state) declared = true;
    if (declared) continue;
    for (std::size_t v = 0; v < spec.num_input_vectors(); ++v) {
      Bits input(spec.input_bits.size());
      for (std::size_t b = 0; b < input.size(); ++b)
        input[b] = Bit((v >> (input.size() - 1 - b)) & 1);
      auto [next, outputs] = step(circuit, state, input);
      out.push_back({state, input, next, outputs});
    }
  }
  return out;
}

json export_circuit(const SequentialCircuit& circuit) {
  json j;
  j["fsm"] = circuit.spec.name;
  j["subcircuits"] = json::array();
  auto add = [&](const std::string& id, const Phenotype& p) {
    json entry = export_netlist(p, circuit.spec.input_bits, circuit.spec.state_bits);
    entry["target"] = id;
    j["subcircuits"].push_back(std::move(entry));
  };
  for (std::size_t i = 0; i < circuit.next_state_subcircuits.size(); ++i)
    add("dff:" + circuit.spec.state_bits[i], circuit.next_state_subcircuits[i]);
  for (std::size_t i = 0; i < circuit.output_subcircuits.size(); ++i)
    add("out:" + circuit.spec.output_bits[i], circuit.output_subcircuits[i]);
  return j;
}

SequentialCircuit import_circuit(const json& doc, const FsmSpec& spec) {
  SequentialCircuit circuit;
  circuit.spec = spec;
  circuit.next_state_subcircuits.resize(spec.state_bits.size());
  circuit.output_subcircuits.resize(spec.output_bits.size());
  std::vector<bool> have_dff(spec.state_bits.size(), false), have_out(spec.output_bits.size(),
                                                                     false);
  for (const auto& entry : doc.at("subcircuits")) {
    ImportedNetlist net = import_netlist(entry);
    circuit.layout = net.layout;
    std::string id = entry.at("target").get<std::string>();
    bool matched = false;
    for (std::size_t i = 0; i < spec.state_bits.size(); ++i)
      if (id == "dff:" + spec.state_bits[i]) {
        circuit.next_state_subcircuits[i] = net.phenotype;
        have_dff[i] = true;
        matched = true;
      }
    for (std::size_t i = 0; i < spec.output_bits.size(); ++i)
      if (id == "out:" + spec.output_bits[i]) {
        circuit.output_subcircuits[i] = net.phenotype;
        have_out[i] = true;
        matched = true;
      }
    if (!matched) throw std::invalid_argument("circuit target '" + id + "' not in FSM spec");
  }
  for (std::size_t i = 0; i < have_dff.size(); ++i)
    if (!have_dff[i])
      throw std::invalid_argument("circuit is missing subcircuit dff:" + spec.state_bits[i]);
  for (std::size_t i = 0; i < have_out.size(); ++i)
    if (!have_out[i])
      throw std::invalid_argument("circuit is missing subcircuit out:" + spec.output_bits[i]);
  return circuit;
}

std::string circuit_expressions(const SequentialCircuit& circuit) {
  std::string out;
  for (std::size_t i = 0; i < circuit.next_state_subcircuits.size(); ++i)
    out += "D_" + circuit.spec.state_bits[i] + "=" +
           to_expression(circuit.next_state_subcircuits[i], circuit.spec.input_bits,
                         circuit.spec.state_bits) +
           "\n";
  for (std::size_t i = 0; i < circuit.output_subcircuits.size(); ++i)
    out += circuit.spec.output_bits[i] + "=" +
           to_expression(circuit.output_subcircuits[i], circuit.spec.input_bits,
                         circuit.spec.state_bits) +
           "\n";
  return out;
}

}  // namespace seqevolve
