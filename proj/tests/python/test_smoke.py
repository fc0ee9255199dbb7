"""Smoke tests for the _seqevolve extension module."""

import json

import _seqevolve as sq

TOGGLE = json.dumps(
    {
        "name": "toggle",
        "input_bits": ["X"],
        "state_bits": ["S"],
        "output_bits": ["Z"],
        "states": [{"name": "S0", "code": "0"}, {"name": "S1", "code": "1"}],
        "transitions": [
            {"from": "S0", "input": "-", "to": "S1", "output": "0"},
            {"from": "S1", "input": "-", "to": "S0", "output": "1"},
        ],
    }
)


def test_parse_and_targets():
    spec = sq.parse_fsm(TOGGLE)
    assert spec.num_states == 2
    assert spec.num_transitions == 4
    targets = sq.derive_targets(spec)
    assert [t.id() for t in targets] == ["dff:S", "out:Z"]
    assert all(t.num_vectors == 4 for t in targets)


def test_layout_and_decode():
    layout = sq.build_layout(1, 1, 1, 0, sq.Connectivity.NEIGHBOR_COLUMN)
    assert layout.chromosome_length == 7
    chrom = sq.random_chromosome(layout, seed=1)
    assert len(chrom.bits) == 7
    pheno = sq.decode(layout, chrom)
    assert pheno.used_gate_count in (0, 1)
    again = sq.chromosome_from_hex(layout, chrom.hex())
    assert again.bits == chrom.bits


def test_run_ga_finds_not_gate():
    layout = sq.build_layout(2, 2, 1, 1, sq.Connectivity.ALL_LEFT_COLUMNS)
    spec = sq.parse_fsm(TOGGLE)
    target = sq.derive_targets(spec)[0]  # next state = S'
    cfg = sq.GaConfig()
    cfg.max_generations = 4000
    cfg.stall_generations = 1000
    cfg.seed = 3
    result = sq.run_ga(layout, target, cfg)
    assert result.best_report.fully_functional
    assert result.best_report.design == 4


def test_synthesize_toggle():
    spec = sq.parse_fsm(TOGGLE)
    opt = sq.SynthesisOptions()
    opt.rows = 2
    opt.cols = 2
    opt.runs = 3
    cfg = sq.GaConfig()
    cfg.max_generations = 4000
    cfg.stall_generations = 1000
    cfg.seed = 42
    opt.ga = cfg
    circuit, report = sq.synthesize(spec, opt)
    assert report.verified
    assert report.total_gates == 1
    next_state, output = circuit.step("0", "1")
    assert next_state == "1"
    assert output == "0"


def test_benchmark_and_expr_oracle():
    spec = sq.derive_benchmark_fsm()
    assert spec.num_states == 8
    assert sq.eval_expr("(XAC)'(C+XA)", {"X": 1, "A": 1, "C": 0, "B": 0}) == 1
    assert sq.eval_expr("XAC'+X'C+A'C", {"X": 1, "A": 1, "C": 1, "B": 0}) == 0
