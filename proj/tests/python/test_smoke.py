import json
import os
import subprocess

import numpy as np
import pytest

import gsm


def test_generate_and_oracles():
    g = gsm.generate_erdos_renyi(12, 0.4, 7)
    g.validate()
    assert g.n == 12
    assert gsm.degrees(g) == [len(a) for a in gsm.adjacency(g)]
    grid = gsm.generate_grid(3, 4)
    assert gsm.is_connected(grid)
    assert gsm.diameter(grid) == 5
    assert gsm.oracle_triangle_count(grid) == 0
    dist = gsm.oracle_all_pairs_distances(grid)
    assert dist[0][11] == 5


def test_graph_json_roundtrip():
    g = gsm.generate_cycles(8, True, 3)
    text = gsm.graph_to_json(g)
    h = gsm.graph_from_json(text)
    assert gsm.graph_to_json(h) == text
    assert gsm.graph_fingerprint(h) == gsm.graph_fingerprint(g)


def test_tokenize_pipeline():
    g = gsm.generate_connected_er(10, 0.35, 5)
    tok = gsm.khop_tokenize(g, 2)
    assert len(tok.sequences) == g.n
    assert all(len(s) == 3 for s in tok.sequences)
    rt = gsm.tokenization_from_json(gsm.tokenization_to_json(tok))
    assert rt.sequences == tok.sequences

    walk = gsm.random_walk_tokenize(g, 6, 2, 11)
    assert len(walk.sequences) == 2 * g.n

    order = list(range(g.edge_count()))
    assert gsm.node_locality(g, order) >= 1


def test_hac_and_encoding():
    g = gsm.generate_grid(3, 3)
    cost = gsm.edge_costs_from_features(g)
    tree = gsm.build_hac(g, cost)
    assert tree.depth() <= int(np.ceil(np.log2(g.n)))
    assert sorted(tree.leaf_order) == list(range(g.n))
    pe = gsm.hierarchical_pe(tree, g, 0, 8)
    assert len(pe) == tree.depth() + 1
    assert pe[-1] == gsm.bfs_distances(g, 0)[8]

    tok = gsm.bfs_tokenize(tree, g)
    params = gsm.make_encoder_params(2, 4, 1, 13)
    encoded = gsm.encode_tokens(g, tok, params)
    assert len(encoded) == len(tok.sequences)
    assert encoded[0].vectors[0].shape == (4,)


def test_color_count_ssm_exact():
    g = gsm.generate_connected_er(16, 0.3, 21)
    g = gsm.color_connectivity_instance(g, 22)
    counts = gsm.oracle_color_counts(g)
    layer = gsm.color_count_construction(len(counts))
    xs = gsm.one_hot_colors(g.colors, len(counts))
    ys = gsm.ssm_forward(layer, xs)
    assert np.array_equal(ys[-1], np.array(counts, dtype=float))


def test_motif_count_via_attention():
    g = gsm.generate_grid(2, 3)
    H = gsm.pattern_graph("cycle4")
    enc = gsm.subgraph_count_encoding(g, H, 2)
    total = gsm.count_via_attention_sum(enc)
    assert total == pytest.approx(gsm.oracle_induced_occurrences(g, H))


def test_sensitivity_profile_monotone():
    rows = gsm.sensitivity_profile(gsm.sensitivity_stack(1), 12)
    norms = [r.norm for r in rows]
    assert all(b >= a - 1e-9 for a, b in zip(norms, norms[1:]))
    assert all(r.ratio < 100.0 for r in rows)


def test_stream_connectivity():
    g = gsm.generate_path(9)
    order = list(range(g.edge_count()))
    k = gsm.node_locality(g, order)
    seq = [g.edges[e] for e in order]
    res = gsm.stream_connectivity_detail(seq, k, True, g.n)
    assert res.connected and not res.violations
    assert res.max_window <= k + 1

    inst = gsm.generate_factored(gsm.generate_erdos_renyi(4, 0.5, 9), 8, 2, 31)
    assert gsm.hybrid_connectivity(inst, inst.k, inst.n_prime) == gsm.is_connected(
        inst.graph
    )


def test_verify_suite():
    results = gsm.run_suite("hac-mst")
    assert results and all(r.passed for r in results)


def test_cli_binary():
    cli = os.environ.get("GSM_CLI")
    if not cli:
        pytest.skip("GSM_CLI not set")
    out_dir = os.path.join(os.environ.get("TMPDIR", "/tmp"), "gsm_py_smoke")
    subprocess.run(
        [cli, "generate", "--kind", "er", "--n", "8", "--p", "0.5", "--seed", "3",
         "--out-dir", out_dir],
        check=True,
        capture_output=True,
    )
    with open(os.path.join(out_dir, "graph.json")) as f:
        payload = json.load(f)
    assert payload["n"] == 8
    g = gsm.graph_from_json(json.dumps(payload))
    assert g.n == 8
