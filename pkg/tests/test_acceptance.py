"""Acceptance gate: ten behavioural guarantees, one verdict line each.

Every test gathers its full evidence first, records a single PASS/FAIL line
(echoed in the terminal summary by conftest), and only then asserts — so the
verdict of every criterion is visible even when one of them fails.

All stochastic criteria run from the precommitted suite seed below; nothing
in here retunes seeds per criterion.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

import oracle
from hiercomp.complexity import complexity_report, nhc_global
from hiercomp.experiments import RunManifest, run_experiment
from hiercomp.generators import ModelSpec, child_seed, gen_er, generate
from hiercomp.graph import build_graph
from hiercomp.theory import (
    BinomialDistribution,
    UniformDistribution,
    order_stat_sigma,
)
from hiercomp.workbench import spearman

SUITE_SEED = 0


# ---------------------------------------------------------------------------
# regular-graph builders


def cycle_graph(n):
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    iu, ju = np.triu_indices(n, 1)
    return build_graph(np.column_stack((iu, ju)), n_hint=n)


def torus_graph(a, b):
    edges = []
    for i in range(a):
        for j in range(b):
            u = i * b + j
            edges.append((u, i * b + (j + 1) % b))
            edges.append((u, ((i + 1) % a) * b + j))
    return build_graph(edges, n_hint=a * b)


def read_rows(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, ln.split(","))) for ln in lines[1:]]


# ---------------------------------------------------------------------------


def test_criterion_01_regular_graphs_score_exactly_zero(record_criterion):
    t0 = time.perf_counter()
    torus_dims = {10: (2, 5), 100: (10, 10), 1000: (25, 40)}
    values = []
    for n in (10, 100, 1000):
        for g in (cycle_graph(n), complete_graph(n), torus_graph(*torus_dims[n])):
            rep = complexity_report(g)
            values.append((rep.global_unnormalised, rep.global_normalised))
    elapsed = time.perf_counter() - t0
    ok = all(r == 0.0 and rh == 0.0 for r, rh in values) and elapsed < 5.0
    record_criterion(
        1,
        f"{'PASS' if ok else 'FAIL'} - R and R_hat exactly 0.0 on 9 regular graphs "
        f"(cycle/complete/torus, n=10,100,1000); {elapsed:.1f}s (cap 5s)",
    )
    assert all(v == (0.0, 0.0) for v in values)
    assert elapsed < 5.0


def test_criterion_02_brute_force_equivalence(record_criterion, sixnode):
    nx = pytest.importorskip("networkx")
    t0 = time.perf_counter()
    rep6 = complexity_report(sixnode)
    fix_dr = abs(rep6.global_unnormalised - 5 / 18)
    fix_drh = abs(rep6.global_normalised - 5 / 27)

    checked = 0
    worst = 0.0
    for G in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(G):
            continue
        n = G.number_of_nodes()
        edges = [tuple(e) for e in G.edges()]
        g = build_graph(edges, n_hint=n)
        adj = oracle.adjacency(n, edges)
        rep = complexity_report(g)
        for got, want in (
            (rep.global_unnormalised, oracle.r_global(adj)),
            (rep.global_normalised, oracle.r_hat_global(adj)),
        ):
            if want == 0.0:
                rel = 0.0 if got == 0.0 else float("inf")
            else:
                rel = abs(got - want) / abs(want)
            worst = max(worst, rel)
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = fix_dr < 1e-9 and fix_drh < 1e-9 and checked == 996 and worst < 1e-12 and elapsed < 120
    record_criterion(
        2,
        f"{'PASS' if ok else 'FAIL'} - fixture |dR|={fix_dr:.1e} |dR_hat|={fix_drh:.1e} "
        f"(cap 1e-9); {checked} connected graphs on <=7 nodes, worst rel diff "
        f"{worst:.1e} (cap 1e-12); {elapsed:.0f}s (cap 120s)",
    )
    assert fix_dr < 1e-9 and fix_drh < 1e-9
    assert checked == 996
    assert worst < 1e-12
    assert elapsed < 120


def test_criterion_03_measure_decays_with_size(record_criterion):
    t0 = time.perf_counter()
    means = []
    for ni, n in enumerate((200, 800, 3200)):
        vals = [
            nhc_global(gen_er(n, 0.1, child_seed(SUITE_SEED, 600, ni, s)))
            for s in range(10)
        ]
        means.append(float(np.mean(vals)))
    elapsed = time.perf_counter() - t0
    decreasing = means[0] > means[1] > means[2]
    halved = means[2] < 0.5 * means[0]
    ok = decreasing and halved and elapsed < 180
    record_criterion(
        3,
        f"{'PASS' if ok else 'FAIL'} - mean R_hat over 10 seeds of er(n, 0.1): "
        f"{means[0]:.5f} > {means[1]:.5f} > {means[2]:.5f}, "
        f"ratio {means[2] / means[0]:.3f} (require < 0.5); {elapsed:.0f}s (cap 180s)",
    )
    assert decreasing
    assert halved
    assert elapsed < 180


def test_criterion_04_closed_form_tracks_simulation(record_criterion, tmp_path):
    t0 = time.perf_counter()
    manifest = RunManifest(experiment="fig3", seed=SUITE_SEED)
    outputs = run_experiment(manifest, tmp_path)
    rows = {(int(r["n"]), float(r["p"])): float(r["rel_error"]) for r in read_rows(outputs[0])}
    e500 = rows[(500, 0.002)]
    e2000 = rows[(2000, 0.005)]
    e5000 = rows[(5000, 0.002)]
    elapsed = time.perf_counter() - t0
    ok = e2000 < 0.25 and e5000 < 0.25 and e5000 <= e500 and elapsed < 600
    record_criterion(
        4,
        f"{'PASS' if ok else 'FAIL'} - closed-form vs 20-seed simulation: rel err "
        f"{e2000:.3f} @(2000,0.005), {e5000:.3f} @(5000,0.002) (cap 0.25); "
        f"err@5000={e5000:.3f} <= err@500={e500:.3f}; {elapsed:.0f}s (cap 600s)",
    )
    assert e2000 < 0.25
    assert e5000 < 0.25
    assert e5000 <= e500
    assert elapsed < 600


def test_criterion_05_model_family_ordering(record_criterion):
    ranksums = pytest.importorskip("scipy.stats").ranksums
    t0 = time.perf_counter()
    families = ("er", "rgg", "rhgg", "rhg")
    vals = {}
    for fi, fam in enumerate(families):
        out = []
        for s in range(20):
            spec = ModelSpec(
                family=fam, n=1000, target=0.05,
                seed=child_seed(SUITE_SEED, 700, fi, s),
            )
            out.append(nhc_global(generate(spec)))
        vals[fam] = np.asarray(out)
    means = {f: float(v.mean()) for f, v in vals.items()}
    gaps = (("rhgg", "rhg"), ("rhgg", "rgg"), ("rgg", "er"))
    pvals = {
        f"{a}>{b}": float(ranksums(vals[a], vals[b], alternative="greater").pvalue)
        for a, b in gaps
    }
    elapsed = time.perf_counter() - t0
    order_ok = all(means[a] > means[b] for a, b in gaps)
    sig_ok = all(p < 0.05 for p in pvals.values())
    ok = order_ok and sig_ok and elapsed < 600
    record_criterion(
        5,
        f"{'PASS' if ok else 'FAIL'} - mean R_hat at n=1000 d=0.05: "
        f"rhgg={means['rhgg']:.4f} rhg={means['rhg']:.4f} rgg={means['rgg']:.4f} "
        f"er={means['er']:.4f}; rank-sum p "
        + " ".join(f"{k}:{v:.1e}" for k, v in pvals.items())
        + f" (cap 0.05); {elapsed:.0f}s (cap 600s)",
    )
    assert order_ok, means
    assert sig_ok, pvals
    assert elapsed < 600


def test_criterion_06_normalisation_density_flatness(record_criterion, tmp_path):
    t0 = time.perf_counter()
    manifest = RunManifest(
        experiment="fig2", seed=SUITE_SEED, realisations=100, n_range=(50, 2500),
    )
    outputs = run_experiment(manifest, tmp_path)
    rows = read_rows(outputs[0])
    by = {}
    for r in rows:
        by.setdefault((r["family"], r["measure"]), []).append(
            (int(r["n"]), float(r["density"]), float(r["value"]))
        )
    rho_d = {}
    for fam in ("er", "rgg", "rhg"):
        pts = by[(fam, "nhc")]
        rho_d[fam] = spearman([p[2] for p in pts], [p[1] for p in pts])[0]
    variant_best = 0.0
    for fam in ("er", "rgg", "rhgg", "rhg"):
        for measure in ("nhc_sqrtk", "nhc_sqrtk_sqrtm"):
            pts = by[(fam, measure)]
            vals = [p[2] for p in pts]
            for axis in (0, 1):  # n, density
                variant_best = max(
                    variant_best, abs(spearman(vals, [p[axis] for p in pts])[0])
                )
    elapsed = time.perf_counter() - t0
    flat_ok = all(abs(v) < 0.3 for v in rho_d.values())
    variant_ok = variant_best > 0.5
    ok = flat_ok and variant_ok and elapsed < 900
    record_criterion(
        6,
        f"{'PASS' if ok else 'FAIL'} - rho(R_hat, d) er={rho_d['er']:+.3f} "
        f"rgg={rho_d['rgg']:+.3f} rhg={rho_d['rhg']:+.3f} (require |rho| < 0.3); "
        f"sqrt-k variant max |rho|={variant_best:.2f} vs n/d (require > 0.5); "
        f"{elapsed:.0f}s (cap 900s)",
    )
    assert variant_ok, variant_best
    assert flat_ok, rho_d
    assert elapsed < 900


def test_criterion_07_heterogeneity_peak_location(record_criterion, tmp_path):
    t0 = time.perf_counter()
    manifest = RunManifest(experiment="fig4", seed=SUITE_SEED, realisations=200, n=1000)
    outputs = run_experiment(manifest, tmp_path)
    rows = read_rows(outputs[0])
    sig = np.asarray([float(r["sigma"]) for r in rows])
    val = np.asarray([float(r["value"]) for r in rows])
    edges = np.linspace(0.0, 1.0, 11)
    idx = np.clip(np.digitize(sig, edges) - 1, 0, 9)
    bin_means = np.asarray([val[idx == b].mean() for b in range(10)])
    peak = int(bin_means.argmax())
    peak_mid = (edges[peak] + edges[peak + 1]) / 2

    def band(lo, hi):
        m = (sig >= lo) & (sig <= hi)
        return float(val[m].mean())

    mid, low, high = band(0.25, 0.35), band(0.0, 0.1), band(0.8, 1.0)
    elapsed = time.perf_counter() - t0
    peak_ok = 0.15 <= peak_mid <= 0.45
    band_ok = mid > low and mid > high
    ok = peak_ok and band_ok and elapsed < 900
    record_criterion(
        7,
        f"{'PASS' if ok else 'FAIL'} - peak bin [{edges[peak]:.1f},{edges[peak] + 0.1:.1f}) "
        f"(require midpoint in [0.15,0.45]); mean R_hat sigma-bands: "
        f"[0.25,0.35]={mid:.4f} vs [0,0.1]={low:.4f} and [0.8,1.0]={high:.4f} "
        f"(require middle largest); {elapsed:.0f}s (cap 900s)",
    )
    assert peak_ok, peak_mid
    assert band_ok, (mid, low, high)
    assert elapsed < 900


def test_criterion_08_densification_never_raises_measure(record_criterion, tmp_path):
    t0 = time.perf_counter()
    manifest = RunManifest(experiment="fig5", seed=SUITE_SEED)
    outputs = run_experiment(manifest, tmp_path)
    rows = read_rows(outputs[0])
    top = max(float(r["fraction"]) for r in rows)
    drops = {}
    for mech in ("random", "hierarchical", "similarity", "combined"):
        base = [float(r["value"]) for r in rows if r["mechanism"] == mech and float(r["fraction"]) == 0.0]
        grown = [float(r["value"]) for r in rows if r["mechanism"] == mech and float(r["fraction"]) == top]
        drops[mech] = float(np.mean(base)) - float(np.mean(grown))
    elapsed = time.perf_counter() - t0
    non_increase = all(v >= 0.0 for v in drops.values())
    combined_least = drops["combined"] <= min(v for k, v in drops.items() if k != "combined")
    ok = non_increase and combined_least and elapsed < 600
    record_criterion(
        8,
        f"{'PASS' if ok else 'FAIL'} - mean R_hat drop after +2% edges on 5 bases: "
        + " ".join(f"{k}={v:+.1e}" for k, v in drops.items())
        + f" (require all >= 0, combined smallest); {elapsed:.0f}s (cap 600s)",
    )
    assert non_increase, drops
    assert combined_least, drops
    assert elapsed < 600


def test_criterion_09_order_statistic_sd_error(record_criterion):
    t0 = time.perf_counter()
    k, trials = 50, 100_000
    report = {}
    for name, dist, sampler in (
        (
            "uniform",
            UniformDistribution(),
            lambda rng: rng.random((trials, k)),
        ),
        (
            "binomial",
            BinomialDistribution(99, 0.1),
            lambda rng: rng.binomial(99, 0.1, (trials, k)).astype(np.float64),
        ),
    ):
        rng = np.random.default_rng(child_seed(SUITE_SEED, 900, 0 if name == "uniform" else 1))
        draws = sampler(rng)
        draws.sort(axis=1)
        emp = draws.std(axis=0, ddof=1)
        worst, worst_i = 0.0, 0
        for i in range(5, 46):
            approx = order_stat_sigma(i, k, dist)
            rel = abs(approx - emp[i - 1]) / emp[i - 1]
            if rel > worst:
                worst, worst_i = rel, i
        report[name] = (worst, worst_i)
    elapsed = time.perf_counter() - t0
    ok = all(w <= 0.10 for w, _ in report.values()) and elapsed < 120
    record_criterion(
        9,
        f"{'PASS' if ok else 'FAIL'} - order-statistic sd vs 1e5-trial simulation "
        f"(k=50, i in [5,45], cap 10%): uniform worst {report['uniform'][0]:.1%} "
        f"@i={report['uniform'][1]}, binomial worst {report['binomial'][0]:.1%} "
        f"@i={report['binomial'][1]}; {elapsed:.0f}s (cap 120s)",
    )
    assert report["uniform"][0] <= 0.10, report
    assert report["binomial"][0] <= 0.10, report
    assert elapsed < 120


def test_criterion_10_rank_correlation_oracle(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(child_seed(SUITE_SEED, 1000))
    worst = 0.0
    for _ in range(1000):
        length = int(rng.integers(5, 21))
        while True:
            x = rng.integers(0, 6, length).astype(np.float64)
            if not np.all(x == x[0]):
                break
        while True:
            y = rng.integers(0, 6, length).astype(np.float64)
            if not np.all(y == y[0]):
                break
        rho, _ = spearman(x, y)
        worst = max(worst, abs(rho - oracle.spearman_naive(x.tolist(), y.tolist())))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 30
    record_criterion(
        10,
        f"{'PASS' if ok else 'FAIL'} - spearman vs rank-then-Pearson brute force on "
        f"1000 tied vectors (len 5-20): worst |diff|={worst:.1e} (cap 1e-12); "
        f"{elapsed:.0f}s (cap 30s)",
    )
    assert worst <= 1e-12
    assert elapsed < 30
