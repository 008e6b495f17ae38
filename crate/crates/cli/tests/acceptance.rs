//! Acceptance suite. Runs each criterion once, serially, and prints one
//! `[PASS]`/`[FAIL]` line per criterion. All comparisons are exact.

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use artc::{run, Outcome};
use artc_core::euler::{chi_direct, chi_recursive, clique_counts};
use artc_core::fock::{
    build_basis, build_basis_with_cap, check_relations_with, defect_identity_residual, vacuum_rank_on,
    word_oracle,
};
use artc_core::graph::{removal_step_at, Graph};
use artc_core::kgroups::{kgroups_closed_form, pv_truncated, results_agree};
use artc_core::words::{delta_check, omega_enumerate, reduce, DeltaOutcome, StarWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let criteria = [
        Criterion {
            id: 1,
            name: "base_case",
            limit: Some(Duration::from_secs(1)),
            run: criterion_01_base_case,
        },
        Criterion {
            id: 2,
            name: "euler_cross_validation",
            limit: Some(Duration::from_secs(300)),
            run: criterion_02_euler,
        },
        Criterion {
            id: 3,
            name: "clique_oracle",
            limit: None,
            run: criterion_03_cliques,
        },
        Criterion {
            id: 4,
            name: "k_theory_oracle",
            limit: Some(Duration::from_secs(60)),
            run: criterion_04_pv,
        },
        Criterion {
            id: 5,
            name: "edgeless_family",
            limit: None,
            run: criterion_05_edgeless,
        },
        Criterion {
            id: 6,
            name: "delta_identity",
            limit: Some(Duration::from_secs(300)),
            run: criterion_06_delta,
        },
        Criterion {
            id: 7,
            name: "word_reduction_oracle",
            limit: None,
            run: criterion_07_words,
        },
        Criterion {
            id: 8,
            name: "representation_suite",
            limit: Some(Duration::from_secs(300)),
            run: criterion_08_representation,
        },
        Criterion {
            id: 9,
            name: "join_pipeline",
            limit: None,
            run: criterion_09_join,
        },
        Criterion {
            id: 10,
            name: "hypothesis_gate",
            limit: None,
            run: criterion_10_gate,
        },
    ];
    let mut failed = 0;
    let mut ran = 0;
    for c in &criteria {
        let full = format!("criterion_{:02}_{}", c.id, c.name);
        if !filters.is_empty() && !filters.iter().any(|f| full.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let mut result = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, c.limit) {
            if elapsed >= limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let line = match &result {
            Ok(detail) => format!(
                "[PASS] criterion {:2} {}: {detail} ({elapsed:.2?})",
                c.id, c.name
            ),
            Err(why) => {
                failed += 1;
                format!(
                    "[FAIL] criterion {:2} {}: {why} ({elapsed:.2?})",
                    c.id, c.name
                )
            }
        };
        let _ = writeln!(std::io::stdout(), "{line}");
    }
    let _ = writeln!(
        std::io::stdout(),
        "\nacceptance: {} passed; {failed} failed",
        ran - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// ---------- helpers ----------

fn artc(args: &[&str], stdin: &str) -> Outcome {
    let mut read = || Ok(stdin.to_string());
    run(
        std::iter::once("artc").chain(args.iter().copied()),
        &mut read,
    )
}

fn artc_json(args: &[&str], stdin: &str) -> Result<(i32, Value), String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = artc(&full, stdin);
    let v = serde_json::from_str(&out.stdout)
        .map_err(|e| format!("bad JSON ({e}): {:?}", out.stderr))?;
    Ok((out.code, v))
}

/// Adjacency as bitmasks, one per vertex.
type Masks = Vec<u32>;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn masks_from_code(n: usize, code: u64) -> Masks {
    let mut adj = vec![0u32; n];
    for (k, (i, j)) in pairs(n).into_iter().enumerate() {
        if code >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

fn graph_from_masks(adj: &Masks) -> Graph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .filter(|&(i, j)| adj[i] >> j & 1 == 1)
        .collect();
    Graph::from_index_edges(n, &edges).unwrap()
}

fn random_masks(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Masks {
    let mut adj = vec![0u32; n];
    for (i, j) in pairs(n) {
        if rng.gen_bool(p) {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

fn complement_connected(adj: &Masks) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let all = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = !adj[v] & all & !(1 << v) & !seen;
        seen |= next;
        frontier |= next;
    }
    seen == all
}

/// Clique counts by testing every vertex subset: `S` is complete iff `S \ {min}`
/// is complete and lies in the neighbourhood of `min`.
fn brute_clique_counts(adj: &Masks) -> Vec<u64> {
    let n = adj.len();
    let mut complete = vec![false; 1 << n];
    complete[0] = true;
    let mut counts = vec![0u64; n];
    for s in 1usize..(1 << n) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        if complete[rest] && (rest as u32) & !adj[low] == 0 {
            complete[s] = true;
            counts[s.count_ones() as usize - 1] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

fn brute_chi(adj: &Masks) -> i64 {
    let mut chi = 1i64;
    for (i, &c) in brute_clique_counts(adj).iter().enumerate() {
        chi += if i % 2 == 0 { -(c as i64) } else { c as i64 };
    }
    chi
}

fn dominated(adj: &Masks) -> Vec<usize> {
    let n = adj.len();
    (0..n)
        .filter(|&v| adj[v].count_ones() as usize == n - 1)
        .collect()
}

/// Minimum edge code over all vertex orders compatible with a refined degree
/// partition. Bit significance follows `pairs`, so prefixes can be pruned.
fn canonical_code(adj: &Masks) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let key: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n)
                .filter(|&u| adj[v] >> u & 1 == 1)
                .map(|u| deg[u])
                .collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key[a].cmp(&key[b]));
    // cell_of_pos[p]: the vertices allowed at position p
    let cell_of_pos: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            order
                .iter()
                .copied()
                .filter(|&v| key[v] == key[order[p]])
                .collect()
        })
        .collect();
    let total = n * (n - 1) / 2;
    let mut best = u64::MAX;
    let mut placed = Vec::with_capacity(n);
    search(adj, &cell_of_pos, total, &mut placed, 0, &mut best);
    best
}

/// `prefix` holds the pair bits among placed positions, most significant first.
fn search(
    adj: &Masks,
    cells: &[Vec<usize>],
    total: usize,
    placed: &mut Vec<usize>,
    prefix: u64,
    best: &mut u64,
) {
    let p = placed.len();
    if p == cells.len() {
        *best = (*best).min(prefix);
        return;
    }
    for &v in &cells[p] {
        if placed.contains(&v) {
            continue;
        }
        let mut next = prefix;
        for &u in placed.iter() {
            next = next << 1 | u64::from(adj[u] >> v & 1);
        }
        let bits = (p + 1) * p / 2;
        // the best code's leading `bits` bits, read with the same significance
        if *best != u64::MAX && next > *best >> (total - bits) {
            continue;
        }
        placed.push(v);
        search(adj, cells, total, placed, next, best);
        placed.pop();
    }
}

/// Isomorphism class representatives for `n = 1..=max_n`, each class as an
/// adjacency list. A new vertex is attached to every subset of each smaller class.
fn isomorphism_classes(max_n: usize) -> Vec<Vec<Masks>> {
    let mut out: Vec<Vec<Masks>> = vec![vec![], vec![vec![0]]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for parent in &out[n - 1] {
            for s in 0u32..(1 << (n - 1)) {
                let mut adj = parent.clone();
                adj.push(s);
                for (v, m) in adj.iter_mut().enumerate().take(n - 1) {
                    if s >> v & 1 == 1 {
                        *m |= 1 << (n - 1);
                    }
                }
                if seen.insert(canonical_code(&adj)) {
                    reps.push(adj);
                }
            }
        }
        out.push(reps);
    }
    out
}

fn labeled_graphs(n: usize) -> impl Iterator<Item = Masks> {
    let m = n * (n - 1) / 2;
    (0u64..(1 << m)).map(move |code| masks_from_code(n, code))
}

// ---------- criteria ----------

fn criterion_01_base_case() -> Verdict {
    let e2 = r#"{"vertices":["a","b"],"edges":[]}"#;
    let (code, v) = artc_json(&["classify"], e2)?;
    ensure!(code == 0, "exit code {code}");
    let factors = v["factors"].as_array().ok_or("no factors")?;
    ensure!(factors.len() == 1, "{} factors", factors.len());
    let f = &factors[0];
    ensure!(f["chi"] == -1, "chi = {}", f["chi"]);
    ensure!(v["symbol"] == "O_2", "symbol {}", v["symbol"]);
    ensure!(
        f["k0"]["group"] == "0" && f["k1"]["group"] == "0",
        "K = {} / {}",
        f["k0"]["group"],
        f["k1"]["group"]
    );
    let t = &f["toeplitz"];
    ensure!(
        t["k0"]["group"] == "Z" && t["k1"]["group"] == "0",
        "Toeplitz K = {} / {}",
        t["k0"]["group"],
        t["k1"]["group"]
    );
    Ok("one factor, chi = -1, O_2, K0 = K1 = 0, Toeplitz K0 = Z, K1 = 0".into())
}

fn criterion_02_euler() -> Verdict {
    let mut exhaustive = 0u64;
    for n in 2..=7 {
        for adj in labeled_graphs(n) {
            if !complement_connected(&adj) {
                continue;
            }
            let g = graph_from_masks(&adj);
            let d = chi_direct(&g).map_err(|e| e.to_string())?.chi;
            let r = chi_recursive(&g).map_err(|e| format!("{adj:?}: {e}"))?.chi;
            ensure!(d == r, "{adj:?}: direct {d} != recursive {r}");
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut random = 0;
    while random < 1000 {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.05..0.9);
        let adj = random_masks(&mut rng, n, p);
        if !complement_connected(&adj) {
            continue;
        }
        let g = graph_from_masks(&adj);
        let d = chi_direct(&g).map_err(|e| e.to_string())?.chi;
        let r = chi_recursive(&g).map_err(|e| e.to_string())?.chi;
        ensure!(d == r, "{adj:?}: direct {d} != recursive {r}");
        random += 1;
    }
    Ok(format!(
        "{exhaustive} labeled graphs (n <= 7) + {random} random (n <= 14) agree"
    ))
}

fn criterion_03_cliques() -> Verdict {
    let mut labeled = 0u64;
    for n in 1..=7 {
        for adj in labeled_graphs(n) {
            let got = clique_counts(&graph_from_masks(&adj))
                .map_err(|e| e.to_string())?
                .counts;
            ensure!(got == brute_clique_counts(&adj), "{adj:?}: {got:?}");
            labeled += 1;
        }
    }
    let classes = isomorphism_classes(8);
    let sizes: Vec<usize> = classes.iter().skip(1).map(Vec::len).collect();
    ensure!(
        sizes == [1, 2, 4, 11, 34, 156, 1044, 12346],
        "class counts {sizes:?}"
    );
    for adj in &classes[8] {
        let got = clique_counts(&graph_from_masks(adj))
            .map_err(|e| e.to_string())?
            .counts;
        ensure!(got == brute_clique_counts(adj), "{adj:?}: {got:?}");
    }
    Ok(format!(
        "{labeled} labeled graphs (n <= 7) + all 12346 isomorphism classes on 8 vertices"
    ))
}

fn criterion_04_pv() -> Verdict {
    let mut chis = BTreeSet::new();
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            let chi = x - y;
            let closed = kgroups_closed_form(chi);
            let expected_k0 = match chi.unsigned_abs() {
                0 => "Z".to_string(),
                1 => "0".to_string(),
                m => format!("Z_{m}"),
            };
            let expected_k1 = if chi == 0 { "Z" } else { "0" };
            ensure!(
                closed.k0.to_string() == expected_k0 && closed.k1.to_string() == expected_k1,
                "closed form at chi = {chi}"
            );
            for window in [6, 8] {
                let pv = pv_truncated(x, y, window)
                    .map_err(|e| format!("({x},{y}) window {window}: {e}"))?;
                ensure!(
                    results_agree(&pv, &closed),
                    "({x},{y}) window {window}: {} / {} vs {} / {}",
                    pv.k0,
                    pv.k1,
                    closed.k0,
                    closed.k1
                );
                ensure!(
                    pv.unit_order() == closed.unit_order(),
                    "({x},{y}) window {window}: unit order"
                );
            }
            chis.insert(chi);
        }
    }
    Ok(format!(
        "169 pairs at windows 6 and 8 stable and equal to the closed form, chi in [{}, {}]",
        chis.first().unwrap(),
        chis.last().unwrap()
    ))
}

fn criterion_05_edgeless() -> Verdict {
    for n in 2..=6usize {
        let labels: Vec<String> = (1..=n).map(|i| format!("\"{i}\"")).collect();
        let input = format!("{{\"vertices\":[{}],\"edges\":[]}}", labels.join(","));
        let (code, v) = artc_json(&["classify"], &input)?;
        ensure!(code == 0, "n = {n}: exit {code}");
        let f = &v["factors"][0];
        ensure!(
            v["symbol"] == format!("O_{n}").as_str(),
            "n = {n}: symbol {}",
            v["symbol"]
        );
        ensure!(f["chi"] == 1 - n as i64, "n = {n}: chi {}", f["chi"]);
        let k0 = if n == 2 {
            "0".to_string()
        } else {
            format!("Z_{}", n - 1)
        };
        ensure!(
            f["k0"]["group"] == k0.as_str(),
            "n = {n}: K0 {}",
            f["k0"]["group"]
        );
        ensure!(f["k1"]["group"] == "0", "n = {n}: K1 {}", f["k1"]["group"]);
        ensure!(
            f["k0"]["unit_order"] == (n - 1).to_string().as_str(),
            "n = {n}: unit order {}",
            f["k0"]["unit_order"]
        );
    }
    Ok("O_n with K0 = Z_{n-1} generated by the unit and K1 = 0 for n = 2..6".into())
}

fn criterion_06_delta() -> Verdict {
    let mut graphs = 0u64;
    let mut pairs_checked = 0u64;
    for n in 2..=5 {
        for adj in labeled_graphs(n) {
            if !complement_connected(&adj) {
                continue;
            }
            let g = graph_from_masks(&adj);
            for v in 0..n {
                let omega = omega_enumerate(&g, v, 4).map_err(|e| e.to_string())?;
                for p in &omega {
                    for q in &omega {
                        let out = delta_check(p, q, &g, v).map_err(|e| e.to_string())?;
                        let ok = if p == q {
                            out == DeltaOutcome::Identity
                        } else {
                            out == DeltaOutcome::Zero
                        };
                        ensure!(ok, "{adj:?} v = {v}, p = {p:?}, q = {q:?}: {out:?}");
                        pairs_checked += 1;
                    }
                }
            }
            graphs += 1;
        }
    }
    Ok(format!(
        "{graphs} labeled graphs, every vertex, {pairs_checked} pairs, no violations"
    ))
}

fn criterion_07_words() -> Verdict {
    let p5_complement =
        Graph::from_index_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]).unwrap();
    let graphs = [
        ("C5", Graph::cycle(5)),
        ("P4", Graph::path(4)),
        ("complement of P5", p5_complement),
        ("edgeless 3", Graph::edgeless(3)),
        ("C4", Graph::cycle(4)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut zero = 0;
    let mut total = 0;
    for (name, g) in &graphs {
        let basis = build_basis_with_cap(g, 10, 2_000_000).map_err(|e| e.to_string())?;
        for _ in 0..2000 {
            let len = rng.gen_range(0..=8);
            let w = StarWord::new(
                (0..len)
                    .map(|_| (rng.gen_range(0..g.vertex_count()), rng.gen_bool(0.5)))
                    .collect(),
            );
            let r = reduce(&w, g).map_err(|e| e.to_string())?;
            ensure!(
                word_oracle(&w, &r, &basis).map_err(|e| e.to_string())?,
                "{name}: {} reduced to {r:?}",
                w.render(g)
            );
            if StarWord::from_reduced(&r).is_none() {
                zero += 1;
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} words over 5 graphs match on the interior subspace ({zero} reduce to zero)"
    ))
}

fn criterion_08_representation() -> Verdict {
    let mut graphs = 0u64;
    let mut defect_identity = 0u64;
    for n in 1..=5 {
        for adj in labeled_graphs(n) {
            let g = graph_from_masks(&adj);
            let basis = build_basis(&g, 5).map_err(|e| e.to_string())?;
            for c in check_relations_with(&basis, &g) {
                ensure!(
                    c.pass && c.residual == 0,
                    "{adj:?}: {} residual {}",
                    c.name,
                    c.residual
                );
            }
            let rank = vacuum_rank_on(&basis);
            ensure!(rank == 1, "{adj:?}: vacuum rank {rank}");
            if n >= 2 && complement_connected(&adj) {
                for v in 0..n {
                    let Ok(step) = removal_step_at(&g, v) else {
                        continue;
                    };
                    let c = defect_identity_residual(&basis, v, &step.neighbors);
                    ensure!(
                        c.pass && c.residual == 0,
                        "{adj:?} v = {v}: {} residual {}",
                        c.name,
                        c.residual
                    );
                    defect_identity += 1;
                }
            }
            graphs += 1;
        }
    }
    Ok(format!(
        "{graphs} labeled graphs: relations exact, vacuum rank 1; {defect_identity} defect identities exact"
    ))
}

fn criterion_09_join() -> Verdict {
    let c4 = r#"{"vertices":["1","2","3","4"],"edges":[["1","2"],["2","3"],["3","4"],["4","1"]]}"#;
    let (code, v) = artc_json(&["classify"], c4)?;
    ensure!(
        code == 0 && v["symbol"] == "O_2 ⊗ O_2",
        "C4: exit {code}, symbol {}",
        v["symbol"]
    );

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let trials = 25;
    for _ in 0..trials {
        // three factors with connected complements, labelled a*, b*, c*
        let mut parts: Vec<(Vec<String>, Masks)> = Vec::new();
        for prefix in ["a", "b", "c"] {
            let adj = loop {
                let n = rng.gen_range(2..=5);
                let p = rng.gen_range(0.1..0.7);
                let adj = random_masks(&mut rng, n, p);
                if complement_connected(&adj) {
                    break adj;
                }
            };
            parts.push((
                (0..adj.len()).map(|i| format!("{prefix}{i}")).collect(),
                adj,
            ));
        }
        let mut vertices: Vec<(usize, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(f, (l, _))| (0..l.len()).map(move |i| (f, i)))
            .collect();
        vertices.shuffle(&mut rng);
        let mut edges = Vec::new();
        for (x, &(fa, ia)) in vertices.iter().enumerate() {
            for &(fb, ib) in &vertices[x + 1..] {
                if fa != fb || parts[fa].1[ia] >> ib & 1 == 1 {
                    edges.push(serde_json::json!([parts[fa].0[ia], parts[fb].0[ib]]));
                }
            }
        }
        let labels: Vec<&String> = vertices.iter().map(|&(f, i)| &parts[f].0[i]).collect();
        let input = serde_json::json!({"vertices": labels, "edges": edges}).to_string();
        let (code, v) = artc_json(&["classify"], &input)?;
        ensure!(code == 0, "exit {code} on {input}");
        let got: Vec<(BTreeSet<String>, i64)> = v["factors"]
            .as_array()
            .ok_or("no factors")?
            .iter()
            .map(|f| {
                let vs = f["vertices"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|s| s.as_str().unwrap().to_string())
                    .collect();
                (vs, f["chi"].as_i64().unwrap())
            })
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut expected: Vec<(BTreeSet<String>, i64)> = parts
            .iter()
            .map(|(l, adj)| (l.iter().cloned().collect(), brute_chi(adj)))
            .collect();
        expected.sort();
        ensure!(
            got_sorted == expected,
            "factors {got:?}, expected {expected:?}"
        );
        let symbol: Vec<String> = got
            .iter()
            .map(|(_, chi)| format!("O_{}", 1 + chi.unsigned_abs()))
            .collect();
        ensure!(
            v["symbol"] == symbol.join(" ⊗ ").as_str(),
            "symbol {}",
            v["symbol"]
        );
    }
    Ok(format!(
        "C4 = O_2 ⊗ O_2; {trials} random 3-factor joins recovered with exact chi"
    ))
}

fn criterion_10_gate() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rejected = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.95);
        let adj = random_masks(&mut rng, n, p);
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<[&String; 2]> = pairs(n)
            .into_iter()
            .filter(|&(i, j)| adj[i] >> j & 1 == 1)
            .map(|(i, j)| [&labels[i], &labels[j]])
            .collect();
        let input = serde_json::json!({"vertices": labels, "edges": edges}).to_string();
        let expected: Vec<&String> = dominated(&adj).into_iter().map(|v| &labels[v]).collect();

        let mut child = Command::new(env!("CARGO_BIN_EXE_artc"))
            .args(["classify"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| e.to_string())?;
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .map_err(|e| e.to_string())?;
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        let code = out.status.code().ok_or("killed by signal")?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        if expected.is_empty() {
            ensure!(code == 0, "{input}: exit {code}: {stderr}");
        } else {
            ensure!(code == 2, "{input}: exit {code}, expected 2");
            let listed: Vec<&str> = stderr
                .split(|c: char| !c.is_alphanumeric())
                .filter(|t| {
                    t.starts_with('v') && t[1..].chars().all(|c| c.is_ascii_digit()) && t.len() > 1
                })
                .collect();
            let listed: BTreeSet<&str> = listed.into_iter().collect();
            let want: BTreeSet<&str> = expected.iter().map(|s| s.as_str()).collect();
            ensure!(
                listed == want,
                "{input}: listed {listed:?}, expected {want:?}"
            );
            rejected += 1;
        }
    }
    Ok(format!(
        "500 random graphs via the binary, {rejected} rejected with exactly their dominated labels"
    ))
}
