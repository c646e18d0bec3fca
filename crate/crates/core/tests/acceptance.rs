//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line and
//! then asserts, so a full run shows every verdict:
//!
//! ```text
//! cargo test --test acceptance --no-fail-fast
//! ```

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regemb::corpus::{self, all_multigraphs, connected_simple_graphs, simple_graphs_up_to_iso};
use regemb::spectral::{bilinear_form, embed, reduce_predistance, spectral_profile, zeta, ShiftMode};
use regemb::{
    adjacency_matrix, build_predistance, check_commuting, check_reconstructing, coherent_basis,
    distance_preserving_permutations, factorize_aut_order, make_reconstructing, twin_decomposition, verify_regular,
    Error, GroupLimits, Multigraph, PredistanceKind, VerifyOptions,
};

const REPRODUCTION_TOL: f64 = 1e-8;
const RATIO_TOL: f64 = 1e-9;
const SHIFT_TOL: f64 = 1e-7;
const EIGENVECTOR_TOL: f64 = 1e-8;

/// The four example predistances of the catalogue.
const EXAMPLE_KINDS: [PredistanceKind; 4] = [
    PredistanceKind::ComplementIndicator,
    PredistanceKind::GraphDistance,
    PredistanceKind::CzekanovskiDice,
    PredistanceKind::QDistance,
];

fn verdict(criterion: &str, pass: bool, detail: &str) {
    let line = format!("criterion {criterion}: {} | {detail}\n", if pass { "PASS" } else { "FAIL" });
    // bypass the test harness capture so the line is always visible
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "criterion {criterion}: {detail}");
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn criterion_1_petersen_high_mode() {
    let start = Instant::now();
    let g = corpus::petersen();
    let p = build_predistance(&g, PredistanceKind::Adjacency).unwrap();
    let e = embed(&p, ShiftMode::High, None).unwrap();
    let c = verify_regular(&g, &p, &e, &opts()).unwrap();
    let elapsed = start.elapsed();
    let brute = naive_automorphism_count(&g);
    let err = e.reproduction_error();

    let dim_ok = e.dimension() == 4;
    let groups_ok = c.groups_equal && c.aut_order == 120 && c.isometry_perm_order == 120 && brute == 120;
    let repro_ok = err <= REPRODUCTION_TOL;
    let time_ok = elapsed < Duration::from_secs(30);
    verdict(
        "1",
        dim_ok && groups_ok && repro_ok && time_ok,
        &format!(
            "dimension {} (want 4) [{}]; |Aut| {} / isometry perms {} / brute force {}, equal {} [{}]; \
             reproduction {err:.1e} [{}]; pipeline {:.2}s [{}]",
            e.dimension(),
            ok(dim_ok),
            c.aut_order,
            c.isometry_perm_order,
            brute,
            c.groups_equal,
            ok(groups_ok),
            ok(repro_ok),
            elapsed.as_secs_f64(),
            ok(time_ok)
        ),
    );
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "not met"
    }
}

#[test]
fn criterion_2_five_cycle_low_mode() {
    let g = corpus::cycle(5);
    let p = build_predistance(&g, PredistanceKind::Adjacency).unwrap();
    let z = zeta(&p.matrix, None).unwrap();
    let e = embed(&p, ShiftMode::Low, None).unwrap();
    let mut adjacent = Vec::new();
    let mut other = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let d = sq_dist(&e.points[i], &e.points[j]);
            if g.mu(i, j) == 1 {
                adjacent.push(d);
            } else {
                other.push(d);
            }
        }
    }
    // phi^2 = phi + 1 = (3 + sqrt 5) / 2
    let phi_squared = (3.0 + 5f64.sqrt()) / 2.0;
    let worst =
        adjacent.iter().flat_map(|a| other.iter().map(move |b| (a / b - phi_squared).abs())).fold(0.0f64, f64::max);
    let iso = distance_preserving_permutations(&e.points, 1e-6, &GroupLimits::default()).unwrap();
    let brute = naive_isometries(&e.points, 1e-6).len();
    let pass = z == 2 && e.dimension() == 2 && worst <= RATIO_TOL && iso.order() == 10 && brute == 10;
    verdict(
        "2",
        pass,
        &format!("zeta {z}; worst |ratio - phi^2| {worst:.1e}; isometry perms {} (brute force {brute})", iso.order()),
    );
}

#[test]
fn criterion_3_k33_and_c4() {
    let lim = GroupLimits::default();
    let k33 = corpus::complete_bipartite(3, 3);
    let part = twin_decomposition(&k33);
    let f = factorize_aut_order(&k33, &lim).unwrap();
    let brute = naive_automorphism_count(&k33);

    let c4 = corpus::cycle(4);
    let p = build_predistance(&c4, PredistanceKind::Adjacency).unwrap();
    let e = embed(&p, ShiftMode::Low, None).unwrap();
    let rejected = matches!(verify_regular(&c4, &p, &e, &opts()), Err(Error::Reducible { .. }));

    let pass = part.class_sizes() == vec![3, 3] && f.total == 72 && brute == 72 && rejected;
    verdict(
        "3",
        pass,
        &format!(
            "K33 classes {:?}; factorization {:?} x {} = {}; brute force {brute}; C4 rejected as reducible: {rejected}",
            part.class_sizes(),
            f.class_sizes,
            f.quotient_aut_order,
            f.total
        ),
    );
}

#[test]
fn criterion_4_example_predistances() {
    let lim = GroupLimits::default();
    let mut graphs = 0;
    let mut failures = Vec::new();
    for n in 3..=7 {
        for g in connected_simple_graphs(n) {
            graphs += 1;
            for kind in EXAMPLE_KINDS.into_iter().chain([PredistanceKind::Adjacency]) {
                let p = build_predistance(&g, kind).unwrap();
                let commuting = check_commuting(&p, &g, &lim).unwrap().holds();
                let reconstructing = check_reconstructing(&p, &g).unwrap().holds();
                if !(commuting && reconstructing) {
                    failures.push(format!("{kind} on {}", g.to_edge_list().replace('\n', " ")));
                }
            }
        }
    }
    verdict(
        "4",
        failures.is_empty() && graphs == 2 + 6 + 21 + 112 + 853,
        &format!("{graphs} connected graphs x 5 kinds; {} failures {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_5_existence_theorem() {
    let start = Instant::now();
    let mut corpus_graphs: Vec<Multigraph> = Vec::new();
    for n in 1..=4 {
        corpus_graphs.extend(all_multigraphs(n, 2).filter(|g| twin_decomposition(g).is_discrete()));
    }
    let exhaustive = corpus_graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [5, 6] {
        let mut taken = 0;
        while taken < 120 {
            let g = random_multigraph(&mut rng, n, 2);
            if twin_decomposition(&g).is_discrete() {
                corpus_graphs.push(g);
                taken += 1;
            }
        }
    }
    let mut failures = Vec::new();
    for g in &corpus_graphs {
        assert!(naive_irreducible(g));
        let p = build_predistance(g, PredistanceKind::Adjacency).unwrap();
        let result = embed(&p, ShiftMode::Low, None).and_then(|e| verify_regular(g, &p, &e, &opts()));
        match result {
            Ok(c) if c.groups_equal => {}
            Ok(_) => failures.push(g.to_edge_list()),
            Err(e) => failures.push(format!("{e}: {}", g.to_edge_list())),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && corpus_graphs.len() >= 200 && elapsed < Duration::from_secs(300);
    verdict(
        "5",
        pass,
        &format!(
            "{} irreducible multigraphs ({exhaustive} exhaustive n<=4, 240 sampled n=5,6); {} failures; {:.1}s",
            corpus_graphs.len(),
            failures.len(),
            elapsed.as_secs_f64()
        ),
    );
}

/// Expected full-space spectrum of `Lambda(P*)` from the profile of
/// `Lambda(P)`, as descending `(value, multiplicity)` groups.
fn shifted_groups(profile: &[(f64, usize)], mode: ShiftMode) -> Vec<(f64, usize)> {
    let (lo, hi) = (profile.last().unwrap(), profile.first().unwrap());
    let mut out: Vec<(f64, usize)> = match mode {
        ShiftMode::Low => profile[..profile.len() - 1].iter().map(|&(v, m)| (v - lo.0, m)).collect(),
        ShiftMode::High => profile[1..].iter().map(|&(v, m)| (hi.0 - v, m)).collect(),
    };
    let absorbed = match mode {
        ShiftMode::Low => lo.1,
        ShiftMode::High => hi.1,
    };
    out.push((0.0, absorbed + 1));
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    out
}

#[test]
fn criterion_6_spectral_shift() {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut predistances = Vec::new();
    for n in 3..=7 {
        for g in connected_simple_graphs(n) {
            for kind in PredistanceKind::BUILT_IN {
                predistances.push(build_predistance(&g, kind).unwrap());
            }
        }
    }
    for g in all_multigraphs(4, 2) {
        predistances.push(build_predistance(&g, PredistanceKind::Adjacency).unwrap());
    }
    for p in &predistances {
        let profile = spectral_profile(&bilinear_form(&p.matrix), None).unwrap();
        if profile.groups.len() < 2 {
            continue;
        }
        let groups: Vec<(f64, usize)> = profile.groups.iter().map(|g| (g.value, g.multiplicity)).collect();
        for mode in [ShiftMode::Low, ShiftMode::High] {
            let reduced = reduce_predistance(&p.matrix, mode, None).unwrap();
            // independent solver on the full space, 1 direction included
            let values: Vec<f64> = {
                let b = oracle_bilinear_form(&reduced.matrix);
                let mut v: Vec<f64> = nalgebra::SymmetricEigen::new(b).eigenvalues.iter().copied().collect();
                v.sort_by(|a, b| b.total_cmp(a));
                v
            };
            let got = oracle_groups(&values, SHIFT_TOL);
            let want = shifted_groups(&groups, mode);
            let same = got.len() == want.len()
                && got.iter().zip(&want).all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= SHIFT_TOL);
            checked += 1;
            if !same {
                failures.push(format!("{mode:?} {:?}: got {got:?} want {want:?}", p.kind));
            }
        }
    }
    verdict(
        "6",
        failures.is_empty() && checked > 1000,
        &format!("{checked} (predistance, mode) pairs; {} mismatches {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_7_regular_graphs() {
    let mut graphs: Vec<(String, Multigraph)> = Vec::new();
    for n in 3..=7 {
        for g in connected_simple_graphs(n) {
            if g.regular_degree().is_some() {
                graphs.push((format!("n={n} {}-regular #{}", g.regular_degree().unwrap(), graphs.len()), g));
            }
        }
    }
    graphs.push(("Petersen".into(), corpus::petersen()));

    let mut eigvec_worst = 0.0f64;
    let mut zeta_failures = Vec::new();
    for (name, g) in &graphs {
        let n = g.n();
        let a = adjacency_matrix(g);
        let l = bilinear_form(&a);
        let eig = nalgebra::SymmetricEigen::new(to_dmatrix(&a));
        for c in 0..n {
            let lambda = eig.eigenvalues[c];
            let v: Vec<f64> = (0..n).map(|i| eig.eigenvectors[(i, c)]).collect();
            if v.iter().sum::<f64>().abs() > 1e-6 {
                // the all-ones eigenvector of a connected regular graph
                continue;
            }
            let lv = l.mul_vec(&v);
            for (x, y) in lv.iter().zip(&v) {
                eigvec_worst = eigvec_worst.max((x + lambda / 2.0 * y).abs());
            }
        }
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        let groups = oracle_groups(&values, 1e-7);
        let smallest_mult = groups.last().unwrap().1;
        let formula = n - smallest_mult - 1;
        let z = zeta(&a, None).unwrap();
        if z != formula {
            zeta_failures.push(format!("{name}: zeta {z}, formula {formula}"));
        }
    }
    let eig_ok = eigvec_worst <= EIGENVECTOR_TOL;
    verdict(
        "7",
        eig_ok && zeta_failures.is_empty(),
        &format!(
            "{} regular graphs; eigenvector relation worst residual {eigvec_worst:.1e} [{}]; \
             zeta = n - mult(smallest A-eigenvalue) - 1 fails on {} [{}] e.g. {:?}",
            graphs.len(),
            ok(eig_ok),
            zeta_failures.len(),
            ok(zeta_failures.is_empty()),
            zeta_failures.iter().rev().take(2).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_8_coherent_algebra() {
    let lim = GroupLimits::default();
    let petersen_classes = coherent_basis(&corpus::petersen()).unwrap().num_classes();

    let mut corpus_graphs: Vec<Multigraph> = (1..=7).flat_map(simple_graphs_up_to_iso).collect();
    corpus_graphs.extend(all_multigraphs(4, 2));
    corpus_graphs.push(corpus::petersen());

    let mut basis_failures = 0;
    let mut pipeline_runs = 0;
    let mut pipeline_failures = Vec::new();
    for g in &corpus_graphs {
        let basis = coherent_basis(g).unwrap();
        if basis.validate().is_err() || !basis.is_stable() {
            basis_failures += 1;
        }
        let p = make_reconstructing(&basis, g).unwrap();
        let commuting = check_commuting(&p, g, &lim).unwrap().holds();
        let reconstructing = check_reconstructing(&p, g).unwrap().holds();
        if !(commuting && reconstructing) {
            pipeline_failures.push(format!("properties: {}", g.to_edge_list()));
            continue;
        }
        if !twin_decomposition(g).is_discrete() {
            continue;
        }
        pipeline_runs += 1;
        let certified = embed(&p, ShiftMode::Low, None).and_then(|e| verify_regular(g, &p, &e, &opts()));
        match certified {
            Ok(c) if c.groups_equal => {}
            Ok(_) => pipeline_failures.push(g.to_edge_list()),
            Err(e) => pipeline_failures.push(format!("{e}: {}", g.to_edge_list())),
        }
    }
    let pass = petersen_classes == 3 && basis_failures == 0 && pipeline_failures.is_empty();
    verdict(
        "8",
        pass,
        &format!(
            "Petersen classes {petersen_classes}; basis conditions violated on {basis_failures}/{} graphs; \
             make_reconstructing pipeline on {pipeline_runs} irreducible graphs, {} failures",
            corpus_graphs.len(),
            pipeline_failures.len()
        ),
    );
}

#[test]
fn criterion_9_strongly_regular_bound() {
    let g = corpus::petersen();
    let p = build_predistance(&g, PredistanceKind::Adjacency).unwrap();
    let dims: Vec<usize> =
        [ShiftMode::Low, ShiftMode::High].iter().map(|&m| embed(&p, m, None).unwrap().dimension()).collect();
    let min = *dims.iter().min().unwrap();
    let bound = (g.n() - 1) / 2;
    verdict(
        "9",
        min == 4 && min <= bound,
        &format!("dimensions low {} / high {}; min {min} <= {bound}", dims[0], dims[1]),
    );
}
