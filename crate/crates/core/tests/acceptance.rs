//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use gcpoly::characters::all_characters;
use gcpoly::trees::{complexity_from_gcp, mu_derivative_at_zero_one};
use gcpoly::zeta::{bartholdi_direct, bartholdi_from_gcp};
use gcpoly::{
    build_bundle, cartesian_product, complexity_kirchhoff, gcp_bundle_factored, gcp_direct,
    gcp_kst, gcp_star_times_kn, gcp_times_kn, northshield_check, tree_count_star_times_kn,
    AbelianGroup, Cyclotomic, FiberSpec, Graph, IntPoly, VoltageAssignment,
};
use num_bigint::BigInt;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

/// 16 complete bipartite graphs, closed form against the pencil, under 1 s.
fn closed_forms_kst() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for s in 1..=4u32 {
        for t in 1..=4u32 {
            let g = Graph::complete_bipartite(s as usize, t as usize);
            if gcp_kst(s, t) != gcp_direct(&g) {
                bad.push(format!("K{s},{t}"));
            }
        }
    }
    let el = start.elapsed();
    let pass = bad.is_empty() && el < Duration::from_secs(1);
    outcome(pass, format!("16 cases, mismatches {bad:?}, {} (limit 1 s)", ms(el)))
}

/// Factored product against the constructed bundle, zero tolerance, under 30 s.
fn bundle_factorization(cache: &mut Vec<(String, Graph, IntPoly)>) -> Outcome {
    let start = Instant::now();
    let corpus = bundle_corpus();
    let mut bad = Vec::new();
    for inst in &corpus {
        let bundle = build_bundle(&inst.base, &FiberSpec::Cayley(inst.fiber.clone()), &inst.phi)
            .expect("corpus voltages are valid");
        let direct = gcp_direct(&bundle);
        match gcp_bundle_factored(&inst.base, &inst.fiber, &inst.phi) {
            Ok(f) if f.product == direct && f.factors.len() == inst.fiber.group().order() => {}
            Ok(_) => bad.push(inst.name.clone()),
            Err(e) => bad.push(format!("{}: {e}", inst.name)),
        }
        cache.push((inst.name.clone(), bundle, direct));
    }
    let el = start.elapsed();
    let pass = bad.is_empty() && corpus.len() >= 40 && el < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "{} instances, mismatches {bad:?}, {} (limit 30 s)",
            corpus.len(),
            ms(el)
        ),
    )
}

/// κ from `∂F/∂μ` against the Laplacian cofactor on corpus graphs and bundles.
fn spanning_trees(bundles: &[(String, Graph, IntPoly)]) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, g) in corpus() {
        count += 1;
        let k = gcpoly::complexity_gcp(&g).unwrap();
        let kk = complexity_kirchhoff(&g);
        let brute_ok = g.edge_count() > 16 || BigInt::from(spanning_trees_brute(&g)) == kk;
        if k != kk || !brute_ok {
            bad.push(name);
        }
    }
    for (name, g, f) in bundles {
        count += 1;
        match complexity_from_gcp(g, f) {
            Ok(k) if k == complexity_kirchhoff(g) => {}
            _ => bad.push(name.clone()),
        }
    }
    let named = [
        (Graph::cycle(4), 4),
        (Graph::complete(4), 16),
        (Graph::path(5), 1),
        (Graph::star(4), 1),
    ];
    for (g, want) in named {
        if gcpoly::complexity_gcp(&g).unwrap() != BigInt::from(want) {
            bad.push(format!("{want}-tree graph"));
        }
    }
    outcome(
        bad.is_empty() && count >= 50,
        format!("{count} graphs, mismatches {bad:?}; κ(C4)=4, κ(K4)=16, κ(tree)=1 checked"),
    )
}

/// Corrected tree count of `K_{1,m} × K_n` against Kirchhoff, printed exponent pinned.
fn star_times_kn_trees() -> Outcome {
    let mut bad = Vec::new();
    for m in 1..=3u32 {
        for n in 2..=4u32 {
            let g = cartesian_product(&Graph::star(m as usize), &Graph::complete(n as usize));
            let oracle = complexity_kirchhoff(&g);
            let tc = tree_count_star_times_kn(m, n);
            let closed = gcp_star_times_kn(m, n);
            let eps = BigInt::from(2 * g.edge_count());
            let via_derivative = mu_derivative_at_zero_one(&closed) / eps;
            let phi = VoltageAssignment::trivial(&Graph::star(m as usize), zn(n as u64));
            let factored = gcp_times_kn(&Graph::star(m as usize), &phi).unwrap().product;
            if tc.corrected != oracle || via_derivative != oracle || closed != factored {
                bad.push(format!("({m},{n})"));
            }
        }
    }
    let pin = tree_count_star_times_kn(1, 2);
    let oracle = complexity_kirchhoff(&Graph::cycle(4));
    let discrepancy = pin.printed != oracle && pin.printed == BigInt::from(64) && oracle == BigInt::from(4);
    outcome(
        bad.is_empty() && discrepancy,
        format!(
            "m<=3, n<=4 mismatches {bad:?}; known discrepancy at (1,2): printed {} vs oracle {}",
            pin.printed, oracle
        ),
    )
}

/// Zeta cores by substitution and directly; Ihara column; trees reduce to 1.
fn zeta_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut trees = 0;
    for (name, g) in corpus().into_iter().filter(|(_, g)| g.vertex_count() <= 8) {
        checked += 1;
        let direct = bartholdi_direct(&g);
        let via = bartholdi_from_gcp(&g, &gcp_direct(&g)).unwrap();
        if direct.core != via.core || direct.prefactor_exponent != via.prefactor_exponent {
            bad.push(format!("{name}: substitution"));
        }
        if at_u_zero(&direct.core) != ihara_det(&g) {
            bad.push(format!("{name}: ihara"));
        }
        let is_tree = g.is_connected() && g.edge_count() + 1 == g.vertex_count();
        if is_tree {
            trees += 1;
            if !direct.ihara_reduced().is_one() {
                bad.push(format!("{name}: tree"));
            }
        }
    }
    outcome(
        bad.is_empty() && trees > 0,
        format!("{checked} graphs (ν<=8), {trees} trees, failures {bad:?}"),
    )
}

/// `F(λ,0)` and `(−1)^ν F(−λ,1)` against cofactor-expansion characteristic polynomials.
fn specializations() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus().into_iter().filter(|(_, g)| g.vertex_count() <= 6) {
        checked += 1;
        let f = gcp_direct(&g);
        if at_mu_zero(&f) != char_poly(&gcpoly::adjacency_matrix(&g)) {
            bad.push(format!("{name}: adjacency"));
        }
        if signed_at_mu_one(&f, g.vertex_count()) != char_poly(&laplacian(&g)) {
            bad.push(format!("{name}: laplacian"));
        }
    }
    outcome(bad.is_empty(), format!("{checked} graphs (ν<=6), failures {bad:?}"))
}

/// `f'(1) = 2(ε−ν)κ` on connected corpus graphs, with `f'(1)` also from cofactor expansion.
fn northshield() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, g) in corpus().into_iter().filter(|(_, g)| g.is_connected()) {
        checked += 1;
        let c = northshield_check(&g).unwrap();
        let oracle = northshield_det(&g).derivative_at_one();
        if !c.matches || c.value != oracle {
            bad.push(name);
        }
    }
    outcome(bad.is_empty(), format!("{checked} connected graphs, failures {bad:?}"))
}

fn groups_up_to_12() -> Vec<AbelianGroup> {
    let mut shapes: Vec<Vec<u64>> = (1..=12).map(|n| vec![n]).collect();
    shapes.extend([
        vec![2, 2],
        vec![2, 4],
        vec![2, 6],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 2, 3],
        vec![4, 3],
        vec![2, 3],
    ]);
    shapes.into_iter().map(|s| AbelianGroup::new(s).unwrap()).collect()
}

/// Orthogonality of character tables and `χ(A∖{id})`.
fn character_algebra() -> Outcome {
    let mut bad = Vec::new();
    let groups = groups_up_to_12();
    for a in &groups {
        let chars = all_characters(a);
        let elems: Vec<_> = a.elements().collect();
        let n = a.order() as i64;
        for (i, ci) in chars.iter().enumerate() {
            for (j, cj) in chars.iter().enumerate() {
                let s = elems.iter().fold(Cyclotomic::from_integer(0), |acc, g| {
                    acc + ci.value(g).unwrap() * cj.value(g).unwrap().conjugate()
                });
                if s != Cyclotomic::from_integer(if i == j { n } else { 0 }) {
                    bad.push(format!("{a}: rows {i},{j}"));
                }
            }
        }
        for (k, g) in elems.iter().enumerate() {
            let s = chars
                .iter()
                .fold(Cyclotomic::from_integer(0), |acc, c| acc + c.value(g).unwrap());
            if s != Cyclotomic::from_integer(if k == 0 { n } else { 0 }) {
                bad.push(format!("{a}: column {k}"));
            }
        }
        let rest = a.non_identity();
        for chi in &chars {
            let want = if chi.is_principal() { n - 1 } else { -1 };
            if chi.sum(&rest).unwrap() != Cyclotomic::from_integer(want) {
                bad.push(format!("{a}: sum for {}", chi.index()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} groups of order <= 12, failures {bad:?}", groups.len()),
    )
}

/// Reads the committed benchmark CSV (`n,t_direct_us,t_factored_us`).
fn bench_report() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../bench/k13_kn.csv");
    let Ok(text) = std::fs::read_to_string(&path) else {
        return outcome(false, format!("missing {}", path.display()));
    };
    let rows: Vec<(u64, f64, f64)> = text
        .lines()
        .skip(1)
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Some((f.first()?.parse().ok()?, f.get(1)?.parse().ok()?, f.get(2)?.parse().ok()?))
        })
        .collect();
    let Some(&(_, d12, f12)) = rows.iter().find(|r| r.0 == 12) else {
        return outcome(false, "no row for n = 12");
    };
    let (first, last) = (rows[0], rows[rows.len() - 1]);
    let ratio_n = last.0 as f64 / first.0 as f64;
    let growth_direct = last.1 / first.1;
    let growth_factored = last.2 / first.2;
    outcome(
        f12 < d12,
        format!(
            "n={}..{}: direct x{growth_direct:.0}, factored x{growth_factored:.1} (n grows x{ratio_n:.0}); at n=12 factored {f12:.0} us vs direct {d12:.0} us",
            first.0, last.0
        ),
    )
}

fn main() {
    let mut cache = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 closed-form K_{s,t}", closed_forms_kst()));
    results.push(("2 bundle factorization", bundle_factorization(&mut cache)));
    results.push(("3 spanning trees", spanning_trees(&cache)));
    results.push(("4 K_{1,m} x K_n tree count", star_times_kn_trees()));
    results.push(("5 zeta identities", zeta_identities()));
    results.push(("6 specializations", specializations()));
    results.push(("7 derivative identity", northshield()));
    results.push(("8 character algebra", character_algebra()));
    results.push(("9 performance report", bench_report()));
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += !o.pass as usize;
        println!("{tag} criterion {name}: {}", o.detail);
    }
    println!("acceptance: {}/{} passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
