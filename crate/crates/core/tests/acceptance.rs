//! The acceptance suite: one check per criterion, one output line each.
//!
//! Run with `cargo test -p qsdesign --test acceptance -- --nocapture` to see
//! the `[PASS]` / `[FAIL]` lines.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsdesign::combinatorics::{binomial_usize, pair_count};
use qsdesign::constructions::golay::GolayCode;
use qsdesign::constructions::{
    complement_design, corpus, corpus_names, golay_witt_design, CorpusEntry,
};
use qsdesign::graph::block_graph;
use qsdesign::linalg::{
    bareiss_rank, compose_ija, decompose_in_ija, full_rank_certificate, matmul, modular_rank,
    pair_block_matrix, rank_lower_bound, ExactMatrix, RANK_PRIMES,
};
use qsdesign::profile::{t_subset_count, SubsetCount};
use qsdesign::spectrum::{certify_multiplicities, predicted_block_graph_spectrum, srg_spectrum};
use qsdesign::tightness::{
    four_design_check, fx_mapping_check, gram_identity_check, predicted_mtm_eigenvalues,
    tightness_certificate, FourSubsetCount, TightnessCertificate,
};
use qsdesign::{profile, srg_check, triangular_graph, Design, Eigenvalue, Spectrum, SrgParams};

type Check = Result<(), String>;
type Criterion = fn(&[Subject]) -> Check;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Subject {
    entry: CorpusEntry,
    certificate: Option<TightnessCertificate>,
}

impl Subject {
    fn name(&self) -> &'static str {
        self.entry.name
    }

    fn design(&self) -> &Design {
        &self.entry.design
    }

    fn cert(&self) -> Result<&TightnessCertificate, String> {
        self.certificate
            .as_ref()
            .ok_or_else(|| format!("{}: no certificate", self.name()))
    }
}

fn subjects() -> Vec<Subject> {
    corpus()
        .into_iter()
        .map(|entry| {
            let certificate = if entry.expected.is_quasi_symmetric() {
                tightness_certificate(&entry.design).ok()
            } else {
                None
            };
            Subject { entry, certificate }
        })
        .collect()
}

fn quasi_symmetric(all: &[Subject]) -> impl Iterator<Item = &Subject> {
    all.iter().filter(|s| s.entry.expected.is_quasi_symmetric())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn golay_gate(_: &[Subject]) -> Check {
    let code = GolayCode::quadratic_residue();
    ensure!(
        code.generator_divides_modulus(),
        "generator does not divide x^23 + 1"
    );
    let count = code.codewords().count();
    ensure!(count == 4096, "{count} codewords");
    ensure!(
        code.minimum_weight() == 7,
        "minimum weight {}",
        code.minimum_weight()
    );
    let w7 = code.weight_distribution()[7];
    ensure!(w7 == 253, "{w7} words of weight 7");
    let witt = golay_witt_design();
    ensure!(witt.b() == 253 && pair_count(23) == 253, "b = {}", witt.b());
    Ok(())
}

fn profile_oracle(_: &[Subject]) -> Check {
    let witt = golay_witt_design();
    let p = profile(&witt).map_err(|e| e.to_string())?;
    let got = (
        p.v,
        p.b,
        p.k,
        p.r,
        p.lambda2,
        p.intersections.clone(),
        p.s,
        p.t,
    );
    let want = (23, 253, 7, Some(77), Some(21), vec![1, 3], 2, 4);
    ensure!(got == want, "profile {got:?}");
    ensure!(
        matches!(t_subset_count(&witt, 5), SubsetCount::Varies { .. }),
        "5-subset counts are constant"
    );
    for s in corpus() {
        let p = profile(&s.design).map_err(|e| e.to_string())?;
        ensure!(s.expected.matches(&p), "{}: profile {p:?}", s.name);
    }
    Ok(())
}

fn gram_identity(all: &[Subject]) -> Check {
    let mut seen = 0;
    for s in quasi_symmetric(all) {
        let direct = gram_identity_check(s.design()).map_err(|e| format!("{}: {e}", s.name()))?;
        ensure!(
            direct && s.cert()?.gram_identity_ok,
            "{}: identity fails",
            s.name()
        );
        seen += 1;
    }
    ensure!(
        seen == 8,
        "{seen} quasi-symmetric corpus designs, expected 8"
    );
    Ok(())
}

fn spectrum_concordance(all: &[Subject]) -> Check {
    for s in quasi_symmetric(all) {
        let g = block_graph(s.design()).map_err(|e| e.to_string())?;
        let params = srg_check(&g).map_err(|e| format!("{}: {e}", s.name()))?;
        let direct = srg_spectrum(&params).map_err(|e| e.to_string())?;
        let p = profile(s.design()).map_err(|e| e.to_string())?;
        let predicted = predicted_block_graph_spectrum(&p).map_err(|e| e.to_string())?;
        ensure!(direct == predicted, "{}: {direct} vs {predicted}", s.name());
        certify_multiplicities(&g.adjacency_matrix(), &direct)
            .map_err(|e| format!("{}: {e}", s.name()))?;
        let c = s.cert()?;
        ensure!(
            c.block_graph_spectrum_ok && c.mtm_spectrum_ok,
            "{}: certificate spectrum checks fail",
            s.name()
        );
    }

    let witt = golay_witt_design();
    let params = srg_check(&block_graph(&witt).unwrap()).map_err(|e| e.to_string())?;
    ensure!(
        params == SrgParams::new(253, 140, 87, 65),
        "Witt block graph {params}"
    );
    let expected = Spectrum::new([
        (Eigenvalue::integer(140), 1),
        (Eigenvalue::integer(25), 22),
        (Eigenvalue::integer(-3), 230),
    ]);
    let direct = srg_spectrum(&params).map_err(|e| e.to_string())?;
    ensure!(direct == expected, "Witt spectrum {direct}");

    let p = profile(&witt).unwrap();
    let mtm: Vec<(BigRational, usize)> = predicted_mtm_eigenvalues(&p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .skip(1)
        .map(|e| (e.value, e.multiplicity))
        .collect();
    ensure!(
        mtm == vec![(q(96), 22), (q(12), 230)],
        "Witt MᵀM eigenvalues {mtm:?}"
    );
    let (k, x, y) = (7i64, 1, 3);
    ensure!(q((k - x) * (k - y) / 2) == q(12), "(k-x)(k-y)/2 != 12");

    let m = pair_block_matrix(&witt).unwrap();
    let gram = matmul(&m.transpose(), &m).unwrap();
    for (mu, mult) in [(96, 22), (12, 230), (441, 1)] {
        let shifted = gram.shift_diagonal(&BigInt::from(mu));
        let r = rank_lower_bound(&shifted);
        ensure!(
            r == 253 - mult,
            "rank(MᵀM - {mu}I) = {r}, expected {}",
            253 - mult
        );
    }
    Ok(())
}

fn bound_and_rank(all: &[Subject]) -> Check {
    for s in quasi_symmetric(all) {
        let m = pair_block_matrix(s.design()).map_err(|e| e.to_string())?;
        let rank = full_rank_certificate(&m);
        let (v, b) = (s.design().v(), s.design().b());
        ensure!(
            rank.full_column_rank && rank.rank == b,
            "{}: rank {} < b = {b}",
            s.name(),
            rank.rank
        );
        ensure!(b <= pair_count(v), "{}: b = {b} > C({v},2)", s.name());
        let c = s.cert()?;
        ensure!(
            c.rank_full && c.bound_ok,
            "{}: certificate disagrees",
            s.name()
        );
    }
    let ag = all
        .iter()
        .find(|s| s.name() == "ag-2-3")
        .ok_or("ag-2-3 missing")?;
    let c = ag.cert()?;
    ensure!(
        ag.design().b() == 12 && pair_count(9) == 36,
        "S(2,3,9) sizes"
    );
    ensure!(!c.is_tight, "S(2,3,9) reported tight");
    Ok(())
}

fn equality_biconditional(all: &[Subject]) -> Check {
    let mut tight = Vec::new();
    for s in quasi_symmetric(all) {
        let c = s.cert()?;
        ensure!(c.is_valid(), "{}: INVALID {:?}", s.name(), c.status);
        ensure!(
            c.is_tight == s.entry.expected.is_tight(),
            "{}: is_tight = {}",
            s.name(),
            c.is_tight
        );
        ensure!(
            c.four_design_iff_tight_ok,
            "{}: biconditional fails",
            s.name()
        );
        if c.is_tight {
            ensure!(
                c.lambda4.uniform_value().is_some(),
                "{}: tight but 4-subset counts vary",
                s.name()
            );
            tight.push(s.name());
        } else {
            ensure!(!c.is_four_design, "{}: non-tight 4-design", s.name());
        }
    }
    let expected_tight = [
        "witt-23-7",
        "witt-complement-23-16",
        "near-complete-5",
        "near-complete-6",
        "near-complete-7",
        "near-complete-8",
    ];
    ensure!(tight == expected_tight, "tight designs {tight:?}");

    let witt = golay_witt_design();
    let complement = complement_design(&witt).map_err(|e| e.to_string())?;
    let l_witt = four_design_check(&witt).map_err(|e| e.to_string())?;
    let l_comp = four_design_check(&complement).map_err(|e| e.to_string())?;
    ensure!(
        l_witt == FourSubsetCount::Constant(1),
        "Witt lambda4 {l_witt}"
    );
    ensure!(
        l_comp == FourSubsetCount::Constant(52),
        "complement lambda4 {l_comp}"
    );
    // b·C(16,4) = λ4·C(23,4)
    let lhs = 253 * binomial_usize(16, 4).unwrap();
    ensure!(
        lhs == 52 * binomial_usize(23, 4).unwrap(),
        "complement count identity"
    );
    Ok(())
}

/// Blocks containing both pairs, counted directly.
fn blocks_through(d: &Design, pts: &[usize]) -> usize {
    d.blocks()
        .iter()
        .filter(|b| pts.iter().all(|&p| b.contains(p)))
        .count()
}

fn step_b_extensional(all: &[Subject]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    for s in quasi_symmetric(all) {
        let c = s.cert()?;
        if !c.is_tight {
            continue;
        }
        let d = s.design();
        let ok = fx_mapping_check(d).map_err(|e| e.to_string())?;
        ensure!(ok && c.fx_mapping_ok, "{}: f_p M != (k-1) g_p", s.name());

        let m = pair_block_matrix(d).unwrap();
        let mmt = matmul(&m, &m.transpose()).unwrap();
        let t = triangular_graph(d.v()).adjacency_matrix();
        let dec = decompose_in_ija(&mmt, &t).map_err(|e| format!("{}: {e}", s.name()))?;
        ensure!(dec.residual_zero, "{}: residual non-zero", s.name());
        ensure!(
            c.mmt_decomposition.as_ref() == Some(&dec),
            "{}: certificate differs",
            s.name()
        );

        let v = d.v();
        let mut samples: BTreeMap<&str, usize> = BTreeMap::new();
        while samples.values().sum::<usize>() < 300 {
            let mut pts: Vec<usize> = (0..v).collect();
            pts.shuffle(&mut rng);
            let (a, b) = (pts[0], pts[1]);
            let class = rng.gen_range(0..3);
            let (label, union, expected) = match class {
                0 => ("coincident", vec![a, b], dec.diagonal_entry()),
                1 => ("meeting", vec![a, b, pts[2]], dec.adjacent_entry()),
                _ => (
                    "disjoint",
                    vec![a, b, pts[2], pts[3]],
                    dec.non_adjacent_entry(),
                ),
            };
            let n = samples.entry(label).or_default();
            if *n == 100 {
                continue;
            }
            *n += 1;
            let count = blocks_through(d, &union);
            ensure!(
                q(count as i64) == expected,
                "{}: {label} pair-pair {union:?} lies in {count} blocks, decomposition says {expected}",
                s.name()
            );
        }
    }
    let witt = all
        .iter()
        .find(|s| s.name() == "witt-23-7")
        .ok_or("witt missing")?;
    let dec = witt
        .cert()?
        .mmt_decomposition
        .clone()
        .ok_or("Witt decomposition absent")?;
    let entries = (
        dec.diagonal_entry(),
        dec.adjacent_entry(),
        dec.non_adjacent_entry(),
    );
    ensure!(entries == (q(21), q(5), q(1)), "Witt entries {entries:?}");
    Ok(())
}

fn property_suite(_: &[Subject]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);

    for entry in corpus().into_iter().filter(|e| e.expected.v <= 9) {
        let p = profile(&entry.design).unwrap();
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..entry.design.v()).collect();
            perm.shuffle(&mut rng);
            let relabeled = profile(&entry.design.relabel(&perm)).unwrap();
            ensure!(
                relabeled == p,
                "{}: profile changes under {perm:?}",
                entry.name
            );
        }
    }

    for entry in corpus() {
        let c = complement_design(&entry.design).map_err(|e| e.to_string())?;
        let back = complement_design(&c).map_err(|e| e.to_string())?;
        ensure!(
            back == entry.design,
            "{}: complement is not an involution",
            entry.name
        );
    }

    for trial in 0..200 {
        let rows = rng.gen_range(1..=12);
        let cols = rng.gen_range(1..=12);
        let inner = rng.gen_range(1..=12);
        let a = ExactMatrix::from_fn(rows, inner, |_, _| rng.gen_range(-3i64..=3).into());
        let b = ExactMatrix::from_fn(inner, cols, |_, _| rng.gen_range(-3i64..=3).into());
        let m = matmul(&a, &b).unwrap();
        let exact = bareiss_rank(&m);
        for p in RANK_PRIMES {
            let r = modular_rank(&m, p);
            ensure!(
                r == exact,
                "trial {trial}: rank mod {p} = {r}, Bareiss {exact}"
            );
        }
        ensure!(
            exact <= inner.min(rows).min(cols),
            "trial {trial}: rank {exact} too large"
        );
    }

    for v in 4..=8 {
        let a = triangular_graph(v).adjacency_matrix();
        for _ in 0..10 {
            let cs: [i64; 3] = [0; 3].map(|_| rng.gen_range(-1000..1000));
            let s = compose_ija(&cs[0].into(), &cs[1].into(), &cs[2].into(), &a);
            let dec = decompose_in_ija(&s, &a).map_err(|e| e.to_string())?;
            let got = (dec.c_identity, dec.c_ones, dec.c_adjacency);
            ensure!(
                got == (q(cs[0]), q(cs[1]), q(cs[2])),
                "T({v}): {got:?} vs {cs:?}"
            );
        }
    }

    for k in 2..200usize {
        for x in 0..k {
            let lhs = binomial_usize(k, 2).unwrap() - binomial_usize(x, 2).unwrap();
            ensure!(2 * lhs == (k - x) * (k + x - 1), "C({k},2) - C({x},2)");
        }
    }
    Ok(())
}

fn cli_contract(_: &[Subject]) -> Check {
    let bin = env!("CARGO_BIN_EXE_qsdesign");
    let run = |args: &[&str], input: &[u8]| -> Result<(Option<i32>, Vec<u8>), String> {
        let mut child = Command::new(bin)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| e.to_string())?;
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input)
            .map_err(|e| e.to_string())?;
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        Ok((out.status.code(), out.stdout))
    };
    for name in corpus_names() {
        let (code, blocks) = run(&["construct", name], b"")?;
        ensure!(code == Some(0), "construct {name} exited {code:?}");
        let (code, _) = run(&["analyze"], &blocks)?;
        ensure!(code == Some(0), "analyze {name} exited {code:?}");
        let (c1, j1) = run(&["analyze", "--json"], &blocks)?;
        let (c2, j2) = run(&["analyze", "--json"], &blocks)?;
        ensure!(
            c1 == Some(0) && c2 == Some(0),
            "analyze --json {name} failed"
        );
        ensure!(j1 == j2, "{name}: JSON differs between runs");
    }
    let (code, _) = run(&["analyze"], b"v=4\n0 1\n0 q\n")?;
    ensure!(code == Some(2), "malformed input exited {code:?}");
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Criterion); 9] = [
        ("Golay gate", golay_gate),
        ("profile oracle", profile_oracle),
        ("Gram identity", gram_identity),
        ("spectrum concordance", spectrum_concordance),
        ("bound and rank", bound_and_rank),
        ("equality biconditional", equality_biconditional),
        ("step-(b) extensional checks", step_b_extensional),
        ("property suite", property_suite),
        ("CLI contract", cli_contract),
    ];
    let all = subjects();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&all) {
            Ok(()) => println!("[PASS] {} {name}", i + 1),
            Err(why) => {
                println!("[FAIL] {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
