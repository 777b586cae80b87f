//! Acceptance suite: one test (and one printed pass line) per criterion.

use k3mono::cli::{default_points_i, default_points_ii};
use k3mono::cpoly::{BinaryForm, CPoly};
use k3mono::numerology;
use k3mono::permgroup::{
    embed_s12_diagonal, embed_s8_triple, factorial, induced_block_action, BlockSystem, Deg24Group,
    PermGroup, Permutation, Primitivity,
};
use k3mono::roots::{self, solve_all};
use k3mono::tracker::{track_loop, TrackerConfig};
use k3mono::weierstrass::{
    cluster_counts, random_scalar_loop, swap_loop, validate, Construction, ConstructionKind,
    ParameterLoop, WeierstrassPair,
};
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

fn construction_i() -> Construction {
    Construction::with_default_k(ConstructionKind::I, default_points_i()).unwrap()
}

fn construction_ii() -> Construction {
    Construction::with_default_k(ConstructionKind::II, default_points_ii()).unwrap()
}

fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
    (0..n - 1)
        .map(|i| Permutation::transposition(n, i, i + 1))
        .collect()
}

/// Partition the 24 fiber roots by nearest marked point.
fn geometric_blocks(fiber_roots: &[Complex64], points: &[Complex64]) -> BlockSystem {
    let block_of = fiber_roots
        .iter()
        .map(|&r| {
            points
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (r - *a).norm().partial_cmp(&(r - *b).norm()).unwrap())
                .unwrap()
                .0
        })
        .collect();
    BlockSystem {
        block_of,
        num_blocks: points.len(),
    }
}

#[test]
fn criterion_1_genus1_certification() {
    let start = std::time::Instant::now();
    let out = tempfile::NamedTempFile::new().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_k3mono"))
        .args(["verify-genus1", "--out"])
        .arg(out.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.path()).unwrap()).unwrap();
    assert_eq!(report["conclusion"], "S24");
    assert_eq!(report["group"]["order"], "620448401733239439360000");
    assert!(report["loops_used"].as_u64().unwrap() <= 400);
    assert!(start.elapsed().as_secs() < 120, "run exceeded 2 minutes");
    println!("criterion 1 (genus-1 certification, S24 within budget): PASS");
}

#[test]
fn criterion_2_lemma_s12_replication() {
    let ci = construction_i();
    let cfg = TrackerConfig::default();
    let mut perms = Vec::new();
    for i in 0..11 {
        let lp = swap_loop(&ci, i, i + 1, 1).unwrap();
        let t = track_loop(&lp, &cfg).unwrap();
        assert_eq!(t.perm.nontrivial_cycle_type(), vec![2, 2], "loop {i}");
        perms.push(t.perm);
    }
    // the common pair partition: each marked point owns one exact root and
    // one perturbed partner
    let fiber = ci.pair().fiber().unwrap();
    let pairs = geometric_blocks(&fiber.roots, &ci.points);
    assert!(pairs.block_sizes().iter().all(|&s| s == 2));
    let induced = induced_block_action(&perms, &pairs)
        .expect("swap permutations must preserve the pair partition");
    let pair_group = PermGroup::generate(12, &induced).unwrap();
    assert_eq!(pair_group.order(), factorial(12));

    // the point group is a diagonal copy of S12: imprimitive structure
    // shows up as a 2-orbit partition and as the 12-pair system
    let point_group = PermGroup::generate(24, &perms).unwrap();
    assert_eq!(point_group.order(), factorial(12));
    match point_group.primitivity() {
        Primitivity::Intransitive(orbits) => {
            assert_eq!(orbits.len(), 2);
            assert!(orbits.iter().all(|o| o.len() == 12));
        }
        other => panic!("expected the two 12-point orbits, got {other:?}"),
    }
    println!("criterion 2 (S12 lemma: 2+2 swaps, pair action of order 12!): PASS");
}

#[test]
fn criterion_3_lemma_s8_replication() {
    let cii = construction_ii();
    let cfg = TrackerConfig::default();
    let mut perms = Vec::new();
    for j in 0..7 {
        let lp = swap_loop(&cii, j, j + 1, 1).unwrap();
        let t = track_loop(&lp, &cfg).unwrap();
        assert_eq!(t.perm.nontrivial_cycle_type(), vec![2, 2, 2], "loop {j}");
        assert_eq!(t.perm.parity(), -1, "loop {j}");
        perms.push(t.perm);
    }
    let point_group = PermGroup::generate(24, &perms).unwrap();
    assert_eq!(point_group.order(), factorial(8));
    // detected 3-blocks-of-8: the orbit partition
    match point_group.primitivity() {
        Primitivity::Intransitive(orbits) => {
            assert_eq!(orbits.len(), 3);
            assert!(orbits.iter().all(|o| o.len() == 8));
        }
        other => panic!("expected three 8-point orbits, got {other:?}"),
    }
    // detected 8-blocks-of-3: the geometric triples are invariant and the
    // induced action is the full S8
    let fiber = cii.pair().fiber().unwrap();
    let triples = geometric_blocks(&fiber.roots, &cii.points);
    assert!(triples.block_sizes().iter().all(|&s| s == 3));
    let induced = induced_block_action(&perms, &triples)
        .expect("swap permutations must preserve the triple partition");
    assert_eq!(
        PermGroup::generate(8, &induced).unwrap().order(),
        factorial(8)
    );
    println!("criterion 3 (S8 lemma: odd 2+2+2 swaps, 8 triples preserved): PASS");
}

#[test]
fn criterion_4_primitivity_theorem_replication() {
    let f_gens: Vec<Permutation> = adjacent_transpositions(12)
        .iter()
        .map(embed_s12_diagonal)
        .collect();
    let g_gens: Vec<Permutation> = adjacent_transpositions(8)
        .iter()
        .map(embed_s8_triple)
        .collect();
    let full = factorial(24);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cases = 0usize;
    while cases < 100 {
        // random conjugator via Fisher-Yates
        let mut images: Vec<usize> = (0..24).collect();
        for i in (1..24).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        let c = Permutation::from_images(images).unwrap();
        let c_inv = c.inverse();
        let conj: Vec<Permutation> = g_gens.iter().map(|g| c_inv.then(g).then(&c)).collect();

        // filter: some conjugated Im(g)-orbit must meet both Im(f)-orbits
        let orbit_group = PermGroup::generate(24, &conj).unwrap();
        let interleaves = orbit_group
            .orbits()
            .iter()
            .any(|o| o.iter().any(|&p| p < 12) && o.iter().any(|&p| p >= 12));
        if !interleaves {
            continue;
        }
        cases += 1;

        let mut gens = f_gens.clone();
        gens.extend(conj);
        let group = PermGroup::generate(24, &gens).unwrap();
        assert_eq!(group.order(), full, "case {cases}");
        assert!(group.is_primitive(), "case {cases}");
    }
    println!("criterion 4 (100 interleaved conjugates generate S24): PASS");
}

#[test]
fn criterion_5_numerology_exact() {
    assert_eq!(numerology::flex_count(3), Ok(9));
    assert_eq!(numerology::bitangent_count(6), Ok(324));
    assert_eq!(numerology::bitangent_count(4), Ok(28));
    assert_eq!(numerology::yau_zaslow(3), vec![1, 24, 324, 3200]);
    let inv = numerology::generic_invariants();
    assert_eq!(inv.mu0, 36);
    assert_eq!(inv.swallowtails, 320);
    assert_eq!(numerology::DEG_C_D, 320);
    assert_eq!(numerology::DEG_C_PAR, 32);
    assert_eq!(numerology::dual_double_curve_degree(), 480);
    assert_eq!(inv.i, 2560);
    assert_eq!(inv.delta_b, 11520);
    assert_eq!(inv.v_b, 1920);
    assert_eq!(inv.star_formula_sides(), (16320, 16320));
    let good = numerology::good_surface_solve().unwrap();
    assert_eq!(good.parabolic_double, 1918);
    assert_eq!(good.v_b, 1920);
    assert_eq!(good.delta_b, 11520);
    assert_eq!(good.trinodal_count, 3198);
    assert_eq!(good.trinodal_count + 2, 3200);
    println!("criterion 5 (exact numerology table): PASS");
}

/// A random valid pair whose fiber is well separated, so loops around it
/// track quickly.
fn random_separated_base(rng: &mut ChaCha8Rng) -> WeierstrassPair {
    loop {
        let draw = |rng: &mut ChaCha8Rng, degree: usize| {
            BinaryForm::new(
                degree,
                (0..=degree)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
        };
        let pair = WeierstrassPair::new(draw(rng, 8), draw(rng, 12));
        let report = validate(&pair);
        if report.valid && report.separation.unwrap() > 0.05 {
            return pair;
        }
    }
}

#[test]
fn criterion_6_tracker_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let base = random_separated_base(&mut rng);
    let cfg = TrackerConfig::default();

    // identity loop
    let constant = ParameterLoop {
        base: base.clone(),
        segments: Vec::new(),
    };
    assert!(track_loop(&constant, &cfg).unwrap().perm.is_identity());

    // reverse is the inverse, concatenation composes left to right
    let l1 = random_scalar_loop(&base, &mut rng);
    let l2 = random_scalar_loop(&base, &mut rng);
    let p1 = track_loop(&l1, &cfg).unwrap().perm;
    let p2 = track_loop(&l2, &cfg).unwrap().perm;
    let back = track_loop(&l1.reverse(), &cfg).unwrap().perm;
    assert_eq!(back, p1.inverse());
    let composed = track_loop(&l1.concat(&l2), &cfg).unwrap().perm;
    assert_eq!(composed, p1.then(&p2));

    // 10x-finer re-track agreement on 50 accepted loops
    let fine = cfg.finer(10.0);
    let mut accepted = 0usize;
    while accepted < 50 {
        let lp = random_scalar_loop(&base, &mut rng);
        let coarse = match track_loop(&lp, &cfg) {
            Ok(t) => t,
            Err(_) => continue,
        };
        accepted += 1;
        let refined = track_loop(&lp, &fine).unwrap();
        assert_eq!(coarse.perm, refined.perm, "loop {accepted}");
    }
    println!("criterion 6 (tracker identities and fine-step agreement): PASS");
}

#[test]
fn criterion_7_root_finder_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let mut roots_in: Vec<Complex64> = Vec::new();
        while roots_in.len() < 24 {
            let cand = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if cand.norm() <= 1.0 && roots_in.iter().all(|r| (r - cand).norm() > 0.05) {
                roots_in.push(cand);
            }
        }
        let p = CPoly::from_roots(&roots_in);
        let fiber = solve_all(&p).unwrap();
        // optimal matching reduces to nearest matching at this separation
        let mut max_err = 0.0f64;
        let mut used = vec![false; 24];
        for &z in &fiber.roots {
            let (j, err) = roots_in
                .iter()
                .enumerate()
                .map(|(j, &r)| (j, (z - r).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(
                !used[j],
                "trial {trial}: two computed roots matched one input"
            );
            used[j] = true;
            max_err = max_err.max(err);
        }
        assert!(max_err < 1e-8, "trial {trial}: max error {max_err:e}");
        // label determinism, bit for bit
        let again = solve_all(&p).unwrap();
        assert_eq!(fiber.roots, again.roots);
    }
    println!("criterion 7 (degree-24 accuracy and deterministic labels): PASS");
}

/// Breadth-first closure of a generator set; panics if the group exceeds
/// the cap.
fn brute_force_order(degree: usize, gens: &[Permutation], cap: usize) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![Permutation::identity(degree)];
    seen.insert(queue[0].clone());
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                assert!(seen.len() <= cap, "brute-force cap exceeded");
                queue.push(q);
            }
        }
    }
    seen.len()
}

fn projective_line_perm(map: impl Fn(Option<i64>) -> Option<i64>) -> Permutation {
    // points 0..=22 are the field elements of F_23; 23 is infinity
    let images = (0..24)
        .map(|p| {
            let x = if p == 23 { None } else { Some(p as i64) };
            match map(x) {
                None => 23,
                Some(v) => v.rem_euclid(23) as usize,
            }
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

fn inv_mod_23(x: i64) -> i64 {
    // 23 is prime: x^21 = x^-1 (Fermat)
    let mut acc = 1i64;
    for _ in 0..21 {
        acc = acc * x % 23;
    }
    acc
}

#[test]
fn criterion_8_permutation_engine_oracles() {
    // BSGS order vs brute force on 30 random groups of order <= 10^4
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..30 {
        let degree = rng.gen_range(4..=7);
        let num_gens = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..num_gens)
            .map(|_| {
                let mut images: Vec<usize> = (0..degree).collect();
                for i in (1..degree).rev() {
                    images.swap(i, rng.gen_range(0..=i));
                }
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let brute = brute_force_order(degree, &gens, 10_000);
        let group = PermGroup::generate(degree, &gens).unwrap();
        assert_eq!(group.order(), BigUint::from(brute), "case {case}");
    }

    // x -> x + 1 and x -> -1/x generate PSL2(23) on the projective line
    let shift = projective_line_perm(|x| x.map(|v| v + 1));
    let neg_inv = projective_line_perm(|x| match x {
        None => Some(0),
        Some(0) => None,
        Some(v) => Some(-inv_mod_23(v)),
    });
    let psl = PermGroup::generate(24, &[shift.clone(), neg_inv]).unwrap();
    assert_eq!(psl.order(), BigUint::from(6072u32));
    assert_eq!(psl.identify_primitive_deg24().unwrap(), Deg24Group::Psl2_23);

    // x -> 1/x has non-square determinant, so adjoining it instead yields
    // all of PGL2(23)
    let inv = projective_line_perm(|x| match x {
        None => Some(0),
        Some(0) => None,
        Some(v) => Some(inv_mod_23(v)),
    });
    let pgl = PermGroup::generate(24, &[shift, inv]).unwrap();
    assert_eq!(pgl.order(), BigUint::from(12144u32));
    assert_eq!(pgl.identify_primitive_deg24().unwrap(), Deg24Group::Pgl2_23);
    println!("criterion 8 (BSGS brute-force oracle and PSL2(23)/PGL2(23)): PASS");
}

#[test]
fn construction_fibers_cluster_as_predicted() {
    // supporting check for criteria 2/3: the fibers split 12x2 and 8x3
    let ci = construction_i();
    let fiber = ci.pair().fiber().unwrap();
    assert!(cluster_counts(&fiber.roots, &ci.points)
        .iter()
        .all(|&n| n == 2));
    let cii = construction_ii();
    let fiber = cii.pair().fiber().unwrap();
    assert!(cluster_counts(&fiber.roots, &cii.points)
        .iter()
        .all(|&n| n == 3));
}

#[test]
fn residuals_certified_along_constructions() {
    // the solved fibers meet the residual contract from the roots module
    for pair in [construction_i().pair(), construction_ii().pair()] {
        let fiber = pair.fiber().unwrap();
        assert!(fiber.residual < roots::RESIDUAL_TOL);
    }
}
