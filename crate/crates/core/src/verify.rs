//! Named verification suites: each bundles the exact identities, property
//! sweeps, and seeded statistical checks of one subsystem into a [`Report`].
//!
//! Suites read their scale knobs (dimension caps, sample counts, seeds,
//! thresholds) from [`RunConfig`], so the same code serves quick interactive
//! runs and the heavyweight acceptance settings.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::cones::{cone_of_euclid_path, cone_of_rauzy_path, extend_loop};
use crate::error::{Error, Result};
use crate::euclid::{cf_digits, cf_floor, e_sigma_step, expansion, EStep};
use crate::geom2d::shoelace_area;
use crate::iet::Iet;
use crate::induction::{step, RauzyState};
use crate::mcf;
use crate::numerics::{fmt_rat, rat, Int, Rat, RVector};
use crate::perm::{irreducible_perms, rauzy_class, Perm};
use crate::proofgeom::{
    ball_ratio, check_euclid_intersection, pplus_bound, pplus_mc, slice_measure, slice_mc,
    t_plus_polygon, t_polygon, tplus_ratio, witness_intersection, Slice, WitnessParams,
};
use crate::report::{Assertion, Report, RunConfig};
use crate::sampling::{distinct_positive_rationals, rng_for};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "cones",
    "euclid",
    "euclid-proof",
    "iet",
    "mcf",
    "permutations",
    "rauzy-proof",
    "all",
];

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    match name {
        "permutations" => Ok(suite_permutations(cfg)),
        "iet" => Ok(suite_iet(cfg)),
        "euclid" => Ok(suite_euclid(cfg)),
        "cones" => Ok(suite_cones(cfg)),
        "euclid-proof" => Ok(suite_euclid_proof(cfg)),
        "rauzy-proof" => Ok(suite_rauzy_proof(cfg)),
        "mcf" => Ok(suite_mcf(cfg)),
        "all" => Ok(suite_all(cfg)),
        other => Err(Error::OutOfDomain(format!(
            "unknown suite {other:?}; expected one of {SUITES:?}"
        ))),
    }
}

fn row(p: &[usize]) -> Perm {
    Perm::from_bottom_row(p).expect("valid test row")
}

/// Class combinatorics: the small exact graphs, and the structure lemmas
/// over every irreducible permutation up to the configured dimension.
pub fn suite_permutations(cfg: &RunConfig) -> Report {
    let mut report = Report::new("permutations", cfg.clone());

    let g2 = rauzy_class(&row(&[2, 1])).expect("irreducible");
    report.push(
        Assertion::exact(
            "class_n2_is_a_double_self_loop",
            g2.size() == 1 && g2.a_edge(0) == 0 && g2.b_edge(0) == 0,
        )
        .with_value("size", g2.size()),
    );

    let g3 = rauzy_class(&row(&[3, 2, 1])).expect("irreducible");
    let rows: Vec<Vec<usize>> = g3.nodes().iter().map(|p| p.bottom_row()).collect();
    let nodes_ok = rows == vec![vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]];
    let edges_ok = g3.size() == 3
        && g3.a_edge(0) == 0
        && g3.b_edge(0) == 2
        && g3.a_edge(1) == 2
        && g3.b_edge(1) == 1
        && g3.a_edge(2) == 1
        && g3.b_edge(2) == 0;
    report.push(
        Assertion::exact("class_n3_nodes_and_edges", nodes_ok && edges_ok)
            .with_value("nodes", format!("{rows:?}")),
    );

    let all4 = irreducible_perms(4);
    let g41 = rauzy_class(&row(&[4, 3, 2, 1])).expect("irreducible");
    let g42 = rauzy_class(&row(&[3, 4, 1, 2])).expect("irreducible");
    let mut seen: Vec<Vec<usize>> = g41
        .nodes()
        .iter()
        .chain(g42.nodes())
        .map(|p| p.bottom_row())
        .collect();
    seen.sort();
    seen.dedup();
    report.push(
        Assertion::exact(
            "class_n4_two_classes_partition_13",
            all4.len() == 13 && g41.size() == 7 && g42.size() == 6 && seen.len() == 13,
        )
        .with_value("sizes", format!("{}+{}", g41.size(), g42.size())),
    );

    // Structure lemmas over every irreducible permutation with n <= cfg.n.
    let mut classes_checked = 0usize;
    let mut perms_checked = 0usize;
    let mut lemmas_ok = true;
    for n in 2..=cfg.n {
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        for p in irreducible_perms(n) {
            perms_checked += 1;
            // Fixed-point lemma: a trailing symbol mapped to n freezes move b.
            if p.apply(n - 1) == n && p.move_b() != p {
                lemmas_ok = false;
            }
            if seen.contains_key(&p.bottom_row()) {
                continue;
            }
            let g = rauzy_class(&p).expect("irreducible");
            classes_checked += 1;
            for node in g.nodes() {
                seen.insert(node.bottom_row(), ());
            }
            if g.standard_nodes().is_empty() || g.loop_nodes().is_empty() {
                lemmas_ok = false;
            }
            // Each node has exactly one a-predecessor and one b-predecessor.
            let mut a_in = vec![0usize; g.size()];
            let mut b_in = vec![0usize; g.size()];
            for i in 0..g.size() {
                a_in[g.a_edge(i)] += 1;
                b_in[g.b_edge(i)] += 1;
            }
            if a_in.iter().any(|&c| c != 1) || b_in.iter().any(|&c| c != 1) {
                lemmas_ok = false;
            }
        }
    }
    report.push(
        Assertion::exact("structure_lemmas_all_classes", lemmas_ok)
            .with_value("max_n", cfg.n)
            .with_value("classes", classes_checked)
            .with_value("permutations", perms_checked),
    );

    report.finish()
}

/// One induction step against the directly computed first-return map on
/// seeded length data, pointwise on sampled rationals.
pub fn suite_iet(cfg: &RunConfig) -> Report {
    let mut report = Report::new("iet", cfg.clone());
    let cases = cfg.samples.min(500).max(1);
    let per_case = 100usize;
    let mut rng = rng_for(cfg.seed, 17);
    let pools: Vec<Vec<Perm>> = (0..=5).map(|n| if n < 2 { vec![] } else { irreducible_perms(n) }).collect();
    let mut agreed = 0u64;
    let mut points_checked = 0u64;
    let mut breakpoint_skips = 0u64;
    let mut ok = true;
    use rand::Rng;
    for _ in 0..cases {
        let n = rng.gen_range(2..=5usize);
        let perm = pools[n][rng.gen_range(0..pools[n].len())].clone();
        let lambda = RVector::new(distinct_positive_rationals(&mut rng, n, 1 << 12));
        let state = RauzyState::new(lambda.clone(), perm.clone()).expect("positive lengths");
        // Distinct lengths cannot tie at the induction comparison.
        let (next, _mv, _m) = step(&state).expect("no boundary tie on distinct lengths");
        let full = Iet::new(lambda.clone(), perm.clone()).expect("valid");
        let induced = Iet::new(next.lambda.clone(), next.perm.clone()).expect("valid");
        let last = &lambda[n - 1];
        let last_image = &lambda[perm.invert(n) - 1];
        let cut = &full.total().clone() - if last < last_image { last } else { last_image };
        let mut hits = 0usize;
        let mut attempts = 0usize;
        while hits < per_case && attempts < 4 * per_case {
            attempts += 1;
            let k = rng.gen_range(0..(1u64 << 13));
            let x = &cut * rat(k as i64, 1 << 13);
            match full.first_return(&cut, &x, 8) {
                Ok((y, steps)) => {
                    points_checked += 1;
                    hits += 1;
                    if !(steps == 1 || steps == 2) || induced.eval(&x).expect("in range") != y {
                        ok = false;
                    }
                }
                Err(Error::BreakpointHit { .. }) => breakpoint_skips += 1,
                Err(e) => panic!("unexpected first-return failure: {e}"),
            }
        }
        if hits == per_case {
            agreed += 1;
        } else {
            ok = false;
        }
    }
    report.push(
        Assertion::exact("induction_matches_first_return", ok && agreed == cases)
            .with_value("cases", cases)
            .with_value("points_per_case", per_case)
            .with_value("points", points_checked)
            .with_value("breakpoint_skips", breakpoint_skips),
    );
    report.finish()
}

/// Branch-letter digits against the division-based digit oracle on seeded
/// integer pairs.
pub fn suite_euclid(cfg: &RunConfig) -> Report {
    let mut report = Report::new("euclid", cfg.clone());
    let pairs = cfg.samples.min(1000).max(1);
    let mut rng = rng_for(cfg.seed, 23);
    use rand::Rng;
    let mut ok = true;
    let mut total_digits = 0usize;
    for _ in 0..pairs {
        let p: u64 = rng.gen_range(1..=1_000_000);
        let q: u64 = rng.gen_range(1..=1_000_000);
        let v = RVector::new(vec![
            Rat::from_integer(Int::from(p)),
            Rat::from_integer(Int::from(q)),
        ]);
        let e = expansion(&v, (p + q) as usize).expect("nonnegative");
        let digits = cf_digits(&e).expect("nonempty");
        let oracle = cf_floor(&Int::from(p), &Int::from(q)).expect("positive denominator");
        total_digits += digits.len();
        if digits != oracle {
            ok = false;
        }
    }
    report.push(
        Assertion::exact("cf_digits_match_division_oracle", ok)
            .with_value("pairs", pairs)
            .with_value("total_digits", total_digits),
    );
    report.finish()
}

fn euclid_paths_to_depth(depth: usize) -> Vec<Vec<EStep>> {
    let mut out: Vec<Vec<EStep>> = vec![vec![]];
    let mut frontier: Vec<Vec<EStep>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for path in &frontier {
            for s in [EStep::B1, EStep::B2] {
                let mut child = path.clone();
                child.push(s);
                next.push(child);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Exact cone bookkeeping over the full branch tree, plus the loop-extension
/// column law over every loop permutation up to dimension 6.
pub fn suite_cones(cfg: &RunConfig) -> Report {
    let mut report = Report::new("cones", cfg.clone());
    let depth = cfg.depth.min(12);
    let paths = euclid_paths_to_depth(depth);
    let mut by_depth: Vec<Rat> = vec![Rat::zero(); depth + 1];
    let mut cap_ok = true;
    let mut norms_ok = true;
    let alpha = rat(3, 2);
    for path in &paths {
        let cone = cone_of_euclid_path(path);
        by_depth[path.len()] = &by_depth[path.len()] + cone.unit_fraction();
        let norms = cone.column_norms();
        if Rat::from_integer(&norms[0] * &norms[1]) < rat(path.len() as i64 + 1, 1) {
            norms_ok = false;
        }
        // Shoelace oracle for the simplex cap: triangle with vertices at the
        // origin and the two normalized column tips scaled by alpha.
        let c1 = cone.generator().column(0);
        let c2 = cone.generator().column(1);
        let tip = |c: &Vec<Int>, norm: &Int| {
            (
                &alpha * Rat::new(c[0].clone(), norm.clone()),
                &alpha * Rat::new(c[1].clone(), norm.clone()),
            )
        };
        let tri = vec![
            (Rat::zero(), Rat::zero()),
            tip(&c1, &norms[0]),
            tip(&c2, &norms[1]),
        ];
        if cone.cap_measure(&alpha).expect("planar cone") != shoelace_area(&tri) {
            cap_ok = false;
        }
    }
    let additivity_ok = by_depth.iter().all(|s| s == &Rat::from_integer(Int::from(1)));
    report.push(
        Assertion::exact("partition_additivity_by_depth", additivity_ok)
            .with_value("depth", depth)
            .with_value("cones", paths.len()),
    );
    report.push(Assertion::exact("cap_measure_matches_shoelace", cap_ok).with_value("alpha", "3/2"));
    report.push(
        Assertion::exact("column_norm_product_grows_with_depth", norms_ok)
            .with_value("bound", "k+1"),
    );

    // Loop-extension column law.
    let mut law_ok = true;
    let mut loops_checked = 0usize;
    for n in 2..=cfg.n.min(6) {
        for p in irreducible_perms(n) {
            if !p.is_loop() {
                continue;
            }
            loops_checked += 1;
            for moves in [vec![], vec![crate::induction::Move::B, crate::induction::Move::B]] {
                let base = cone_of_rauzy_path(&p, &moves).expect("loop path");
                for extra in 1..=50usize {
                    let ext = extend_loop(&base, extra).expect("loop end");
                    for j in 0..n - 1 {
                        if ext.generator().column(j) != base.generator().column(j) {
                            law_ok = false;
                        }
                    }
                    let l_prev = base.generator().column(n - 2);
                    let l_last = base.generator().column(n - 1);
                    let expect: Vec<Int> = l_last
                        .iter()
                        .zip(&l_prev)
                        .map(|(a, b)| a + b * Int::from(extra))
                        .collect();
                    if ext.generator().column(n - 1) != expect {
                        law_ok = false;
                    }
                }
            }
        }
    }
    report.push(
        Assertion::exact("loop_extension_column_law", law_ok)
            .with_value("loop_permutations", loops_checked)
            .with_value("max_multiplicity", 50),
    );
    report.finish()
}

/// The planar overlap argument: disc-to-window ratio tail, half-trapezoid
/// area identity, implication sweep, and the end-to-end witness pipeline at
/// three distortion thresholds with cross-seed stability.
pub fn suite_euclid_proof(cfg: &RunConfig) -> Report {
    let mut report = Report::new("euclid-proof", cfg.clone());

    let tail = ball_ratio(10_000).to_f64().expect("finite") / std::f64::consts::PI;
    let target = 4.0 / (5.0 * std::f64::consts::PI);
    report.push(
        Assertion::exact("window_disc_ratio_tail", (tail - target).abs() < 1e-3)
            .with_value("computed", format!("{tail:.6}"))
            .with_value("limit", format!("{target:.6}")),
    );

    // Exact half-trapezoid ratio against the polygon oracle on seeded sets.
    let mut rng = rng_for(cfg.seed, 31);
    use rand::Rng;
    let mut ratio_ok = true;
    let sets = 200;
    for _ in 0..sets {
        let pair = distinct_positive_rationals(&mut rng, 2, 1 << 10);
        let scale = rat(rng.gen_range(1..=12), rng.gen_range(1..=4));
        let beta = (&pair[0] * &scale + rat(1, 1), &pair[1] * &scale + rat(1, 1));
        let num = rng.gen_range(1..=9i64);
        let t = rat(num, 10);
        let alpha = (&beta.0 * &t, &beta.1 * &t);
        let claim = tplus_ratio(&alpha, &beta).expect("similar");
        let whole = shoelace_area(&t_polygon(&alpha, &beta).expect("valid"));
        let half = shoelace_area(&t_plus_polygon(&alpha, &beta).expect("valid"));
        if &half / &whole != claim {
            ratio_ok = false;
        }
        let closed = (&beta.0 * &beta.1 - &alpha.0 * &alpha.1) / rat(2, 1);
        if whole != closed {
            ratio_ok = false;
        }
    }
    report.push(
        Assertion::exact("half_trapezoid_ratio_oracle", ratio_ok).with_value("sets", sets),
    );

    // Implication sweep: ratio condition (with canonical-or-smaller scale
    // factor) forces the gap condition, which forces half-overlap.
    let mut sweep_ok = true;
    let mut sweep_count = 0u64;
    let t_values: &[(i64, i64)] = &[
        (1, 2),
        (1, 3),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (9, 10),
        (19, 20),
        (49, 50),
        (99, 100),
    ];
    for n in 1..=4u64 {
        for b1_num in 1..=10i64 {
            for factor in 1..=25i64 {
                for &(tn, td) in t_values {
                    sweep_count += 1;
                    let beta1 = rat(b1_num, 4);
                    let beta = (beta1.clone(), beta1 * rat(factor, 1));
                    let t = rat(tn, td);
                    let alpha = (&beta.0 * &t, &beta.1 * &t);
                    let rep = check_euclid_intersection(&alpha, &beta, n).expect("valid");
                    if !rep.ratio_implies_gap || !rep.gap_implies_overlap {
                        sweep_ok = false;
                    }
                }
            }
        }
    }
    report.push(
        Assertion::exact("implication_sweep_zero_violations", sweep_ok)
            .with_value("points", sweep_count),
    );

    // End-to-end witness at three thresholds, two seeds each.
    for threshold in [4u64, 8, 16] {
        let params = WitnessParams {
            center: (rat(1, 1), rat(89, 55)),
            radius: rat(35, 100),
            n_quad: 7,
            threshold,
            depth_cap: 96,
            samples: cfg.samples,
            seed: cfg.seed,
            workers: cfg.workers,
        };
        let first = witness_intersection(&params).expect("valid disc");
        let second = witness_intersection(&WitnessParams {
            seed: cfg.seed + 1,
            ..params.clone()
        })
        .expect("valid disc");
        let exact_ok = first.quad_in_disc && first.found && first.guarantee;
        let overlap = first
            .intersection
            .as_ref()
            .map(|i| fmt_rat(&i.overlap_area))
            .unwrap_or_default();
        report.push(
            Assertion::exact(format!("witness_guarantee_threshold_{threshold}"), exact_ok)
                .with_value("path_length", first.stage.map(|s| s.to_string()).unwrap_or_default())
                .with_value("overlap_area", overlap),
        );
        let (m1, m2) = (
            first.mc.as_ref().expect("mc block"),
            second.mc.as_ref().expect("mc block"),
        );
        let spread = (m1.overlap_sigma.powi(2) + m2.overlap_sigma.powi(2)).sqrt();
        let stable = (m1.overlap_estimate - m2.overlap_estimate).abs() <= 3.0 * spread;
        let positive = m1.hits > 0 && m2.hits > 0;
        report.push(
            Assertion::monte_carlo(
                format!("witness_overlap_positive_and_stable_threshold_{threshold}"),
                positive && stable,
            )
            .with_value("estimate_seed_a", format!("{:.6}", m1.overlap_estimate))
            .with_value("estimate_seed_b", format!("{:.6}", m2.overlap_estimate))
            .with_value("hits", format!("{}+{}", m1.hits, m2.hits))
            .with_value("sigma", format!("{spread:.6}")),
        );
    }
    report.finish()
}

/// Product-slice volume identity against Monte Carlo, and the half-slice
/// bound at the configured threshold.
pub fn suite_rauzy_proof(cfg: &RunConfig) -> Report {
    let mut report = Report::new("rauzy-proof", cfg.clone());
    let delta = rat(1, 2);
    for n in [3usize, 4] {
        let upper = RVector::new((0..n).map(|k| rat(k as i64 + 2, 1)).collect());
        let lower = upper.scale(&delta);
        let slice = Slice::new(lower, upper.clone()).expect("ordered");
        let exact = slice_measure(&slice);
        // Closed form for a common ratio: (1 - delta^n) prod(upper) / n!.
        let mut prod = Rat::from_integer(Int::from(1));
        for u in upper.iter() {
            prod = prod * u;
        }
        let mut fact = Int::from(1);
        for k in 2..=n {
            fact *= Int::from(k);
        }
        let mut dpow = Rat::from_integer(Int::from(1));
        for _ in 0..n {
            dpow = dpow * &delta;
        }
        let closed = (Rat::from_integer(Int::from(1)) - dpow) * prod / Rat::from_integer(fact);
        report.push(
            Assertion::exact(format!("slice_volume_closed_form_n{n}"), exact == closed)
                .with_value("volume", fmt_rat(&exact)),
        );
        let est = slice_mc(&slice, cfg.samples, cfg.seed, cfg.workers);
        report.push(
            Assertion::monte_carlo(
                format!("slice_volume_monte_carlo_n{n}"),
                est.covers(exact.to_f64().expect("finite")),
            )
            .with_value("estimate", format!("{:.6}", est.estimate))
            .with_value("sigma", format!("{:.6}", est.sigma))
            .with_value("exact", fmt_rat(&exact)),
        );
    }

    // Half-slice bound at the configured threshold: intercepts chosen on the
    // precondition boundary, so the bound is met with equality.
    let threshold = cfg.threshold.max(1);
    let upper = RVector::new(vec![
        rat(3, 1),
        rat(threshold as i64, 1),
        rat(2, 1),
    ]);
    let lower = upper.scale(&delta);
    let slice = Slice::new(lower, upper).expect("ordered");
    let bound_rep = pplus_bound(&slice, threshold).expect("common ratio");
    report.push(
        Assertion::exact(
            "half_slice_bound_at_threshold",
            bound_rep.precondition && bound_rep.bound_holds,
        )
        .with_value("ratio", fmt_rat(&bound_rep.exact_ratio))
        .with_value("bound", fmt_rat(&bound_rep.bound)),
    );
    let est = pplus_mc(&slice, cfg.samples, cfg.seed, cfg.workers);
    let exact_ratio = bound_rep.exact_ratio.to_f64().expect("finite");
    let bound_f = bound_rep.bound.to_f64().expect("finite");
    report.push(
        Assertion::monte_carlo(
            "half_slice_ratio_monte_carlo",
            est.covers(exact_ratio) && est.estimate + 3.0 * est.sigma >= bound_f,
        )
        .with_value("estimate", format!("{:.6}", est.estimate))
        .with_value("sigma", format!("{:.6}", est.sigma))
        .with_value("conditional_samples", est.samples),
    );

    // The planar boundary instance: intercepts (9,1), threshold 18.
    let planar = Slice::new(
        RVector::new(vec![rat(9, 2), rat(1, 2)]),
        RVector::new(vec![rat(9, 1), rat(1, 1)]),
    )
    .expect("ordered");
    let planar_rep = pplus_bound(&planar, 18).expect("common ratio");
    report.push(
        Assertion::exact(
            "half_slice_planar_boundary_case",
            planar_rep.precondition
                && planar_rep.bound_holds
                && planar_rep.exact_ratio == rat(9, 10),
        )
        .with_value("ratio", fmt_rat(&planar_rep.exact_ratio)),
    );
    report.finish()
}

/// Subtractive-family Markov checks, digit-map reconstruction, and the
/// planar cross-check between the two-largest variant and the sorted
/// subtractive step.
pub fn suite_mcf(cfg: &RunConfig) -> Report {
    let mut report = Report::new("mcf", cfg.clone());
    for n in 2..=cfg.n.min(4) {
        let brun = mcf::markov_check(n - 1, n, cfg.samples, cfg.seed).expect("valid index");
        report.push(
            Assertion::exact(
                format!("markov_two_largest_full_classes_n{n}"),
                brun.dets_unimodular
                    && brun.identities_exact
                    && brun.same_pattern_all_covered
                    && brun.full_classes,
            )
            .with_value("branches", brun.branches.len())
            .with_value("targets_per_class", brun.samples),
        );
        if n >= 3 {
            let selmer = mcf::markov_check(1, n, cfg.samples, cfg.seed).expect("valid index");
            report.push(
                Assertion::exact(
                    format!("markov_smallest_exact_parts_n{n}"),
                    selmer.dets_unimodular
                        && selmer.identities_exact
                        && selmer.same_pattern_all_covered,
                )
                .with_value("branches", selmer.branches.len()),
            );
            let covered: u64 = selmer.branches.iter().map(|b| b.covered).sum();
            let targets: u64 = selmer.branches.iter().map(|b| b.targets).sum();
            report.push(
                Assertion::measured(format!("markov_smallest_branch_coverage_n{n}"))
                    .with_value("covered", covered)
                    .with_value("targets", targets)
                    .with_value("full_classes", selmer.full_classes),
            );
        }
    }

    // Digit-map reconstruction on seeded points.
    let mut rng = rng_for(cfg.seed, 41);
    let mut recon_ok = true;
    let points = 1000usize;
    use rand::Rng;
    for _ in 0..points {
        let n = rng.gen_range(2..=4usize);
        let mut vals = distinct_positive_rationals(&mut rng, n, 1 << 12);
        vals.sort();
        let mut coords = vec![vals[n - 1].clone()];
        coords.extend(vals[..n - 1].iter().cloned());
        let v = RVector::new(coords);
        let step = mcf::jacobi_perron(&v).expect("domain");
        let m = mcf::jacobi_matrix(n, &step.digits).expect("digit count");
        if m.apply(&step.image).expect("square") != v {
            recon_ok = false;
        }
        if step.digits.iter().any(|a| a.is_negative())
            || step.digits.last().expect("nonempty") < &Int::from(1)
        {
            recon_ok = false;
        }
    }
    report.push(
        Assertion::exact("digit_map_reconstruction", recon_ok).with_value("points", points),
    );

    // Planar cross-check: the two-largest variant against the sorted
    // subtractive step, stepwise from sorted states and as multisets always.
    let mut bridge_ok = true;
    for _ in 0..500 {
        let pair = RVector::new(distinct_positive_rationals(&mut rng, 2, 1 << 10));
        let ours = mcf::brun_step(&pair).expect("planar");
        let sorted = e_sigma_step(&pair).expect("nonnegative");
        let mut a: Vec<Rat> = ours.iter().cloned().collect();
        let mut b: Vec<Rat> = sorted.iter().cloned().collect();
        a.sort();
        b.sort();
        if a != b {
            bridge_ok = false;
        }
        if pair[0] <= pair[1] && ours != sorted {
            bridge_ok = false;
        }
    }
    report.push(Assertion::exact("two_largest_matches_sorted_euclid_n2", bridge_ok));
    report.finish()
}

/// Every suite, with names prefixed by their suite.
pub fn suite_all(cfg: &RunConfig) -> Report {
    let mut report = Report::new("all", cfg.clone());
    report.absorb("permutations", suite_permutations(cfg));
    report.absorb("iet", suite_iet(cfg));
    report.absorb("euclid", suite_euclid(cfg));
    report.absorb("cones", suite_cones(cfg));
    report.absorb("euclid-proof", suite_euclid_proof(cfg));
    report.absorb("rauzy-proof", suite_rauzy_proof(cfg));
    report.absorb("mcf", suite_mcf(cfg));
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> RunConfig {
        RunConfig {
            seed: 11,
            samples: 2_000,
            depth: 6,
            n: 4,
            threshold: 4,
            workers: 4,
            format: "json".into(),
        }
    }

    #[test]
    fn permutations_suite_passes_small() {
        let r = suite_permutations(&small_cfg());
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn iet_suite_passes_small() {
        let mut cfg = small_cfg();
        cfg.samples = 40;
        let r = suite_iet(&cfg);
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn euclid_suite_passes_small() {
        let mut cfg = small_cfg();
        cfg.samples = 120;
        let r = suite_euclid(&cfg);
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn cones_suite_passes_small() {
        let r = suite_cones(&small_cfg());
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn euclid_proof_suite_passes_small() {
        let r = suite_euclid_proof(&small_cfg());
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn rauzy_proof_suite_passes_small() {
        let mut cfg = small_cfg();
        cfg.samples = 60_000;
        let r = suite_rauzy_proof(&cfg);
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn mcf_suite_passes_small() {
        let mut cfg = small_cfg();
        cfg.samples = 400;
        let r = suite_mcf(&cfg);
        assert!(r.pass, "failing: {:?}", r.failing());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("typo", &small_cfg()),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn reports_are_sorted_and_deterministic() {
        let a = suite_cones(&small_cfg());
        let b = suite_cones(&small_cfg());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let names: Vec<&String> = a.assertions.iter().map(|x| &x.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
