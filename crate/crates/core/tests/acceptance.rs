//! Acceptance gate: runs the eight end-to-end criteria and prints one line per
//! criterion. Exits with status 1 if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use branchkit::appendix::{
    bounded_multiplicity_pair, bounded_multiplicity_triple, tensor_bounded, ComplexTriple, Reductive, Side, Simple,
    TABLE,
};
use branchkit::branching::{
    branch_discrete, classify_split, lambda_set_enumerate, Budget, LambdaKind, Summand,
};
use branchkit::geometry::{classify_point, factor_signs, mu_level, phi_inverse, phi_map, RegionLabel, SpaceFormPoint};
use branchkit::hypergeom::{kummer_b, JacobiParams};
use branchkit::parseval::{norm_integral, v_constant};
use branchkit::repparams::{a_enumerate, RepParam, Sign, SplitSignature};
use branchkit::verify::{
    kummer_grid, linspace, proportionality_spread, run_suite, Suite, VerifyOptions, DEFAULT_GRID,
};
use branchkit::HalfInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(report: &branchkit::verify::Report) -> Vec<String> {
    report
        .cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} residual {:e} tol {:e} {}", c.case, c.residual, c.tol, c.error.clone().unwrap_or_default()))
        .collect()
}

fn parseval_identity() -> Outcome {
    let start = Instant::now();
    let report = run_suite(Suite::Parseval, &VerifyOptions::default());
    let elapsed = start.elapsed();
    let bad = failures(&report);
    ensure(bad.is_empty(), || format!("failing cases: {bad:?}"))?;
    ensure(report.cases.len() >= 20, || format!("only {} cases", report.cases.len()))?;
    for kind in LambdaKind::ALL {
        let tag = format!("V_{kind}(");
        ensure(report.cases.iter().any(|c| c.case.starts_with(&tag)), || format!("no {kind} case"))?;
    }
    let pinned = v_constant(LambdaKind::PlusMinus, h("2"), h("1/2"), h("1/2")).map_err(|e| e.to_string())?.value;
    let quad = norm_integral(LambdaKind::PlusMinus, h("2"), h("1/2"), h("1/2"), 1e-10).map_err(|e| e.to_string())?;
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    ensure((pinned - quarter_pi).abs() <= 1e-15 * quarter_pi, || format!("closed form {pinned} != pi/4"))?;
    ensure((quad - quarter_pi).abs() <= 1e-8 * quarter_pi, || format!("quadrature {quad} != pi/4"))?;
    ensure(elapsed <= Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} triples, max rel err {:.2e}, {:.2?}",
        report.cases.len(),
        report.max_residual,
        elapsed
    ))
}

fn kummer_connection() -> Outcome {
    let grid = kummer_grid(DEFAULT_GRID);
    ensure((grid[0] + 0.04).abs() < 1e-15 && (grid[grid.len() - 1] + 0.81).abs() < 1e-15, || {
        format!("grid {grid:?}")
    })?;
    let report = run_suite(Suite::Kummer, &VerifyOptions::default());
    let bad = failures(&report);
    ensure(bad.is_empty(), || format!("failing cases: {bad:?}"))?;
    let connection = report.cases.iter().filter(|c| c.case.starts_with("connection")).count();
    ensure(connection >= 5, || format!("only {connection} connection cases"))?;

    // every terminating case in a parameter box
    let t_grid = linspace(1.2, 4.0, 29);
    let mut terminating = 0;
    let mut worst: f64 = 0.0;
    for lam2 in 1..=11i64 {
        for lam in 1..=13i64 {
            for k in 0..3i64 {
                let lam1 = lam2 + lam + 2 + 4 * k;
                let p = JacobiParams::new(HalfInt::from_twice(lam), HalfInt::from_twice(lam1), HalfInt::from_twice(lam2))
                    .map_err(|e| e.to_string())?;
                let b = kummer_b(&p).map_err(|e| format!("{p:?}: {e}"))?;
                ensure(b == 0.0, || format!("kummer_b = {b} for {p:?}"))?;
                let spread = proportionality_spread(&p, &t_grid).map_err(|e| format!("{p:?}: {e}"))?;
                ensure(spread <= 1e-8, || format!("ratio spread {spread:e} for {p:?}"))?;
                worst = worst.max(spread);
                terminating += 1;
            }
        }
    }
    Ok(format!(
        "{connection} connection cases, max residual {:.2e}; {terminating} terminating cases, max ratio spread {worst:.2e}",
        report.cases.iter().filter(|c| c.case.starts_with("connection")).map(|c| c.residual).fold(0.0, f64::max)
    ))
}

fn radial_ode() -> Outcome {
    let report = run_suite(Suite::Ode, &VerifyOptions { grid_size: 30, ..VerifyOptions::default() });
    let bad = failures(&report);
    ensure(bad.is_empty(), || format!("failing cases: {bad:?}"))?;
    for tag in ["u1_at_0", "u2_at_0", "u_inf_plus", "u_inf_minus", "compact"] {
        ensure(report.cases.iter().any(|c| c.case.starts_with(tag)), || format!("no {tag} case"))?;
    }
    Ok(format!("{} residuals, max {:.2e}", report.cases.len(), report.max_residual))
}

fn sort_key(s: &Summand) -> (HalfInt, HalfInt) {
    (s.lambda1 + s.lambda2, s.lambda2)
}

fn example_families() -> Outcome {
    let mut checked = 0;
    for (p, q) in [(2u32, 1u32), (2, 2), (3, 1), (3, 2), (4, 3), (5, 2), (6, 4)] {
        for lambda in a_enumerate(Sign::Plus, p, q, h("25/2")) {
            let rep = RepParam::new(p, q, Sign::Plus, lambda).map_err(|e| e.to_string())?;
            // (p'', q'') = (0, 1): all n >= 0
            let split = SplitSignature::from_total(p, q, p, q - 1).map_err(|e| e.to_string())?;
            let got = branch_discrete(&rep, &split, Budget::new(usize::MAX, lambda.plus_int(20))).map_err(|e| e.to_string())?;
            let mut want: Vec<Summand> = (0..=20i64)
                .map(|n| Summand {
                    delta: Sign::Plus,
                    eps: Sign::Minus,
                    lambda1: lambda + HalfInt::from_twice(2 * n + 1),
                    lambda2: HalfInt::from_twice(if n % 2 == 0 { -1 } else { 1 }),
                })
                .collect();
            want.sort_by_key(sort_key);
            ensure(got == want, || format!("(0,1) family differs at p={p} q={q} lambda={lambda}"))?;
            for s in &got {
                let n = s.sign_character_power(&split, lambda).ok_or("missing sign power")?;
                ensure(s.lambda1 == lambda + HalfInt::from_twice(2 * n as i64 + 1), || format!("{s:?}"))?;
            }
            // (p'', q'') = (1, 0): 0 <= n < lambda - 1/2
            if p >= 3 {
                let split = SplitSignature::from_total(p, q, p - 1, q).map_err(|e| e.to_string())?;
                let got = branch_discrete(&rep, &split, Budget::new(usize::MAX, lambda.plus_int(40))).map_err(|e| e.to_string())?;
                let mut want: Vec<Summand> = (0..)
                    .take_while(|&n: &i64| HalfInt::from_int(n) < lambda - HalfInt::HALF)
                    .map(|n| Summand {
                        delta: Sign::Plus,
                        eps: Sign::Plus,
                        lambda1: lambda - HalfInt::from_twice(2 * n + 1),
                        lambda2: HalfInt::from_twice(if n % 2 == 0 { -1 } else { 1 }),
                    })
                    .collect();
                want.sort_by_key(sort_key);
                ensure(got == want, || format!("(1,0) family differs at p={p} q={q} lambda={lambda}: {got:?}"))?;
                for s in &got {
                    let n = s.sign_character_power(&split, lambda).ok_or("missing sign power")?;
                    ensure(HalfInt::from_int(n as i64) < lambda - HalfInt::HALF, || format!("bound fails {s:?}"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (p, q, lambda) cases"))
}

/// Every split `(p', q') + (p'', q'')` with `p + q <= 10`, `p >= 2`, `q >= 1`.
fn exhaustive_splits() -> Vec<SplitSignature> {
    let mut out = Vec::new();
    for p in 2..=9u32 {
        for q in 1..=10 - p {
            for p1 in 0..=p {
                for q1 in 0..=q {
                    if let Ok(s) = SplitSignature::from_total(p, q, p1, q1) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

const SMALL: (usize, i64) = (500, 20);
const LARGE: (usize, i64) = (1000, 40);

fn budget(lambda: HalfInt, (count, extra): (usize, i64)) -> Budget {
    Budget::new(count, lambda.plus_int(extra))
}

fn classification_consistency() -> Outcome {
    let start = Instant::now();
    let splits = exhaustive_splits();
    let mut evaluations = 0;
    for split in &splits {
        let class = classify_split(split).map_err(|e| e.to_string())?;
        let (p, q) = split.join();
        let mut all_empty = true;
        let mut all_stable = true;
        for lambda in a_enumerate(Sign::Plus, p, q, h("25/2")) {
            let rep = RepParam::new(p, q, Sign::Plus, lambda).map_err(|e| e.to_string())?;
            let small = branch_discrete(&rep, split, budget(lambda, SMALL)).map_err(|e| e.to_string())?;
            let large = branch_discrete(&rep, split, budget(lambda, LARGE)).map_err(|e| e.to_string())?;
            all_empty &= large.is_empty();
            all_stable &= small == large;
            evaluations += 1;
        }
        ensure(class.purely_continuous == all_empty, || {
            format!("{split}: purely_continuous = {} but all-empty = {all_empty}", class.purely_continuous)
        })?;
        ensure(class.finite_discrete == all_stable, || {
            format!("{split}: finite_discrete = {} but stabilizes = {all_stable}", class.finite_discrete)
        })?;
        let dd = split.p1() * split.p2() == 0;
        ensure(class.discretely_decomposable == dd, || format!("{split}: discretely_decomposable mismatch"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} splits, {evaluations} (split, lambda) pairs, {:.2?}", splits.len(), elapsed))
}

fn invariant_suite() -> Outcome {
    let mut summands_checked = 0usize;
    for split in exhaustive_splits() {
        let (p, q) = split.join();
        for eps in [Sign::Plus, Sign::Minus] {
            for lambda in a_enumerate(eps, p, q, h("25/2")) {
                let rep = RepParam::new(p, q, eps, lambda).map_err(|e| e.to_string())?;
                let list = branch_discrete(&rep, &split, budget(lambda, SMALL)).map_err(|e| e.to_string())?;
                let distinct: HashSet<_> = list.iter().collect();
                ensure(distinct.len() == list.len(), || format!("duplicate summand for {rep} on {split}"))?;
                let work_split = if eps == Sign::Plus { split } else { split.swapped() };
                for s in &list {
                    let l1 = RepParam::new(split.p1(), split.q1(), s.delta, s.lambda1).map_err(|e| e.to_string())?;
                    let l2 = RepParam::new(split.p2(), split.q2(), s.eps, s.lambda2).map_err(|e| e.to_string())?;
                    let prod = if l1.central_sign() == l2.central_sign() { Sign::Plus } else { Sign::Minus };
                    ensure(prod == rep.central_sign(), || format!("central sign fails: {rep} -> {s:?}"))?;
                    let plus_form = if eps == Sign::Plus {
                        *s
                    } else {
                        Summand { delta: s.delta.flip(), eps: s.eps.flip(), ..*s }
                    };
                    ensure(plus_form.satisfies_parity(lambda), || format!("parity fails: {rep} -> {s:?}"))?;
                    let kind = plus_form.kind().ok_or_else(|| format!("no kind for {s:?}"))?;
                    let v = v_constant(kind, s.lambda1, s.lambda2, lambda).map_err(|e| format!("{s:?}: {e}"))?;
                    ensure(v.value > 0.0 && v.value.is_finite(), || format!("V = {} for {rep} -> {s:?}", v.value))?;
                    summands_checked += 1;
                }
                let pp = |b| lambda_set_enumerate(LambdaKind::PlusPlus, &work_split, lambda, b).map_err(|e| e.to_string());
                let a = pp(Budget::new(usize::MAX, lambda.plus_int(10)))?;
                let b = pp(Budget::new(usize::MAX, lambda.plus_int(40)))?;
                ensure(a == b, || format!("Lambda_++ not stable for {rep} on {split}"))?;
                ensure(a.iter().all(|&(x, y)| x + y <= lambda - HalfInt::ONE), || {
                    format!("Lambda_++ member above lambda - 1 for {rep} on {split}")
                })?;
            }
        }
    }
    Ok(format!("{summands_checked} summands, zero violations"))
}

fn random_point(rng: &mut StdRng, sign: Sign, p: u32, q: u32) -> SpaceFormPoint {
    let (nd, nf) = if sign == Sign::Plus { (p, q) } else { (q, p) };
    let dir = loop {
        let d: Vec<f64> = (0..nd).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if d.iter().map(|x| x * x).sum::<f64>() > 1e-3 {
            break d;
        }
    };
    let free = (0..nf).map(|_| rng.gen_range(-2.0..2.0)).collect();
    SpaceFormPoint::lift(sign, dir, free).expect("lifted point")
}

fn geometry_round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_241_015);
    let mut worst: f64 = 0.0;
    for kind in LambdaKind::ALL {
        let (s1, s2) = factor_signs(kind);
        let nonempty = |s: Sign, p: u32, q: u32| if s == Sign::Plus { p >= 1 } else { q >= 1 };
        let mut splits = Vec::new();
        for p1 in 0..=8u32 {
            for q1 in 0..=8 - p1 {
                for p2 in 0..=8 - p1 - q1 {
                    for q2 in 0..=8 - p1 - q1 - p2 {
                        if nonempty(s1, p1, q1) && nonempty(s2, p2, q2) {
                            splits.push(SplitSignature::new(p1, q1, p2, q2).map_err(|e| e.to_string())?);
                        }
                    }
                }
            }
        }
        for _ in 0..1000 {
            let split = splits[rng.gen_range(0..splits.len())];
            let z1 = random_point(&mut rng, s1, split.p1(), split.q1());
            let z2 = random_point(&mut rng, s2, split.p2(), split.q2());
            let param = match kind {
                LambdaKind::PlusPlus => rng.gen_range(1e-3..std::f64::consts::FRAC_PI_2 - 1e-3),
                _ => rng.gen_range(1e-3..3.0),
            };
            let pt = phi_map(kind, &split, &z1, &z2, param).map_err(|e| e.to_string())?;
            let label = classify_point(&split, &pt).map_err(|e| e.to_string())?;
            ensure(label == RegionLabel::from(kind), || format!("{kind}: landed in {label}"))?;
            let mu = mu_level(&split, &pt).map_err(|e| e.to_string())?;
            let want = match kind {
                LambdaKind::PlusMinus => param.cosh().powi(2),
                LambdaKind::PlusPlus => param.cos().powi(2),
                LambdaKind::MinusPlus => -param.sinh().powi(2),
            };
            ensure((mu - want).abs() <= 1e-10 * want.abs().max(1.0), || format!("{kind}: mu {mu} vs {want}"))?;
            let (w1, w2, back) = phi_inverse(kind, &split, &pt).map_err(|e| e.to_string())?;
            let err = (back - param).abs().max(w1.max_abs_diff(&z1)).max(w2.max_abs_diff(&z2));
            ensure(err <= 1e-10, || format!("{kind} on {split}: round-trip error {err:e}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("3000 samples, max round-trip error {worst:.2e}"))
}

fn appendix_tables() -> Outcome {
    let mut rows = 0;
    for row in TABLE {
        let mut any = false;
        for n in 0..=16 {
            for t in row.triples_at(n) {
                ensure(bounded_multiplicity_triple(&t), || format!("row {} instance {t} not bounded", row.id))?;
                if row.side == Side::Right {
                    ensure(bounded_multiplicity_pair(t.g, &t.gp), || format!("{t}: g' not in the pair list"))?;
                }
                any = true;
            }
        }
        ensure(any, || format!("row {} has no instances", row.id))?;
        rows += 1;
    }
    let literal = [
        ("so(8)", "gl(4)", "so(6)+so(2)"),
        ("sl(4)", "sp(2)", "sl(2)+sl(2)+C"),
        ("so(8)", "so(7)", "spin(7)"),
        ("so(8)", "gl(4)", "spin(7)"),
        ("e6", "f4", "so(10)+C"),
        ("f4", "so(9)", "so(9)"),
        ("sl(6)", "sp(3)", "sl(4)+sl(2)+C"),
    ];
    for (g, hh, gp) in literal {
        let t = ComplexTriple::parse(g, hh, gp).map_err(|e| e.to_string())?;
        ensure(bounded_multiplicity_triple(&t), || format!("{t} not bounded"))?;
    }
    let so8: Simple = "so(8)".parse().map_err(|e: branchkit::Error| e.to_string())?;
    ensure(bounded_multiplicity_pair(so8, &"spin(7)".parse::<Reductive>().unwrap()), || "(so8, spin7)".into())?;

    let mut exceptions = vec![ComplexTriple::parse("f4", "so(9)", "sp(3)+sl(2)").unwrap()];
    for n in 3..=14 {
        exceptions.push(ComplexTriple::parse(&format!("sl({n})"), &format!("gl({})", n - 1), &format!("so({n})")).unwrap());
    }
    for t in &exceptions {
        ensure(!bounded_multiplicity_triple(t), || format!("exception {t} classified bounded"))?;
    }

    let red = |s: &str| s.parse::<Reductive>().unwrap();
    let sl = |n: u32| format!("sl({n})").parse::<Simple>().unwrap();
    ensure(tensor_bounded(sl(2), &red("so(2)"), &red("so(2)")) == Ok(true), || "(sl2, so2, so2)".into())?;
    ensure(tensor_bounded(sl(4), &red("sp(2)"), &red("sp(2)")) == Ok(true), || "(sl4, sp2, sp2)".into())?;
    let mut negatives = 0;
    for n in 2..=12u32 {
        let mut symmetric = vec![red(&format!("so({n})"))];
        if n % 2 == 0 {
            symmetric.push(red(&format!("sp({})", n / 2)));
        }
        for p in 1..n {
            symmetric.push(red(&format!("sl({p})+sl({})+C", n - p)));
        }
        for h1 in &symmetric {
            for h2 in &symmetric {
                let positive = (n == 2 && h1.canonical() == red("so(2)").canonical() && h2.canonical() == h1.canonical())
                    || (n == 4 && h1.canonical() == red("sp(2)").canonical() && h2.canonical() == h1.canonical());
                let got = tensor_bounded(sl(n), h1, h2).map_err(|e| e.to_string())?;
                ensure(got == positive, || format!("(sl({n}), {h1}, {h2}) -> {got}"))?;
                negatives += usize::from(!positive);
            }
        }
    }
    Ok(format!(
        "{rows} rows, {} exceptions, 2 positive and {negatives} negative type-A tensor queries",
        exceptions.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("parseval identity", parseval_identity),
        ("kummer connection", kummer_connection),
        ("radial ode", radial_ode),
        ("example families", example_families),
        ("classification consistency", classification_consistency),
        ("invariant suite", invariant_suite),
        ("geometry round trips", geometry_round_trips),
        ("appendix tables", appendix_tables),
    ];
    let mut all_passed = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name} ... PASS ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                all_passed = false;
                println!("criterion {} {name} ... FAIL ({why}) [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
