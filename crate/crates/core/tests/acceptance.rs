//! The ten acceptance criteria, one line of output each.
//!
//! Run with `cargo test -p tubecat --test acceptance -- --nocapture`.

use num_complex::Complex64;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};
use tubecat::fusion::{full_subcategories, index, mult_in_word, pointed_ring, restrict, so3_ring, IndexOutcome, Subcategory};
use tubecat::grouprep::{FiniteGroup, GroupCategory};
use tubecat::linalg::Mat;
use tubecat::planar::{cesaro_tau_q, enumerate_nc2, nc2_circ, riordan, spectral_moment, tl_moment, zeta_on_basis};
use tubecat::scalar::{rat, Cyclo, Field, Rational};
use tubecat::tlj::symbolic_report;
use tubecat::tube::checks::{commutation_residual, lemma39_check, markov_sum_check, unitarity_residual};
use tubecat::tube::spectral::{moment_u, spectral_proj_fixed, DEFAULT_GAP};
use tubecat::tube::{Layout, QuantumDouble, TubeAlgebra};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < Duration::from_secs(limit), || format!("took {t:.1?}, limit {limit} s"))
}

fn finite(o: IndexOutcome) -> Rational {
    match o {
        IndexOutcome::Finite(q) => q,
        other => panic!("expected a finite index, got {other}"),
    }
}

fn builtins() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("Z/{n}")).collect();
    v.extend(["S3".to_string(), "A4".to_string()]);
    v
}

/// (d_γ/|G|) Σ_g conj χ_γ(g) ρ(g) on the word ππ.
fn isotypic(cat: &GroupCategory<Cyclo>, gamma: usize, word: &[usize]) -> Mat<Cyclo> {
    let g = cat.group();
    let chi = cat.irreps()[gamma].character();
    let w = Cyclo::rational(rat(cat.irreps()[gamma].degree() as i64, g.order() as i64));
    let n = cat.word_dim(word);
    g.elements().fold(Mat::zeros(n, n), |acc, x| acc.add(&cat.word_matrix(word, x).scale(&(chi[x].conj() * &w))))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let alg = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin("A4").map_err(|e| e.to_string())?);
    let cat = alg.category();
    let l = |s: &str| cat.label(s).unwrap();
    let (eps, w1, w2, pi) = (l("eps"), l("w1"), l("w2"), l("pi"));
    let r = spectral_proj_fixed(&alg, &pi, DEFAULT_GAP).map_err(|e| e.to_string())?;
    ensure(r.tau_q == Cyclo::rational(rat(7, 6)), || format!("τ(q_π) = {:?}", r.tau_q))?;

    let q = |a: i64, b: i64| Cyclo::rational(rat(a, b));
    let id3 = Mat::<Cyclo>::identity(3);
    let pp = [pi, pi];
    let big = isotypic(cat, eps, &pp)
        .scale(&q(7, 6))
        .add(&isotypic(cat, w1, &pp).add(&isotypic(cat, w2, &pp)).scale(&q(1, 6)))
        .add(&isotypic(cat, pi, &pp).scale(&q(1, 3)));
    let mut expect = alg.from_morphism(&pi, &eps, &pi, &id3.scale(&q(7, 18))).map_err(|e| e.to_string())?;
    for w in [w1, w2] {
        expect = expect.add(&alg.from_morphism(&pi, &w, &pi, &id3.scale(&q(1, 18))).map_err(|e| e.to_string())?);
    }
    expect = expect.add(&alg.from_morphism(&pi, &pi, &pi, &big).map_err(|e| e.to_string())?);
    let layout = Layout::new(&alg, alg.corner_blocks(&pi).unwrap()).unwrap();
    let (got, want) = (layout.flatten(&r.q).unwrap(), layout.flatten(&expect).unwrap());
    ensure(got == want, || "q_π differs from the displayed block formula".into())?;

    let fl = TubeAlgebra::new(GroupCategory::<Complex64>::builtin("A4").unwrap());
    let rf = spectral_proj_fixed(&fl, &pi, DEFAULT_GAP).map_err(|e| e.to_string())?;
    let err = (rf.tau_q - Complex64::new(7.0 / 6.0, 0.0)).norm();
    ensure(err < TOL, || format!("float τ(q_π) off by {err:e}"))?;
    let flayout = Layout::new(&fl, fl.corner_blocks(&pi).unwrap()).unwrap();
    let fgot = flayout.flatten(&rf.q).unwrap();
    let coeff_err = fgot.iter().zip(&want).map(|(a, b)| (a - b.to_c64()).norm()).fold(0.0, f64::max);
    ensure(coeff_err < TOL, || format!("float q_π coefficients off by {coeff_err:e}"))?;
    within(start, 30)?;
    Ok(format!("τ(q_π) = 7/6 exact, float error {err:.1e}, blocks 7/18, 1/18, 1/18, (7/6, 1/6, 1/3)"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let ds = [rat(2, 1), rat(3, 1), rat(7, 2)];
    for k in 0..=8usize {
        let m = tl_moment(k);
        for d in &ds {
            let want = match k {
                0 => d * d - Rational::from_integer(1.into()),
                1 => Rational::from_integer(0.into()),
                _ => Rational::from_integer(1.into()),
            };
            ensure(m.eval(d) == want, || format!("tl_moment({k}) at d = {d} is {}", m.eval(d)))?;
            let s = spectral_moment(k as i64, d);
            ensure(s == want, || format!("spectral moment {k} at d = {d} is {s}"))?;
        }
    }
    within(start, 10)?;
    Ok("moments d²−1, 0, 1, …, 1 for k ≤ 8 agree with the spectral measure at d = 2, 3, 7/2".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let so3 = so3_ring();
    for k in 0..=10usize {
        let count = nc2_circ(k).len();
        let r = riordan(k as u32);
        let m = mult_in_word(&so3, &0, &vec![1; k]).map_err(|e| e.to_string())?;
        ensure(r == count.into() && m == count as u64, || format!("k = {k}: |NC₂°| = {count}, riordan {r}, multiplicity {m}"))?;
    }
    within(start, 20)?;
    Ok("|NC₂°(k)| = Riordan(k) = mult of ε in 1^k for k ≤ 10".into())
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    // k = 0 has no points to rotate
    for k in 1..=6 {
        for p in enumerate_nc2(2 * k) {
            ensure(zeta_on_basis(&p) == p.rotate2(), || format!("ζ and rotation disagree on {p:?}"))?;
            total += 1;
        }
    }
    Ok(format!("ζ permutes all {total} diagrams of NC₂(0,2k), 1 ≤ k ≤ 6, as the rotation"))
}

fn criterion_5() -> Outcome {
    let a4 = GroupCategory::<Cyclo>::builtin("A4").map_err(|e| e.to_string())?;
    let ring = a4.ring();
    let l = |s: &str| a4.label(s).unwrap();
    let c1 = Subcategory::finite([l("eps"), l("w1"), l("w2")]);
    let c2 = Subcategory::finite([l("eps")]);
    let first = finite(index(ring, &c1, 100).map_err(|e| e.to_string())?);
    ensure(first == rat(12, 3), || format!("[Rep(A4) : Rep(Z/3)] = {first}"))?;
    let whole = finite(index(ring, &c2, 100).unwrap());
    let sub = restrict(ring, &c1).unwrap();
    let eps_in = sub.names().iter().position(|n| n == "eps").unwrap();
    let second = finite(index(&sub, &Subcategory::finite([eps_in]), 100).unwrap());
    ensure(whole == first.clone() * &second, || format!("A4 chain: {whole} ≠ {first}·{second}"))?;

    let z8 = pointed_ring(&FiniteGroup::cyclic(8));
    let c1 = Subcategory::finite((0..8).filter(|g| g % 2 == 0));
    let c2 = Subcategory::finite([0, 4]);
    let whole = finite(index(&z8, &c2, 100).unwrap());
    let first = finite(index(&z8, &c1, 100).unwrap());
    let sub = restrict(&z8, &c1).unwrap();
    let second = finite(index(&sub, &Subcategory::finite([0, 2]), 100).unwrap());
    ensure(whole == rat(4, 1) && first == rat(2, 1) && second == rat(2, 1), || format!("Z/8 chain: {whole}, {first}, {second}"))?;
    Ok("[Rep(A4) : {ε,ω₁,ω₂}] = 4 = 12/3; index multiplicative on both chains".into())
}

fn lemma_and_markov(name: &str) -> Result<usize, String> {
    let alg = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(name).map_err(|e| e.to_string())?);
    let ring = alg.category().ring().clone();
    let labels = alg.irreducibles().unwrap();
    let mut checks = 0;
    for sub in full_subcategories(&ring).unwrap() {
        for i in &labels {
            for a in &labels {
                let r = lemma39_check(&alg, i, a, &sub).map_err(|e| e.to_string())?;
                ensure(r == 0.0, || format!("{name} sub {sub:?} (i, α) = ({i}, {a}): residual {r:e}"))?;
                checks += 1;
            }
        }
        let m = markov_sum_check(&alg, &sub).map_err(|e| e.to_string())?;
        let want = finite(index(&ring, &Subcategory::finite(sub.iter().copied()), 100).unwrap());
        ensure(m.residual == 0.0 && m.index == Cyclo::rational(want.clone()), || {
            format!("{name} sub {sub:?}: Markov residual {:e}, index {:?} vs {want}", m.residual, m.index)
        })?;
    }
    Ok(checks)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let n = lemma_and_markov("S3")? + lemma_and_markov("A4")?;
    within(start, 60)?;
    Ok(format!("{n} (i, α, C₁) operator identities and every Markov sum exact on S3 and A4"))
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in builtins() {
        let alg = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(&name).map_err(|e| e.to_string())?);
        let labels = alg.irreducibles().unwrap();
        for i in &labels {
            worst = worst.max(unitarity_residual(&alg, i).map_err(|e| e.to_string())?);
            for j in &labels {
                worst = worst.max(commutation_residual(&alg, i, j).map_err(|e| e.to_string())?);
            }
        }
    }
    ensure(worst < TOL, || format!("unitarity/commutation residual {worst:e}"))?;
    for n in 1..=8usize {
        let alg = TubeAlgebra::new(GroupCategory::<Cyclo>::builtin(&format!("Z/{n}")).unwrap());
        for g in 0..n {
            for k in 0..=n {
                let want = Cyclo::int(((g * k) % n == 0) as i64);
                let got = moment_u(&alg, &g, k).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("Z/{n}: τ(U_{g}^{k}) = {got:?}"))?;
            }
            let ord = n / num_integer::gcd(n, g);
            let r = spectral_proj_fixed(&alg, &g, DEFAULT_GAP).map_err(|e| e.to_string())?;
            ensure(r.tau_q == Cyclo::rational(rat(1, ord as i64)), || format!("Z/{n}: τ(q_{g}) = {:?}", r.tau_q))?;
        }
    }
    Ok(format!("unitarity and commutation residual {worst:e}; Z/n closed forms exact for n ≤ 8"))
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for g in ["Z/2", "S3", "A4"] {
        let r = QuantumDouble::<Cyclo>::builtin(g).map_err(|e| e.to_string())?.report(100, 2024);
        worst = worst.max(r.traciality_residual).max(r.markov_residual);
    }
    ensure(worst < TOL, || format!("double residual {worst:e}"))?;
    Ok(format!("traciality on 100 pairs and Markov sum for Z/2, S3, A4, residual {worst:e}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for sgn in [1i8, -1] {
        let r = symbolic_report(sgn).map_err(|e| e.to_string())?;
        ensure(r.pass() && r.compositions == [true; 3] && r.homology == [1, 0, 0, 1], || format!("sgn {sgn}: {r:?}"))?;
    }
    within(start, 30)?;
    Ok("V unitary, p₀VV = p₀, ε(V) = −sgn, compositions vanish, homology (1,0,0,1) for sgn = ±1".into())
}

fn criterion_10() -> Outcome {
    let d = rat(3, 1);
    let one = Rational::from_integer(1.into());
    for n in 1..=10_000usize {
        let dev = cesaro_tau_q(n, &d) - &one;
        let bound = rat(8, n as i64);
        ensure(dev.clone() <= bound && -dev.clone() <= bound, || format!("n = {n}: deviation {dev}"))?;
    }
    Ok("|cesaro_tau_q(n, 3) − 1| ≤ 8/n for n ≤ 10⁴".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("A4 spectral projection", criterion_1),
        ("TL moments", criterion_2),
        ("Riordan identity", criterion_3),
        ("rotation mechanism", criterion_4),
        ("index", criterion_5),
        ("operator identity and Markov sums", criterion_6),
        ("central unitaries", criterion_7),
        ("quantum double", criterion_8),
        ("TLJ resolution", criterion_9),
        ("Cesàro convergence", criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed();
        match out {
            Ok(msg) => println!("[PASS] criterion {}: {name}: {msg} ({t:.2?})", n + 1),
            Err(msg) => {
                println!("[FAIL] criterion {}: {name}: {msg} ({t:.2?})", n + 1);
                failed.push(n + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
