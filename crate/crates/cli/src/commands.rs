use crate::report::{fmt_float, Check, Kind};
use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt::Display;
use std::path::PathBuf;
use tubecat::fusion::{full_subcategories, global_dim, index, mult_in_word, restrict, so3_ring, FiniteRing, FusionRing, IndexOutcome, Subcategory};
use tubecat::grouprep::GroupCategory;
use tubecat::planar::{cesaro_tau_q, moment_closed_form, nc2_circ, riordan as riordan_number, spectral_moment, tl_moment};
use tubecat::scalar::{rat, Cyclo, Field, FromCyclo, Rational};
use tubecat::tlj::{check_resolution, symbolic_report, TLCategory, TljReport};
use tubecat::tube::checks::{commutation_residual, lemma39_check, markov_sum_check, unitarity_residual};
use tubecat::tube::spectral::{spectral_proj_fixed, DEFAULT_GAP};
use tubecat::tube::{Category, QuantumDouble, TubeAlgebra};

/// Catalan(12) = 208012 diagrams; larger k needs `--force`.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Clone, Debug)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn load<S: FromCyclo>(&self) -> Result<GroupCategory<S>> {
        match self {
            GroupSource::Builtin(name) => Ok(GroupCategory::builtin(name)?),
            GroupSource::File(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(GroupCategory::from_json(&text)?)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSource::Builtin(name) => name.clone(),
            GroupSource::File(path) => path.display().to_string(),
        }
    }
}

pub fn guard(k: usize, force: bool) -> Result<()> {
    if k > ENUMERATION_LIMIT && !force {
        bail!("refusing to enumerate diagrams for k = {k} > {ENUMERATION_LIMIT}; pass --force to override");
    }
    Ok(())
}

fn fmt_scalar<S: Field + Display>(x: &S, tol: f64) -> String {
    if S::EXACT {
        return x.to_string();
    }
    let z = x.to_c64();
    if z.im.abs() <= tol {
        fmt_float(z.re, tol)
    } else {
        format!("{}{}{}i", fmt_float(z.re, tol), if z.im < 0.0 { "-" } else { "+" }, fmt_float(z.im.abs(), tol))
    }
}

fn fmt_complex(z: Complex64, tol: f64) -> String {
    fmt_scalar(&z, tol)
}

fn flag(section: &str, name: &str, ok: bool, kind: Kind) -> Check {
    Check::exact(section, name, ok.to_string(), "true", kind)
}

fn sub_names<R: FusionRing>(ring: &R, sub: &BTreeSet<R::Label>) -> String {
    let names: Vec<String> = sub.iter().map(|l| ring.label_name(l)).collect();
    format!("{{{}}}", names.join(","))
}

fn parse_sub<R: FusionRing>(ring: &R, text: &str) -> Result<BTreeSet<R::Label>> {
    text.split(',').map(|s| Ok(ring.parse_label(s.trim())?)).collect()
}

/// The requested subcategory, or every full subcategory.
fn subcategories(ring: &FiniteRing, sub: Option<&str>) -> Result<Vec<BTreeSet<usize>>> {
    match sub {
        Some(text) => Ok(vec![parse_sub(ring, text)?]),
        None => Ok(full_subcategories(ring)?),
    }
}

pub fn moments(kmax: usize, delta: &Rational, force: bool) -> Result<Vec<Check>> {
    guard(kmax, force)?;
    let sec = format!("moments d={delta}");
    let mut checks = Vec::new();
    let mut got = Vec::new();
    let mut want = Vec::new();
    for k in 0..=kmax {
        let v = tl_moment(k).eval(delta);
        let closed = moment_closed_form(k, delta);
        let measure = spectral_moment(k as i64, delta);
        checks.push(Check::exact(&sec, format!("τ(U^{k})"), v.to_string(), closed.to_string(), Kind::Reference).failing_if(measure != v));
        got.push(v.to_string());
        want.push(closed.to_string());
    }
    let list = |v: &[String]| format!("[{}]", v.join(","));
    checks.push(Check::exact(&sec, "sequence", list(&got), list(&want), Kind::Reference));
    Ok(checks)
}

pub fn riordan(kmax: usize, force: bool) -> Result<Vec<Check>> {
    guard(kmax, force)?;
    let so3 = so3_ring();
    let mut checks = Vec::new();
    for k in 0..=kmax {
        let count = nc2_circ(k).len();
        checks.push(Check::exact("riordan", format!("|NC₂°({k})|"), count.to_string(), riordan_number(k as u32).to_string(), Kind::Reference));
        let m = mult_in_word(&so3, &0, &vec![1; k])?;
        checks.push(Check::exact("riordan", format!("mult(0, 1^{k}) in SO(3)"), m.to_string(), count.to_string(), Kind::Derived));
    }
    Ok(checks)
}

pub fn index_check(ring: &FiniteRing, source: &str, sub_text: &str) -> Result<Vec<Check>> {
    let sub = parse_sub(ring, sub_text)?;
    let sec = format!("index {source}");
    let name = format!("[C : {}]", sub_names(ring, &sub));
    let outcome = index(ring, &Subcategory::finite(sub.iter().copied()), tubecat::fusion::DEFAULT_BOUND)?;
    let ratio = global_dim(ring)? / global_dim(&restrict(ring, &Subcategory::finite(sub.iter().copied()))?)?;
    let check = Check::exact(&sec, name, outcome.to_string(), ratio.to_string(), Kind::Derived);
    Ok(vec![check.failing_if(!matches!(outcome, IndexOutcome::Finite(_)))])
}

pub fn index_of_group(src: &GroupSource, sub: &str) -> Result<Vec<Check>> {
    let cat = src.load::<Cyclo>()?;
    index_check(cat.ring(), &src.describe(), sub)
}

pub fn index_of_ring(path: &PathBuf, sub: &str) -> Result<Vec<Check>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ring = FiniteRing::from_json(&text)?;
    index_check(&ring, &path.display().to_string(), sub)
}

/// Order of a label in the fusion ring, when it is invertible.
fn invertible_order(ring: &FiniteRing, a: usize) -> Option<usize> {
    let mut cur = ring.unit();
    for k in 1..=ring.len() {
        let prod = ring.fuse(&cur, &a).ok()?;
        if prod.len() != 1 || prod[0].1 != 1 {
            return None;
        }
        cur = prod[0].0;
        if cur == ring.unit() {
            return Some(k);
        }
    }
    None
}

pub fn tube_spectrum<S: FromCyclo + Display>(cat: GroupCategory<S>, source: &str, label: &str, tol: f64) -> Result<Vec<Check>> {
    let mode = if S::EXACT { "exact" } else { "float" };
    let i = cat.label(label)?;
    let abelian = cat.group().is_abelian();
    let group_name = cat.group().name().to_ascii_uppercase();
    let known = if group_name == "A4" && cat.label_name(&i) == "pi" {
        Some(rat(7, 6))
    } else if abelian {
        invertible_order(cat.ring(), i).map(|o| rat(1, o as i64))
    } else {
        None
    };
    let alg = TubeAlgebra::new(cat);
    let sec = format!("tube-spectrum {source}/{label} {mode}");
    let r = spectral_proj_fixed(&alg, &i, DEFAULT_GAP)?;
    let mut checks = vec![Check::new(&sec, "corner dimension", r.corner_dim.to_string())];
    let tau = Check::new(&sec, "τ(q)", fmt_scalar(&r.tau_q, tol));
    checks.push(match known {
        Some(q) => {
            let want = S::from_cyclo(&Cyclo::rational(q.clone()));
            let err = (r.tau_q.to_c64() - want.to_c64()).norm();
            let exact_ok = !S::EXACT || r.tau_q == want;
            tau.with_expected(q.to_string(), Kind::Reference).with_residual(err, tol).failing_if(!exact_ok)
        }
        None => tau,
    });
    let qq = alg.mul(&r.q, &r.q)?.sub(&r.q).max_abs();
    checks.push(Check::residual(&sec, "q·q − q", qq, tol, Kind::Derived));
    let uq = alg.mul(&alg.central_u(&i)?, &r.q)?.sub(&r.q).max_abs();
    checks.push(Check::residual(&sec, "U·q − q", uq, tol, Kind::Derived));
    for (k, e) in r.spectrum.iter().enumerate() {
        let value = format!("{} weight {}", fmt_complex(e.value, tol), fmt_float(e.weight, tol));
        checks.push(Check::new(&sec, format!("eigenvalue {k}"), value));
    }
    Ok(checks)
}

pub fn unitaries<S: FromCyclo>(cat: GroupCategory<S>, source: &str, tol: f64) -> Result<Vec<Check>> {
    let alg = TubeAlgebra::new(cat);
    let sec = format!("central unitaries {source}");
    let labels = alg.irreducibles()?;
    let mut checks = Vec::new();
    for i in &labels {
        let name = alg.category().label_name(i);
        checks.push(Check::residual(&sec, format!("U U# − p ({name})"), unitarity_residual(&alg, i)?, tol, Kind::Reference));
        let mut worst: f64 = 0.0;
        for j in &labels {
            worst = worst.max(commutation_residual(&alg, i, j)?);
        }
        checks.push(Check::residual(&sec, format!("U x − x U ({name})"), worst, tol, Kind::Reference));
    }
    Ok(checks)
}

pub fn lemma39<S: FromCyclo>(cat: GroupCategory<S>, source: &str, sub: Option<&str>, tol: f64) -> Result<Vec<Check>> {
    let subs = subcategories(cat.ring(), sub)?;
    let alg = TubeAlgebra::new(cat);
    let ring = alg.category().ring().clone();
    let labels = alg.irreducibles()?;
    let mode = if S::EXACT { "exact" } else { "float" };
    let sec = format!("lemma39 {source} {mode}");
    let mut checks = Vec::new();
    for s in subs {
        let mut worst: f64 = 0.0;
        for i in &labels {
            for a in &labels {
                worst = worst.max(lemma39_check(&alg, i, a, &s)?);
            }
        }
        checks.push(Check::residual(&sec, format!("max residual over (i, α), C₁ = {}", sub_names(&ring, &s)), worst, tol, Kind::Reference));
    }
    Ok(checks)
}

pub fn markov<S: FromCyclo + Display>(cat: GroupCategory<S>, source: &str, sub: Option<&str>, tol: f64) -> Result<Vec<Check>> {
    let subs = subcategories(cat.ring(), sub)?;
    let alg = TubeAlgebra::new(cat);
    let ring = alg.category().ring().clone();
    let mode = if S::EXACT { "exact" } else { "float" };
    let sec = format!("markov {source} {mode}");
    let mut checks = Vec::new();
    for s in subs {
        let r = markov_sum_check(&alg, &s)?;
        let want = index(&ring, &Subcategory::finite(s.iter().copied()), tubecat::fusion::DEFAULT_BOUND)?;
        let name = format!("C₁ = {}", sub_names(&ring, &s));
        let gap = match &want {
            IndexOutcome::Finite(q) => (r.index.to_c64() - Cyclo::rational(q.clone()).to_c64()).norm(),
            _ => f64::INFINITY,
        };
        checks.push(Check::new(&sec, format!("index, {name}"), fmt_scalar(&r.index, tol)).with_expected(want.to_string(), Kind::Derived).with_residual(gap, tol));
        checks.push(Check::residual(&sec, format!("Σ W W# − index·1, {name}"), r.residual, tol, Kind::Reference));
    }
    Ok(checks)
}

pub fn double<S: FromCyclo>(cat: GroupCategory<S>, source: &str, pairs: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let d = QuantumDouble::new(&cat);
    let r = d.report(pairs, seed);
    let sec = format!("double {source}");
    Ok(vec![
        Check::new(&sec, "dimension", r.dim.to_string()),
        Check::residual(&sec, format!("τ(ab) − τ(ba), {pairs} pairs"), r.traciality_residual, tol, Kind::Reference),
        Check::residual(&sec, "Σ d⁻¹ E E* − 1", r.markov_residual, tol, Kind::Reference),
    ])
}

fn tlj_checks(r: &TljReport) -> Vec<Check> {
    let sec = format!("tlj sgn={:+} δ={}", r.sgn, r.delta);
    let sec = sec.as_str();
    vec![
        flag(sec, "V unitary", r.unitary_ok, Kind::Reference),
        flag(sec, "p₀VV = p₀", r.p0vv_ok, Kind::Reference),
        Check::new(sec, "ε(V)", r.counit_v.clone()).with_expected((-r.sgn).to_string(), Kind::Reference).failing_if(!r.counit_v_ok),
        flag(sec, "p₀(V+s)(V−s) = 0", r.compositions[0], Kind::Derived),
        flag(sec, "(V−s)(V+s)p₀ = 0", r.compositions[1], Kind::Derived),
        flag(sec, "ε(x(V+s)p₀) = 0", r.compositions[2], Kind::Derived),
        Check::new(sec, "counit scalars", format!("[{}]", r.counit_scalars.join(", "))),
        Check::exact(sec, "all four blocks of V", r.all_four_blocks.to_string(), "true", Kind::Derived),
        Check::exact(sec, "homology", format!("{:?}", r.homology).replace(' ', ""), "[1,0,0,1]", Kind::Reference),
    ]
}

pub fn tlj(sgn: Option<i8>, delta: Option<f64>, tol: f64) -> Result<Vec<Check>> {
    if let Some(d) = delta {
        if !(d >= 2.0 && d.is_finite()) {
            bail!("δ must be at least 2, got {d}");
        }
    }
    let signs = match sgn {
        Some(s) => vec![s],
        None => vec![1, -1],
    };
    let mut checks = Vec::new();
    for s in signs {
        let r = match delta {
            None => symbolic_report(s)?,
            Some(d) => {
                let cat = TLCategory::new(Complex64::new(d.sqrt(), 0.0), s)?;
                check_resolution(cat, &d.to_string(), |x| fmt_scalar(x, tol))?
            }
        };
        checks.extend(tlj_checks(&r));
    }
    Ok(checks)
}

/// n·|cesaro_tau_q(n, d) − 1| over n ≤ nmax, which should stay below 8.
pub fn cesaro(nmax: usize, delta: &Rational) -> Result<Vec<Check>> {
    let one = Rational::from_integer(1.into());
    let mut worst = Rational::from_integer(0.into());
    for n in 1..=nmax {
        let dev = cesaro_tau_q(n, delta) - &one;
        let scaled = if dev < Rational::from_integer(0.into()) { -dev } else { dev } * Rational::from_integer(n.into());
        if scaled > worst {
            worst = scaled;
        }
    }
    let ok = worst <= Rational::from_integer(8.into());
    Ok(vec![Check::new(&format!("cesaro d={delta}"), format!("max n·|avg − 1|, n ≤ {nmax}"), worst.to_string())
        .with_expected("≤ 8", Kind::Derived)
        .failing_if(!ok)])
}

type Job = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

/// Every check at its default setting. Jobs run in parallel and are merged
/// in the order listed.
pub fn suite(tol: f64) -> Result<Vec<Check>> {
    let b = |n: &str| GroupSource::Builtin(n.to_string());
    let mut jobs: Vec<Job> = vec![
        Box::new(|| moments(8, &rat(3, 1), false)),
        Box::new(|| riordan(10, false)),
        Box::new(move || index_of_group(&b("A4"), "eps,w1,w2")),
        Box::new(move || index_of_group(&b("Z/8"), "chi0,chi2,chi4,chi6")),
        Box::new(move || tube_spectrum(b("A4").load::<Cyclo>()?, "A4", "pi", tol)),
        Box::new(move || tube_spectrum(b("A4").load::<Complex64>()?, "A4", "pi", tol)),
    ];
    for n in 1..=8usize {
        jobs.push(Box::new(move || {
            let name = format!("Z/{n}");
            let mut out = Vec::new();
            for g in 0..n {
                out.extend(tube_spectrum(b(&name).load::<Cyclo>()?, &name, &format!("chi{g}"), tol)?);
            }
            out.extend(unitaries(b(&name).load::<Cyclo>()?, &name, tol)?);
            Ok(out)
        }));
    }
    for g in ["S3", "A4"] {
        jobs.push(Box::new(move || unitaries(b(g).load::<Cyclo>()?, g, tol)));
        jobs.push(Box::new(move || lemma39(b(g).load::<Cyclo>()?, g, None, tol)));
        jobs.push(Box::new(move || markov(b(g).load::<Cyclo>()?, g, None, tol)));
    }
    for g in ["Z/2", "S3", "A4"] {
        jobs.push(Box::new(move || double(b(g).load::<Cyclo>()?, g, 100, 1, tol)));
    }
    jobs.push(Box::new(move || tlj(None, None, tol)));
    jobs.push(Box::new(|| cesaro(10_000, &rat(3, 1))));
    let parts: Vec<Vec<Check>> = jobs.par_iter().map(|job| job()).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}
