//! Built-in groups with explicit unitary irreps: Z/n, S3 and A4.

use super::{FiniteGroup, UnitaryIrrep};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Cyclo;
use std::collections::VecDeque;

/// Returns the group and its full list of irreps, trivial irrep first.
///
/// Accepted names: `Z/n` (also `Zn`, `z/n`), `S3`, `A4`.
pub fn builtin_group(name: &str) -> Result<(FiniteGroup, Vec<UnitaryIrrep>)> {
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "s3" => Ok(s3()),
        "a4" => Ok(a4()),
        _ => {
            let n = key
                .strip_prefix("z/")
                .or_else(|| key.strip_prefix('z'))
                .and_then(|s| s.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("unknown built-in group '{name}' (try Z/n, S3, A4)")))?;
            Ok(cyclic(n))
        }
    }
}

pub fn cyclic(n: u32) -> (FiniteGroup, Vec<UnitaryIrrep>) {
    let g = FiniteGroup::cyclic(n as usize);
    let irreps = (0..n as i64)
        .map(|j| {
            let mats = (0..n as i64).map(|k| Mat::scalar(Cyclo::root_of_unity(n, j * k))).collect();
            UnitaryIrrep::new(format!("chi{j}"), mats)
        })
        .collect();
    (g, irreps)
}

/// ρ(r) = diag(ω, ω²), ρ(s) = swap.
pub fn s3() -> (FiniteGroup, Vec<UnitaryIrrep>) {
    let w = Cyclo::root_of_unity(3, 1);
    let r = Mat::from_rows(vec![vec![w.clone(), Cyclo::int(0)], vec![Cyclo::int(0), w.clone() * w]]);
    let s = Mat::from_rows(vec![vec![Cyclo::int(0), Cyclo::int(1)], vec![Cyclo::int(1), Cyclo::int(0)]]);
    let one = Mat::scalar(Cyclo::int(1));
    let gens = vec![
        ("eps", vec![one.clone(), one.clone()]),
        ("sgn", vec![one, Mat::scalar(Cyclo::int(-1))]),
        ("rho", vec![r, s]),
    ];
    from_generators("S3", &["r", "s"], gens, 2)
}

/// π is the group itself: signed diagonal matrices of determinant 1 times
/// powers of the cyclic permutation P; ω₁(D·P^k) = ζ₃^k, ω₂ = ω̄₁.
pub fn a4() -> (FiniteGroup, Vec<UnitaryIrrep>) {
    let z = || Cyclo::int(0);
    let o = || Cyclo::int(1);
    let d = Mat::from_rows(vec![vec![o(), z(), z()], vec![z(), -o(), z()], vec![z(), z(), -o()]]);
    let p = Mat::from_rows(vec![vec![z(), z(), o()], vec![o(), z(), z()], vec![z(), o(), z()]]);
    let w = Cyclo::root_of_unity(3, 1);
    let one = Mat::scalar(o());
    let gens = vec![
        ("eps", vec![one.clone(), one.clone()]),
        ("w1", vec![one.clone(), Mat::scalar(w.clone())]),
        ("w2", vec![one, Mat::scalar(w.clone() * w)]),
        ("pi", vec![d, p]),
    ];
    from_generators("A4", &["a", "p"], gens, 3)
}

/// Enumerates the group generated by the matrices of the faithful irrep,
/// naming each element by its shortlex word in the generators.
fn from_generators(
    name: &str,
    gen_names: &[&str],
    irreps: Vec<(&str, Vec<Mat<Cyclo>>)>,
    faithful: usize,
) -> (FiniteGroup, Vec<UnitaryIrrep>) {
    let k = irreps.len();
    let ids: Vec<Mat<Cyclo>> = irreps.iter().map(|(_, g)| Mat::identity(g[0].rows())).collect();
    let mut elements: Vec<Vec<Mat<Cyclo>>> = vec![ids];
    let mut names = vec!["e".to_string()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, gname) in gen_names.iter().enumerate() {
            let next: Vec<Mat<Cyclo>> = (0..k).map(|r| elements[x][r].mul(&irreps[r].1[gi])).collect();
            if elements.iter().all(|e| e[faithful] != next[faithful]) {
                let word = if names[x] == "e" { gname.to_string() } else { format!("{}{}", names[x], gname) };
                names.push(word);
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    let faithful_mats: Vec<Mat<Cyclo>> = elements.iter().map(|e| e[faithful].clone()).collect();
    let group = FiniteGroup::from_elements(name, &faithful_mats, names, |a, b| a.mul(b)).expect("matrix group is closed");
    let reps = (0..k)
        .map(|r| UnitaryIrrep::new(irreps[r].0, elements.iter().map(|e| e[r].clone()).collect()))
        .collect();
    (group, reps)
}
