//! Non-crossing pair partitions drawn in a rectangle.
//!
//! ```text
//!     1   2   3  ...  n        upper points, left to right
//!   +-------------------+
//!   |                   |
//!   +-------------------+
//!    n+1 n+2   ...   n+m      lower points, left to right
//! ```
//!
//! A diagram with `n` upper and `m` lower points is a morphism from
//! `v^{⊗n}` to `v^{⊗m}`: it is read from top to bottom. In `compose(p, q)`
//! the diagram `q` sits on top of `p`, so the lower boundary of `q` is glued
//! to the upper boundary of `p`. Going once around the boundary visits the
//! upper points left to right and then the lower points right to left;
//! non-crossing is tested in that cyclic order.

use crate::error::{invalid, Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairDiagram {
    upper: usize,
    lower: usize,
    /// `partner[x]` for 0-based point `x`; upper points come first.
    partner: Vec<usize>,
}

impl PairDiagram {
    /// Builds a diagram from 1-based pairs, validating the matching.
    pub fn from_pairs(upper: usize, lower: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let total = upper + lower;
        if total % 2 != 0 {
            return invalid(format!("odd number of boundary points: {total}"));
        }
        let mut partner = vec![usize::MAX; total];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > total || b > total || a == b {
                return invalid(format!("bad pair ({a} {b}) on {total} points"));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return invalid(format!("point used twice in pair ({} {})", a + 1, b + 1));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.iter().any(|&x| x == usize::MAX) {
            return invalid("pairs do not cover every boundary point");
        }
        let d = PairDiagram { upper, lower, partner };
        if !d.is_noncrossing() {
            return invalid(format!("crossing pairs in {d}"));
        }
        Ok(d)
    }

    pub(crate) fn from_partner(upper: usize, lower: usize, partner: Vec<usize>) -> Self {
        debug_assert_eq!(partner.len(), upper + lower);
        PairDiagram { upper, lower, partner }
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect();
        PairDiagram { upper: n, lower: n, partner }
    }

    pub fn empty() -> Self {
        PairDiagram { upper: 0, lower: 0, partner: Vec::new() }
    }

    /// The cup `ε → v⊗v`: no upper points, two joined lower points.
    pub fn cup() -> Self {
        PairDiagram { upper: 0, lower: 2, partner: vec![1, 0] }
    }

    /// The cap `v⊗v → ε`.
    pub fn cap() -> Self {
        PairDiagram { upper: 2, lower: 0, partner: vec![1, 0] }
    }

    /// `k` nested cups: lower point `i` joined with `2k+1-i`.
    pub fn nested_cups(k: usize) -> Self {
        let partner = (0..2 * k).map(|x| 2 * k - 1 - x).collect();
        PairDiagram { upper: 0, lower: 2 * k, partner }
    }

    /// `e_i` on `n` strands: cap then cup on strands `i, i+1` (1-based).
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "e_i needs 1 ≤ i < n");
        let mut partner: Vec<usize> = (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect();
        let (a, b) = (i - 1, i);
        partner[a] = b;
        partner[b] = a;
        partner[n + a] = n + b;
        partner[n + b] = n + a;
        PairDiagram { upper: n, lower: n, partner }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn partner(&self, x: usize) -> usize {
        self.partner[x]
    }

    /// Sorted 1-based pairs (a, b) with a < b.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&x| x < self.partner[x])
            .map(|x| (x + 1, self.partner[x] + 1))
            .collect()
    }

    /// Number of strands joining an upper to a lower point.
    pub fn through_strands(&self) -> usize {
        (0..self.upper).filter(|&x| self.partner[x] >= self.upper).count()
    }

    /// Number of arcs with both ends on the boundary side of the same kind.
    pub fn turnbacks(&self) -> usize {
        (self.upper + self.lower) / 2 - self.through_strands()
    }

    fn cyclic_position(&self, x: usize) -> usize {
        if x < self.upper {
            x
        } else {
            self.upper + (self.lower - 1 - (x - self.upper))
        }
    }

    pub fn is_noncrossing(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.partner.len())
            .filter(|&x| x < self.partner[x])
            .map(|x| {
                let (a, b) = (self.cyclic_position(x), self.cyclic_position(self.partner[x]));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return false;
                }
            }
        }
        true
    }

    /// Horizontal concatenation, `self` on the left.
    pub fn tensor(&self, o: &PairDiagram) -> PairDiagram {
        let (n1, m1, n2) = (self.upper, self.lower, o.upper);
        let upper = n1 + n2;
        let lower = m1 + o.lower;
        let map_self = |x: usize| if x < n1 { x } else { upper + (x - n1) };
        let map_o = |x: usize| if x < n2 { n1 + x } else { upper + m1 + (x - n2) };
        let mut partner = vec![0; upper + lower];
        for x in 0..self.partner.len() {
            partner[map_self(x)] = map_self(self.partner[x]);
        }
        for x in 0..o.partner.len() {
            partner[map_o(x)] = map_o(o.partner[x]);
        }
        PairDiagram { upper, lower, partner }
    }

    /// Reflection in the horizontal axis: upper and lower boundaries swap.
    pub fn involute(&self) -> PairDiagram {
        let (n, m) = (self.upper, self.lower);
        let map = |x: usize| if x < n { m + x } else { x - n };
        let mut partner = vec![0; n + m];
        for x in 0..n + m {
            partner[map(x)] = map(self.partner[x]);
        }
        PairDiagram { upper: m, lower: n, partner }
    }

    /// Cyclic relabelling x ↦ x+2 of the lower points of a diagram in NC₂(0,2k).
    pub fn rotate2(&self) -> PairDiagram {
        self.rotate_lower(2)
    }

    /// Inverse of [`PairDiagram::rotate2`].
    pub fn rotate2_inverse(&self) -> PairDiagram {
        self.rotate_lower(self.lower.saturating_sub(2))
    }

    fn rotate_lower(&self, shift: usize) -> PairDiagram {
        assert_eq!(self.upper, 0, "rotation acts on diagrams without upper points");
        let n = self.lower;
        if n == 0 {
            return self.clone();
        }
        let mut partner = vec![0; n];
        for x in 0..n {
            partner[(x + shift) % n] = (self.partner[x] + shift) % n;
        }
        PairDiagram { upper: 0, lower: n, partner }
    }

    /// Membership in NC₂°(k): no pair {i, i+1} with i odd (1-based).
    pub fn avoids_odd_adjacent(&self) -> bool {
        (0..self.partner.len()).step_by(2).all(|x| self.partner[x] != x + 1)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {text:?}")))?;
        let inner = head
            .trim()
            .strip_prefix("NC2(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad header {head:?}")))?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        let (upper, lower) = match nums.as_slice() {
            [m] => (0, *m),
            [n, m] => (*n, *m),
            _ => return Err(Error::Parse(format!("bad header {head:?}"))),
        };
        let mut pairs = Vec::new();
        for chunk in body.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let chunk = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad pair {chunk:?}")))?;
            let v: Vec<usize> = chunk
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            match v.as_slice() {
                [a, b] => pairs.push((*a, *b)),
                _ => return Err(Error::Parse(format!("bad pair ({chunk})"))),
            }
        }
        PairDiagram::from_pairs(upper, lower, &pairs)
    }
}

/// Vertical gluing: `q` on top of `p`. Returns the glued diagram and the
/// number of closed loops removed.
pub fn compose(p: &PairDiagram, q: &PairDiagram) -> Result<(PairDiagram, usize)> {
    if q.lower != p.upper {
        return invalid(format!(
            "cannot glue {} lower points onto {} upper points",
            q.lower, p.upper
        ));
    }
    let (a, b, c) = (q.upper, q.lower, p.lower);
    let mut partner = vec![usize::MAX; a + c];
    let mut seen_middle = vec![false; b];

    // walk from an outer endpoint until another outer endpoint is reached
    let walk = |start_in_q: bool, start: usize, seen: &mut Vec<bool>| -> usize {
        let (mut in_q, mut x) = (start_in_q, start);
        loop {
            if in_q {
                let y = q.partner[x];
                if y < a {
                    return y;
                }
                let j = y - a;
                seen[j] = true;
                in_q = false;
                x = j;
            } else {
                let z = p.partner[x];
                if z >= b {
                    return a + (z - b);
                }
                seen[z] = true;
                in_q = true;
                x = a + z;
            }
        }
    };

    for x in 0..a {
        if partner[x] == usize::MAX {
            let y = walk(true, x, &mut seen_middle);
            partner[x] = y;
            partner[y] = x;
        }
    }
    for z in 0..c {
        let x = a + z;
        if partner[x] == usize::MAX {
            let y = walk(false, b + z, &mut seen_middle);
            partner[x] = y;
            partner[y] = x;
        }
    }
    // remaining middle points lie on closed loops
    let mut loops = 0;
    for start in 0..b {
        if seen_middle[start] {
            continue;
        }
        loops += 1;
        let mut j = start;
        loop {
            seen_middle[j] = true;
            // go down through p, then up through q
            let z = p.partner[j];
            debug_assert!(z < b);
            seen_middle[z] = true;
            let y = q.partner[a + z];
            debug_assert!(y >= a);
            j = y - a;
            if j == start {
                break;
            }
        }
    }
    Ok((PairDiagram { upper: a, lower: c, partner }, loops))
}

impl fmt::Display for PairDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.upper == 0 {
            write!(f, "NC2({}): ", self.lower)?;
        } else {
            write!(f, "NC2({},{}): ", self.upper, self.lower)?;
        }
        for (a, b) in self.pairs() {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}
