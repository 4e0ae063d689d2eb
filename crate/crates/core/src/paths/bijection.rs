//! The map `phi: X_n -> Y_n` and the balanced/bicolored-positive
//! correspondence `beta` it relies on.
//!
//! `beta` sends a balanced path `B` of length `2m >= 2` to a color and a
//! positive path of the same length. A path starting with a down-step is
//! blue and is negated first, otherwise it is red. Dropping the leading
//! up-step leaves a path `W` ending at `-1`; turning every down-step of `W`
//! that reaches a new minimum into an up-step gives a nonnegative path `N`,
//! and the image is `U N`. The inverse undoes the flips: if `N` ends at
//! height `2d - 1`, the last up-step leaving each of the levels
//! `0, ..., d-1` is turned back into a down-step.

use serde::Serialize;

use super::{LatticePath, PathPair, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    Red,
    Blue,
}

pub fn beta(b: &LatticePath) -> Option<(Color, LatticePath)> {
    if b.is_empty() || !b.is_balanced() {
        return None;
    }
    let (color, b) = match b.steps[0] {
        Step::U => (Color::Red, b.clone()),
        Step::D => (Color::Blue, b.negated()),
    };
    let mut steps = vec![Step::U];
    let (mut h, mut min) = (0i64, 0i64);
    for &s in &b.steps[1..] {
        h += s.delta();
        if h < min {
            min = h;
            steps.push(Step::U);
        } else {
            steps.push(s);
        }
    }
    Some((color, LatticePath::new(steps)))
}

pub fn beta_inverse(color: Color, s: &LatticePath) -> Option<LatticePath> {
    if s.is_empty() || s.len() % 2 == 1 || !s.is_positive() {
        return None;
    }
    let n = s.slice(1, s.len());
    let d = (n.end_height() + 1) / 2;
    let h = n.heights();
    let mut steps = n.steps.clone();
    for level in 0..d {
        let last = (0..n.len()).rev().find(|&i| steps[i] == Step::U && h[i] == level)?;
        steps[last] = Step::D;
    }
    let mut out = vec![Step::U];
    out.extend(steps);
    let b = LatticePath::new(out);
    Some(match color {
        Color::Red => b,
        Color::Blue => b.negated(),
    })
}

/// `P = B U D` with `D = Q R`, split at the last up-step leaving height 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub b: LatticePath,
    pub d: LatticePath,
    pub q: LatticePath,
    pub r: LatticePath,
}

impl Decomposition {
    /// The segment properties the construction relies on; an empty list
    /// means all hold.
    pub fn violations(&self, n: usize) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.b.is_balanced() {
            out.push("B is not balanced");
        }
        if !self.d.is_dyck() {
            out.push("D is not a nonnegative path ending at 0");
        }
        if self.d.len() < 2 * n {
            out.push("D is shorter than 2n");
        }
        if !self.q.is_nonnegative() {
            out.push("Q is not nonnegative");
        }
        if self.r.len() != 2 * n || !self.r.reversed().is_nonnegative() {
            out.push("Reverse(R) is not a nonnegative 2n-path");
        }
        out
    }
}

pub fn decompose(p: &LatticePath, n: usize) -> Option<Decomposition> {
    let h = p.heights();
    let i = (0..p.len()).rev().find(|&i| h[i] == 0 && p.steps[i] == Step::U)?;
    let b = p.slice(0, i);
    let d = p.slice(i + 1, p.len());
    if d.len() < 2 * n {
        return None;
    }
    let cut = d.len() - 2 * n;
    Some(Decomposition { b, q: d.slice(0, cut), r: d.slice(cut, d.len()), d })
}

pub fn phi(p: &LatticePath, n: usize) -> Option<PathPair> {
    let dec = decompose(p, n)?;
    let rev_r = dec.r.reversed();
    if dec.b.is_empty() {
        return Some(PathPair { first: dec.q, second: rev_r });
    }
    let (color, s) = beta(&dec.b)?;
    let qs = dec.q.concat(&s);
    Some(match color {
        Color::Red => PathPair { first: qs, second: rev_r },
        Color::Blue => PathPair { first: rev_r, second: qs },
    })
}

pub fn phi_inverse(pair: &PathPair) -> Option<LatticePath> {
    let (x, y) = (&pair.first, &pair.second);
    let (hx, hy) = (x.end_height(), y.end_height());
    let (b, q, rev_r) = if hx == hy {
        (LatticePath::default(), x.clone(), y.clone())
    } else {
        let (color, qs, rev_r) = if hx > hy { (Color::Red, x, y) } else { (Color::Blue, y, x) };
        let level = rev_r.end_height();
        let h = qs.heights();
        let cut = (0..=qs.len()).rev().find(|&i| h[i] == level)?;
        let s = qs.slice(cut, qs.len());
        (beta_inverse(color, &s)?, qs.slice(0, cut), rev_r.clone())
    };
    let up = LatticePath::new(vec![Step::U]);
    Some(b.concat(&up).concat(&q).concat(&rev_r.reversed()))
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_balanced, enumerate_positive, enumerate_x, enumerate_y, is_x_path, is_y_pair};
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&p("UD")), Some((Color::Red, p("UU"))));
        assert_eq!(beta(&p("DU")), Some((Color::Blue, p("UU"))));
        assert_eq!(beta(&p("UDDU")), Some((Color::Red, p("UUUU"))));
        assert_eq!(beta(&p("UDUD")), Some((Color::Red, p("UUUD"))));
        assert_eq!(beta(&p("")), None);
        assert_eq!(beta(&p("UU")), None);
    }

    #[test]
    fn beta_is_a_bijection() {
        for m in 1..=4 {
            let balanced = enumerate_balanced(2 * m);
            let positive = enumerate_positive(2 * m);
            assert_eq!(balanced.len(), 2 * positive.len());
            let mut seen = HashSet::new();
            for b in &balanced {
                let (color, s) = beta(b).unwrap();
                assert!(s.is_positive() && s.len() == b.len());
                assert_eq!(beta_inverse(color, &s).as_ref(), Some(b));
                assert!(seen.insert((color, s)));
            }
            for s in &positive {
                for color in [Color::Red, Color::Blue] {
                    let b = beta_inverse(color, s).unwrap();
                    assert_eq!(beta(&b), Some((color, s.clone())));
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let pair = phi(&p("UUDUD"), 1).unwrap();
        assert_eq!(pair.to_string(), "(UD, UD)");
        assert_eq!(phi_inverse(&pair), Some(p("UUDUD")));
        let empty = phi(&p("U"), 0).unwrap();
        assert_eq!(empty, PathPair::default());
        assert_eq!(phi_inverse(&empty), Some(p("U")));
    }

    #[test]
    fn phi_is_a_bijection() {
        for n in 0..=4 {
            let xs = enumerate_x(n);
            let mut images = HashSet::new();
            for x in &xs {
                let dec = decompose(x, n).unwrap();
                assert!(dec.violations(n).is_empty(), "{x}: {:?}", dec.violations(n));
                let y = phi(x, n).unwrap();
                assert!(is_y_pair(&y, n), "{x} -> {y}");
                assert_eq!(phi_inverse(&y).as_ref(), Some(x));
                assert!(images.insert(y));
            }
            for y in enumerate_y(n) {
                let x = phi_inverse(&y).unwrap();
                assert!(is_x_path(&x, n), "{y} -> {x}");
                assert_eq!(phi(&x, n), Some(y));
            }
        }
    }
}
