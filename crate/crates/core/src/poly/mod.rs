//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial carries an explicit, ordered variable list. Variables are
//! ordered globally (`a < b < c < d < j < k < m < n < r < s < q < e1 < e2 < e3`,
//! then any other name alphabetically), so exponent vectors compare
//! lexicographically with `a` as the most significant variable.

mod parse;
mod ratfn;
mod symmetric;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_poly, parse_ratfn};
pub use ratfn::{ratfn_equal, RationalFn};
pub use symmetric::{is_symmetric_abc, to_elementary, EPoly};

/// Exact values for variables, keyed by name.
pub type Assignment = BTreeMap<String, BigRational>;

const VAR_ORDER: [&str; 14] = [
    "a", "b", "c", "d", "j", "k", "m", "n", "r", "s", "q", "e1", "e2", "e3",
];

fn var_key(name: &str) -> (usize, &str) {
    let rank = VAR_ORDER
        .iter()
        .position(|v| *v == name)
        .unwrap_or(VAR_ORDER.len());
    (rank, name)
}

fn sort_vars(vars: &mut Vec<String>) {
    vars.sort_by(|x, y| var_key(x).cmp(&var_key(y)));
    vars.dedup();
}

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigRational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds from `(exponents, coefficient)` pairs over `vars`, which may be in
    /// any order; zero coefficients are dropped and duplicates summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut sorted = names.clone();
        sort_vars(&mut sorted);
        assert_eq!(sorted.len(), names.len(), "duplicate variable names");
        let perm: Vec<usize> = names
            .iter()
            .map(|n| sorted.iter().position(|s| s == n).unwrap())
            .collect();
        let mut out = MultiPoly { vars: sorted, terms: BTreeMap::new() };
        for (exps, c) in terms {
            assert_eq!(exps.len(), names.len(), "exponent vector length mismatch");
            let mut key = vec![0; names.len()];
            for (i, e) in exps.into_iter().enumerate() {
                key[perm[i]] = e;
            }
            out.add_term(key, c);
        }
        out
    }

    fn add_term(&mut self, key: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that occur with positive degree in some term.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|k| k[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no positive-degree term.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                k.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|k| k[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff_of(&self, monomial: &[(&str, u32)]) -> BigRational {
        let mut key = vec![0; self.vars.len()];
        for (v, e) in monomial {
            match self.vars.iter().position(|x| x == v) {
                Some(i) => key[i] = *e,
                None if *e == 0 => {}
                None => return BigRational::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Re-expresses the terms over `vars`, which must contain every used variable.
    fn realign(&self, vars: &[String]) -> BTreeMap<Monomial, BigRational> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut key = vec![0; vars.len()];
            for (i, &e) in k.iter().enumerate() {
                match idx[i] {
                    Some(j) => key[j] = e,
                    None => assert_eq!(e, 0, "realign would drop a used variable"),
                }
            }
            out.insert(key, c.clone());
        }
        out
    }

    fn union_vars(&self, other: &MultiPoly) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut vars: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        sort_vars(&mut vars);
        vars
    }

    /// Re-expresses over exactly `vars`; `None` if a used variable is missing.
    pub fn over_vars(&self, vars: &[&str]) -> Option<MultiPoly> {
        let used = self.used_vars();
        if used.iter().any(|u| !vars.contains(&u.as_str())) {
            return None;
        }
        let mut names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        sort_vars(&mut names);
        let idx: Vec<Option<usize>> = self.vars.iter().map(|v| names.iter().position(|w| w == v)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut key = vec![0; names.len()];
                for (i, &e) in k.iter().enumerate() {
                    if let Some(j) = idx[i] {
                        key[j] = e;
                    }
                }
                (key, c.clone())
            })
            .collect();
        Some(MultiPoly { vars: names, terms })
    }

    /// Copy with the variable set extended to include `extra`.
    pub fn with_vars(&self, extra: &[&str]) -> MultiPoly {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        sort_vars(&mut vars);
        MultiPoly { terms: self.realign(&vars), vars }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one().with_vars(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces `var` by `value` and re-expands.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let Some(pos) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, v)| v.clone())
            .collect();
        let mut by_power: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut key = k.clone();
            let e = key.remove(pos);
            by_power
                .entry(e)
                .or_insert_with(|| MultiPoly { vars: rest_vars.clone(), terms: BTreeMap::new() })
                .add_term(key, c.clone());
        }
        let mut result = MultiPoly { vars: rest_vars, terms: BTreeMap::new() };
        let mut power = MultiPoly::one();
        let mut current = 0;
        for (e, part) in by_power {
            while current < e {
                power = &power * value;
                current += 1;
            }
            result = &result + &(&part * &power);
        }
        result
    }

    /// `var -> var + delta`
    pub fn shift(&self, var: &str, delta: i64) -> MultiPoly {
        if !self.vars.iter().any(|v| v == var) {
            return self.clone();
        }
        let replacement = &MultiPoly::var(var) + &MultiPoly::int(delta);
        self.substitute(var, &replacement)
    }

    /// Simultaneous renaming, e.g. `[("a", "b"), ("b", "a")]` swaps two variables.
    pub fn rename(&self, mapping: &[(&str, &str)]) -> MultiPoly {
        let new_names: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                mapping
                    .iter()
                    .find(|(from, _)| from == v)
                    .map(|(_, to)| to.to_string())
                    .unwrap_or_else(|| v.clone())
            })
            .collect();
        let names: Vec<&str> = new_names.iter().map(|s| s.as_str()).collect();
        MultiPoly::from_terms(&names, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<BigRational> {
        self.eval_with(|v| assignment.get(v).cloned())
    }

    pub fn eval_i64(&self, point: &BTreeMap<String, i64>) -> Result<BigRational> {
        self.eval_with(|v| point.get(v).map(|&x| BigRational::from_integer(BigInt::from(x))))
    }

    /// Evaluates with values supplied by `lookup`. Only variables that occur
    /// with positive degree need a value.
    pub fn eval_with<F>(&self, lookup: F) -> Result<BigRational>
    where
        F: Fn(&str) -> Option<BigRational>,
    {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in self.used_vars() {
            let x = lookup(&v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
            values.push((self.vars.iter().position(|w| *w == v).unwrap(), x));
        }
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in &values {
                if k[*i] > 0 {
                    t *= num_traits::pow(x.clone(), k[*i] as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Leading term under lexicographic order of the variable list.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Denominator-free copy scaled by the lcm of coefficient denominators,
    /// together with that factor.
    pub fn clear_denominators(&self) -> (MultiPoly, BigInt) {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        (self.scale(&BigRational::from_integer(lcm.clone())), lcm)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &MultiPoly) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for MultiPoly {}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(rhs);
        let mut out = MultiPoly { terms: self.realign(&vars), vars };
        let other = rhs.realign(&out.vars);
        for (k, c) in other {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(rhs);
        let mut out = MultiPoly { terms: self.realign(&vars), vars };
        let other = rhs.realign(&out.vars);
        for (k, c) in other {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(rhs);
        let lhs_terms = self.realign(&vars);
        let rhs_terms = rhs.realign(&vars);
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(lhs_terms.len() * rhs_terms.len());
        for (ka, ca) in &lhs_terms {
            for (kb, cb) in &rhs_terms {
                let key: Monomial = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                acc.entry(key)
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars, terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub(crate) fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, vars: &[String], terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Monomial, &'a BigRational)>,
{
    let mut first = true;
    for (k, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let factors: Vec<String> = vars
            .iter()
            .zip(k)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if factors.is_empty() {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Terms are printed by descending total degree, ties broken by descending
/// lexicographic order.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(ka, _), (kb, _)| {
            let da: u32 = ka.iter().sum();
            let db: u32 = kb.iter().sum();
            db.cmp(&da).then_with(|| kb.cmp(ka))
        });
        fmt_terms(f, &self.vars, terms)
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn point(pairs: &[(&str, i64)]) -> Assignment {
        pairs
            .iter()
            .map(|(v, x)| (v.to_string(), BigRational::from_integer(BigInt::from(*x))))
            .collect()
    }

    #[test]
    fn eval_examples() {
        let e2 = p("a*b + b*c + c*a");
        assert_eq!(e2.eval(&point(&[("a", 1), ("b", 1), ("c", 1)])).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(e2.eval(&point(&[("a", 2), ("b", 1), ("c", 1)])).unwrap(), BigRational::from_integer(5.into()));
        assert!(MultiPoly::zero().eval(&point(&[("z", 7)])).unwrap().is_zero());
    }

    #[test]
    fn eval_missing_variable() {
        let err = p("a + b").eval(&point(&[("a", 1)])).unwrap_err();
        assert_eq!(err, Error::MissingVariable("b".into()));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("a^2").shift("a", -1), p("a^2 - 2*a + 1"));
        assert_eq!(p("a*b + b*c + c*a").shift("a", -1), p("a*b + a*c + b*c - b - c"));
        assert_eq!(p("b*c").shift("a", -1), p("b*c"));
    }

    #[test]
    fn ring_laws_spot() {
        let x = p("a^2 - 3*b + 1/2");
        let y = p("a*b - c");
        let z = p("c^2 + a - 4");
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn leading_term_is_lex() {
        let f = p("b^5 + a*c + c^9");
        let (k, _) = f.leading_term().unwrap();
        assert_eq!(k, &vec![1, 0, 1]);
    }

    #[test]
    fn display_round_trips() {
        let f = p("3*a^2*b - 1/2*c + 7 - a");
        let g = p(&f.to_string());
        assert_eq!(f, g);
        assert_eq!(p("a^2 - 2*a + 1").to_string(), "a^2 - 2*a + 1");
    }

    #[test]
    fn rename_swaps() {
        let f = p("a^2*b + c");
        assert_eq!(f.rename(&[("a", "b"), ("b", "a")]), p("b^2*a + c"));
    }

    #[test]
    fn pow_and_degree() {
        let f = p("a + b").pow(3);
        assert_eq!(f, p("a^3 + 3*a^2*b + 3*a*b^2 + b^3"));
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.degree_in("a"), 3);
        assert_eq!(f.coeff_of(&[("a", 2), ("b", 1)]), BigRational::from_integer(3.into()));
    }
}
