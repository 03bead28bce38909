//! Test-only reference computations.
//!
//! The oracle never touches the jet-space algebra of the crate. Expressions
//! are read term by term into a private representation, substituted along
//! concrete functions `u(y)` built from polynomials and exponentials in `y`,
//! and linearized with dual numbers. Linear systems are solved with a
//! separate Gaussian elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use jetsym::jet::{Coord, ExpPolyElement, ExpPolyExpr, Monomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `sum_l exp(l y) p_l(y)` with dense coefficient vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct YFun(BTreeMap<Q, Vec<Q>>);

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

impl YFun {
    pub fn zero() -> Self {
        YFun::default()
    }

    pub fn term(lambda: Q, power: usize, c: Q) -> Self {
        let mut p = vec![Q::zero(); power + 1];
        p[power] = c;
        let mut f = YFun::zero();
        f.insert(lambda, p);
        f
    }

    pub fn poly(coeffs: Vec<Q>) -> Self {
        let mut f = YFun::zero();
        f.insert(Q::zero(), coeffs);
        f
    }

    fn insert(&mut self, l: Q, mut p: Vec<Q>) {
        trim(&mut p);
        if p.is_empty() {
            self.0.remove(&l);
        } else {
            self.0.insert(l, p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &YFun) -> YFun {
        let mut out = self.clone();
        for (l, p) in &o.0 {
            let mut acc = out.0.get(l).cloned().unwrap_or_default();
            if acc.len() < p.len() {
                acc.resize(p.len(), Q::zero());
            }
            for (a, b) in acc.iter_mut().zip(p) {
                *a += b;
            }
            out.insert(l.clone(), acc);
        }
        out
    }

    pub fn neg(&self) -> YFun {
        YFun(self.0.iter().map(|(l, p)| (l.clone(), p.iter().map(|c| -c).collect())).collect())
    }

    pub fn sub(&self, o: &YFun) -> YFun {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &YFun) -> YFun {
        let mut acc: BTreeMap<Q, Vec<Q>> = BTreeMap::new();
        for (l1, p1) in &self.0 {
            for (l2, p2) in &o.0 {
                let p = acc.entry(l1 + l2).or_default();
                if p.len() < p1.len() + p2.len() - 1 {
                    p.resize(p1.len() + p2.len() - 1, Q::zero());
                }
                for (i, a) in p1.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in p2.iter().enumerate() {
                        p[i + j] += a * b;
                    }
                }
            }
        }
        let mut out = YFun::zero();
        for (l, p) in acc {
            out.insert(l, p);
        }
        out
    }

    /// `d/dy`.
    pub fn diff(&self) -> YFun {
        let mut out = YFun::zero();
        for (l, p) in &self.0 {
            let mut d: Vec<Q> = p.iter().map(|c| c * l).collect();
            for (i, c) in p.iter().enumerate().skip(1) {
                d[i - 1] += c * q(i as i64);
            }
            let mut f = YFun::zero();
            f.insert(l.clone(), d);
            out = out.add(&f);
        }
        out
    }

    /// Coefficients keyed by `(lambda, power)`.
    pub fn entries(&self) -> Vec<((Q, usize), Q)> {
        let mut out = Vec::new();
        for (l, p) in &self.0 {
            for (i, c) in p.iter().enumerate() {
                if !c.is_zero() {
                    out.push(((l.clone(), i), c.clone()));
                }
            }
        }
        out
    }
}

/// `re + eps * ep` with `eps^2 = 0`.
#[derive(Debug, Clone)]
pub struct Dual {
    pub re: YFun,
    pub ep: YFun,
}

impl Dual {
    fn real(re: YFun) -> Dual {
        Dual { re, ep: YFun::zero() }
    }
    fn one() -> Dual {
        Dual::real(YFun::poly(vec![Q::one()]))
    }
    fn mul(&self, o: &Dual) -> Dual {
        Dual {
            re: self.re.mul(&o.re),
            ep: self.re.mul(&o.ep).add(&self.ep.mul(&o.re)),
        }
    }
    fn add(&self, o: &Dual) -> Dual {
        Dual {
            re: self.re.add(&o.re),
            ep: self.ep.add(&o.ep),
        }
    }
}

/// One term `c * y^a * exp(l y) * prod_k u_k^{e_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OTerm {
    pub c: Q,
    pub ypow: usize,
    pub lambda: Q,
    /// `jets[k]` is the power of `u_k`.
    pub jets: Vec<u32>,
}

impl OTerm {
    pub fn order(&self) -> usize {
        self.jets.iter().rposition(|&e| e > 0).unwrap_or(0)
    }
}

/// Reads an expression through its public term list. Panics on `t` or
/// `exp(.. u)` factors, which the oracle does not model.
pub fn oracle_terms(e: &ExpPolyExpr) -> Vec<OTerm> {
    e.terms()
        .map(|(m, c)| {
            let mut t = OTerm {
                c: c.clone(),
                ypow: 0,
                lambda: Q::zero(),
                jets: Vec::new(),
            };
            for (coord, w) in m.exps() {
                assert_eq!(*coord, Coord::Y, "oracle models exp in y only");
                t.lambda = w.clone();
            }
            for (coord, p) in m.powers() {
                match coord {
                    Coord::Y => t.ypow = *p as usize,
                    Coord::T => panic!("oracle does not model t"),
                    other => {
                        let k = other.jet_order().unwrap() as usize;
                        if t.jets.len() <= k {
                            t.jets.resize(k + 1, 0);
                        }
                        t.jets[k] = *p;
                    }
                }
            }
            t
        })
        .collect()
}

fn eval(terms: &[OTerm], jets: &[Dual]) -> Dual {
    let mut acc = Dual::real(YFun::zero());
    for t in terms {
        let mut v = Dual::real(YFun::term(t.lambda.clone(), t.ypow, t.c.clone()));
        for (k, &e) in t.jets.iter().enumerate() {
            for _ in 0..e {
                v = v.mul(&jets[k]);
            }
        }
        acc = acc.add(&v);
    }
    acc
}

fn jets_of(f: &Dual, n: usize) -> Vec<Dual> {
    let mut out = vec![f.clone()];
    for _ in 0..n {
        let last = out.last().unwrap();
        out.push(Dual {
            re: last.re.diff(),
            ep: last.ep.diff(),
        });
    }
    out
}

fn max_order(terms: &[OTerm]) -> usize {
    terms.iter().map(OTerm::order).max().unwrap_or(0)
}

/// `eta_*[G] - G_*[eta]` along `u`.
pub fn defect_along(eta: &[OTerm], g: &[OTerm], u: &YFun) -> YFun {
    let n = max_order(eta).max(max_order(g));
    let base = jets_of(&Dual::real(u.clone()), n);
    let gu = eval(g, &base).re;
    let etau = eval(eta, &base).re;
    let lhs = eval(eta, &jets_of(&Dual { re: u.clone(), ep: gu }, n)).ep;
    let rhs = eval(g, &jets_of(&Dual { re: u.clone(), ep: etau }, n)).ep;
    lhs.sub(&rhs)
}

/// Fixed probe functions; polynomial degree well above every jet order in
/// the tests.
pub fn probes(rng: &mut ChaCha8Rng, count: usize, degree: usize) -> Vec<YFun> {
    (0..count)
        .map(|_| YFun::poly((0..=degree).map(|_| q(rng.gen_range(-3..=3))).collect()))
        .collect()
}

pub fn oracle_is_symmetry(eta: &ExpPolyExpr, rhs: &ExpPolyExpr, probes: &[YFun]) -> bool {
    let (eta, g) = (oracle_terms(eta), oracle_terms(rhs));
    probes.iter().all(|u| defect_along(&eta, &g, u).is_zero())
}

/// Rank by plain Gaussian elimination with exact rationals.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let d = &f * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        r += 1;
    }
    r
}

/// Generator list for `y^a exp(l y) prod u_k^{e_k}` with jet order at most
/// `q_max`, total jet degree at most `jet_deg` and `a <= y_deg`.
pub fn oracle_generators(q_max: usize, y_deg: usize, jet_deg: u32, weights: &[Q]) -> Vec<OTerm> {
    fn rec(k: usize, q_max: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k > q_max {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(k + 1, q_max, left - e, cur, out);
            cur.pop();
        }
    }
    let mut jets = Vec::new();
    rec(0, q_max, jet_deg, &mut Vec::new(), &mut jets);
    let mut out = Vec::new();
    for j in jets {
        for l in weights {
            for a in 0..=y_deg {
                out.push(OTerm {
                    c: Q::one(),
                    ypow: a,
                    lambda: l.clone(),
                    jets: j.clone(),
                });
            }
        }
    }
    out
}

/// Probe index, exponential weight, power of `y`.
type Key = (usize, (Q, usize));

/// Dimension of the symmetry space inside the generator span, restricted to
/// generators of order at most `q` for each `q` in `0..=q_max`.
pub fn oracle_dims(rhs: &ExpPolyExpr, gens: &[OTerm], q_max: usize, probes: &[YFun]) -> Vec<usize> {
    let g = oracle_terms(rhs);
    let defects: Vec<Vec<(Key, Q)>> = gens
        .iter()
        .map(|t| {
            probes
                .iter()
                .enumerate()
                .flat_map(|(i, u)| {
                    defect_along(std::slice::from_ref(t), &g, u)
                        .entries()
                        .into_iter()
                        .map(move |(k, c)| ((i, k), c))
                })
                .collect()
        })
        .collect();
    (0..=q_max)
        .map(|qq| {
            let cols: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].order() <= qq).collect();
            let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
            for &c in &cols {
                for (k, _) in &defects[c] {
                    let n = keys.len();
                    keys.entry(k.clone()).or_insert(n);
                }
            }
            let mut rows = vec![vec![Q::zero(); cols.len()]; keys.len()];
            for (j, &c) in cols.iter().enumerate() {
                for (k, v) in &defects[c] {
                    rows[keys[k]][j] = v.clone();
                }
            }
            cols.len() - rank(rows)
        })
        .collect()
}

/// Random element of exp-polynomial shape in the selected coordinates.
/// Coefficients are small polynomials in `u_1, u_2` (and `u` when it is not
/// selected).
pub fn random_element(rng: &mut ChaCha8Rng, selected: &[Coord]) -> ExpPolyElement {
    let g = selected.len();
    let lambda: Vec<Q> = (0..g).map(|_| q(rng.gen_range(-2..=2))).collect();
    let mut pool: Vec<Coord> = vec![Coord::jet(1), Coord::jet(2)];
    if !selected.contains(&Coord::U) {
        pool.push(Coord::U);
    }
    loop {
        let mut table = BTreeMap::new();
        let terms = rng.gen_range(1..=4);
        for _ in 0..terms {
            let j: Vec<u32> = (0..g).map(|_| rng.gen_range(0..4)).collect();
            let mut m = Monomial::one();
            for _ in 0..rng.gen_range(1..=2) {
                let c = pool[rng.gen_range(0..pool.len())];
                m.set_power(c, m.power(c) + 1);
            }
            let c = qq(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
            let e = ExpPolyExpr::term(m, c);
            let slot: &mut ExpPolyExpr = table.entry(j).or_insert_with(ExpPolyExpr::zero);
            *slot = &*slot + &e;
        }
        let el = ExpPolyElement::new(selected.to_vec(), lambda.clone(), table).unwrap();
        if !el.is_zero() {
            return el;
        }
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Random expression in `y, u, u_1, u_2, u_3` with occasional exponentials
/// in `y` and `u`.
pub fn random_expr(rng: &mut ChaCha8Rng) -> ExpPolyExpr {
    let mut e = ExpPolyExpr::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut m = Monomial::one();
        for c in [Coord::Y, Coord::U, Coord::jet(1), Coord::jet(2), Coord::jet(3)] {
            if rng.gen_bool(0.4) {
                m.set_power(c, rng.gen_range(1..=2));
            }
        }
        if rng.gen_bool(0.3) {
            m.set_weight(Coord::Y, q(rng.gen_range(-2..=2))).unwrap();
        }
        if rng.gen_bool(0.2) {
            m.set_weight(Coord::U, qq(rng.gen_range(-2..=2), 2)).unwrap();
        }
        e = &e + &ExpPolyExpr::term(m, qq(rng.gen_range(-6..=6), rng.gen_range(1..=4)));
    }
    e
}
